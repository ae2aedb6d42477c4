#include "fracmhd/fem/constraints.hpp"

#include "fracmhd/errors.hpp"
#include "fracmhd/fem/assembly.hpp"

namespace fracmhd::fem {

Constraints Constraints::identity(int n) {
  Constraints c;
  c.unknown_of.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c.unknown_of[static_cast<std::size_t>(i)] = i;
  c.num_free = n;
  c.fixed_values = Eigen::VectorXd::Zero(n);
  return c;
}

Constraints Constraints::for_space(const FeSpace& space) {
  Constraints c;
  c.unknown_of = space.dof_to_unknown();
  c.num_free = space.num_free();
  c.fixed_values = Eigen::VectorXd::Zero(space.size());
  if (space.zero_mean()) {
    if (space.components() != 1) throw UsageError("Constraints: zero mean needs a scalar space");
    c.mean_weights = integral_weights(space);
  }
  return c;
}

ReducedSystem constrain_system(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                               const Constraints& c) {
  const int n = c.full_size();
  if (A.rows() != n || A.cols() != n || b.size() != n || c.fixed_values.size() != n) {
    throw UsageError("constrain_system: size mismatch");
  }
  if (c.mean_weights && c.mean_weights->size() != n) {
    throw UsageError("constrain_system: mean weights size mismatch");
  }
  const int m = c.reduced_size();
  ReducedSystem out;
  out.b = Eigen::VectorXd::Zero(m);
  // Lift: b - A x_fixed
  Eigen::VectorXd lifted = b - A * c.fixed_values.cwiseProduct(
      Eigen::VectorXd::NullaryExpr(n, [&c](Eigen::Index i) {
        return c.unknown_of[static_cast<std::size_t>(i)] < 0 ? 1.0 : 0.0;
      }));
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(A.nonZeros()));
  for (int col = 0; col < n; ++col) {
    const int rc = c.unknown_of[static_cast<std::size_t>(col)];
    if (rc < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
      const int rr = c.unknown_of[static_cast<std::size_t>(it.row())];
      if (rr >= 0) trip.emplace_back(rr, rc, it.value());
    }
  }
  double mean_rhs = 0.0;
  for (int i = 0; i < n; ++i) {
    const int r = c.unknown_of[static_cast<std::size_t>(i)];
    if (r >= 0) {
      out.b[r] += lifted[i];
      if (c.mean_weights) {
        const double w = (*c.mean_weights)[i];
        if (w != 0.0) {
          trip.emplace_back(c.num_free, r, w);
          trip.emplace_back(r, c.num_free, w);
        }
      }
    } else if (c.mean_weights) {
      mean_rhs -= (*c.mean_weights)[i] * c.fixed_values[i];
    }
  }
  if (c.mean_weights) out.b[c.num_free] = mean_rhs;
  out.A.resize(m, m);
  out.A.setFromTriplets(trip.begin(), trip.end());
  out.A.makeCompressed();
  return out;
}

Eigen::VectorXd expand_solution(const Eigen::VectorXd& x, const Constraints& c) {
  if (x.size() != c.reduced_size()) throw UsageError("expand_solution: size mismatch");
  Eigen::VectorXd full = c.fixed_values;
  for (int i = 0; i < c.full_size(); ++i) {
    const int r = c.unknown_of[static_cast<std::size_t>(i)];
    if (r >= 0) full[i] = x[r];
  }
  return full;
}

}  // namespace fracmhd::fem
