#include "fracmhd/mhd/monolithic.hpp"

#include <algorithm>
#include <cmath>

#include "fracmhd/errors.hpp"

namespace fracmhd::mhd {

using fem::Mat6;
using fem::Mesh;

MonolithicSystem::MonolithicSystem(std::shared_ptr<const FemContext> ctx) : ctx_(std::move(ctx)) {
  const auto& vel = *ctx_->vel;
  const auto& pres = *ctx_->pres;
  const Mesh& mesh = *ctx_->mesh;
  nn_ = vel.num_nodes();
  nf_ = vel.num_free_nodes();
  nu_ = 2 * nf_;
  np_ = pres.num_nodes();
  size_ = 2 * nu_ + np_ + 1;
  const int ntri = mesh.num_triangles();

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(ntri) * (36 * kSlots + 72) + 2 * static_cast<std::size_t>(np_));
  pos_.assign(static_cast<std::size_t>(ntri) * 36 * kSlots, -1);

  // Row and column of every slot for local pair (i, j).
  auto slot_rc = [&](int slot, int ni, int nj) -> std::pair<int, int> {
    switch (slot) {
      case U0U0: return {u_index(0, ni), u_index(0, nj)};
      case U1U1: return {u_index(1, ni), u_index(1, nj)};
      case B0B0: return {B_index(0, ni), B_index(0, nj)};
      case B1B1: return {B_index(1, ni), B_index(1, nj)};
      case U0B0: return {u_index(0, ni), B_index(0, nj)};
      case U1B1: return {u_index(1, ni), B_index(1, nj)};
      case B0U0: return {B_index(0, ni), u_index(0, nj)};
      case B1U1: return {B_index(1, ni), u_index(1, nj)};
      case U0U1: return {u_index(0, ni), u_index(1, nj)};
      case U1U0: return {u_index(1, ni), u_index(0, nj)};
      case B0B1: return {B_index(0, ni), B_index(1, nj)};
      default: return {B_index(1, ni), B_index(0, nj)};
    }
  };

  for (int t = 0; t < ntri; ++t) {
    const auto nodes = vel.element_nodes(t);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        for (int s = 0; s < kSlots; ++s) {
          const auto [r, c] = slot_rc(s, nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
          if (r >= 0 && c >= 0) trip.emplace_back(r, c, 0.0);
        }
      }
    }
    const auto pn = pres.element_nodes(t);
    for (int a = 0; a < 2; ++a) {
      for (int i = 0; i < 6; ++i) {
        const int r = u_index(a, nodes[static_cast<std::size_t>(i)]);
        if (r < 0) continue;
        for (int k = 0; k < 3; ++k) {
          const int c = nu_ + pn[static_cast<std::size_t>(k)];
          trip.emplace_back(r, c, 0.0);
          trip.emplace_back(c, r, 0.0);
        }
      }
    }
  }
  for (int k = 0; k < np_; ++k) {
    trip.emplace_back(nu_ + k, size_ - 1, 0.0);
    trip.emplace_back(size_ - 1, nu_ + k, 0.0);
  }
  A_.resize(size_, size_);
  A_.setFromTriplets(trip.begin(), trip.end());
  A_.makeCompressed();
  trip.clear();
  trip.shrink_to_fit();

  for (int t = 0; t < ntri; ++t) {
    const auto nodes = vel.element_nodes(t);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const std::size_t base = (static_cast<std::size_t>(t) * 36 + i * 6 + j) * kSlots;
        for (int s = 0; s < kSlots; ++s) {
          const auto [r, c] = slot_rc(s, nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
          if (r >= 0 && c >= 0) pos_[base + s] = position(r, c);
        }
      }
    }
  }
  static_.assign(static_cast<std::size_t>(A_.nonZeros()), 0.0);
}

int MonolithicSystem::u_index(int c, int node) const {
  const int f = ctx_->vel->free_index(node);
  return f < 0 ? -1 : c * nf_ + f;
}

int MonolithicSystem::B_index(int c, int node) const {
  const int f = ctx_->vel->free_index(node);
  return f < 0 ? -1 : nu_ + np_ + c * nf_ + f;
}

int MonolithicSystem::position(int row, int col) const {
  const auto* outer = A_.outerIndexPtr();
  const auto* inner = A_.innerIndexPtr();
  const auto* first = inner + outer[col];
  const auto* last = inner + outer[col + 1];
  const auto* it = std::lower_bound(first, last, row);
  if (it == last || *it != row) throw UsageError("MonolithicSystem: entry outside pattern");
  return static_cast<int>(it - inner);
}

void MonolithicSystem::set_parameters(double inv_Re, double inv_Rm, double zeta, double chi) {
  std::fill(static_.begin(), static_.end(), 0.0);
  const auto& vel = *ctx_->vel;
  const auto& pres = *ctx_->pres;
  const Mesh& mesh = *ctx_->mesh;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& e = ctx_->ref->type[Mesh::type(t)];
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const std::size_t base = (static_cast<std::size_t>(t) * 36 + i * 6 + j) * kSlots;
        auto add = [&](int s, double v) {
          const int p = pos_[base + s];
          if (p >= 0) static_[static_cast<std::size_t>(p)] += v;
        };
        const double k = e.stiff2(i, j);
        add(U0U0, inv_Re * k + zeta * e.dd2[0][0](i, j));
        add(U1U1, inv_Re * k + zeta * e.dd2[1][1](i, j));
        add(U0U1, zeta * e.dd2[0][1](i, j));
        add(U1U0, zeta * e.dd2[1][0](i, j));
        add(B0B0, inv_Rm * k + chi * e.dd2[0][0](i, j));
        add(B1B1, inv_Rm * k + chi * e.dd2[1][1](i, j));
        add(B0B1, chi * e.dd2[0][1](i, j));
        add(B1B0, chi * e.dd2[1][0](i, j));
      }
    }
    // -(p, div v) and its transpose.
    const auto nodes = vel.element_nodes(t);
    const auto pn = pres.element_nodes(t);
    for (int a = 0; a < 2; ++a) {
      for (int i = 0; i < 6; ++i) {
        const int r = u_index(a, nodes[static_cast<std::size_t>(i)]);
        if (r < 0) continue;
        for (int kk = 0; kk < 3; ++kk) {
          const int c = nu_ + pn[static_cast<std::size_t>(kk)];
          const double v = -e.pdiv[a](i, kk);
          static_[static_cast<std::size_t>(position(r, c))] += v;
          static_[static_cast<std::size_t>(position(c, r))] += v;
        }
      }
    }
  }
  const Eigen::VectorXd w = fem::integral_weights(pres);
  for (int k = 0; k < np_; ++k) {
    static_[static_cast<std::size_t>(position(nu_ + k, size_ - 1))] = w[k];
    static_[static_cast<std::size_t>(position(size_ - 1, nu_ + k))] = w[k];
  }
}

void MonolithicSystem::assemble(double cu, double cB, const Eigen::VectorXd& u_wind,
                                const Eigen::VectorXd& B_wind) {
  const auto& vel = *ctx_->vel;
  if (u_wind.size() != vel.size() || B_wind.size() != vel.size()) {
    throw UsageError("MonolithicSystem::assemble: wind size mismatch");
  }
  double* val = A_.valuePtr();
  std::copy(static_.begin(), static_.end(), val);
  const Mesh& mesh = *ctx_->mesh;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& e = ctx_->ref->type[Mesh::type(t)];
    const auto nodes = vel.element_nodes(t);
    Mat6 Lu = Mat6::Zero();
    Mat6 LB = Mat6::Zero();
    for (int c = 0; c < 2; ++c) {
      for (int m = 0; m < 6; ++m) {
        const int idx = c * nn_ + nodes[static_cast<std::size_t>(m)];
        const double a = u_wind[idx];
        const double b = B_wind[idx];
        if (a != 0.0) Lu.noalias() += a * e.skew[c][m];
        if (b != 0.0) LB.noalias() += b * e.skew[c][m];
      }
    }
    const int* pos = pos_.data() + static_cast<std::size_t>(t) * 36 * kSlots;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j, pos += kSlots) {
        const double m = e.mass2(i, j);
        const double uu = cu * m + Lu(i, j);
        const double bb = cB * m + Lu(i, j);
        const double cp = -LB(i, j);
        if (pos[U0U0] >= 0) val[pos[U0U0]] += uu;
        if (pos[U1U1] >= 0) val[pos[U1U1]] += uu;
        if (pos[B0B0] >= 0) val[pos[B0B0]] += bb;
        if (pos[B1B1] >= 0) val[pos[B1B1]] += bb;
        if (pos[U0B0] >= 0) val[pos[U0B0]] += cp;
        if (pos[U1B1] >= 0) val[pos[U1B1]] += cp;
        if (pos[B0U0] >= 0) val[pos[B0U0]] += cp;
        if (pos[B1U1] >= 0) val[pos[B1U1]] += cp;
      }
    }
  }
}

Eigen::VectorXd MonolithicSystem::gather(const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                                         const Eigen::VectorXd& B, double lambda) const {
  const auto& vel = *ctx_->vel;
  Eigen::VectorXd x(size_);
  for (int c = 0; c < 2; ++c) {
    for (int node = 0; node < nn_; ++node) {
      const int f = vel.free_index(node);
      if (f < 0) continue;
      x[c * nf_ + f] = u[c * nn_ + node];
      x[nu_ + np_ + c * nf_ + f] = B[c * nn_ + node];
    }
  }
  x.segment(nu_, np_) = p;
  x[size_ - 1] = lambda;
  return x;
}

void MonolithicSystem::scatter(const Eigen::VectorXd& x, Eigen::VectorXd& u, Eigen::VectorXd& p,
                               Eigen::VectorXd& B) const {
  const auto& vel = *ctx_->vel;
  u.setZero(vel.size());
  B.setZero(vel.size());
  for (int c = 0; c < 2; ++c) {
    for (int node = 0; node < nn_; ++node) {
      const int f = vel.free_index(node);
      if (f < 0) continue;
      u[c * nn_ + node] = x[c * nf_ + f];
      B[c * nn_ + node] = x[nu_ + np_ + c * nf_ + f];
    }
  }
  p = x.segment(nu_, np_);
}

double MonolithicSystem::field_norm(const Eigen::VectorXd& x) const {
  return std::sqrt(x.head(nu_).squaredNorm() + x.segment(nu_ + np_, nu_).squaredNorm());
}

}  // namespace fracmhd::mhd
