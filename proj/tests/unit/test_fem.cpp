#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracmhd/fem/assembly.hpp"
#include "fracmhd/fem/constraints.hpp"
#include "fracmhd/fem/integrate.hpp"
#include "fracmhd/fem/linear_solver.hpp"
#include "fracmhd/fem/space.hpp"

using namespace fracmhd;
using namespace fracmhd::fem;
using std::numbers::pi;

namespace {

std::shared_ptr<const Mesh> mesh(int M) { return std::make_shared<const Mesh>(M); }

std::shared_ptr<const FeSpace> space(std::shared_ptr<const Mesh> m, int deg, int comp, Boundary bc,
                                     bool zero_mean = false) {
  return std::make_shared<const FeSpace>(std::move(m), deg, comp, bc, zero_mean);
}

}  // namespace

TEST(Mesh, CountsAndDiameter) {
  Mesh m(4);
  EXPECT_EQ(m.num_triangles(), 32);
  EXPECT_EQ(m.num_vertices(), 25);
  EXPECT_NEAR(Mesh(150).h(), 0.0094281, 1e-7);
  EXPECT_NEAR(Mesh(400).h(), 0.0035355, 1e-7);
  EXPECT_NEAR(Mesh(7).h(), std::sqrt(2.0) / 7.0, 1e-15);
  EXPECT_THROW(Mesh(1), ConfigError);
}

TEST(Mesh, TrianglesPositivelyOriented) {
  Mesh m(5);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto v = m.triangle(t);
    const Point a = m.vertex(v[0]), b = m.vertex(v[1]), c = m.vertex(v[2]);
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    EXPECT_NEAR(det, 1.0 / 25.0, 1e-15);
  }
}

TEST(Space, DofCounts) {
  auto m = mesh(4);
  EXPECT_EQ(space(m, 2, 1, Boundary::Periodic)->num_free(), 64);
  auto p1 = space(m, 1, 1, Boundary::Free, true);
  EXPECT_EQ(p1->num_free(), 25);
  EXPECT_EQ(p1->num_unknowns(), 26);
  EXPECT_EQ(space(m, 2, 1, Boundary::Dirichlet)->num_free(), 49);
  EXPECT_EQ(space(m, 1, 1, Boundary::Dirichlet)->num_free(), 9);
  EXPECT_EQ(space(m, 2, 2, Boundary::Periodic)->size(), 128);
  EXPECT_THROW(FeSpace(m, 3, 1, Boundary::Free), UsageError);
}

TEST(Space, PeriodicCornersShareOneNode) {
  auto s = space(mesh(3), 2, 1, Boundary::Periodic);
  const int c = s->node_of_lattice(0, 0);
  EXPECT_EQ(s->node_of_lattice(6, 0), c);
  EXPECT_EQ(s->node_of_lattice(0, 6), c);
  EXPECT_EQ(s->node_of_lattice(6, 6), c);
  EXPECT_EQ(s->node_of_lattice(6, 3), s->node_of_lattice(0, 3));
}

TEST(Assembly, MassSumsToArea) {
  for (auto bc : {Boundary::Free, Boundary::Periodic}) {
    for (int deg : {1, 2}) {
      auto s = space(mesh(5), deg, 1, bc);
      auto M = assemble_operator(OperatorKind::Mass, *s, *s);
      EXPECT_NEAR(M.sum(), 1.0, 1e-14);
      EXPECT_NEAR(integral_weights(*s).sum(), 1.0, 1e-14);
      SparseMatrix diff = M - SparseMatrix(M.transpose());
      EXPECT_LT(diff.norm(), 1e-15);
    }
  }
}

TEST(Assembly, StiffnessKillsConstants) {
  auto s = space(mesh(6), 2, 2, Boundary::Periodic);
  auto K = assemble_operator(OperatorKind::Stiffness, *s, *s);
  Eigen::VectorXd one = Eigen::VectorXd::Ones(s->size());
  EXPECT_LT((K * one).norm(), 1e-12);
}

TEST(Assembly, QuadraticPatchTest) {
  auto s = space(mesh(3), 2, 1, Boundary::Free);
  auto q = interpolate(s, ScalarFunction([](double x, double y) { return x * x + x * y; }));
  auto K = assemble_operator(OperatorKind::Stiffness, *s, *s);
  // int (2x + y)^2 + x^2 = 3
  EXPECT_NEAR(q.values.dot(K * q.values), 3.0, 1e-12);
  // Exact reproduction: nodal interpolant equals q at quadrature points.
  auto v = interpolate(space(mesh(3), 2, 2, Boundary::Free),
                       VectorFunction([](double x, double y) { return std::array<double, 2>{x * x - y, x * y}; }));
  const double err = sq_l2_distance(v, [](double x, double y) { return std::array<double, 2>{x * x - y, x * y}; });
  EXPECT_LT(err, 1e-28);
}

TEST(Assembly, PressureDivOfSolenoidalAffineField) {
  auto m = mesh(4);
  auto V = space(m, 2, 2, Boundary::Free);
  auto Q = space(m, 1, 1, Boundary::Free);
  auto u = interpolate(V, VectorFunction([](double x, double y) { return std::array<double, 2>{2.0 * x + y, 3.0 * x - 2.0 * y}; }));
  auto B = assemble_operator(OperatorKind::PressureDiv, *Q, *V);
  EXPECT_LT((SparseMatrix(B.transpose()) * u.values).cwiseAbs().maxCoeff(), 1e-13);
  auto w = interpolate(V, VectorFunction([](double x, double y) { return std::array<double, 2>{x, y}; }));
  // int psi_k div w = 2 int psi_k
  Eigen::VectorXd expect = 2.0 * integral_weights(*Q);
  EXPECT_LT((SparseMatrix(B.transpose()) * w.values - expect).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Assembly, GradDivMatchesIntegratedDivergence) {
  auto V = space(mesh(5), 2, 2, Boundary::Periodic);
  auto u = interpolate(V, VectorFunction([](double x, double y) {
    return std::array<double, 2>{std::sin(2 * pi * x) * std::cos(2 * pi * y), std::cos(2 * pi * x)};
  }));
  auto G = assemble_operator(OperatorKind::GradDiv, *V, *V);
  EXPECT_NEAR(u.values.dot(G * u.values), integrate_quantity(Quantity::SqDiv, u), 1e-12);
}

TEST(Assembly, ConvectionIsSkew) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  auto V = space(mesh(6), 2, 2, Boundary::Periodic);
  Field a(V);
  for (int i = 0; i < a.values.size(); ++i) a.values[i] = normal(rng);
  auto L = assemble_convection(a, *V);
  SparseMatrix sum = L + SparseMatrix(L.transpose());
  EXPECT_LT(sum.coeffs().cwiseAbs().maxCoeff(), 1e-12 * L.coeffs().cwiseAbs().maxCoeff());
  Eigen::VectorXd b(V->size());
  for (int i = 0; i < b.size(); ++i) b[i] = normal(rng);
  EXPECT_LT(std::abs(b.dot(L * b)), 1e-12 * a.values.norm() * b.squaredNorm());
  Field zero(V);
  EXPECT_EQ(assemble_convection(zero, *V).nonZeros(), 0);
}

TEST(Assembly, ConvectionMatchesStrongForm) {
  // For divergence-free wind the skew form equals ((a.grad) b, w).
  auto m = mesh(8);
  auto V = space(m, 2, 2, Boundary::Periodic);
  auto S = space(m, 2, 1, Boundary::Periodic);
  auto a = interpolate(V, VectorFunction([](double x, double y) {
    return std::array<double, 2>{std::sin(2 * pi * x) * std::cos(2 * pi * y), -std::cos(2 * pi * x) * std::sin(2 * pi * y)};
  }));
  auto b = interpolate(S, ScalarFunction([](double x, double) { return std::sin(2 * pi * x); }));
  auto L = assemble_convection(a, *S);
  // int ((a.grad) b) b = 0 for div-free a, and int ((a.grad) b) 1 = 0.
  EXPECT_NEAR(Eigen::VectorXd::Ones(S->size()).dot(L * b.values), 0.0, 1e-3);
}

TEST(Integrate, VortexInitialQuantities) {
  auto V = space(mesh(32), 2, 2, Boundary::Periodic);
  auto u = interpolate(V, VectorFunction([](double x, double y) {
    return std::array<double, 2>{std::sin(2 * pi * x) * std::cos(2 * pi * y), -std::cos(2 * pi * x) * std::sin(2 * pi * y)};
  }));
  EXPECT_NEAR(integrate_quantity(Quantity::SqNorm, u), 0.5, 2e-5);
  EXPECT_NEAR(integrate_quantity(Quantity::SqCurl, u) / (4 * pi * pi), 1.0, 1e-3);
  EXPECT_LT(integrate_quantity(Quantity::SqDiv, u), 1e-3);
  Field zero(V);
  EXPECT_EQ(integrate_quantity(Quantity::SqNorm, zero), 0.0);
  EXPECT_EQ(integrate_quantity(Quantity::SqCurl, zero), 0.0);
}

TEST(Integrate, CurlQuadratureConvergesFast) {
  double prev = 0.0;
  for (int M : {8, 16, 32}) {
    auto V = space(mesh(M), 2, 2, Boundary::Periodic);
    auto u = interpolate(V, VectorFunction([](double x, double y) {
      return std::array<double, 2>{std::sin(2 * pi * x) * std::cos(2 * pi * y), -std::cos(2 * pi * x) * std::sin(2 * pi * y)};
    }));
    const double err = std::abs(integrate_quantity(Quantity::SqNorm, u) - 0.5);
    if (prev > 0.0) EXPECT_GT(std::log2(prev / err), 3.5) << M;
    prev = err;
  }
}

TEST(Constraints, IdentityIsNoOp) {
  SparseMatrix A(3, 3);
  A.insert(0, 0) = 2.0;
  A.insert(1, 1) = 3.0;
  A.insert(2, 2) = 4.0;
  A.insert(0, 2) = 1.0;
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  auto r = constrain_system(A, b, Constraints::identity(3));
  EXPECT_EQ((r.A - A).norm(), 0.0);
  EXPECT_EQ((r.b - b).norm(), 0.0);
}

TEST(Constraints, DirichletPoissonCount) {
  auto s = space(mesh(4), 1, 1, Boundary::Dirichlet);
  auto K = assemble_operator(OperatorKind::Stiffness, *s, *s);
  auto r = constrain_system(K, Eigen::VectorXd::Ones(s->size()), Constraints::for_space(*s));
  EXPECT_EQ(r.A.rows(), 9);
}

TEST(Constraints, DirichletLiftReproducesLinearFunction) {
  // Harmonic data x + 2y is reproduced exactly from its boundary values.
  auto s = space(mesh(6), 2, 1, Boundary::Dirichlet);
  auto K = assemble_operator(OperatorKind::Stiffness, *s, *s);
  auto exact = interpolate(s, ScalarFunction([](double x, double y) { return x + 2.0 * y; }));
  auto c = Constraints::for_space(*s);
  c.fixed_values = exact.values;
  auto r = constrain_system(K, Eigen::VectorXd::Zero(s->size()), c);
  auto x = expand_solution(solve_linear(r.A, r.b), c);
  EXPECT_LT((x - exact.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Constraints, PeriodicPoissonWithMultiplier) {
  auto s = space(mesh(8), 2, 1, Boundary::Periodic, true);
  auto K = assemble_operator(OperatorKind::Stiffness, *s, *s);
  auto f = assemble_load(*s, ScalarFunction([](double x, double y) {
    return 8 * pi * pi * std::sin(2 * pi * x) * std::sin(2 * pi * y);
  }));
  auto c = Constraints::for_space(*s);
  auto r = constrain_system(K, f, c);
  EXPECT_EQ(r.A.rows(), 257);
  auto x = solve_linear(r.A, r.b);
  EXPECT_LE((r.b - r.A * x).norm() / r.b.norm(), 1e-10);
  auto u = expand_solution(x, c);
  EXPECT_NEAR(integral_weights(*s).dot(u), 0.0, 1e-14);
  auto exact = interpolate(s, ScalarFunction([](double x, double y) { return std::sin(2 * pi * x) * std::sin(2 * pi * y); }));
  EXPECT_LT((u - exact.values).cwiseAbs().maxCoeff(), 5e-3);
}

TEST(LinearSolver, SmallSystems) {
  SparseMatrix I(3, 3);
  I.setIdentity();
  Eigen::VectorXd b(3);
  b << 1, -2, 5;
  EXPECT_LT((solve_linear(I, b) - b).norm(), 1e-15);
  SparseMatrix A(2, 2);
  A.insert(0, 0) = 2;
  A.insert(0, 1) = 1;
  A.insert(1, 0) = 1;
  A.insert(1, 1) = 2;
  Eigen::VectorXd c(2);
  c << 3, 3;
  EXPECT_LT((solve_linear(A, c) - Eigen::Vector2d(1, 1)).norm(), 1e-14);
  SparseMatrix S(2, 2);
  S.insert(0, 0) = 1;
  S.insert(1, 0) = 1;
  EXPECT_THROW(solve_linear(S, c), SolverError);
}

TEST(LinearSolver, KrylovReusesStaleFactorization) {
  auto V = space(mesh(10), 2, 2, Boundary::Periodic);
  auto M = assemble_operator(OperatorKind::Mass, *V, *V);
  auto K = assemble_operator(OperatorKind::Stiffness, *V, *V);
  auto a = interpolate(V, VectorFunction([](double x, double y) {
    return std::array<double, 2>{std::sin(2 * pi * x) * std::cos(2 * pi * y), -std::cos(2 * pi * x) * std::sin(2 * pi * y)};
  }));
  SparseMatrix L = assemble_convection(a, *V);
  SolveOptions opt;
  opt.backend = Backend::Krylov;
  LinearSolver solver(opt);
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(V->size(), -1.0, 1.0);
  SparseMatrix A0 = 100.0 * M + K + 5.0 * L;
  solver.solve(A0, b);
  EXPECT_EQ(solver.stats().factorizations, 1);
  SparseMatrix A1 = 100.0 * M + K + 5.5 * L;
  Eigen::VectorXd x = solver.solve(A1, b);
  EXPECT_EQ(solver.stats().factorizations, 1);
  EXPECT_GT(solver.stats().iterations, 0);
  EXPECT_LE((b - A1 * x).norm() / b.norm(), 1e-10);
}
