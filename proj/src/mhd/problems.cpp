#include "fracmhd/mhd/problems.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "fracmhd/l1_kernel.hpp"

namespace fracmhd::mhd {

namespace {

// a(s) = s^2 (1 - s)^2 and its derivatives.
struct Poly {
  double v, d1, d2, d3;
};

Poly a_of(double s) {
  const double q = 1.0 - s;
  return {s * s * q * q, 4.0 * s * s * s - 6.0 * s * s + 2.0 * s, 12.0 * s * s - 12.0 * s + 2.0,
          24.0 * s - 12.0};
}

// U, its gradient G[i][j] = d_j U_i and Laplacian.
struct Profile {
  std::array<double, 2> U;
  std::array<std::array<double, 2>, 2> G;
  std::array<double, 2> lap;
};

Profile profile(double x, double y) {
  const Poly ax = a_of(x);
  const Poly ay = a_of(y);
  Profile p;
  p.U = {ax.v * ay.d1, -ax.d1 * ay.v};
  p.G[0] = {ax.d1 * ay.d1, ax.v * ay.d2};
  p.G[1] = {-ax.d2 * ay.v, -ax.d1 * ay.d1};
  p.lap = {ax.d2 * ay.d1 + ax.v * ay.d3, -ax.d3 * ay.v - ax.d1 * ay.d2};
  return p;
}

// Time derivative of t^m of order nu(t), or the first derivative.
double time_derivative(const OrderProfile* nu, double m, double t) {
  if (nu == nullptr) return m * std::pow(t, m - 1.0);
  return caputo_monomial(*nu, m, t);
}

}  // namespace

std::array<double, 2> ManufacturedSolution::U(double x, double y) { return profile(x, y).U; }

std::array<double, 2> ManufacturedSolution::u(double x, double y, double t) {
  const auto v = U(x, y);
  const double s = std::pow(t, 4);
  return {s * v[0], s * v[1]};
}

std::array<double, 2> ManufacturedSolution::B(double x, double y, double t) {
  const auto v = U(x, y);
  const double s = std::pow(t, 3);
  return {s * v[0], s * v[1]};
}

Forcing manufactured_forcing(double Re, double Rm, const OrderProfile* alpha,
                             const OrderProfile* beta) {
  std::optional<OrderProfile> a;
  std::optional<OrderProfile> b;
  if (alpha) a = *alpha;
  if (beta) b = *beta;
  Forcing F;
  F.f = [Re, a](double x, double y, double t) -> std::array<double, 2> {
    const Profile p = profile(x, y);
    const double tu = std::pow(t, 4);
    const double tb = std::pow(t, 3);
    const double dt = time_derivative(a ? &*a : nullptr, 4.0, t);
    const double j = tb * (p.G[1][0] - p.G[0][1]);  // curl B
    std::array<double, 2> out{};
    for (int i = 0; i < 2; ++i) {
      const double conv = tu * tu * (p.U[0] * p.G[i][0] + p.U[1] * p.G[i][1]);
      out[i] = dt * p.U[i] + conv - tu / Re * p.lap[i];
    }
    // -(curl B) x B = (j B_2, -j B_1)
    out[0] += j * tb * p.U[1];
    out[1] -= j * tb * p.U[0];
    return out;
  };
  F.g = [Rm, b](double x, double y, double t) -> std::array<double, 2> {
    const Profile p = profile(x, y);
    const double tb = std::pow(t, 3);
    const double dt = time_derivative(b ? &*b : nullptr, 3.0, t);
    // u and B share the profile U, so curl(u x B) = (B.grad) u - (u.grad) B = 0.
    std::array<double, 2> out{};
    for (int i = 0; i < 2; ++i) out[i] = dt * p.U[i] - tb / Rm * p.lap[i];
    return out;
  };
  return F;
}

InitialData vortex_initial_data() {
  using std::numbers::pi;
  InitialData d;
  d.u0 = [](double x, double y) -> std::array<double, 2> {
    return {std::sin(2 * pi * x) * std::cos(2 * pi * y), -std::cos(2 * pi * x) * std::sin(2 * pi * y)};
  };
  d.B0 = [](double x, double y) -> std::array<double, 2> {
    return {2 * std::sin(8 * pi * x) * std::cos(8 * pi * y), -2 * std::cos(8 * pi * x) * std::sin(8 * pi * y)};
  };
  return d;
}

InitialData limit_initial_data() {
  using std::numbers::pi;
  InitialData d;
  d.u0 = [](double x, double y) -> std::array<double, 2> {
    const double sx = std::sin(pi * x);
    const double sy = std::sin(pi * y);
    return {2 * pi * sx * sx * sy * std::cos(pi * y), -2 * pi * sx * std::cos(pi * x) * sy * sy};
  };
  d.B0 = [](double x, double y) -> std::array<double, 2> {
    const double sx = std::sin(pi * x);
    const double s2 = std::sin(2 * pi * y);
    return {0.8 * pi * sx * sx * s2 * std::cos(2 * pi * y), -0.4 * pi * sx * std::cos(pi * x) * s2 * s2};
  };
  return d;
}

}  // namespace fracmhd::mhd
