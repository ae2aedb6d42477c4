#pragma once

// Initial data, exact solutions and forcing of the benchmark problems.

#include <array>
#include <functional>

#include "fracmhd/fem/space.hpp"
#include "fracmhd/order_profile.hpp"

namespace fracmhd::mhd {

using SpaceTimeFunction = std::function<std::array<double, 2>(double, double, double)>;

struct InitialData {
  fem::VectorFunction u0;  // empty: zero
  fem::VectorFunction B0;
};

/// Right-hand sides f (momentum) and g (induction); empty members are zero.
struct Forcing {
  SpaceTimeFunction f;
  SpaceTimeFunction g;
};

/// u = t^4 U(x), B = t^3 U(x), p = 0 with the divergence-free polynomial field
/// U = (a(x) a'(y), -a'(x) a(y)), a(s) = s^2 (1 - s)^2.
struct ManufacturedSolution {
  static std::array<double, 2> U(double x, double y);
  static std::array<double, 2> u(double x, double y, double t);
  static std::array<double, 2> B(double x, double y, double t);
};

/// f and g for the manufactured solution with orders alpha, beta; a null
/// profile stands for the first time derivative.
Forcing manufactured_forcing(double Re, double Rm, const OrderProfile* alpha,
                             const OrderProfile* beta);

/// Periodic divergence-free vortex.
InitialData vortex_initial_data();

/// Dirichlet initial data of the classical-limit study.
InitialData limit_initial_data();

}  // namespace fracmhd::mhd
