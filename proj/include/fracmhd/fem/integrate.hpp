#pragma once

#include "fracmhd/fem/space.hpp"

namespace fracmhd::fem {

enum class Quantity {
  SqNorm,  // int |v|^2
  SqDiv,   // int (div v)^2
  SqCurl,  // int (d1 v2 - d2 v1)^2
};

/// Element-wise degree-6 quadrature of the chosen integrand of a P2 vector
/// field (SqNorm also accepts scalar and P1 fields).
double integrate_quantity(Quantity kind, const Field& field);

/// int |v - f|^2 against a pointwise function, by the same rule.
double sq_l2_distance(const Field& field, const VectorFunction& f);

}  // namespace fracmhd::fem
