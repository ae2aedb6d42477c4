#pragma once

#include <array>

namespace fracmhd::fem {

/// Point in barycentric coordinates with weight normalised to sum 1 over the
/// triangle (multiply by the area).
struct QuadPoint {
  double l0;
  double l1;
  double l2;
  double w;
};

/// Symmetric 12-point rule, exact for polynomials of degree 6 (Dunavant).
inline constexpr std::array<QuadPoint, 12> kDegree6Rule = [] {
  constexpr double b1 = 0.249286745170910421291638553107, a1 = 1.0 - 2.0 * b1;
  constexpr double b2 = 0.063089014491502228340331602870, a2 = 1.0 - 2.0 * b2;
  constexpr double a3 = 0.053145049844816947353249671631;
  constexpr double b3 = 0.310352451033784405416607733956, c3 = 1.0 - a3 - b3;
  constexpr double w1 = 0.116786275726379366030690538687;
  constexpr double w2 = 0.050844906370206816920936809106;
  constexpr double w3 = 0.082851075618373575193553456421;
  return std::array<QuadPoint, 12>{{
      {a1, b1, b1, w1}, {b1, a1, b1, w1}, {b1, b1, a1, w1},
      {a2, b2, b2, w2}, {b2, a2, b2, w2}, {b2, b2, a2, w2},
      {a3, b3, c3, w3}, {a3, c3, b3, w3}, {b3, a3, c3, w3},
      {c3, a3, b3, w3}, {b3, c3, a3, w3}, {c3, b3, a3, w3},
  }};
}();

}  // namespace fracmhd::fem
