#pragma once

#include <array>
#include <cmath>

#include "fracmhd/errors.hpp"

namespace fracmhd::fem {

struct Point {
  double x;
  double y;
};

/// Uniform triangulation of the unit square: M x M cells, each split along the
/// diagonal from (0,0) to (1,1) into a lower (type 0) and upper (type 1)
/// triangle. Triangle t lives in cell t / 2 and has type t % 2.
class Mesh {
 public:
  explicit Mesh(int cells_per_side) : M_(cells_per_side) {
    if (cells_per_side < 2) throw ConfigError("mesh: need at least 2 cells per side");
  }

  [[nodiscard]] int cells_per_side() const noexcept { return M_; }
  [[nodiscard]] double h() const noexcept { return std::sqrt(2.0) / M_; }
  [[nodiscard]] int num_vertices() const noexcept { return (M_ + 1) * (M_ + 1); }
  [[nodiscard]] int num_triangles() const noexcept { return 2 * M_ * M_; }

  [[nodiscard]] static int type(int t) noexcept { return t % 2; }
  /// Lower-left corner (i, j) of the cell containing triangle t.
  [[nodiscard]] std::array<int, 2> cell(int t) const noexcept {
    const int c = t / 2;
    return {c % M_, c / M_};
  }

  /// Vertex indices (counter-clockwise).
  [[nodiscard]] std::array<int, 3> triangle(int t) const noexcept {
    const auto [i, j] = cell(t);
    const int v00 = j * (M_ + 1) + i;
    const int v10 = v00 + 1;
    const int v01 = v00 + M_ + 1;
    const int v11 = v01 + 1;
    if (type(t) == 0) return {v00, v10, v11};
    return {v00, v11, v01};
  }

  [[nodiscard]] Point vertex(int v) const noexcept {
    return {static_cast<double>(v % (M_ + 1)) / M_, static_cast<double>(v / (M_ + 1)) / M_};
  }

 private:
  int M_;
};

}  // namespace fracmhd::fem
