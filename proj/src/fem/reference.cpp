#include "fracmhd/fem/reference.hpp"

namespace fracmhd::fem {

std::array<double, 6> p2_values(double l0, double l1, double l2) {
  return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
          4.0 * l0 * l1,         4.0 * l1 * l2,         4.0 * l2 * l0};
}

namespace {

ElementTables build(const Mesh& mesh, int type) {
  ElementTables e;
  const double s = 1.0 / mesh.cells_per_side();
  if (type == 0) {
    e.vertices = {Point{0.0, 0.0}, Point{s, 0.0}, Point{s, s}};
  } else {
    e.vertices = {Point{0.0, 0.0}, Point{s, s}, Point{0.0, s}};
  }
  const auto& p = e.vertices;
  const double det = (p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[2].x - p[0].x) * (p[1].y - p[0].y);
  e.area = 0.5 * det;
  for (int i = 0; i < 3; ++i) {
    const Point& a = p[(i + 1) % 3];
    const Point& b = p[(i + 2) % 3];
    e.grad_lambda[i] = {(a.y - b.y) / det, (b.x - a.x) / det};
  }
  const auto& gl = e.grad_lambda;
  for (int i = 0; i < 3; ++i) e.dphi1[i] = gl[i];

  static constexpr int edge[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (int q = 0; q < kQuadPoints; ++q) {
    const QuadPoint& qp = kDegree6Rule[static_cast<std::size_t>(q)];
    const double l[3] = {qp.l0, qp.l1, qp.l2};
    e.qw[q] = qp.w * e.area;
    e.qpoint[q] = {l[0] * p[0].x + l[1] * p[1].x + l[2] * p[2].x,
                   l[0] * p[0].y + l[1] * p[1].y + l[2] * p[2].y};
    e.phi2[q] = p2_values(l[0], l[1], l[2]);
    for (int i = 0; i < 3; ++i) {
      e.phi1[q][i] = l[i];
      for (int c = 0; c < 2; ++c) e.dphi2[q][i][c] = (4.0 * l[i] - 1.0) * gl[i][c];
    }
    for (int k = 0; k < 3; ++k) {
      const int a = edge[k][0];
      const int b = edge[k][1];
      for (int c = 0; c < 2; ++c) e.dphi2[q][3 + k][c] = 4.0 * (l[a] * gl[b][c] + l[b] * gl[a][c]);
    }
  }

  e.mass2.setZero();
  e.stiff2.setZero();
  e.mass1.setZero();
  e.stiff1.setZero();
  for (auto& row : e.dd2) for (auto& m : row) m.setZero();
  for (auto& m : e.adv2) m.setZero();
  for (auto& m : e.pdiv) m.setZero();
  for (auto& c : e.skew) for (auto& m : c) m.setZero();
  e.int_phi2.fill(0.0);
  e.int_phi1.fill(0.0);

  for (int q = 0; q < kQuadPoints; ++q) {
    const double w = e.qw[q];
    const auto& v = e.phi2[q];
    const auto& d = e.dphi2[q];
    for (int i = 0; i < 6; ++i) {
      e.int_phi2[i] += w * v[i];
      for (int j = 0; j < 6; ++j) {
        e.mass2(i, j) += w * v[i] * v[j];
        e.stiff2(i, j) += w * (d[i][0] * d[j][0] + d[i][1] * d[j][1]);
        for (int a = 0; a < 2; ++a) {
          e.adv2[a](i, j) += w * v[i] * d[j][a];
          for (int b = 0; b < 2; ++b) e.dd2[a][b](i, j) += w * d[i][a] * d[j][b];
        }
        for (int c = 0; c < 2; ++c) {
          const double anti = 0.5 * w * (v[i] * d[j][c] - v[j] * d[i][c]);
          for (int m = 0; m < 6; ++m) e.skew[c][m](i, j) += v[m] * anti;
        }
      }
      for (int k = 0; k < 3; ++k) {
        for (int a = 0; a < 2; ++a) e.pdiv[a](i, k) += w * e.phi1[q][k] * d[i][a];
      }
    }
    for (int k = 0; k < 3; ++k) {
      e.int_phi1[k] += w * e.phi1[q][k];
      for (int l = 0; l < 3; ++l) {
        e.mass1(k, l) += w * e.phi1[q][k] * e.phi1[q][l];
        e.stiff1(k, l) += w * (e.dphi1[k][0] * e.dphi1[l][0] + e.dphi1[k][1] * e.dphi1[l][1]);
      }
    }
  }
  return e;
}

}  // namespace

ReferenceElements::ReferenceElements(const Mesh& mesh) : type{build(mesh, 0), build(mesh, 1)} {}

}  // namespace fracmhd::fem
