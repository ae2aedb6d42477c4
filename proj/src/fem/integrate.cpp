#include "fracmhd/fem/integrate.hpp"

#include "fracmhd/errors.hpp"
#include "fracmhd/fem/reference.hpp"
#include "fracmhd/summation.hpp"

namespace fracmhd::fem {

double integrate_quantity(Quantity kind, const Field& field) {
  const FeSpace& sp = *field.space;
  if (kind != Quantity::SqNorm && (sp.components() != 2 || sp.degree() != 2)) {
    throw UsageError("integrate_quantity: div/curl need a P2 vector field");
  }
  const ReferenceElements ref(sp.mesh());
  const int nn = sp.num_nodes();
  const int nloc = sp.local_nodes();
  CompensatedSum total;
  for (int t = 0; t < sp.mesh().num_triangles(); ++t) {
    const auto& e = ref.type[Mesh::type(t)];
    const auto nodes = sp.element_nodes(t);
    double local = 0.0;
    for (int q = 0; q < kQuadPoints; ++q) {
      double val = 0.0;
      if (kind == Quantity::SqNorm) {
        for (int c = 0; c < sp.components(); ++c) {
          double v = 0.0;
          for (int i = 0; i < nloc; ++i) {
            const double phi = sp.degree() == 2 ? e.phi2[q][i] : e.phi1[q][i];
            v += phi * field.values[c * nn + nodes[static_cast<std::size_t>(i)]];
          }
          val += v * v;
        }
      } else {
        double d11 = 0.0, d22 = 0.0, d12 = 0.0, d21 = 0.0;  // d_a v_c as dac
        for (int i = 0; i < 6; ++i) {
          const int n = nodes[static_cast<std::size_t>(i)];
          const double v1 = field.values[n];
          const double v2 = field.values[nn + n];
          d11 += e.dphi2[q][i][0] * v1;
          d22 += e.dphi2[q][i][1] * v2;
          d12 += e.dphi2[q][i][0] * v2;
          d21 += e.dphi2[q][i][1] * v1;
        }
        const double s = kind == Quantity::SqDiv ? d11 + d22 : d12 - d21;
        val = s * s;
      }
      local += e.qw[q] * val;
    }
    total.add(local);
  }
  return total.value();
}

double sq_l2_distance(const Field& field, const VectorFunction& f) {
  const FeSpace& sp = *field.space;
  if (sp.components() != 2) throw UsageError("sq_l2_distance: vector field required");
  const ReferenceElements ref(sp.mesh());
  const int nn = sp.num_nodes();
  const double s = 1.0 / sp.mesh().cells_per_side();
  CompensatedSum total;
  for (int t = 0; t < sp.mesh().num_triangles(); ++t) {
    const auto& e = ref.type[Mesh::type(t)];
    const auto [ci, cj] = sp.mesh().cell(t);
    const auto nodes = sp.element_nodes(t);
    double local = 0.0;
    for (int q = 0; q < kQuadPoints; ++q) {
      const auto ex = f(ci * s + e.qpoint[q].x, cj * s + e.qpoint[q].y);
      for (int c = 0; c < 2; ++c) {
        double v = 0.0;
        for (int i = 0; i < sp.local_nodes(); ++i) {
          const double phi = sp.degree() == 2 ? e.phi2[q][i] : e.phi1[q][i];
          v += phi * field.values[c * nn + nodes[static_cast<std::size_t>(i)]];
        }
        local += e.qw[q] * (v - ex[static_cast<std::size_t>(c)]) * (v - ex[static_cast<std::size_t>(c)]);
      }
    }
    total.add(local);
  }
  return total.value();
}

}  // namespace fracmhd::fem
