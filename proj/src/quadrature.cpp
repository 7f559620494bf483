/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "splinesir/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace splinesir {

GaussRule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule1D rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

double iso_curve_length_u(const NurbsSurface& s, double v, int segments) {
  double length = 0.0;
  Vec3 prev = s.position(0.0, v);
  for (int k = 1; k <= segments; ++k) {
    const Vec3 next = s.position(static_cast<double>(k) / segments, v);
    length += (next - prev).norm();
    prev = next;
  }
  return length;
}

double iso_curve_length_v(const NurbsSurface& s, double u, int segments) {
  double length = 0.0;
  Vec3 prev = s.position(u, 0.0);
  for (int k = 1; k <= segments; ++k) {
    const Vec3 next = s.position(u, static_cast<double>(k) / segments);
    length += (next - prev).norm();
    prev = next;
  }
  return length;
}

PointCounts select_point_counts(const BezierPatch& patch, double sampling_rate, double sound_speed) {
  if (!(sampling_rate > 0.0) || !(sound_speed > 0.0)) {
    throw std::invalid_argument("select_point_counts: rate and sound speed must be positive");
  }
  double length_u = 0.0;
  double length_v = 0.0;
  for (const double t : {0.0, 0.5, 1.0}) {
    length_u = std::max(length_u, iso_curve_length_u(patch.surface, t));
    length_v = std::max(length_v, iso_curve_length_v(patch.surface, t));
  }
  auto count = [&](double length) {
    auto n = static_cast<int>(std::ceil(length * sampling_rate / sound_speed + 1.0 - 1e-9));
    if (n % 2 == 0) ++n;
    return std::max(n, 1);
  };
  return {count(length_u), count(length_v)};
}

double SampledSurface::area() const {
  double a = 0.0;
  for (const double w : combined_weights) a += w;
  return a;
}

void SampledSurface::append(const SampledSurface& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  normals.insert(normals.end(), other.normals.begin(), other.normals.end());
  combined_weights.insert(combined_weights.end(), other.combined_weights.begin(),
                          other.combined_weights.end());
  distribution.insert(distribution.end(), other.distribution.begin(), other.distribution.end());
}

SampledSurface SampledSurface::point_source(const Vec3& position, const Vec3& normal, double weight) {
  SampledSurface s;
  s.points = {position};
  s.normals = {normal.normalized()};
  s.combined_weights = {weight};
  s.distribution = {1.0};
  return s;
}

SampledSurface sample_patch(const BezierPatch& patch, const GaussRule1D& rule_u,
                            const GaussRule1D& rule_v, const SurfaceDistribution& distribution) {
  SampledSurface out;
  const auto total = static_cast<std::size_t>(rule_u.size()) * static_cast<std::size_t>(rule_v.size());
  out.points.reserve(total);
  out.normals.reserve(total);
  out.combined_weights.reserve(total);
  out.distribution.reserve(total);
  for (int a = 0; a < rule_u.size(); ++a) {
    const double u = 0.5 * (rule_u.nodes[a] + 1.0);
    for (int b = 0; b < rule_v.size(); ++b) {
      const double v = 0.5 * (rule_v.nodes[b] + 1.0);
      const SurfaceFrame f = patch.surface.frame(u, v);
      out.points.push_back(f.position);
      out.normals.push_back(f.normal);
      out.combined_weights.push_back(0.25 * rule_u.weights[a] * rule_v.weights[b] * f.jacobian_det);
      if (distribution) {
        out.distribution.push_back(distribution(patch.u0 + u * (patch.u1 - patch.u0),
                                                patch.v0 + v * (patch.v1 - patch.v0)));
      } else {
        out.distribution.push_back(1.0);
      }
    }
  }
  return out;
}

SampledSurface sample_surface(const NurbsSurface& surface, double sampling_rate, double sound_speed,
                              double oversampling, const SurfaceDistribution& distribution) {
  SampledSurface out;
  for (const BezierPatch& patch : decompose_to_bezier(surface)) {
    const PointCounts n = select_point_counts(patch, sampling_rate * oversampling, sound_speed);
    out.append(sample_patch(patch, gauss_legendre(n.n_u), gauss_legendre(n.n_v), distribution));
  }
  return out;
}

void write_csv(std::ostream& out, const SampledSurface& surface) {
  out << "x,y,z,nx,ny,nz,weight\n";
  out.precision(17);
  for (std::size_t q = 0; q < surface.size(); ++q) {
    const Vec3& p = surface.points[q];
    const Vec3& n = surface.normals[q];
    out << p.x() << ',' << p.y() << ',' << p.z() << ',' << n.x() << ',' << n.y() << ','
        << n.z() << ',' << surface.combined_weights[q] << '\n';
  }
}

}  // namespace splinesir
