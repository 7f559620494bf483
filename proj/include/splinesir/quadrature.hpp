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

#ifndef SPLINESIR_QUADRATURE_HPP
#define SPLINESIR_QUADRATURE_HPP

#include <functional>
#include <iosfwd>
#include <vector>

#include "splinesir/geometry.hpp"

namespace splinesir {

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

GaussRule1D gauss_legendre(int n);

struct PointCounts {
  int n_u = 1;
  int n_v = 1;
};

// Polyline length of the iso-curve u = const (along v) or v = const (along u).
double iso_curve_length_u(const NurbsSurface& s, double v, int segments = 1024);
double iso_curve_length_v(const NurbsSurface& s, double u, int segments = 1024);

/**
 * Per-direction Gauss-Legendre counts for a patch at sampling rate fs.
 *
 * The arc length in a direction is the longest of the iso-curves at the
 * parameters 0, 1/2 and 1 of the other direction. The count is the smallest
 * odd integer not below length * fs / c + 1, so that the node spacing matches
 * the spatial sampling distance c / fs and the patch center is a node.
 */
PointCounts select_point_counts(const BezierPatch& patch, double sampling_rate, double sound_speed);

// Excitation distribution over the parent surface parameters (u, v).
using SurfaceDistribution = std::function<double(double u, double v)>;

// Quadrature points of a radiating surface. combined_weights carry the Gauss
// weights, the interval change and the Jacobian determinant (units m^2).
struct SampledSurface {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<double> combined_weights;
  std::vector<double> distribution;

  std::size_t size() const { return points.size(); }
  double area() const;
  void append(const SampledSurface& other);
  // A single point radiator, used for point-source checks.
  static SampledSurface point_source(const Vec3& position, const Vec3& normal, double weight);
};

SampledSurface sample_patch(const BezierPatch& patch, const GaussRule1D& rule_u,
                            const GaussRule1D& rule_v, const SurfaceDistribution& distribution = {});

// Decomposes the surface and samples each patch with counts chosen for
// `sampling_rate` (multiplied by `oversampling`).
SampledSurface sample_surface(const NurbsSurface& surface, double sampling_rate, double sound_speed,
                              double oversampling = 1.0,
                              const SurfaceDistribution& distribution = {});

// CSV with header x,y,z,nx,ny,nz,weight.
void write_csv(std::ostream& out, const SampledSurface& surface);

}  // namespace splinesir

#endif  // SPLINESIR_QUADRATURE_HPP
