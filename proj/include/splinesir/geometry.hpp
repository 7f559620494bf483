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

#ifndef SPLINESIR_GEOMETRY_HPP
#define SPLINESIR_GEOMETRY_HPP

#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace splinesir {

using Vec3 = Eigen::Vector3d;

class DegenerateFrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Clamped knot vector on [0, 1].
struct KnotVector {
  int degree = 1;
  std::vector<double> knots;

  static KnotVector bezier(int degree);

  int basis_count() const { return static_cast<int>(knots.size()) - degree - 1; }
  // Throws std::invalid_argument unless clamped, nondecreasing and on [0, 1].
  void validate() const;
  // Span index s with knots[s] <= u < knots[s+1]; u = 1 maps to the last span.
  int find_span(double u) const;
  // Distinct knot values strictly inside (0, 1).
  std::vector<double> interior_breaks() const;
  int multiplicity(double u) const;
};

// i-th B-spline basis function of degree kv.degree at u.
double eval_bspline_basis(const KnotVector& kv, int i, double u);

// Nonzero basis values and first derivatives at u: ders[0][k], ders[1][k]
// for functions span-degree .. span.
void eval_basis_and_derivative(const KnotVector& kv, int span, double u,
                               std::vector<double>& values,
                               std::vector<double>& derivatives);

struct SurfaceFrame {
  Vec3 position;
  Vec3 tangent_u;
  Vec3 tangent_v;
  Vec3 normal;
  double jacobian_det = 0.0;
};

class NurbsSurface {
 public:
  NurbsSurface() = default;
  // Control points and weights are stored row-major with i (u direction) outer.
  NurbsSurface(KnotVector knots_u, KnotVector knots_v, std::vector<Vec3> points,
               std::vector<double> weights);

  const KnotVector& knots_u() const { return knots_u_; }
  const KnotVector& knots_v() const { return knots_v_; }
  int count_u() const { return knots_u_.basis_count(); }
  int count_v() const { return knots_v_.basis_count(); }
  const Vec3& point(int i, int j) const { return points_[index(i, j)]; }
  double weight(int i, int j) const { return weights_[index(i, j)]; }
  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  bool is_bezier() const;

  Vec3 position(double u, double v) const;
  // Throws DegenerateFrameError when the tangents are (numerically) parallel.
  SurfaceFrame frame(double u, double v) const;
  // Denominator-normalized basis values at (u, v); they sum to one.
  std::vector<double> rational_basis(double u, double v) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(count_v()) +
           static_cast<std::size_t>(j);
  }

  KnotVector knots_u_;
  KnotVector knots_v_;
  std::vector<Vec3> points_;
  std::vector<double> weights_;
};

SurfaceFrame eval_surface(const NurbsSurface& s, double u, double v);

// Single-span piece of a NURBS surface together with the parameter box of the
// parent surface it reparameterizes.
struct BezierPatch {
  NurbsSurface surface;
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;

  double local_u(double u) const { return (u - u0) / (u1 - u0); }
  double local_v(double v) const { return (v - v0) / (v1 - v0); }
};

// Knot insertion until every interior knot has full multiplicity, then
// extraction of the (count of spans in u) x (count of spans in v) patches.
std::vector<BezierPatch> decompose_to_bezier(const NurbsSurface& s);

// Bilinear plane centered at the origin; u along x (width), v along y (height), normal +z.
NurbsSurface make_rectangle(double width, double height);

// Spherical cap with its apex at the origin and the sphere center on +z at
// distance `radius`. u runs along the profile from apex to rim, v revolves
// about z in four quarter arcs. Normal points toward the center.
NurbsSurface make_spherical_cap(double aperture_diameter, double radius);

// Degree (1, 2) cylindrical shell; u runs along y (height), v is the arc
// across x on the cylinder with axis parallel to y through (0, 0, radius).
NurbsSurface make_cylindrical_shell(double width, double height, double curvature_radius);

// Degree (2, 2) toroidal shell: an elevation arc of radius `elevation_radius`
// (concave, focusing in y-z) revolved about the axis parallel to y through
// (0, 0, -convex_radius) over an azimuthal arc length `width` at the apex.
// Normal +z at the center.
NurbsSurface make_toroidal_shell(double width, double height, double convex_radius,
                                 double elevation_radius);

// Rigid motion x -> rotation * x + translation applied to control points.
NurbsSurface transform(const NurbsSurface& s, const Eigen::Matrix3d& rotation,
                       const Vec3& translation);

// Exact areas used as test references.
double spherical_cap_area(double aperture_diameter, double radius);
double spherical_cap_depth(double aperture_diameter, double radius);
double cylindrical_shell_area(double width, double height, double curvature_radius);

}  // namespace splinesir

#endif  // SPLINESIR_GEOMETRY_HPP
