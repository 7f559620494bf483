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

#include "splinesir/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace splinesir {

namespace {

using Vec4 = Eigen::Vector4d;

struct Arc2 {
  KnotVector knots;
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
};

// Rational quadratic circular arc around `center` from angle theta0 to theta1,
// split into pieces of at most a quarter turn.
Arc2 circular_arc(const Eigen::Vector2d& center, double radius, double theta0, double theta1) {
  const double sweep = theta1 - theta0;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / (0.5 * std::numbers::pi) - 1e-12)));
  const double step = sweep / pieces;
  const double mid_weight = std::cos(0.5 * step);

  Arc2 arc;
  arc.knots.degree = 2;
  arc.knots.knots = {0.0, 0.0, 0.0};
  for (int k = 1; k < pieces; ++k) {
    const double t = static_cast<double>(k) / pieces;
    arc.knots.knots.insert(arc.knots.knots.end(), {t, t});
  }
  arc.knots.knots.insert(arc.knots.knots.end(), {1.0, 1.0, 1.0});

  auto on_circle = [&](double angle, double r) {
    return Eigen::Vector2d(center.x() + r * std::cos(angle), center.y() + r * std::sin(angle));
  };
  arc.points.push_back(on_circle(theta0, radius));
  arc.weights.push_back(1.0);
  for (int k = 0; k < pieces; ++k) {
    const double a0 = theta0 + k * step;
    arc.points.push_back(on_circle(a0 + 0.5 * step, radius / mid_weight));
    arc.weights.push_back(mid_weight);
    arc.points.push_back(on_circle(a0 + step, radius));
    arc.weights.push_back(1.0);
  }
  return arc;
}

// Boehm single knot insertion on a homogeneous control polygon.
void insert_knot(std::vector<double>& knots, int p, std::vector<Vec4>& poly, double u) {
  const int n = static_cast<int>(poly.size());
  int k = p;
  while (k + 1 < static_cast<int>(knots.size()) && knots[k + 1] <= u) ++k;
  std::vector<Vec4> out(n + 1);
  for (int i = 0; i <= k - p; ++i) out[i] = poly[i];
  for (int i = k - p + 1; i <= k; ++i) {
    const double alpha = (u - knots[i]) / (knots[i + p] - knots[i]);
    out[i] = alpha * poly[i] + (1.0 - alpha) * poly[i - 1];
  }
  for (int i = k + 1; i <= n; ++i) out[i] = poly[i - 1];
  knots.insert(knots.begin() + k + 1, u);
  poly = std::move(out);
}

// Raises every interior knot of `kv` to multiplicity p on each polygon.
KnotVector refine_to_bezier(const KnotVector& kv, std::vector<std::vector<Vec4>>& polys) {
  KnotVector out = kv;
  for (const double b : kv.interior_breaks()) {
    const int missing = kv.degree - kv.multiplicity(b);
    for (int r = 0; r < missing; ++r) {
      std::vector<double> knots = out.knots;
      for (auto& poly : polys) {
        knots = out.knots;
        insert_knot(knots, kv.degree, poly, b);
      }
      out.knots = std::move(knots);
    }
  }
  return out;
}

NurbsSurface from_homogeneous(const KnotVector& ku, const KnotVector& kv,
                              const std::vector<Vec4>& grid) {
  std::vector<Vec3> points(grid.size());
  std::vector<double> weights(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    weights[k] = grid[k].w();
    points[k] = grid[k].head<3>() / grid[k].w();
  }
  return {ku, kv, std::move(points), std::move(weights)};
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

KnotVector KnotVector::bezier(int degree) {
  KnotVector kv;
  kv.degree = degree;
  kv.knots.assign(static_cast<std::size_t>(degree + 1), 0.0);
  kv.knots.insert(kv.knots.end(), static_cast<std::size_t>(degree + 1), 1.0);
  return kv;
}

void KnotVector::validate() const {
  if (degree < 1) throw std::invalid_argument("knot vector: degree must be >= 1");
  const auto size = static_cast<int>(knots.size());
  if (size < 2 * (degree + 1)) throw std::invalid_argument("knot vector: too few knots");
  for (int k = 0; k + 1 < size; ++k) {
    if (knots[k + 1] < knots[k]) throw std::invalid_argument("knot vector: not nondecreasing");
  }
  for (int k = 0; k <= degree; ++k) {
    if (knots[k] != 0.0 || knots[size - 1 - k] != 1.0) {
      throw std::invalid_argument("knot vector: not clamped on [0, 1]");
    }
  }
  for (int k = degree + 1; k < size - degree - 1; ++k) {
    if (multiplicity(knots[k]) > degree) {
      throw std::invalid_argument("knot vector: interior multiplicity exceeds degree");
    }
  }
}

int KnotVector::find_span(double u) const {
  const int n = basis_count() - 1;
  if (u >= knots[n + 1]) return n;
  if (u <= knots[degree]) return degree;
  int low = degree;
  int high = n + 1;
  int mid = (low + high) / 2;
  while (u < knots[mid] || u >= knots[mid + 1]) {
    if (u < knots[mid]) {
      high = mid;
    } else {
      low = mid;
    }
    mid = (low + high) / 2;
  }
  return mid;
}

std::vector<double> KnotVector::interior_breaks() const {
  std::vector<double> out;
  for (const double k : knots) {
    if (k > 0.0 && k < 1.0 && (out.empty() || out.back() != k)) out.push_back(k);
  }
  return out;
}

int KnotVector::multiplicity(double u) const {
  return static_cast<int>(std::count(knots.begin(), knots.end(), u));
}

void eval_basis_and_derivative(const KnotVector& kv, int span, double u,
                               std::vector<double>& values,
                               std::vector<double>& derivatives) {
  const int p = kv.degree;
  const auto& U = kv.knots;
  std::vector<double> left(p + 1), right(p + 1);
  // ndu[j][r]: basis values (upper triangle incl. diagonal), knot differences (lower).
  std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - U[span + 1 - j];
    right[j] = U[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }
  values.resize(p + 1);
  derivatives.assign(p + 1, 0.0);
  for (int j = 0; j <= p; ++j) values[j] = ndu[j][p];
  for (int r = 0; r <= p; ++r) {
    double d = 0.0;
    if (r >= 1) d += ndu[r - 1][p - 1] / ndu[p][r - 1];
    if (r <= p - 1) d -= ndu[r][p - 1] / ndu[p][r];
    derivatives[r] = d * p;
  }
}

double eval_bspline_basis(const KnotVector& kv, int i, double u) {
  if (i < 0 || i >= kv.basis_count()) {
    throw std::out_of_range("eval_bspline_basis: index out of range");
  }
  const int span = kv.find_span(u);
  const int local = i - (span - kv.degree);
  if (local < 0 || local > kv.degree) return 0.0;
  std::vector<double> values, derivatives;
  eval_basis_and_derivative(kv, span, u, values, derivatives);
  return values[local];
}

NurbsSurface::NurbsSurface(KnotVector knots_u, KnotVector knots_v, std::vector<Vec3> points,
                           std::vector<double> weights)
    : knots_u_(std::move(knots_u)),
      knots_v_(std::move(knots_v)),
      points_(std::move(points)),
      weights_(std::move(weights)) {
  knots_u_.validate();
  knots_v_.validate();
  const auto expected = static_cast<std::size_t>(count_u()) * static_cast<std::size_t>(count_v());
  if (points_.size() != expected || weights_.size() != expected) {
    throw std::invalid_argument("nurbs surface: control grid does not match knot vectors");
  }
  for (const double w : weights_) {
    if (!(w > 0.0)) throw std::invalid_argument("nurbs surface: weights must be positive");
  }
}

bool NurbsSurface::is_bezier() const {
  return knots_u_.interior_breaks().empty() && knots_v_.interior_breaks().empty();
}

SurfaceFrame NurbsSurface::frame(double u, double v) const {
  const int pu = knots_u_.degree;
  const int pv = knots_v_.degree;
  const int su = knots_u_.find_span(u);
  const int sv = knots_v_.find_span(v);
  std::vector<double> nu, dnu, nv, dnv;
  eval_basis_and_derivative(knots_u_, su, u, nu, dnu);
  eval_basis_and_derivative(knots_v_, sv, v, nv, dnv);

  Vec3 a = Vec3::Zero(), au = Vec3::Zero(), av = Vec3::Zero();
  double w = 0.0, wu = 0.0, wv = 0.0;
  for (int k = 0; k <= pu; ++k) {
    const int i = su - pu + k;
    for (int l = 0; l <= pv; ++l) {
      const int j = sv - pv + l;
      const double wij = weight(i, j);
      const Vec3 pw = wij * point(i, j);
      a += nu[k] * nv[l] * pw;
      au += dnu[k] * nv[l] * pw;
      av += nu[k] * dnv[l] * pw;
      w += nu[k] * nv[l] * wij;
      wu += dnu[k] * nv[l] * wij;
      wv += nu[k] * dnv[l] * wij;
    }
  }

  SurfaceFrame f;
  f.position = a / w;
  f.tangent_u = (au - wu * f.position) / w;
  f.tangent_v = (av - wv * f.position) / w;
  const Vec3 cross = f.tangent_u.cross(f.tangent_v);
  f.jacobian_det = cross.norm();
  // Parallel tangents, or one tangent vanishing relative to the other (poles).
  const double scale = std::max(f.tangent_u.norm(), f.tangent_v.norm());
  if (!(f.jacobian_det > 1e-12 * f.tangent_u.norm() * f.tangent_v.norm()) ||
      !(f.jacobian_det > 1e-12 * scale * scale)) {
    throw DegenerateFrameError("surface frame is degenerate at (u, v) = (" +
                               std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  f.normal = cross / f.jacobian_det;
  return f;
}

Vec3 NurbsSurface::position(double u, double v) const {
  const int pu = knots_u_.degree;
  const int pv = knots_v_.degree;
  const int su = knots_u_.find_span(u);
  const int sv = knots_v_.find_span(v);
  std::vector<double> nu, dnu, nv, dnv;
  eval_basis_and_derivative(knots_u_, su, u, nu, dnu);
  eval_basis_and_derivative(knots_v_, sv, v, nv, dnv);
  Vec3 a = Vec3::Zero();
  double w = 0.0;
  for (int k = 0; k <= pu; ++k) {
    for (int l = 0; l <= pv; ++l) {
      const int i = su - pu + k;
      const int j = sv - pv + l;
      const double c = nu[k] * nv[l] * weight(i, j);
      a += c * point(i, j);
      w += c;
    }
  }
  return a / w;
}

std::vector<double> NurbsSurface::rational_basis(double u, double v) const {
  const int pu = knots_u_.degree;
  const int pv = knots_v_.degree;
  const int su = knots_u_.find_span(u);
  const int sv = knots_v_.find_span(v);
  std::vector<double> nu, dnu, nv, dnv;
  eval_basis_and_derivative(knots_u_, su, u, nu, dnu);
  eval_basis_and_derivative(knots_v_, sv, v, nv, dnv);
  std::vector<double> out(points_.size(), 0.0);
  double w = 0.0;
  for (int k = 0; k <= pu; ++k) {
    for (int l = 0; l <= pv; ++l) {
      const std::size_t idx = index(su - pu + k, sv - pv + l);
      out[idx] = nu[k] * nv[l] * weights_[idx];
      w += out[idx];
    }
  }
  for (double& b : out) b /= w;
  return out;
}

SurfaceFrame eval_surface(const NurbsSurface& s, double u, double v) { return s.frame(u, v); }

std::vector<BezierPatch> decompose_to_bezier(const NurbsSurface& s) {
  const int nu = s.count_u();
  const int nv = s.count_v();

  // Refine along u: one polygon per column j.
  std::vector<std::vector<Vec4>> columns(nv, std::vector<Vec4>(nu));
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double w = s.weight(i, j);
      columns[j][i] << w * s.point(i, j), w;
    }
  }
  const KnotVector ku = refine_to_bezier(s.knots_u(), columns);
  const int mu = static_cast<int>(columns.front().size());

  // Refine along v: one polygon per row i.
  std::vector<std::vector<Vec4>> rows(mu, std::vector<Vec4>(nv));
  for (int i = 0; i < mu; ++i) {
    for (int j = 0; j < nv; ++j) rows[i][j] = columns[j][i];
  }
  const KnotVector kv = refine_to_bezier(s.knots_v(), rows);
  const int mv = static_cast<int>(rows.front().size());

  auto breaks = [](const KnotVector& k) {
    std::vector<double> b = {0.0};
    for (const double x : k.interior_breaks()) b.push_back(x);
    b.push_back(1.0);
    return b;
  };
  const std::vector<double> bu = breaks(s.knots_u());
  const std::vector<double> bv = breaks(s.knots_v());
  const int pu = ku.degree;
  const int pv = kv.degree;

  std::vector<BezierPatch> patches;
  for (std::size_t a = 0; a + 1 < bu.size(); ++a) {
    for (std::size_t b = 0; b + 1 < bv.size(); ++b) {
      std::vector<Vec4> grid;
      grid.reserve(static_cast<std::size_t>((pu + 1) * (pv + 1)));
      for (int i = 0; i <= pu; ++i) {
        for (int j = 0; j <= pv; ++j) {
          const int gi = static_cast<int>(a) * pu + i;
          const int gj = static_cast<int>(b) * pv + j;
          if (gi >= mu || gj >= mv) throw std::logic_error("bezier extraction out of range");
          grid.push_back(rows[gi][gj]);
        }
      }
      BezierPatch patch{from_homogeneous(KnotVector::bezier(pu), KnotVector::bezier(pv), grid),
                        bu[a], bu[a + 1], bv[b], bv[b + 1]};
      patches.push_back(std::move(patch));
    }
  }
  return patches;
}

NurbsSurface make_rectangle(double width, double height) {
  require_positive(width, "rectangle width");
  require_positive(height, "rectangle height");
  std::vector<Vec3> points;
  for (const double x : {-0.5 * width, 0.5 * width}) {
    for (const double y : {-0.5 * height, 0.5 * height}) points.emplace_back(x, y, 0.0);
  }
  return {KnotVector::bezier(1), KnotVector::bezier(1), std::move(points), {1.0, 1.0, 1.0, 1.0}};
}

NurbsSurface make_spherical_cap(double aperture_diameter, double radius) {
  require_positive(aperture_diameter, "cap aperture");
  require_positive(radius, "cap radius");
  if (radius < 0.5 * aperture_diameter) {
    throw std::invalid_argument("cap radius must be at least half the aperture");
  }
  const double theta = std::asin(std::min(1.0, 0.5 * aperture_diameter / radius));
  const double quarter = 0.5 * std::numbers::pi;
  // Profile in the (x, z) plane around the sphere center (0, radius).
  const Arc2 profile = circular_arc({0.0, radius}, radius, -quarter, -quarter + theta);
  const Arc2 ring = circular_arc({0.0, 0.0}, 1.0, 0.0, 2.0 * std::numbers::pi);

  std::vector<Vec3> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    const double r = profile.points[i].x();
    const double z = profile.points[i].y();
    for (std::size_t j = 0; j < ring.points.size(); ++j) {
      points.emplace_back(r * ring.points[j].x(), r * ring.points[j].y(), z);
      weights.push_back(profile.weights[i] * ring.weights[j]);
    }
  }
  return {profile.knots, ring.knots, std::move(points), std::move(weights)};
}

NurbsSurface make_cylindrical_shell(double width, double height, double curvature_radius) {
  require_positive(width, "shell width");
  require_positive(height, "shell height");
  require_positive(curvature_radius, "shell radius");
  if (curvature_radius < 0.5 * width) {
    throw std::invalid_argument("shell radius must be at least half the width");
  }
  const double phi = std::asin(std::min(1.0, 0.5 * width / curvature_radius));
  const double quarter = 0.5 * std::numbers::pi;
  const Arc2 arc = circular_arc({0.0, curvature_radius}, curvature_radius, -quarter - phi, -quarter + phi);

  std::vector<Vec3> points;
  std::vector<double> weights;
  for (const double y : {0.5 * height, -0.5 * height}) {
    for (std::size_t j = 0; j < arc.points.size(); ++j) {
      points.emplace_back(arc.points[j].x(), y, arc.points[j].y());
      weights.push_back(arc.weights[j]);
    }
  }
  return {KnotVector::bezier(1), arc.knots, std::move(points), std::move(weights)};
}

NurbsSurface make_toroidal_shell(double width, double height, double convex_radius,
                                 double elevation_radius) {
  require_positive(width, "toroid width");
  require_positive(height, "toroid height");
  require_positive(convex_radius, "toroid convex radius");
  require_positive(elevation_radius, "toroid elevation radius");
  if (elevation_radius < 0.5 * height) {
    throw std::invalid_argument("toroid elevation radius must be at least half the height");
  }
  const double quarter = 0.5 * std::numbers::pi;
  const double phi = std::asin(std::min(1.0, 0.5 * height / elevation_radius));
  const double psi = 0.5 * width / convex_radius;
  if (psi >= std::numbers::pi) throw std::invalid_argument("toroid azimuth span exceeds a full turn");

  // Elevation profile in (y, z), from +y to -y.
  const Arc2 profile = circular_arc({0.0, elevation_radius}, elevation_radius, -quarter + phi, -quarter - phi);
  // Azimuth on the unit circle in (x, z + convex_radius), from -x to +x.
  const Arc2 azimuth = circular_arc({0.0, 0.0}, 1.0, quarter + psi, quarter - psi);

  std::vector<Vec3> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    const double y = profile.points[i].x();
    const double rho = profile.points[i].y() + convex_radius;
    for (std::size_t j = 0; j < azimuth.points.size(); ++j) {
      points.emplace_back(rho * azimuth.points[j].x(), y, rho * azimuth.points[j].y() - convex_radius);
      weights.push_back(profile.weights[i] * azimuth.weights[j]);
    }
  }
  NurbsSurface s(profile.knots, azimuth.knots, std::move(points), std::move(weights));
  if (s.frame(0.5, 0.5).normal.z() < 0.0) {
    // Reverse u so that the normal points to +z.
    const int nu = s.count_u();
    const int nv = s.count_v();
    std::vector<Vec3> p;
    std::vector<double> w;
    for (int i = nu - 1; i >= 0; --i) {
      for (int j = 0; j < nv; ++j) {
        p.push_back(s.point(i, j));
        w.push_back(s.weight(i, j));
      }
    }
    KnotVector ku = s.knots_u();
    std::vector<double> reversed(ku.knots.rbegin(), ku.knots.rend());
    for (double& k : reversed) k = 1.0 - k;
    ku.knots = reversed;
    s = NurbsSurface(ku, s.knots_v(), std::move(p), std::move(w));
  }
  return s;
}

NurbsSurface transform(const NurbsSurface& s, const Eigen::Matrix3d& rotation,
                       const Vec3& translation) {
  std::vector<Vec3> points;
  points.reserve(s.points().size());
  for (const Vec3& p : s.points()) points.push_back(rotation * p + translation);
  return {s.knots_u(), s.knots_v(), std::move(points), s.weights()};
}

double spherical_cap_depth(double aperture_diameter, double radius) {
  const double a = 0.5 * aperture_diameter;
  return radius - std::sqrt(radius * radius - a * a);
}

double spherical_cap_area(double aperture_diameter, double radius) {
  return 2.0 * std::numbers::pi * radius * spherical_cap_depth(aperture_diameter, radius);
}

double cylindrical_shell_area(double width, double height, double curvature_radius) {
  return height * 2.0 * curvature_radius * std::asin(0.5 * width / curvature_radius);
}

}  // namespace splinesir
