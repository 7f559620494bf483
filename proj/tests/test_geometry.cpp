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

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "splinesir/geometry.hpp"

using namespace splinesir;

namespace {

constexpr double kLambda = 291e-6;

double bbox_diagonal(const NurbsSurface& s) {
  Vec3 lo = s.points().front(), hi = lo;
  for (const Vec3& p : s.points()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Degree (3, 2) surface with repeated interior knots and random weights.
NurbsSurface random_surface() {
  KnotVector ku{3, {0, 0, 0, 0, 0.2, 0.5, 0.5, 0.8, 1, 1, 1, 1}};
  KnotVector kv{2, {0, 0, 0, 0.3, 0.6, 1, 1, 1}};
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> pts;
  std::vector<double> w;
  for (int i = 0; i < ku.basis_count(); ++i) {
    for (int j = 0; j < kv.basis_count(); ++j) {
      pts.emplace_back(i + 0.3 * u(rng), j + 0.3 * u(rng), 0.5 * u(rng));
      w.push_back(1.0 + 0.5 * u(rng));
    }
  }
  return {ku, kv, pts, w};
}

}  // namespace

TEST_CASE("B-spline basis values") {
  CHECK(eval_bspline_basis({1, {0, 0, 1, 1}}, 0, 0.3) == doctest::Approx(0.7));
  CHECK(eval_bspline_basis({2, {0, 0, 0, 1, 1, 1}}, 1, 0.5) == doctest::Approx(0.5));
  const KnotVector kv{3, {0, 0, 0, 0, 0.25, 0.5, 0.5, 0.9, 1, 1, 1, 1}};
  CHECK(eval_bspline_basis(kv, kv.basis_count() - 1, 1.0) == 1.0);
  for (double u = 0.0; u <= 1.0; u += 0.01) {
    double sum = 0.0;
    for (int i = 0; i < kv.basis_count(); ++i) {
      const double b = eval_bspline_basis(kv, i, u);
      CHECK(b >= 0.0);
      sum += b;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(eval_bspline_basis(kv, kv.basis_count(), 0.5), std::out_of_range);
}

TEST_CASE("knot vector validation") {
  CHECK_THROWS_AS((KnotVector{2, {0, 0, 1, 1, 1}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((KnotVector{1, {0, 0, 0.7, 0.5, 1, 1}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((KnotVector{1, {0, 0.1, 1, 1}}.validate()), std::invalid_argument);
  CHECK_NOTHROW((KnotVector{2, {0, 0, 0, 0.5, 0.5, 1, 1, 1}}.validate()));
  CHECK_THROWS_AS(NurbsSurface(KnotVector::bezier(1), KnotVector::bezier(1),
                               {Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::Ones()},
                               {1, 1, 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("derivatives of basis functions match central differences") {
  const KnotVector kv{3, {0, 0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1, 1}};
  for (double u = 0.05; u < 1.0; u += 0.1) {
    const int span = kv.find_span(u);
    std::vector<double> v, d;
    eval_basis_and_derivative(kv, span, u, v, d);
    for (int k = 0; k <= kv.degree; ++k) {
      const int i = span - kv.degree + k;
      const double h = 1e-6;
      const double fd = (eval_bspline_basis(kv, i, u + h) - eval_bspline_basis(kv, i, u - h)) / (2 * h);
      CHECK(d[k] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("rectangle") {
  const NurbsSurface unit = make_rectangle(1.0, 1.0);
  const SurfaceFrame f = eval_surface(unit, 0.5, 0.5);
  CHECK(f.position.norm() < 1e-15);
  CHECK(f.jacobian_det == doctest::Approx(1.0));
  CHECK((f.normal - Vec3::UnitZ()).norm() < 1e-15);
  const NurbsSurface r = make_rectangle(kLambda, 10 * kLambda);
  for (double u = 0.0; u <= 1.0; u += 0.125) {
    for (double v = 0.0; v <= 1.0; v += 0.125) {
      const SurfaceFrame g = r.frame(u, v);
      CHECK((g.normal - Vec3::UnitZ()).norm() < 1e-15);
      CHECK(g.jacobian_det == doctest::Approx(10 * kLambda * kLambda));
      CHECK(g.position.x() == doctest::Approx((u - 0.5) * kLambda));
    }
  }
  CHECK_THROWS_AS(make_rectangle(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_rectangle(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("spherical cap lies on its sphere") {
  const double d = 20 * kLambda;
  const double r = 48 * kLambda;
  const NurbsSurface cap = make_spherical_cap(d, r);
  const Vec3 center(0, 0, r);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p = cap.position(u(rng), u(rng));
    CHECK(std::abs((p - center).norm() - r) < 1e-9 * r);
  }
  for (double v = 0.0; v <= 1.0; v += 0.05) {
    const Vec3 rim = cap.position(1.0, v);
    CHECK(std::hypot(rim.x(), rim.y()) == doctest::Approx(d / 2).epsilon(1e-12));
    CHECK(rim.z() == doctest::Approx(spherical_cap_depth(d, r)).epsilon(1e-12));
  }
  CHECK(cap.position(0.0, 0.3).norm() < 1e-15);
  // Normals point toward the center of curvature.
  for (int i = 0; i < 100; ++i) {
    const SurfaceFrame f = cap.frame(0.01 + 0.98 * u(rng), u(rng));
    CHECK(((center - f.position).normalized() - f.normal).norm() < 1e-9);
  }
  CHECK_THROWS_AS(cap.frame(0.0, 0.25), DegenerateFrameError);
  CHECK_THROWS_AS(make_spherical_cap(d, 0.4 * d), std::invalid_argument);
}

TEST_CASE("cylindrical shell") {
  const double w = 4e-3, h = 10e-3, r = 5e-3;
  const NurbsSurface s = make_cylindrical_shell(w, h, r);
  CHECK(s.knots_u().degree == 1);
  CHECK(s.knots_v().degree == 2);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const SurfaceFrame f = s.frame(u(rng), u(rng));
    CHECK(std::abs(std::hypot(f.position.x(), f.position.z() - r) - r) < 1e-9 * r);
    CHECK(std::abs(f.tangent_u.dot(f.tangent_v)) < 1e-9 * f.tangent_u.norm() * f.tangent_v.norm());
    CHECK(std::abs(f.normal.y()) < 1e-12);
  }
  // Arc length across the curved direction.
  double len = 0.0;
  Vec3 prev = s.position(0.5, 0.0);
  for (int k = 1; k <= 20000; ++k) {
    const Vec3 p = s.position(0.5, k / 20000.0);
    len += (p - prev).norm();
    prev = p;
  }
  CHECK(len == doctest::Approx(2 * r * std::asin(w / (2 * r))).epsilon(1e-8));
  CHECK(s.frame(0.5, 0.5).normal.z() == doctest::Approx(1.0));
  // Flat limit.
  const NurbsSurface flat = make_cylindrical_shell(w, h, 1e3);
  const NurbsSurface rect = make_rectangle(w, h);
  for (double a = 0.0; a <= 1.0; a += 0.25) {
    for (double b = 0.0; b <= 1.0; b += 0.25) {
      const Vec3 p = flat.position(a, b);
      const Vec3 q = rect.position(b, 1.0 - a);
      CHECK((p - q).norm() < 1e-8);
    }
  }
  CHECK_THROWS_AS(make_cylindrical_shell(w, h, 0.4 * w), std::invalid_argument);
}

TEST_CASE("toroidal shell") {
  const double w = 6e-3, h = 4e-3, rc = 20e-3, re = 30e-3;
  const NurbsSurface s = make_toroidal_shell(w, h, rc, re);
  const SurfaceFrame c = s.frame(0.5, 0.5);
  CHECK(c.position.norm() < 1e-12);
  CHECK(c.normal.z() == doctest::Approx(1.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Vec3 p = s.position(u(rng), u(rng));
    // The elevation circle's center sits at distance rc + re from the revolution axis.
    const double rho = std::hypot(p.x(), p.z() + rc);
    CHECK(std::abs(std::hypot(rho - (rc + re), p.y()) - re) < 1e-9 * re);
  }
}

TEST_CASE("tangents match central differences") {
  const std::vector<NurbsSurface> shapes = {
      make_rectangle(kLambda, 10 * kLambda), make_spherical_cap(20 * kLambda, 48 * kLambda),
      make_cylindrical_shell(4e-3, 8e-3, 3e-3), make_toroidal_shell(6e-3, 4e-3, 20e-3, 30e-3),
      random_surface()};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (const auto& s : shapes) {
    for (int i = 0; i < 100; ++i) {
      const double a = u(rng), b = u(rng);
      const SurfaceFrame f = s.frame(a, b);
      const double h = 1e-6;
      const Vec3 du = (s.position(a + h, b) - s.position(a - h, b)) / (2 * h);
      const Vec3 dv = (s.position(a, b + h) - s.position(a, b - h)) / (2 * h);
      CHECK((du - f.tangent_u).norm() <= 1e-6 * f.tangent_u.norm());
      CHECK((dv - f.tangent_v).norm() <= 1e-6 * f.tangent_v.norm());
      CHECK(std::abs(f.normal.norm() - 1.0) < 1e-12);
      CHECK(f.normal.cross(f.tangent_u.cross(f.tangent_v)).norm() < 1e-12 * f.jacobian_det);
    }
  }
}

TEST_CASE("rational basis is a partition of unity") {
  const NurbsSurface s = random_surface();
  for (double a = 0.0; a <= 1.0; a += 0.05) {
    for (double b = 0.0; b <= 1.0; b += 0.05) {
      double sum = 0.0;
      for (const double x : s.rational_basis(a, b)) sum += x;
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Bezier decomposition") {
  SUBCASE("patch counts") {
    CHECK(decompose_to_bezier(make_spherical_cap(20 * kLambda, 48 * kLambda)).size() == 4);
    CHECK(decompose_to_bezier(make_rectangle(kLambda, 10 * kLambda)).size() == 1);
    CHECK(decompose_to_bezier(random_surface()).size() == 4 * 3);
  }
  SUBCASE("surface without interior knots is returned unchanged") {
    const NurbsSurface r = make_cylindrical_shell(4e-3, 8e-3, 3e-3);
    const auto patches = decompose_to_bezier(r);
    REQUIRE(patches.size() == 1);
    CHECK(patches[0].surface.points() == r.points());
    CHECK(patches[0].surface.weights() == r.weights());
  }
  SUBCASE("geometry is preserved") {
    for (const auto& s : {make_spherical_cap(20 * kLambda, 48 * kLambda), random_surface(),
                          make_spherical_cap(2e-3, 1e-3)}) {
      const auto patches = decompose_to_bezier(s);
      for (const auto& p : patches) CHECK(p.surface.is_bezier());
      const double tol = 1e-12 * bbox_diagonal(s);
      double worst = 0.0;
      for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
          const double u = i / 100.0, v = j / 100.0;
          for (const auto& p : patches) {
            if (u < p.u0 || u > p.u1 || v < p.v0 || v > p.v1) continue;
            worst = std::max(worst, (p.surface.position(p.local_u(u), p.local_v(v)) - s.position(u, v)).norm());
          }
        }
      }
      CHECK(worst < tol);
    }
  }
}

TEST_CASE("rigid transform") {
  const NurbsSurface s = make_rectangle(1.0, 2.0);
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.3, Vec3::UnitY()).toRotationMatrix();
  const NurbsSurface t = transform(s, rot, Vec3(1, 2, 3));
  const SurfaceFrame a = s.frame(0.2, 0.7);
  const SurfaceFrame b = t.frame(0.2, 0.7);
  CHECK((rot * a.position + Vec3(1, 2, 3) - b.position).norm() < 1e-14);
  CHECK((rot * a.normal - b.normal).norm() < 1e-14);
  CHECK(a.jacobian_det == doctest::Approx(b.jacobian_det));
}
