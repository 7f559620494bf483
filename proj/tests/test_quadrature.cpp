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
#include <sstream>

#include <doctest.h>

#include "splinesir/quadrature.hpp"
#include "splinesir/waveform.hpp"

using namespace splinesir;

TEST_CASE("small Gauss-Legendre rules") {
  const GaussRule1D one = gauss_legendre(1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(2.0));
  const GaussRule1D two = gauss_legendre(2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(two.weights[0] == doctest::Approx(1.0));
  CHECK(two.weights[1] == doctest::Approx(1.0));
  const GaussRule1D five = gauss_legendre(5);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += five.weights[i] * std::pow(five.nodes[i], 9);
  CHECK(std::abs(s) < 1e-14);
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre invariants and exactness") {
  for (int n = 1; n <= 64; ++n) {
    const GaussRule1D r = gauss_legendre(n);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      wsum += r.weights[i];
      CHECK(r.weights[i] > 0.0);
      CHECK(r.nodes[i] == -r.nodes[n - 1 - i]);
      CHECK(r.weights[i] == r.weights[n - 1 - i]);
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK(std::abs(wsum - 2.0) < 1e-13);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      INFO("n=" << n << " k=" << k);
      CHECK(std::abs(q - exact) < 1e-12);
    }
  }
  // Large rules stay accurate.
  const GaussRule1D big = gauss_legendre(243);
  double wsum = 0.0;
  for (const double w : big.weights) wsum += w;
  CHECK(std::abs(wsum - 2.0) < 1e-13);
}

TEST_CASE("count heuristic on the reference shapes") {
  const double c = 1540.0;
  const double lambda = center_wavelength(PulseModel::reference(), c);
  const auto rect = decompose_to_bezier(make_rectangle(lambda, 10 * lambda));
  const auto cap = decompose_to_bezier(make_spherical_cap(20 * lambda, 48 * lambda));
  auto near = [](PointCounts got, int nu, int nv) {
    return std::abs(got.n_u - nu) <= 2 && std::abs(got.n_v - nv) <= 2;
  };
  CHECK(near(select_point_counts(rect[0], 30e6, c), 7, 59));
  CHECK(near(select_point_counts(rect[0], 80e6, c), 17, 155));
  for (const auto& p : cap) {
    CHECK(near(select_point_counts(p, 30e6, c), 59, 91));
    CHECK(near(select_point_counts(p, 80e6, c), 155, 243));
  }
  const PointCounts n = select_point_counts(rect[0], 30e6, c);
  CHECK(n.n_u % 2 == 1);
  CHECK(n.n_v % 2 == 1);
  // Node spacing does not exceed the spatial sampling distance.
  CHECK(lambda / n.n_u <= c / 30e6);
  CHECK(10 * lambda / n.n_v <= c / 30e6);
  CHECK_THROWS_AS(select_point_counts(rect[0], 0.0, c), std::invalid_argument);
}

TEST_CASE("sampled areas") {
  SUBCASE("unit square with a 2 x 2 rule") {
    const auto patch = decompose_to_bezier(make_rectangle(1.0, 1.0)).front();
    const SampledSurface s = sample_patch(patch, gauss_legendre(2), gauss_legendre(2));
    CHECK(s.size() == 4);
    CHECK(std::abs(s.area() - 1.0) < 1e-13);
    for (const double d : s.distribution) CHECK(d == 1.0);
  }
  SUBCASE("spherical cap at the heuristic counts") {
    const double lambda = 1540.0 / 5.24e6;
    const double d = 20 * lambda, r = 48 * lambda;
    for (const double fs : {30e6, 80e6}) {
      const SampledSurface s = sample_surface(make_spherical_cap(d, r), fs, 1540.0);
      CHECK(std::abs(s.area() / spherical_cap_area(d, r) - 1.0) < 1e-9);
    }
  }
  SUBCASE("rectangle and cylinder") {
    const double lambda = 1540.0 / 5.24e6;
    const SampledSurface s = sample_surface(make_rectangle(lambda, 10 * lambda), 30e6, 1540.0);
    CHECK(std::abs(s.area() / (10 * lambda * lambda) - 1.0) < 1e-9);
    const SampledSurface c = sample_surface(make_cylindrical_shell(4e-3, 6e-3, 3e-3), 30e6, 1540.0);
    CHECK(std::abs(c.area() / cylindrical_shell_area(4e-3, 6e-3, 3e-3) - 1.0) < 1e-9);
  }
  SUBCASE("area error decreases as counts double") {
    const double d = 8e-3, r = 5e-3;
    const auto patches = decompose_to_bezier(make_spherical_cap(d, r));
    double previous = 1.0;
    for (const int n : {1, 2, 4, 8}) {
      double area = 0.0;
      for (const auto& p : patches) area += sample_patch(p, gauss_legendre(n), gauss_legendre(n)).area();
      const double err = std::abs(area / spherical_cap_area(d, r) - 1.0);
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous < 1e-6);
  }
}

TEST_CASE("sampling is deterministic and carries the distribution") {
  const NurbsSurface cap = make_spherical_cap(4e-3, 6e-3);
  const SampledSurface a = sample_surface(cap, 20e6, 1540.0);
  const SampledSurface b = sample_surface(cap, 20e6, 1540.0);
  CHECK(a.points == b.points);
  CHECK(a.normals == b.normals);
  CHECK(a.combined_weights == b.combined_weights);
  for (const double w : a.combined_weights) CHECK(w > 0.0);

  const SampledSurface shaded =
      sample_surface(cap, 20e6, 1540.0, 1.0, [](double u, double) { return 1.0 - u; });
  REQUIRE(shaded.size() == a.size());
  for (const double d : shaded.distribution) {
    CHECK(d > 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("CSV export") {
  const auto patch = decompose_to_bezier(make_rectangle(1.0, 1.0)).front();
  const SampledSurface s = sample_patch(patch, gauss_legendre(3), gauss_legendre(2));
  std::ostringstream out;
  write_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,z,nx,ny,nz,weight");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
}
