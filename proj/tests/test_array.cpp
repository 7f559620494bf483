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

#include <doctest.h>

#include "splinesir/array.hpp"
#include "splinesir/experiments.hpp"

using namespace splinesir;

namespace {

const Medium kWater{};
constexpr double kRate = 40e6;

double max_abs(const FieldSignal& a) {
  double m = 0.0;
  for (const double s : a.samples) m = std::max(m, std::abs(s));
  return m;
}

double max_abs_diff(const FieldSignal& a, const FieldSignal& b) {
  double m = 0.0;
  for (std::int64_t n = std::min(a.start_index, b.start_index); n < std::max(a.end_index(), b.end_index()); ++n) {
    m = std::max(m, std::abs(a.at(n) - b.at(n)));
  }
  return m;
}

Coefficients pulse_coefficients(const BasisFunction& f) {
  return waveform_coefficients(sample_pulse(PulseModel{}, kRate), f);
}

ArrayElement plate(double x) {
  const NurbsSurface s = transform(make_rectangle(0.3e-3, 3e-3), Eigen::Matrix3d::Identity(), Vec3(x, 0, 0));
  return {sample_surface(s, kRate, kWater.sound_speed), std::nullopt};
}

}  // namespace

TEST_CASE("single element equals the element field signal") {
  const BasisFunction f = BasisFunction::bspline(3);
  const Coefficients c = pulse_coefficients(f);
  const ArrayElement e = plate(0.0);
  const Vec3 x(1e-3, 0.5e-3, 5e-3);
  const FieldSignal y = array_field_signal(TransducerArray::single(e), x, kWater, Baffle::Rigid, f, c);
  const FieldSignal ref = field_signal(basis_sir(e.surface, x, kWater, Baffle::Rigid, f, 1.0 / kRate), c);
  CHECK(max_abs_diff(y, ref) == 0.0);
}

TEST_CASE("opposite apodization on co-located elements cancels") {
  const BasisFunction f = BasisFunction::bspline(5);
  TransducerArray a;
  a.elements = {plate(0.0), plate(0.0)};
  a.delays = {1e-7, 1e-7};
  a.apodization = {1.0, -1.0};
  const FieldSignal y = array_field_signal(a, Vec3(0, 0, 4e-3), kWater, Baffle::Soft, f, pulse_coefficients(f));
  const FieldSignal one = array_field_signal(TransducerArray::single(plate(0.0)), Vec3(0, 0, 4e-3), kWater,
                                             Baffle::Soft, f, pulse_coefficients(f));
  CHECK(max_abs(y) <= 1e-12 * max_abs(one));
}

TEST_CASE("superposition over elements") {
  const BasisFunction f = BasisFunction::omoms3();
  const Coefficients c = pulse_coefficients(f);
  TransducerArray a = make_linear_array(4, 0.25e-3, 2e-3, 0.05e-3, kRate, kWater);
  a.delays = {0.0, 3.3e-8, 1.1e-7, 4.2e-8};
  a.apodization = {0.5, 1.0, -0.7, 0.9};
  // One element carries its own excitation.
  a.elements[2].coefficients = waveform_coefficients(sample_pulse(PulseModel{-14.7, 0.3, 5e6}, kRate), f);
  const Vec3 x(0.4e-3, 0.1e-3, 6e-3);
  const FieldSignal y = array_field_signal(a, x, kWater, Baffle::Rigid, f, c);
  FieldSignal sum;
  sum.sampling_interval = 1.0 / kRate;
  sum.start_index = y.start_index;
  sum.samples.assign(y.samples.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    TransducerArray one = TransducerArray::single(a.elements[i]);
    one.delays = {a.delays[i]};
    one.apodization = {a.apodization[i]};
    const FieldSignal yi = array_field_signal(one, x, kWater, Baffle::Rigid, f, c);
    for (std::int64_t n = yi.start_index; n < yi.end_index(); ++n) {
      REQUIRE(n >= sum.start_index);
      REQUIRE(n < sum.end_index());
      sum.samples[static_cast<std::size_t>(n - sum.start_index)] += yi.at(n);
    }
  }
  CHECK(max_abs_diff(y, sum) <= 1e-12 * max_abs(y));
}

TEST_CASE("integer-sample delays shift the output exactly") {
  const BasisFunction f = BasisFunction::bspline(3);
  const Coefficients c = pulse_coefficients(f);
  TransducerArray a = TransducerArray::single(plate(0.0));
  const Vec3 x(0.2e-3, 0.0, 3e-3);
  const FieldSignal y0 = array_field_signal(a, x, kWater, Baffle::Rigid, f, c);
  a.delays = {9.0 / kRate};
  const FieldSignal y9 = array_field_signal(a, x, kWater, Baffle::Rigid, f, c);
  CHECK(y9.start_index == y0.start_index + 9);
  REQUIRE(y9.samples.size() == y0.samples.size());
  for (std::size_t k = 0; k < y0.samples.size(); ++k) {
    CHECK(std::abs(y9.samples[k] - y0.samples[k]) <= 1e-12 * max_abs(y0));
  }
}

TEST_CASE("focusing delays favour the focus") {
  const BasisFunction f = BasisFunction::bspline(3);
  const Coefficients c = pulse_coefficients(f);
  TransducerArray a = make_linear_array(8, 0.25e-3, 2e-3, 0.05e-3, kRate, kWater);
  const Vec3 focus(0.3e-3, 0.0, 8e-3);
  a.delays = focusing_delays(a, focus, kWater);
  CHECK(a.delays.size() == 8);
  CHECK(*std::min_element(a.delays.begin(), a.delays.end()) == 0.0);
  const double on = max_abs(array_field_signal(a, focus, kWater, Baffle::Rigid, f, c));
  for (const Vec3& off : {Vec3(1.5e-3, 0, 8e-3), Vec3(-1.0e-3, 0, 8e-3), Vec3(0.3e-3, 0, 12e-3),
                          Vec3(3e-3, 0, 6e-3)}) {
    CHECK(on >= max_abs(array_field_signal(a, off, kWater, Baffle::Rigid, f, c)));
  }
}

TEST_CASE("pulse-echo of point radiators") {
  const BasisFunction f = BasisFunction::bspline(5);
  const Coefficients c = pulse_coefficients(f);
  const Vec3 scatterer(0.0, 0.0, 4e-3);
  const Vec3 p_tx(-1e-3, 0, 0), p_rx(1.5e-3, 0, 0);
  TransducerArray tx = TransducerArray::single({SampledSurface::point_source(p_tx, Vec3::UnitZ(), 1e-8), std::nullopt});
  TransducerArray rx = TransducerArray::single({SampledSurface::point_source(p_rx, Vec3::UnitZ(), 2e-8), std::nullopt});
  const FieldSignal echo = pulse_echo_signal(tx, c, rx, c, scatterer, 0.3, kWater, Baffle::Rigid, f);

  SUBCASE("closed form") {
    const AlphaDelays at = alpha_weights(tx.elements[0].surface, scatterer, kWater, Baffle::Rigid);
    const AlphaDelays ar = alpha_weights(rx.elements[0].surface, scatterer, kWater, Baffle::Rigid);
    const FieldSignal w = analytic_field_signal({{1.0}, {0.0}}, PulseModel{}, 1.0 / kRate);
    const FieldSignal ww = convolve(w, w);
    // Expected: (v * v)(t - tau_tx - tau_rx) alpha_tx alpha_rx amplitude.
    const FieldSignal y = field_signal(basis_sir({{at.alphas[0] * ar.alphas[0] * 0.3}, {at.delays[0] + ar.delays[0]}},
                                                 f, 1.0 / kRate),
                                       Coefficients{compute_coefficients(ww.samples, f), 1.0 / kRate, ww.start_index});
    CHECK(relative_error(echo, y) < 1e-4);
  }
  SUBCASE("zero amplitude") {
    for (const double v : pulse_echo_signal(tx, c, rx, c, scatterer, 0.0, kWater, Baffle::Rigid, f).samples) {
      CHECK(v == 0.0);
    }
  }
  SUBCASE("reciprocity") {
    const FieldSignal swapped = pulse_echo_signal(rx, c, tx, c, scatterer, 0.3, kWater, Baffle::Rigid, f);
    CHECK(max_abs_diff(echo, swapped) <= 1e-12 * max_abs(echo));
  }
}

TEST_CASE("array validation") {
  TransducerArray a;
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
  a.elements = {plate(0.0)};
  a.delays = {0.0, 0.0};
  a.apodization = {1.0};
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_linear_array(0, 1e-3, 1e-3, 0.0, kRate, kWater), std::invalid_argument);
}
