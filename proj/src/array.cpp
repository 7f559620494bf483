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

#include "splinesir/array.hpp"

#include <algorithm>
#include <stdexcept>

namespace splinesir {

namespace {

// Adds scale * src into dst, growing dst's extent as needed.
void accumulate(FieldSignal& dst, const FieldSignal& src, double scale) {
  if (src.samples.empty()) return;
  if (dst.samples.empty()) {
    dst.sampling_interval = src.sampling_interval;
    dst.start_index = src.start_index;
    dst.samples.assign(src.samples.size(), 0.0);
  }
  const std::int64_t start = std::min(dst.start_index, src.start_index);
  const std::int64_t end = std::max(dst.end_index(), src.end_index());
  if (start != dst.start_index || end != dst.end_index()) {
    std::vector<double> grown(static_cast<std::size_t>(end - start), 0.0);
    std::copy(dst.samples.begin(), dst.samples.end(), grown.begin() + (dst.start_index - start));
    dst.samples = std::move(grown);
    dst.start_index = start;
  }
  const auto offset = static_cast<std::size_t>(src.start_index - dst.start_index);
  for (std::size_t k = 0; k < src.samples.size(); ++k) dst.samples[offset + k] += scale * src.samples[k];
}

}  // namespace

Vec3 ArrayElement::centroid() const {
  Vec3 c = Vec3::Zero();
  double w = 0.0;
  for (std::size_t q = 0; q < surface.size(); ++q) {
    c += surface.combined_weights[q] * surface.points[q];
    w += surface.combined_weights[q];
  }
  if (!(w > 0.0)) throw std::invalid_argument("array element has no area");
  return c / w;
}

void TransducerArray::validate() const {
  if (elements.empty()) throw std::invalid_argument("array: no elements");
  if (delays.size() != elements.size() || apodization.size() != elements.size()) {
    throw std::invalid_argument("array: delays and apodization must match the element count");
  }
}

TransducerArray TransducerArray::single(ArrayElement element) {
  TransducerArray a;
  a.elements.push_back(std::move(element));
  a.delays = {0.0};
  a.apodization = {1.0};
  return a;
}

FieldSignal array_field_signal(const TransducerArray& array, const Vec3& field_point,
                               const Medium& medium, Baffle baffle, const BasisFunction& f,
                               const Coefficients& shared_coeffs) {
  array.validate();
  FieldSignal shared_basis;
  FieldSignal out;
  out.sampling_interval = shared_coeffs.sampling_interval;
  const double t = shared_coeffs.sampling_interval;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const ArrayElement& e = array.elements[i];
    const BasisSir h =
        basis_sir(alpha_weights(e.surface, field_point, medium, baffle), f, t, array.delays[i]);
    if (e.coefficients) {
      if (std::abs(e.coefficients->sampling_interval - t) > 1e-12 * t) {
        throw std::invalid_argument("array: element coefficients use a different rate");
      }
      accumulate(out, field_signal(h, *e.coefficients), array.apodization[i]);
    } else {
      accumulate(shared_basis, h, array.apodization[i]);
    }
  }
  if (!shared_basis.samples.empty()) accumulate(out, field_signal(shared_basis, shared_coeffs), 1.0);
  return out;
}

FieldSignal pulse_echo_signal(const TransducerArray& tx, const Coefficients& tx_coeffs,
                              const TransducerArray& rx, const Coefficients& rx_coeffs,
                              const Vec3& scatterer, double amplitude, const Medium& medium,
                              Baffle baffle, const BasisFunction& f) {
  const FieldSignal y_tx = array_field_signal(tx, scatterer, medium, baffle, f, tx_coeffs);
  const FieldSignal y_rx = array_field_signal(rx, scatterer, medium, baffle, f, rx_coeffs);
  FieldSignal echo = convolve(y_tx, y_rx);
  for (double& s : echo.samples) s *= amplitude;
  return echo;
}

TransducerArray make_linear_array(int element_count, double element_width, double element_height,
                                  double kerf, double sampling_rate, const Medium& medium,
                                  double oversampling) {
  if (element_count < 1) throw std::invalid_argument("linear array: need at least one element");
  if (kerf < 0.0) throw std::invalid_argument("linear array: kerf must be non-negative");
  const double pitch = element_width + kerf;
  const NurbsSurface plate = make_rectangle(element_width, element_height);
  TransducerArray array;
  for (int i = 0; i < element_count; ++i) {
    const double x = (i - 0.5 * (element_count - 1)) * pitch;
    const NurbsSurface moved = transform(plate, Eigen::Matrix3d::Identity(), Vec3(x, 0.0, 0.0));
    array.elements.push_back(
        {sample_surface(moved, sampling_rate, medium.sound_speed, oversampling), std::nullopt});
  }
  array.delays.assign(static_cast<std::size_t>(element_count), 0.0);
  array.apodization.assign(static_cast<std::size_t>(element_count), 1.0);
  return array;
}

std::vector<double> focusing_delays(const TransducerArray& array, const Vec3& focus,
                                    const Medium& medium) {
  std::vector<double> r;
  r.reserve(array.size());
  for (const ArrayElement& e : array.elements) r.push_back((focus - e.centroid()).norm());
  const double r_max = *std::max_element(r.begin(), r.end());
  std::vector<double> delays;
  delays.reserve(r.size());
  for (const double ri : r) delays.push_back((r_max - ri) / medium.sound_speed);
  return delays;
}

}  // namespace splinesir
