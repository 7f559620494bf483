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

#ifndef SPLINESIR_ARRAY_HPP
#define SPLINESIR_ARRAY_HPP

#include <optional>
#include <vector>

#include "splinesir/sir.hpp"

namespace splinesir {

struct ArrayElement {
  SampledSurface surface;
  // Per-element excitation; the shared coefficients are used when empty.
  std::optional<Coefficients> coefficients;

  Vec3 centroid() const;
};

struct TransducerArray {
  std::vector<ArrayElement> elements;
  std::vector<double> delays;       // seconds
  std::vector<double> apodization;  // unitless

  std::size_t size() const { return elements.size(); }
  // Throws std::invalid_argument when delays or apodization do not match the element count.
  void validate() const;
  // Single element with zero delay and unit apodization.
  static TransducerArray single(ArrayElement element);
};

/**
 * y = sum_i a_i * (c_i * h_i), with h_i the basis SIR of element i whose
 * kernel arguments carry the element delay: phi(n - (tau_q + Delta_i) / T).
 */
FieldSignal array_field_signal(const TransducerArray& array, const Vec3& field_point,
                               const Medium& medium, Baffle baffle, const BasisFunction& f,
                               const Coefficients& shared_coeffs);

/**
 * Echo of an ideal point scatterer: the transmit field signal at the scatterer
 * convolved with the receive field signal at the scatterer (each with its own
 * excitation), scaled by the scattering amplitude.
 */
FieldSignal pulse_echo_signal(const TransducerArray& tx, const Coefficients& tx_coeffs,
                              const TransducerArray& rx, const Coefficients& rx_coeffs,
                              const Vec3& scatterer, double amplitude, const Medium& medium,
                              Baffle baffle, const BasisFunction& f);

// Linear array of rectangular elements along x, centered at the origin, facing +z.
TransducerArray make_linear_array(int element_count, double element_width, double element_height,
                                  double kerf, double sampling_rate, const Medium& medium,
                                  double oversampling = 1.0);

// Delta_i = (max_j r_j - r_i) / c with r_i the distance from element centroid to focus.
std::vector<double> focusing_delays(const TransducerArray& array, const Vec3& focus,
                                    const Medium& medium);

}  // namespace splinesir

#endif  // SPLINESIR_ARRAY_HPP
