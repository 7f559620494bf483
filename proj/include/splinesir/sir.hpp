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

#ifndef SPLINESIR_SIR_HPP
#define SPLINESIR_SIR_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "splinesir/geometry.hpp"
#include "splinesir/quadrature.hpp"
#include "splinesir/splines.hpp"
#include "splinesir/waveform.hpp"

namespace splinesir {

struct Medium {
  double sound_speed = 1540.0;  // m/s
  double density = 1000.0;      // kg/m^3

  void validate() const;
};

enum class Baffle { Rigid, Soft };

Baffle parse_baffle(const std::string& name);
const char* to_string(Baffle baffle);

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniformly sampled signal; sample k sits at time (start_index + k) * T.
struct FieldSignal {
  std::vector<double> samples;
  double sampling_interval = 0.0;
  std::int64_t start_index = 0;

  std::int64_t end_index() const { return start_index + static_cast<std::int64_t>(samples.size()); }
  double time(std::size_t k) const {
    return static_cast<double>(start_index + static_cast<std::int64_t>(k)) * sampling_interval;
  }
  // Sample at absolute index n, zero outside the stored extent.
  double at(std::int64_t n) const {
    return (n < start_index || n >= end_index()) ? 0.0 : samples[static_cast<std::size_t>(n - start_index)];
  }
};

// Shifted-kernel expansion of the spatial impulse response.
using BasisSir = FieldSignal;

struct AlphaDelays {
  std::vector<double> alphas;
  std::vector<double> delays;  // seconds
};

// alpha_q = v_q * Omega_q * w_q / (2 pi r_q), tau_q = r_q / c.
AlphaDelays alpha_weights(const SampledSurface& surface, const Vec3& field_point,
                          const Medium& medium, Baffle baffle);

// h[n] = sum_q alpha_q / T * phi(n - (tau_q + extra_delay) / T) on the minimal
// grid floor(min tau / T) - ceil(support / 2) .. floor(max tau / T) + ceil(support / 2).
BasisSir basis_sir(const AlphaDelays& weights, const BasisFunction& f, double sampling_interval,
                   double extra_delay = 0.0);
BasisSir basis_sir(const SampledSurface& surface, const Vec3& field_point, const Medium& medium,
                   Baffle baffle, const BasisFunction& f, double sampling_interval);

// Basis coefficients of a waveform; start_index locates coefficient 0 on the grid.
struct Coefficients {
  std::vector<double> values;
  double sampling_interval = 0.0;
  std::int64_t start_index = 0;
};

Coefficients waveform_coefficients(const Waveform& waveform, const BasisFunction& f);

// y = T (c * h); throws std::invalid_argument on a sampling-interval mismatch.
FieldSignal field_signal(const BasisSir& basis, const Coefficients& coeffs);

// Discrete convolution scaled by T on the joint grid.
FieldSignal convolve(const FieldSignal& a, const FieldSignal& b);

// Classical SIR samples from the basis SIR via the convolution-inverse.
FieldSignal reconstruct_sir(const BasisSir& basis, const BasisFunction& f);

// Exact field signal of point radiators: y(nT) = sum_q alpha_q v(nT - tau_q).
FieldSignal analytic_field_signal(const AlphaDelays& weights, const PulseModel& model,
                                  double sampling_interval);

enum class ReferenceMode {
  // Pulse evaluated in closed form at every output sample (infinite-rate limit).
  AnalyticPulse,
  // Nearest-kernel synthesis at the reference rate, then decimation.
  NearestKernel,
};

struct ReferenceOptions {
  double reference_rate = 0.0;
  double output_rate = 0.0;
  // Quadrature counts are chosen for output_rate * quadrature_factor;
  // 0 selects the rate ratio, i.e. counts for the reference rate.
  double quadrature_factor = 0.0;
  ReferenceMode mode = ReferenceMode::AnalyticPulse;
};

FieldSignal reference_field_signal(const NurbsSurface& surface, const Vec3& field_point,
                                   const PulseModel& model, const Medium& medium, Baffle baffle,
                                   const ReferenceOptions& options);

// Every `factor`-th sample on the absolute grid (index divisible by factor).
FieldSignal decimate(const FieldSignal& signal, int factor);

// CSV with header time,amplitude.
void write_csv(std::ostream& out, const FieldSignal& signal);

}  // namespace splinesir

#endif  // SPLINESIR_SIR_HPP
