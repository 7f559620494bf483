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

#include "splinesir/sir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "splinesir/parallel.hpp"

namespace splinesir {

namespace {

constexpr std::size_t kChunks = 64;

void require_same_interval(double a, double b) {
  if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
    throw std::invalid_argument("sampling interval mismatch");
  }
}

// Ratio of two rates as an integer; throws when it is not one.
int integer_ratio(double numerator, double denominator) {
  const double r = numerator / denominator;
  const double rounded = std::round(r);
  if (rounded < 1.0 || std::abs(r - rounded) > 1e-9 * r) {
    throw std::invalid_argument("reference rate must be an integer multiple of the output rate");
  }
  return static_cast<int>(rounded);
}

}  // namespace

void Medium::validate() const {
  if (!(sound_speed > 0.0)) throw std::invalid_argument("medium: sound speed must be positive");
  if (!(density > 0.0)) throw std::invalid_argument("medium: density must be positive");
}

Baffle parse_baffle(const std::string& name) {
  if (name == "rigid") return Baffle::Rigid;
  if (name == "soft") return Baffle::Soft;
  throw std::invalid_argument("unknown baffle: " + name);
}

const char* to_string(Baffle baffle) { return baffle == Baffle::Rigid ? "rigid" : "soft"; }

AlphaDelays alpha_weights(const SampledSurface& surface, const Vec3& field_point,
                          const Medium& medium, Baffle baffle) {
  medium.validate();
  AlphaDelays out;
  out.alphas.resize(surface.size());
  out.delays.resize(surface.size());
  for (std::size_t q = 0; q < surface.size(); ++q) {
    const Vec3 d = field_point - surface.points[q];
    const double r = d.norm();
    if (!(r > 1e-12)) throw SingularityError("field point coincides with a quadrature point");
    const double omega = baffle == Baffle::Rigid ? 1.0 : surface.normals[q].dot(d) / r;
    out.alphas[q] = surface.distribution[q] * omega * surface.combined_weights[q] /
                    (2.0 * std::numbers::pi * r);
    out.delays[q] = r / medium.sound_speed;
  }
  return out;
}

BasisSir basis_sir(const AlphaDelays& weights, const BasisFunction& f, double sampling_interval,
                   double extra_delay) {
  if (weights.alphas.empty()) throw std::invalid_argument("basis_sir: no quadrature points");
  if (!(sampling_interval > 0.0)) throw std::invalid_argument("basis_sir: T must be positive");
  const double inv_t = 1.0 / sampling_interval;
  const auto [lo, hi] = std::minmax_element(weights.delays.begin(), weights.delays.end());
  const double half = 0.5 * f.support();
  const std::int64_t pad = f.half_support();

  BasisSir out;
  out.sampling_interval = sampling_interval;
  out.start_index = static_cast<std::int64_t>(std::floor((*lo + extra_delay) * inv_t)) - pad;
  const std::int64_t last = static_cast<std::int64_t>(std::floor((*hi + extra_delay) * inv_t)) + pad;
  out.samples.assign(static_cast<std::size_t>(last - out.start_index + 1), 0.0);

  for (std::size_t q = 0; q < weights.alphas.size(); ++q) {
    const double x = (weights.delays[q] + extra_delay) * inv_t;
    const double a = weights.alphas[q] * inv_t;
    const auto n0 = static_cast<std::int64_t>(std::ceil(x - half));
    const auto n1 = static_cast<std::int64_t>(std::floor(x + half));
    for (std::int64_t n = n0; n <= n1; ++n) {
      out.samples[static_cast<std::size_t>(n - out.start_index)] += a * f(static_cast<double>(n) - x);
    }
  }
  return out;
}

BasisSir basis_sir(const SampledSurface& surface, const Vec3& field_point, const Medium& medium,
                   Baffle baffle, const BasisFunction& f, double sampling_interval) {
  return basis_sir(alpha_weights(surface, field_point, medium, baffle), f, sampling_interval);
}

Coefficients waveform_coefficients(const Waveform& waveform, const BasisFunction& f) {
  waveform.validate();
  const double offset = waveform.start_time / waveform.sampling_interval;
  if (std::abs(offset - std::round(offset)) > 1e-6) {
    throw std::invalid_argument("waveform start time is not on the sampling grid");
  }
  Coefficients c;
  c.values = compute_coefficients(waveform.samples, f);
  c.sampling_interval = waveform.sampling_interval;
  c.start_index = std::llround(offset);
  return c;
}

FieldSignal convolve(const FieldSignal& a, const FieldSignal& b) {
  require_same_interval(a.sampling_interval, b.sampling_interval);
  FieldSignal out;
  out.sampling_interval = a.sampling_interval;
  out.start_index = a.start_index + b.start_index;
  if (a.samples.empty() || b.samples.empty()) return out;
  out.samples.assign(a.samples.size() + b.samples.size() - 1, 0.0);
  const double t = a.sampling_interval;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double ai = a.samples[i] * t;
    if (ai == 0.0) continue;
    double* dst = out.samples.data() + i;
    for (std::size_t j = 0; j < b.samples.size(); ++j) dst[j] += ai * b.samples[j];
  }
  return out;
}

FieldSignal field_signal(const BasisSir& basis, const Coefficients& coeffs) {
  FieldSignal c;
  c.samples = coeffs.values;
  c.sampling_interval = coeffs.sampling_interval;
  c.start_index = coeffs.start_index;
  return convolve(c, basis);
}

FieldSignal reconstruct_sir(const BasisSir& basis, const BasisFunction& f) {
  const Prefilter prefilter = prefilter_poles(f);
  FieldSignal out = basis;
  out.samples = apply_convolution_inverse(basis.samples, prefilter);
  return out;
}

FieldSignal analytic_field_signal(const AlphaDelays& weights, const PulseModel& model,
                                  double sampling_interval) {
  if (weights.alphas.empty()) throw std::invalid_argument("analytic_field_signal: no points");
  const double t_end = truncation_time(model);
  const double inv_t = 1.0 / sampling_interval;
  const auto [lo, hi] = std::minmax_element(weights.delays.begin(), weights.delays.end());

  FieldSignal out;
  out.sampling_interval = sampling_interval;
  out.start_index = static_cast<std::int64_t>(std::floor(*lo * inv_t));
  const auto last = static_cast<std::int64_t>(std::ceil((*hi + t_end) * inv_t));
  const auto length = static_cast<std::size_t>(last - out.start_index + 1);

  const std::size_t count = weights.alphas.size();
  const std::size_t chunks = std::min(kChunks, count);
  std::vector<std::vector<double>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double>& acc = partial[c];
    acc.assign(length, 0.0);
    const std::size_t q0 = count * c / chunks;
    const std::size_t q1 = count * (c + 1) / chunks;
    for (std::size_t q = q0; q < q1; ++q) {
      const double tau = weights.delays[q];
      const double a = weights.alphas[q];
      const auto n0 = static_cast<std::int64_t>(std::ceil(tau * inv_t));
      const auto n1 = static_cast<std::int64_t>(std::floor((tau + t_end) * inv_t));
      for (std::int64_t n = n0; n <= n1; ++n) {
        acc[static_cast<std::size_t>(n - out.start_index)] +=
            a * eval_pulse(model, static_cast<double>(n) * sampling_interval - tau);
      }
    }
  });
  out.samples.assign(length, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t k = 0; k < length; ++k) out.samples[k] += acc[k];
  }
  return out;
}

FieldSignal decimate(const FieldSignal& signal, int factor) {
  if (factor < 1) throw std::invalid_argument("decimate: factor must be >= 1");
  FieldSignal out;
  out.sampling_interval = signal.sampling_interval * factor;
  const std::int64_t m = factor;
  auto ceil_div = [m](std::int64_t n) { return n >= 0 ? (n + m - 1) / m : -((-n) / m); };
  auto floor_div = [m](std::int64_t n) { return n >= 0 ? n / m : -((-n + m - 1) / m); };
  out.start_index = ceil_div(signal.start_index);
  const std::int64_t last = floor_div(signal.end_index() - 1);
  for (std::int64_t n = out.start_index; n <= last; ++n) out.samples.push_back(signal.at(n * m));
  return out;
}

FieldSignal reference_field_signal(const NurbsSurface& surface, const Vec3& field_point,
                                   const PulseModel& model, const Medium& medium, Baffle baffle,
                                   const ReferenceOptions& options) {
  if (!(options.output_rate > 0.0) || !(options.reference_rate > 0.0)) {
    throw std::invalid_argument("reference: rates must be positive");
  }
  const int factor = integer_ratio(options.reference_rate, options.output_rate);
  const double qf = options.quadrature_factor > 0.0 ? options.quadrature_factor : factor;
  const SampledSurface sampled =
      sample_surface(surface, options.output_rate, medium.sound_speed, qf);
  const AlphaDelays weights = alpha_weights(sampled, field_point, medium, baffle);

  if (options.mode == ReferenceMode::AnalyticPulse) {
    return analytic_field_signal(weights, model, 1.0 / options.output_rate);
  }
  const BasisFunction nearest = BasisFunction::nearest();
  const double t_ref = 1.0 / options.reference_rate;
  const BasisSir h = basis_sir(weights, nearest, t_ref);
  const Coefficients c = waveform_coefficients(sample_pulse(model, options.reference_rate), nearest);
  return decimate(field_signal(h, c), factor);
}

void write_csv(std::ostream& out, const FieldSignal& signal) {
  out << "time,amplitude\n";
  out.precision(17);
  for (std::size_t k = 0; k < signal.samples.size(); ++k) {
    out << signal.time(k) << ',' << signal.samples[k] << '\n';
  }
}

}  // namespace splinesir
