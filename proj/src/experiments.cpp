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

#include "splinesir/experiments.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace splinesir {

DiracStream make_dirac_stream(double duration, std::size_t count, std::uint64_t seed) {
  if (!(duration > 0.0)) throw std::invalid_argument("dirac stream: duration must be positive");
  DiracStream s;
  s.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> when(0.0, duration);
  std::normal_distribution<double> amplitude(0.0, 1.0);
  s.times.reserve(count);
  s.amplitudes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    s.times.push_back(when(rng));
    s.amplitudes.push_back(amplitude(rng));
  }
  return s;
}

double relative_error(const FieldSignal& estimate, const FieldSignal& truth) {
  const double ta = estimate.sampling_interval;
  const double tb = truth.sampling_interval;
  if (std::abs(ta - tb) > 1e-12 * std::max(ta, tb)) {
    throw std::invalid_argument("relative_error: sampling interval mismatch");
  }
  const std::int64_t start = std::min(estimate.start_index, truth.start_index);
  const std::int64_t end = std::max(estimate.end_index(), truth.end_index());
  double num = 0.0;
  double den = 0.0;
  for (std::int64_t n = start; n < end; ++n) {
    const double t = truth.at(n);
    const double d = t - estimate.at(n);
    num += d * d;
    den += t * t;
  }
  if (den == 0.0) throw std::invalid_argument("relative_error: truth has zero norm");
  return std::sqrt(num / den);
}

std::vector<double> log_spaced(double first, double last, int count) {
  if (count < 2) return {first};
  std::vector<double> out;
  const double a = std::log(first);
  const double b = std::log(last);
  for (int k = 0; k < count; ++k) out.push_back(std::exp(a + (b - a) * k / (count - 1)));
  out.back() = last;
  return out;
}

std::vector<ConvergenceCurve> convergence_study(const PulseModel& model,
                                                const std::vector<BasisFunction>& kernels,
                                                const std::vector<double>& rates, std::uint64_t seed,
                                                const ConvergenceOptions& options) {
  const double cell = envelope_fwhm(model);
  const auto count = static_cast<std::size_t>(std::llround(options.duration_cells * options.diracs_per_cell));
  const DiracStream stream = make_dirac_stream(options.duration_cells * cell, count, seed);
  const AlphaDelays impulses{stream.amplitudes, stream.times};

  std::vector<ConvergenceCurve> curves;
  for (const BasisFunction& f : kernels) curves.push_back({f, {}});
  for (std::size_t r = 0; r < rates.size(); ++r) {
    if (r > 0 && !(rates[r] > rates[r - 1])) {
      throw std::invalid_argument("convergence: rates must be ascending");
    }
    const double t = 1.0 / rates[r];
    const FieldSignal truth = analytic_field_signal(impulses, model, t);
    const Waveform pulse = sample_pulse(model, rates[r]);
    for (ConvergenceCurve& curve : curves) {
      const FieldSignal y = field_signal(basis_sir(impulses, curve.kernel, t),
                                         waveform_coefficients(pulse, curve.kernel));
      curve.points.push_back({rates[r], relative_error(y, truth)});
    }
  }
  return curves;
}

std::vector<ConvergencePoint> convergence_experiment(const PulseModel& model, const BasisFunction& f,
                                                     const std::vector<double>& rates,
                                                     std::uint64_t seed,
                                                     const ConvergenceOptions& options) {
  return convergence_study(model, {f}, rates, seed, options).front().points;
}

double loglog_slope(const std::vector<ConvergencePoint>& points, double rate_min, double rate_max) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const ConvergencePoint& p : points) {
    if (p.rate < rate_min * (1.0 - 1e-9) || p.rate > rate_max * (1.0 + 1e-9)) continue;
    const double x = std::log(p.rate);
    const double y = std::log(p.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("loglog_slope: fewer than two points in range");
  // Error decreases with rate; report the order as a positive number.
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Shape parse_shape(const std::string& name) {
  if (name == "cap" || name == "spherical-cap") return Shape::SphericalCap;
  if (name == "rectangle") return Shape::Rectangle;
  throw std::invalid_argument("unknown shape: " + name);
}

const char* to_string(Shape shape) { return shape == Shape::SphericalCap ? "cap" : "rectangle"; }

ShapeSetup shape_setup(Shape shape, const PulseModel& model, const Medium& medium) {
  ShapeSetup s;
  const double lambda = center_wavelength(model, medium.sound_speed);
  s.wavelength = lambda;
  s.labels = {"A", "B", "C"};
  if (shape == Shape::SphericalCap) {
    s.surface = make_spherical_cap(20.0 * lambda, 48.0 * lambda);
    for (const double x : {0.0, 8.1, 16.2}) s.field_points.emplace_back(x * lambda, 0.0, 10.0 * lambda);
  } else {
    s.surface = make_rectangle(lambda, 10.0 * lambda);
    for (const double x : {0.0, 0.5, 1.0}) {
      s.field_points.emplace_back(x * lambda, 0.5 * lambda, 0.5 * lambda);
    }
  }
  return s;
}

FieldSignal simulate_field(const NurbsSurface& surface, const Vec3& field_point,
                           const PulseModel& model, const Medium& medium, Baffle baffle,
                           const BasisFunction& f, double sampling_rate) {
  const SampledSurface sampled = sample_surface(surface, sampling_rate, medium.sound_speed);
  const BasisSir h = basis_sir(sampled, field_point, medium, baffle, f, 1.0 / sampling_rate);
  return field_signal(h, waveform_coefficients(sample_pulse(model, sampling_rate), f));
}

std::vector<ShapeError> shape_validation(Shape shape, Baffle baffle,
                                         const std::vector<BasisFunction>& kernels,
                                         const std::vector<double>& rates, const PulseModel& model,
                                         const Medium& medium,
                                         const ShapeValidationOptions& options) {
  const ShapeSetup setup = shape_setup(shape, model, medium);
  std::vector<ShapeError> out;
  for (const double rate : rates) {
    const double t = 1.0 / rate;
    const SampledSurface sampled = sample_surface(setup.surface, rate, medium.sound_speed);
    const Waveform pulse = sample_pulse(model, rate);
    for (std::size_t p = 0; p < setup.field_points.size(); ++p) {
      ReferenceOptions ref;
      ref.output_rate = rate;
      ref.reference_rate = rate * options.reference_factor;
      ref.quadrature_factor = options.reference_quadrature_factor;
      ref.mode = options.reference_mode;
      const FieldSignal truth =
          reference_field_signal(setup.surface, setup.field_points[p], model, medium, baffle, ref);
      const AlphaDelays weights = alpha_weights(sampled, setup.field_points[p], medium, baffle);
      for (const BasisFunction& f : kernels) {
        const FieldSignal y = field_signal(basis_sir(weights, f, t), waveform_coefficients(pulse, f));
        out.push_back({f.name(), rate, setup.labels[p], relative_error(y, truth)});
      }
    }
  }
  return out;
}

}  // namespace splinesir
