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

#include "splinesir/waveform.hpp"

#include <cmath>
#include <complex>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace splinesir {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// d/dt log L(t).
double log_window_slope(const PulseModel& m, double t) {
  return -1.0 / t - (std::log(t) - m.mu) / (m.sigma * m.sigma * t);
}

double log_window(const PulseModel& m, double t) {
  const double z = (std::log(t) - m.mu) / m.sigma;
  return -0.5 * z * z - std::log(t * m.sigma * std::sqrt(kTwoPi));
}

// Bisection for g(t) = 0 with g(lo) and g(hi) of opposite sign.
template <class F>
double bisect(F&& g, double lo, double hi) {
  const bool lo_positive = g(lo) > 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

// Golden-section maximization of a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::abs(b); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void PulseModel::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("pulse: sigma must be positive");
  if (!(carrier_frequency > 0.0)) throw std::invalid_argument("pulse: carrier frequency must be positive");
  if (!(truncation_level_db < 0.0)) throw std::invalid_argument("pulse: truncation level must be negative");
}

double eval_window(const PulseModel& m, double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(log_window(m, t));
}

double eval_pulse(const PulseModel& m, double t) {
  if (t <= 0.0) return 0.0;
  const double l = eval_window(m, t);
  if (l == 0.0) return 0.0;
  const double w = kTwoPi * m.carrier_frequency;
  return l * (log_window_slope(m, t) * std::sin(w * t) + w * std::cos(w * t));
}

double log_envelope(const PulseModel& m, double t) {
  const double w = kTwoPi * m.carrier_frequency;
  const double s = log_window_slope(m, t);
  return log_window(m, t) + 0.5 * std::log(s * s + w * w);
}

double eval_envelope(const PulseModel& m, double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(log_envelope(m, t));
}

double envelope_peak_time(const PulseModel& m) {
  const double mode = std::exp(m.mu - m.sigma * m.sigma);
  return golden_max([&](double t) { return log_envelope(m, t); }, 0.2 * mode, 5.0 * mode);
}

double truncation_time(const PulseModel& m) {
  const double peak = envelope_peak_time(m);
  const double target = log_envelope(m, peak) + std::log(10.0) * m.truncation_level_db / 20.0;
  auto g = [&](double t) { return log_envelope(m, t) - target; };
  double hi = 2.0 * peak;
  while (g(hi) > 0.0) hi *= 1.5;
  return bisect(g, peak, hi);
}

double envelope_fwhm(const PulseModel& m) {
  const double peak = envelope_peak_time(m);
  const double target = log_envelope(m, peak) - std::log(2.0);
  auto g = [&](double t) { return log_envelope(m, t) - target; };
  double lo = 0.5 * peak;
  while (g(lo) > 0.0) lo *= 0.5;
  double hi = 2.0 * peak;
  while (g(hi) > 0.0) hi *= 1.5;
  return bisect(g, peak, hi) - bisect(g, lo, peak);
}

void Waveform::validate() const {
  if (samples.empty()) throw std::invalid_argument("waveform: no samples");
  if (!(sampling_interval > 0.0)) throw std::invalid_argument("waveform: sampling interval must be positive");
}

Waveform sample_pulse(const PulseModel& model, double sampling_rate) {
  model.validate();
  if (!(sampling_rate > 0.0)) throw std::invalid_argument("sample_pulse: rate must be positive");
  Waveform w;
  w.sampling_interval = 1.0 / sampling_rate;
  const double end = truncation_time(model);
  const auto count = static_cast<std::size_t>(std::floor(end * sampling_rate)) + 1;
  w.samples.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    w.samples[k] = eval_pulse(model, static_cast<double>(k) * w.sampling_interval);
  }
  return w;
}

double spectrum_magnitude(const Waveform& w, double frequency) {
  const double step = -kTwoPi * frequency * w.sampling_interval;
  const std::complex<double> rot(std::cos(step), std::sin(step));
  std::complex<double> phase(1.0, 0.0);
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t k = 0; k < w.samples.size(); ++k) {
    sum += w.samples[k] * phase;
    // Re-anchor periodically to keep the rotating phasor accurate.
    phase = (k % 256 == 255) ? std::polar(1.0, step * static_cast<double>(k + 1)) : phase * rot;
  }
  return std::abs(sum) * w.sampling_interval;
}

SpectrumMetrics spectrum_metrics(const Waveform& w) {
  w.validate();
  const double nyquist = 0.5 / w.sampling_interval;
  const int coarse = 4000;
  double best_f = 0.0;
  double best = -1.0;
  for (int k = 1; k < coarse; ++k) {
    const double f = nyquist * k / coarse;
    const double a = spectrum_magnitude(w, f);
    if (a > best) {
      best = a;
      best_f = f;
    }
  }
  const double df = nyquist / coarse;
  SpectrumMetrics out;
  out.peak_frequency = golden_max([&](double f) { return spectrum_magnitude(w, f); },
                                  std::max(0.0, best_f - df), best_f + df);
  const double peak = spectrum_magnitude(w, out.peak_frequency);
  const double level = peak * std::pow(10.0, -6.0 / 20.0);
  auto g = [&](double f) { return spectrum_magnitude(w, f) - level; };

  double lo = out.peak_frequency;
  while (lo > 0.0 && g(lo) > 0.0) lo -= df;
  double hi = out.peak_frequency;
  while (hi < nyquist && g(hi) > 0.0) hi += df;
  out.lower_frequency = bisect(g, std::max(lo, 0.0), std::min(lo + df, out.peak_frequency));
  out.upper_frequency = bisect(g, std::max(hi - df, out.peak_frequency), std::min(hi, nyquist));
  out.center_frequency = 0.5 * (out.lower_frequency + out.upper_frequency);
  out.fractional_bandwidth = (out.upper_frequency - out.lower_frequency) / out.center_frequency;
  return out;
}

double center_wavelength(const PulseModel& model, double sound_speed) {
  return sound_speed / spectrum_metrics(sample_pulse(model, 1e9)).peak_frequency;
}

void write_csv(std::ostream& out, const Waveform& w) {
  out << "time,amplitude\n";
  out.precision(17);
  for (std::size_t k = 0; k < w.samples.size(); ++k) {
    out << w.start_time + static_cast<double>(k) * w.sampling_interval << ',' << w.samples[k] << '\n';
  }
}

Waveform read_waveform_csv(std::istream& in) {
  std::vector<double> times;
  Waveform w;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("waveform csv: expected two columns");
    try {
      const double t = std::stod(line.substr(0, comma));
      const double a = std::stod(line.substr(comma + 1));
      times.push_back(t);
      w.samples.push_back(a);
    } catch (const std::invalid_argument&) {
      if (!times.empty()) throw std::runtime_error("waveform csv: malformed line: " + line);
      // header line
    }
  }
  if (times.size() < 2) throw std::runtime_error("waveform csv: need at least two samples");
  w.start_time = times.front();
  w.sampling_interval = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double expected = w.start_time + static_cast<double>(k) * w.sampling_interval;
    if (std::abs(times[k] - expected) > 1e-6 * w.sampling_interval) {
      throw std::runtime_error("waveform csv: samples are not uniformly spaced");
    }
  }
  return w;
}

}  // namespace splinesir
