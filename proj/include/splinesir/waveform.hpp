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

#ifndef SPLINESIR_WAVEFORM_HPP
#define SPLINESIR_WAVEFORM_HPP

#include <iosfwd>
#include <vector>

namespace splinesir {

// Time derivative of a log-normal-windowed sinusoid:
//   v(t) = d/dt [ L(t; mu, sigma) sin(2 pi f t) ],
// with L the log-normal density in seconds.
struct PulseModel {
  double mu = -14.802665843192596;
  double sigma = 0.25551258495020857;
  double carrier_frequency = 4.75e6;
  double truncation_level_db = -320.0;

  static PulseModel reference() { return {}; }
  void validate() const;
};

double eval_window(const PulseModel& model, double t);
double eval_pulse(const PulseModel& model, double t);

// Amplitude envelope sqrt(L'(t)^2 + (omega L(t))^2) of the two quadrature terms
// making up v; it bounds |v| and has no carrier ripple.
double eval_envelope(const PulseModel& model, double t);
double log_envelope(const PulseModel& model, double t);

double envelope_peak_time(const PulseModel& model);
// Time after the peak where the envelope drops to truncation_level_db.
double truncation_time(const PulseModel& model);
// Full width at half maximum of the envelope.
double envelope_fwhm(const PulseModel& model);

struct Waveform {
  std::vector<double> samples;
  double sampling_interval = 0.0;
  double start_time = 0.0;

  double sampling_rate() const { return 1.0 / sampling_interval; }
  double duration() const {
    return samples.empty() ? 0.0 : (samples.size() - 1) * sampling_interval;
  }
  void validate() const;
};

// Samples v(kT) for kT in [0, truncation_time].
Waveform sample_pulse(const PulseModel& model, double sampling_rate);

struct SpectrumMetrics {
  double peak_frequency = 0.0;
  double lower_frequency = 0.0;  // -6 dB edges
  double upper_frequency = 0.0;
  double center_frequency = 0.0;  // midpoint of the -6 dB band
  double fractional_bandwidth = 0.0;  // band width over center frequency
};

// Magnitude of the discrete-time Fourier transform of the waveform at f (Hz).
double spectrum_magnitude(const Waveform& w, double frequency);
SpectrumMetrics spectrum_metrics(const Waveform& w);

// c over the spectral peak frequency of the pulse sampled at 1 GHz.
double center_wavelength(const PulseModel& model, double sound_speed);

// Two-column CSV (time, amplitude).
void write_csv(std::ostream& out, const Waveform& w);
Waveform read_waveform_csv(std::istream& in);

}  // namespace splinesir

#endif  // SPLINESIR_WAVEFORM_HPP
