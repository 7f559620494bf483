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

#ifndef SPLINESIR_EXPERIMENTS_HPP
#define SPLINESIR_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "splinesir/sir.hpp"

namespace splinesir {

// Random impulse train: uniform times on [0, duration), standard-normal amplitudes.
struct DiracStream {
  std::vector<double> times;
  std::vector<double> amplitudes;
  std::uint64_t seed = 0;
};

DiracStream make_dirac_stream(double duration, std::size_t count, std::uint64_t seed);

// ||truth - estimate|| / ||truth|| after zero-padding both to the union of their extents.
double relative_error(const FieldSignal& estimate, const FieldSignal& truth);

std::vector<double> log_spaced(double first, double last, int count);

struct ConvergenceOptions {
  double duration_cells = 500.0;  // stream duration in envelope FWHMs
  double diracs_per_cell = 100.0;
};

struct ConvergencePoint {
  double rate = 0.0;
  double error = 0.0;
};

struct ConvergenceCurve {
  BasisFunction kernel;
  std::vector<ConvergencePoint> points;
};

// Error of the synthesized Dirac-stream signal against its closed-form samples.
std::vector<ConvergencePoint> convergence_experiment(const PulseModel& model, const BasisFunction& f,
                                                     const std::vector<double>& rates,
                                                     std::uint64_t seed,
                                                     const ConvergenceOptions& options = {});

// Same, for several kernels sharing one stream and one exact signal per rate.
std::vector<ConvergenceCurve> convergence_study(const PulseModel& model,
                                                const std::vector<BasisFunction>& kernels,
                                                const std::vector<double>& rates, std::uint64_t seed,
                                                const ConvergenceOptions& options = {});

// Least-squares slope of log(error) against log(rate) over [rate_min, rate_max].
double loglog_slope(const std::vector<ConvergencePoint>& points, double rate_min, double rate_max);

enum class Shape { SphericalCap, Rectangle };

Shape parse_shape(const std::string& name);
const char* to_string(Shape shape);

struct ShapeSetup {
  NurbsSurface surface;
  std::vector<Vec3> field_points;
  std::vector<std::string> labels;
  double wavelength = 0.0;
};

// Spherical cap: D = 20 lambda, R = 48 lambda, points (x, 0, 10 lambda) for
// x in {0, 8.1, 16.2} lambda. Rectangle: lambda x 10 lambda, points
// (x, lambda / 2, lambda / 2) for x in {0, 1/2, 1} lambda.
ShapeSetup shape_setup(Shape shape, const PulseModel& model, const Medium& medium);

struct ShapeValidationOptions {
  int reference_factor = 8;
  double reference_quadrature_factor = 4.0;
  ReferenceMode reference_mode = ReferenceMode::AnalyticPulse;
};

struct ShapeError {
  std::string kernel;
  double rate = 0.0;
  std::string point;
  double error = 0.0;
};

std::vector<ShapeError> shape_validation(Shape shape, Baffle baffle,
                                         const std::vector<BasisFunction>& kernels,
                                         const std::vector<double>& rates, const PulseModel& model,
                                         const Medium& medium,
                                         const ShapeValidationOptions& options = {});

// Field signal of a surface at one point with the given kernel and rate.
FieldSignal simulate_field(const NurbsSurface& surface, const Vec3& field_point,
                           const PulseModel& model, const Medium& medium, Baffle baffle,
                           const BasisFunction& f, double sampling_rate);

}  // namespace splinesir

#endif  // SPLINESIR_EXPERIMENTS_HPP
