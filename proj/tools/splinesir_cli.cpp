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

// Command-line front end. Every subcommand writes a CSV table and a JSON
// manifest next to it (<output>.json) recording inputs, versions and seed.

#include <Eigen/Core>
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "splinesir/array.hpp"
#include "splinesir/experiments.hpp"
#include "splinesir/io.hpp"

#ifndef SPLINESIR_VERSION
#define SPLINESIR_VERSION "0.0.0"
#endif

using namespace splinesir;
using nlohmann::json;

namespace {

json versions() {
  return {{"splinesir", SPLINESIR_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION},
          {"compiler", __VERSION__}};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  return out;
}

void write_manifest(const std::string& csv_path, const std::string& command, const json& inputs,
                    const json& results, std::uint64_t seed) {
  json m = {{"command", command}, {"inputs", inputs}, {"seed", seed},   {"versions", versions()},
            {"output", csv_path}, {"results", results}};
  open_output(csv_path + ".json") << m.dump(2) << "\n";
}

std::vector<BasisFunction> parse_kernels(const std::vector<std::string>& names) {
  std::vector<BasisFunction> kernels;
  for (const auto& n : names) kernels.push_back(BasisFunction::parse(n));
  return kernels;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return json::parse(in);
}

// Options shared by the subcommands that read them.
struct Common {
  std::vector<double> rates;
  std::vector<std::string> kernels;
  std::string baffle = "rigid";
  std::uint64_t seed = 2024;
  std::string output;
  double sound_speed = 1540.0;
};

void add_common(CLI::App* cmd, Common& o, bool many_rates, bool many_kernels) {
  if (many_rates) {
    cmd->add_option("--rates,--rate", o.rates, "Sampling rates in Hz")->delimiter(',');
  } else {
    cmd->add_option("--rate", o.rates, "Sampling rate in Hz")->expected(1);
  }
  if (many_kernels) {
    cmd->add_option("--kernel,--kernels", o.kernels, "Basis functions (nearest, linear, keys, bsplineN, omoms3)")
        ->delimiter(',');
  } else {
    cmd->add_option("--kernel", o.kernels, "Basis function (nearest, linear, keys, bsplineN, omoms3)")
        ->expected(1);
  }
  cmd->add_option("--baffle", o.baffle, "Baffle condition (rigid or soft)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--output,-o", o.output, "CSV output path; the manifest goes to <output>.json")->required();
  cmd->add_option("--sound-speed", o.sound_speed, "Speed of sound in m/s")->capture_default_str();
}

json common_inputs(const Common& o) {
  return {{"rates", o.rates}, {"kernels", o.kernels}, {"baffle", o.baffle}, {"sound_speed", o.sound_speed}};
}

void run_convergence(const Common& o, const ConvergenceOptions& opts, double rate_min, double rate_max,
                     int rate_count, double fit_min, double fit_max) {
  const std::vector<double> rates = o.rates.empty() ? log_spaced(rate_min, rate_max, rate_count) : o.rates;
  const std::vector<std::string> names =
      o.kernels.empty() ? std::vector<std::string>{"nearest", "linear", "keys", "bspline2", "bspline3", "bspline4",
                                                   "bspline5", "omoms3"}
                        : o.kernels;
  const auto curves = convergence_study(PulseModel{}, parse_kernels(names), rates, o.seed, opts);
  std::ofstream out = open_output(o.output);
  out << "kernel,rate,error\n";
  json slopes = json::object();
  for (const auto& c : curves) {
    for (const auto& p : c.points) out << c.kernel.name() << "," << p.rate << "," << p.error << "\n";
    slopes[c.kernel.name()] = loglog_slope(c.points, fit_min, fit_max);
  }
  json inputs = common_inputs(o);
  inputs["rates"] = rates;
  inputs["kernels"] = names;
  inputs["duration_cells"] = opts.duration_cells;
  inputs["diracs_per_cell"] = opts.diracs_per_cell;
  inputs["fit_range"] = {fit_min, fit_max};
  write_manifest(o.output, "convergence", inputs, {{"slopes", slopes}}, o.seed);
  for (const auto& [k, s] : slopes.items()) std::cout << k << " slope " << s.get<double>() << "\n";
}

void run_validate_shape(const Common& o, const std::string& shape, const ShapeValidationOptions& opts) {
  const std::vector<double> rates = o.rates.empty() ? std::vector<double>{30e6, 80e6} : o.rates;
  const std::vector<std::string> names =
      o.kernels.empty() ? std::vector<std::string>{"nearest", "linear", "keys", "bspline3", "omoms3", "bspline5"}
                        : o.kernels;
  Medium medium;
  medium.sound_speed = o.sound_speed;
  const auto rows =
      shape_validation(parse_shape(shape), parse_baffle(o.baffle), parse_kernels(names), rates, PulseModel{}, medium, opts);
  std::ofstream out = open_output(o.output);
  out << "rate,point,kernel,error\n";
  for (const auto& r : rows) out << r.rate << "," << r.point << "," << r.kernel << "," << r.error << "\n";
  json inputs = common_inputs(o);
  inputs["rates"] = rates;
  inputs["kernels"] = names;
  inputs["shape"] = shape;
  inputs["reference_factor"] = opts.reference_factor;
  inputs["reference_quadrature_factor"] = opts.reference_quadrature_factor;
  inputs["reference_mode"] = opts.reference_mode == ReferenceMode::AnalyticPulse ? "analytic" : "nearest";
  write_manifest(o.output, "validate-shape", inputs, {{"rows", rows.size()}}, o.seed);
  std::cout << "wrote " << rows.size() << " rows to " << o.output << "\n";
}

NurbsSurface load_surface(const std::string& surface_file, const std::string& shape) {
  if (!surface_file.empty()) {
    const json j = read_json_file(surface_file);
    return j.contains("shape") ? surface_from_description(j) : surface_from_json(j);
  }
  return shape_setup(parse_shape(shape), PulseModel{}, Medium{}).surface;
}

void run_field(const Common& o, const std::string& surface_file, const std::string& array_file,
               const std::string& shape, const std::vector<double>& point, double oversampling) {
  if (o.rates.empty()) throw std::invalid_argument("--rate is required");
  const double rate = o.rates.front();
  const BasisFunction f = BasisFunction::parse(o.kernels.empty() ? "bspline5" : o.kernels.front());
  Medium medium;
  medium.sound_speed = o.sound_speed;
  const Baffle baffle = parse_baffle(o.baffle);
  const Vec3 x(point.at(0), point.at(1), point.at(2));
  const Coefficients c = waveform_coefficients(sample_pulse(PulseModel{}, rate), f);

  TransducerArray array;
  if (!array_file.empty()) {
    array = array_from_json(read_json_file(array_file), rate, medium, oversampling);
  } else {
    array = TransducerArray::single(
        ArrayElement{sample_surface(load_surface(surface_file, shape), rate, medium.sound_speed, oversampling), {}});
  }
  const FieldSignal y = array_field_signal(array, x, medium, baffle, f, c);
  std::ofstream out = open_output(o.output);
  write_csv(out, y);
  json inputs = common_inputs(o);
  inputs["kernel"] = f.name();
  inputs["point"] = point;
  inputs["surface"] = surface_file;
  inputs["array"] = array_file;
  inputs["shape"] = surface_file.empty() && array_file.empty() ? shape : "";
  inputs["oversampling"] = oversampling;
  write_manifest(o.output, "field", inputs, field_signal_metadata(y), o.seed);
  std::cout << "wrote " << y.samples.size() << " samples to " << o.output << "\n";
}

void run_describe(const Common& o, const std::string& surface_file, const std::string& shape, double oversampling) {
  const NurbsSurface s = load_surface(surface_file, shape);
  const double rate = o.rates.empty() ? 30e6 : o.rates.front();
  json patches = json::array();
  for (const auto& p : decompose_to_bezier(s)) {
    const PointCounts n = select_point_counts(p, rate * oversampling, o.sound_speed);
    patches.push_back({{"u", {p.u0, p.u1}}, {"v", {p.v0, p.v1}}, {"n_u", n.n_u}, {"n_v", n.n_v}});
  }
  const SampledSurface q = sample_surface(s, rate, o.sound_speed, oversampling);
  std::ofstream out = open_output(o.output);
  write_csv(out, q);
  json inputs = common_inputs(o);
  inputs["surface"] = surface_file;
  inputs["shape"] = surface_file.empty() ? shape : "";
  inputs["oversampling"] = oversampling;
  const json results = {{"patches", patches},
                        {"quadrature_points", q.size()},
                        {"area", q.area()},
                        {"wavelength", center_wavelength(PulseModel{}, o.sound_speed)},
                        {"surface", surface_to_json(s)}};
  write_manifest(o.output, "describe-surface", inputs, results, o.seed);
  std::cout << patches.size() << " patches, " << q.size() << " points, area " << q.area() << " m^2\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spline-based spatial impulse response simulator"};
  app.set_config("--config", "", "Key-value configuration file supplying any flag");
  app.set_version_flag("--version", SPLINESIR_VERSION);
  app.require_subcommand(1);

  Common conv_o, shape_o, field_o, desc_o;

  auto* conv = app.add_subcommand("convergence", "Dirac-stream convergence study");
  add_common(conv, conv_o, true, true);
  ConvergenceOptions conv_opts;
  double rate_min = 20e6, rate_max = 1e9, fit_min = 100e6, fit_max = 1e9;
  int rate_count = 15;
  conv->add_option("--duration-cells", conv_opts.duration_cells, "Stream duration in pulse FWHMs")
      ->capture_default_str();
  conv->add_option("--diracs-per-cell", conv_opts.diracs_per_cell, "Diracs per FWHM")->capture_default_str();
  conv->add_option("--rate-min", rate_min, "Lowest rate when --rates is absent")->capture_default_str();
  conv->add_option("--rate-max", rate_max, "Highest rate when --rates is absent")->capture_default_str();
  conv->add_option("--rate-count", rate_count, "Number of log-spaced rates")->capture_default_str();
  conv->add_option("--fit-min", fit_min, "Lower end of the slope fit")->capture_default_str();
  conv->add_option("--fit-max", fit_max, "Upper end of the slope fit")->capture_default_str();

  auto* vs = app.add_subcommand("validate-shape", "Errors against a high-rate reference at three field points");
  add_common(vs, shape_o, true, true);
  std::string vs_shape = "rectangle", ref_mode = "analytic";
  ShapeValidationOptions vs_opts;
  vs->add_option("--shape", vs_shape, "cap or rectangle")->capture_default_str();
  vs->add_option("--reference-factor", vs_opts.reference_factor, "Reference rate multiple")->capture_default_str();
  vs->add_option("--reference-quadrature-factor", vs_opts.reference_quadrature_factor,
                 "Quadrature oversampling of the reference")
      ->capture_default_str();
  vs->add_option("--reference-mode", ref_mode, "analytic or nearest")
      ->check(CLI::IsMember({"analytic", "nearest"}))
      ->capture_default_str();

  auto* fld = app.add_subcommand("field", "Field signal at one point");
  add_common(fld, field_o, false, false);
  std::string fld_surface, fld_array, fld_shape = "rectangle";
  std::vector<double> point;
  double fld_over = 1.0;
  fld->add_option("--surface", fld_surface, "Surface JSON (description or control net)");
  fld->add_option("--array", fld_array, "Array definition JSON");
  fld->add_option("--shape", fld_shape, "Built-in shape when no file is given")->capture_default_str();
  fld->add_option("--point", point, "Field point x,y,z in metres")->delimiter(',')->expected(3)->required();
  fld->add_option("--oversampling", fld_over, "Quadrature oversampling")->capture_default_str();

  auto* desc = app.add_subcommand("describe-surface", "Patches, point counts and quadrature points");
  add_common(desc, desc_o, false, false);
  std::string desc_surface, desc_shape = "rectangle";
  double desc_over = 1.0;
  desc->add_option("--surface", desc_surface, "Surface JSON (description or control net)");
  desc->add_option("--shape", desc_shape, "Built-in shape when no file is given")->capture_default_str();
  desc->add_option("--oversampling", desc_over, "Quadrature oversampling")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*conv) run_convergence(conv_o, conv_opts, rate_min, rate_max, rate_count, fit_min, fit_max);
    if (*vs) {
      vs_opts.reference_mode = ref_mode == "analytic" ? ReferenceMode::AnalyticPulse : ReferenceMode::NearestKernel;
      run_validate_shape(shape_o, vs_shape, vs_opts);
    }
    if (*fld) run_field(field_o, fld_surface, fld_array, fld_shape, point, fld_over);
    if (*desc) run_describe(desc_o, desc_surface, desc_shape, desc_over);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
