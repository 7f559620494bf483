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

#include "splinesir/io.hpp"

#include <stdexcept>
#include <string>

namespace splinesir {

using nlohmann::json;

json surface_to_json(const NurbsSurface& s) {
  json points = json::array();
  for (const Vec3& p : s.points()) points.push_back({p.x(), p.y(), p.z()});
  return {{"degree_u", s.knots_u().degree},
          {"degree_v", s.knots_v().degree},
          {"knots_u", s.knots_u().knots},
          {"knots_v", s.knots_v().knots},
          {"points", points},
          {"weights", s.weights()}};
}

NurbsSurface surface_from_json(const json& j) {
  KnotVector ku{j.at("degree_u").get<int>(), j.at("knots_u").get<std::vector<double>>()};
  KnotVector kv{j.at("degree_v").get<int>(), j.at("knots_v").get<std::vector<double>>()};
  std::vector<Vec3> points;
  for (const auto& p : j.at("points")) {
    if (p.size() != 3) throw std::invalid_argument("surface json: points need three coordinates");
    points.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
  }
  return {std::move(ku), std::move(kv), std::move(points), j.at("weights").get<std::vector<double>>()};
}

NurbsSurface surface_from_description(const json& j) {
  const std::string shape = j.at("shape").get<std::string>();
  NurbsSurface s;
  if (shape == "rectangle") {
    s = make_rectangle(j.at("width").get<double>(), j.at("height").get<double>());
  } else if (shape == "cap") {
    s = make_spherical_cap(j.at("diameter").get<double>(), j.at("radius").get<double>());
  } else if (shape == "cylinder") {
    s = make_cylindrical_shell(j.at("width").get<double>(), j.at("height").get<double>(),
                               j.at("radius").get<double>());
  } else if (shape == "toroid") {
    s = make_toroidal_shell(j.at("width").get<double>(), j.at("height").get<double>(),
                            j.at("convex_radius").get<double>(), j.at("elevation_radius").get<double>());
  } else if (shape == "nurbs") {
    s = surface_from_json(j.at("surface"));
  } else {
    throw std::invalid_argument("unknown surface shape: " + shape);
  }
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
  if (j.contains("rotation")) {
    const auto& r = j.at("rotation");
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) rotation(a, b) = r.at(a).at(b).get<double>();
    }
  }
  if (j.contains("position")) {
    const auto& p = j.at("position");
    translation = Vec3(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
  }
  if (j.contains("rotation") || j.contains("position")) s = transform(s, rotation, translation);
  return s;
}

json waveform_header(const Waveform& w) {
  return {{"rate", w.sampling_rate()}, {"start_time", w.start_time}, {"count", w.samples.size()}};
}

json field_signal_metadata(const FieldSignal& y) {
  return {{"rate", 1.0 / y.sampling_interval},
          {"start_index", y.start_index},
          {"count", y.samples.size()}};
}

TransducerArray array_from_json(const json& j, double sampling_rate, const Medium& medium,
                                double oversampling) {
  TransducerArray array;
  for (const auto& e : j.at("elements")) {
    array.elements.push_back(
        {sample_surface(surface_from_description(e), sampling_rate, medium.sound_speed, oversampling),
         std::nullopt});
  }
  const std::size_t n = array.elements.size();
  array.delays = j.contains("delays") ? j.at("delays").get<std::vector<double>>()
                                      : std::vector<double>(n, 0.0);
  array.apodization = j.contains("apodization") ? j.at("apodization").get<std::vector<double>>()
                                                : std::vector<double>(n, 1.0);
  array.validate();
  return array;
}

}  // namespace splinesir
