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

#ifndef SPLINESIR_IO_HPP
#define SPLINESIR_IO_HPP

#include <json.hpp>

#include "splinesir/array.hpp"
#include "splinesir/geometry.hpp"
#include "splinesir/sir.hpp"
#include "splinesir/waveform.hpp"

namespace splinesir {

// {"degree_u", "degree_v", "knots_u", "knots_v", "points": [[x,y,z], ...], "weights": [...]},
// control grid row-major with u outer.
nlohmann::json surface_to_json(const NurbsSurface& s);
NurbsSurface surface_from_json(const nlohmann::json& j);

// Surface from a shape description: {"shape": "rectangle" | "cap" | "cylinder" |
// "toroid" | "nurbs", dimensions..., optional "position" and "rotation" (3x3, row-major)}.
NurbsSurface surface_from_description(const nlohmann::json& j);

nlohmann::json waveform_header(const Waveform& w);
nlohmann::json field_signal_metadata(const FieldSignal& y);

/**
 * Array definition:
 *   {"elements": [<surface description>, ...],
 *    "delays": [s, ...], "apodization": [...]}
 * "delays" and "apodization" default to zeros and ones. Each element is
 * sampled for `sampling_rate`.
 */
TransducerArray array_from_json(const nlohmann::json& j, double sampling_rate, const Medium& medium,
                                double oversampling = 1.0);

}  // namespace splinesir

#endif  // SPLINESIR_IO_HPP
