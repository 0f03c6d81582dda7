// Copyright 2026 The unital Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "finite_field.hpp"
#include "proj_geom.hpp"

namespace unital {

// PointSet files:
//   {"p": 3, "t": 1, "n": 2, "modulus": [2, 2, 1], "points": [0, 5, ...]}
// "points" holds canonical point indices; "coords" (optional, written by
// default) lists the normalized integer-coded coordinates for readability.

inline nlohmann::ordered_json pointset_to_json(const PointSet& S, bool with_coords = true) {
    const auto& space = *S.space();
    const auto& f = space.field();
    nlohmann::ordered_json j;
    j["p"] = f.p();
    j["t"] = f.t();
    j["n"] = space.dim();
    j["modulus"] = f.modulus();
    j["size"] = S.size();
    j["points"] = S.members();
    if (with_coords) {
        auto& cs = j["coords"] = nlohmann::ordered_json::array();
        for (auto idx : S.members()) {
            auto row = nlohmann::ordered_json::array();
            for (Elem e : space.coords(idx)) row.push_back(e.code);
            cs.push_back(row);
        }
    }
    return j;
}

/// Reads a PointSet; builds a fresh space unless `space` is supplied, in
/// which case the file must describe the same field and dimension.
inline PointSet pointset_from_json(const nlohmann::json& j, SpacePtr space = nullptr) {
    for (const char* key : {"p", "t", "n", "points"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("point set file lacks \"") + key + "\"");
    const int p = j.at("p").get<int>();
    const int t = j.at("t").get<int>();
    const int n = j.at("n").get<int>();
    std::optional<std::vector<int>> modulus;
    if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<int>>();
    if (!space) {
        if (t < 1) throw std::invalid_argument("t must be positive");
        space = make_space(n, Field::make(p, 2 * t, modulus));
    } else {
        const auto& f = space->field();
        if (f.p() != p || f.t() != t || space->dim() != n) throw std::invalid_argument("point set file describes a different space");
        if (modulus && *modulus != f.modulus()) throw std::invalid_argument("point set file uses a different field modulus");
    }
    std::vector<std::uint32_t> pts;
    for (const auto& v : j.at("points")) {
        const auto idx = v.get<std::int64_t>();
        if (idx < 0 || static_cast<std::uint64_t>(idx) >= space->num_points())
            throw std::invalid_argument("point index " + std::to_string(idx) + " out of range");
        pts.push_back(static_cast<std::uint32_t>(idx));
    }
    return PointSet(space, std::move(pts));
}

}  // namespace unital
