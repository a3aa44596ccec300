// Copyright 2026 The DDGC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DDGC_MDP_IO_H_
#define DDGC_MDP_IO_H_

#include <string>

#include "json.hpp"

#include "ddgc/mdp.h"

namespace ddgc {

// MDP definition file (JSON):
//
//   {
//     "format": "ddgc-mdp", "version": 1,
//     "states": 3, "actions": 2, "gamma": 0.9,
//     "rho0": [1.0, 0.0, 0.0],
//     "goals": [2],
//     "transitions": [[0, 0, 1, 1.0], [0, 1, 2, 1.0], ...]
//   }
//
// Each transition entry is [s, a, s', prob]. Entries for the same (s, a, s')
// accumulate. Every (s, a) row must sum to 1; unspecified entries are 0.
inline constexpr int kMdpFormatVersion = 1;

nlohmann::json MdpToJson(const DiscreteMdp& mdp);
DiscreteMdp MdpFromJson(const nlohmann::json& j);

DiscreteMdp LoadMdpFile(const std::string& path);
void SaveMdpFile(const DiscreteMdp& mdp, const std::string& path);

}  // namespace ddgc

#endif  // DDGC_MDP_IO_H_
