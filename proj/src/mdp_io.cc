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

#include "ddgc/mdp_io.h"

#include <fstream>
#include <sstream>

namespace ddgc {

using nlohmann::json;

json MdpToJson(const DiscreteMdp& mdp) {
  json transitions = json::array();
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      for (StateId next = 0; next < mdp.num_states(); ++next) {
        const double p = mdp.Transition(s, a, next);
        if (p > 0.0) transitions.push_back(json::array({s, a, next, p}));
      }
    }
  }
  return json{{"format", "ddgc-mdp"},
              {"version", kMdpFormatVersion},
              {"states", mdp.num_states()},
              {"actions", mdp.num_actions()},
              {"gamma", mdp.gamma()},
              {"rho0", mdp.rho0()},
              {"goals", mdp.GoalStates()},
              {"transitions", std::move(transitions)}};
}

DiscreteMdp MdpFromJson(const json& j) {
  try {
    if (j.contains("format") && j.at("format") != "ddgc-mdp") {
      throw ConfigError("not a ddgc-mdp document");
    }
    if (j.contains("version") && j.at("version").get<int>() != kMdpFormatVersion) {
      throw ConfigError("unsupported MDP file version");
    }
    const int num_states = j.at("states").get<int>();
    const int num_actions = j.at("actions").get<int>();
    if (num_states <= 0 || num_actions <= 0) {
      throw ConfigError("states and actions must be positive");
    }
    const double gamma = j.at("gamma").get<double>();
    std::vector<double> rho0 = j.at("rho0").get<std::vector<double>>();
    std::vector<bool> goal(num_states, false);
    for (int g : j.at("goals").get<std::vector<int>>()) {
      if (g < 0 || g >= num_states) throw ConfigError("goal state out of range");
      goal[g] = true;
    }
    std::vector<double> p(static_cast<std::size_t>(num_states) * num_actions *
                          num_states);
    for (const auto& entry : j.at("transitions")) {
      if (!entry.is_array() || entry.size() != 4) {
        throw ConfigError("transition entries must be [s, a, s', prob]");
      }
      const int s = entry[0].get<int>();
      const int a = entry[1].get<int>();
      const int next = entry[2].get<int>();
      if (s < 0 || s >= num_states || next < 0 || next >= num_states ||
          a < 0 || a >= num_actions) {
        throw ConfigError("transition index out of range");
      }
      p[(static_cast<std::size_t>(s) * num_actions + a) * num_states + next] +=
          entry[3].get<double>();
    }
    return DiscreteMdp(num_states, num_actions, std::move(p), std::move(goal),
                       gamma, std::move(rho0));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed MDP definition: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid MDP definition: ") + e.what());
  }
}

DiscreteMdp LoadMdpFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open MDP file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse MDP file " + path + ": " + e.what());
  }
  return MdpFromJson(j);
}

void SaveMdpFile(const DiscreteMdp& mdp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write MDP file: " + path);
  out << MdpToJson(mdp).dump(2) << '\n';
}

}  // namespace ddgc
