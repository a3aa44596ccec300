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

// Python bindings for the core operations. Values cross the boundary as
// plain lists and dicts; MDPs and policies are opaque handles.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ddgc/baselines.h"
#include "ddgc/ddgc.h"
#include "ddgc/envs.h"
#include "ddgc/estimator.h"
#include "ddgc/exact.h"
#include "ddgc/harness.h"
#include "ddgc/mdp_io.h"
#include "ddgc/sampling.h"

namespace py = pybind11;

namespace {

py::dict ReportToDict(const ddgc::ObjectiveReport& r) {
  py::dict d;
  d["objective_f"] = r.objective_f;
  d["return_jgamma"] = r.return_jgamma;
  d["diversity_i"] = r.diversity_i;
  d["per_goal_mass"] = r.per_goal_mass;
  return d;
}

py::list MixtureToList(const ddgc::PolicyMixture& m) {
  py::list out;
  for (const auto& c : m.components()) {
    out.append(py::make_tuple(c.weight, c.policy));
  }
  return out;
}

ddgc::PolicyMixture MixtureFromList(
    const std::vector<std::pair<double, ddgc::TabularPolicy>>& items) {
  std::vector<ddgc::PolicyMixture::Component> components;
  for (const auto& [w, p] : items) components.push_back({p, w});
  return ddgc::PolicyMixture(std::move(components));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dense and diverse goal coverage: exact oracles and learners";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<ddgc::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ddgc::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ddgc::InvalidArgument>(m, "InvalidArgument",
                                                PyExc_ValueError);
  py::register_exception<ddgc::NumericalError>(m, "NumericalError",
                                               PyExc_ArithmeticError);

  py::class_<ddgc::DiscreteMdp>(m, "DiscreteMdp")
      .def(py::init<int, int, std::vector<double>, std::vector<bool>, double,
                    std::vector<double>>(),
           py::arg("num_states"), py::arg("num_actions"), py::arg("transition"),
           py::arg("goal"), py::arg("gamma"), py::arg("rho0"))
      .def_property_readonly("num_states", &ddgc::DiscreteMdp::num_states)
      .def_property_readonly("num_actions", &ddgc::DiscreteMdp::num_actions)
      .def_property_readonly("gamma", &ddgc::DiscreteMdp::gamma)
      .def_property_readonly("goal_mask", &ddgc::DiscreteMdp::goal_mask)
      .def_property_readonly("rho0", &ddgc::DiscreteMdp::rho0)
      .def("goal_states", &ddgc::DiscreteMdp::GoalStates)
      .def("transition", &ddgc::DiscreteMdp::Transition)
      .def("is_absorbing", &ddgc::DiscreteMdp::IsAbsorbing)
      .def("with_gamma", &ddgc::DiscreteMdp::WithGamma)
      .def("to_json",
           [](const ddgc::DiscreteMdp& mdp) { return ddgc::MdpToJson(mdp).dump(); })
      .def_static("from_json", [](const std::string& text) {
        try {
          return ddgc::MdpFromJson(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
          throw ddgc::ConfigError(e.what());
        }
      });

  py::class_<ddgc::TabularPolicy>(m, "TabularPolicy")
      .def(py::init<int, int, std::vector<double>>())
      .def_static("uniform", &ddgc::TabularPolicy::Uniform)
      .def_static("deterministic",
                  [](int num_actions, const std::vector<int>& actions) {
                    return ddgc::TabularPolicy::Deterministic(num_actions, actions);
                  })
      .def_property_readonly("num_states", &ddgc::TabularPolicy::num_states)
      .def_property_readonly("num_actions", &ddgc::TabularPolicy::num_actions)
      .def_property_readonly("probs", &ddgc::TabularPolicy::probs)
      .def("prob", &ddgc::TabularPolicy::Prob)
      .def("modal_actions", &ddgc::TabularPolicy::ModalActions)
      .def(py::self == py::self);

  m.def("make_figure1_mdp", &ddgc::MakeFigure1Mdp, py::arg("gamma") = 0.95);
  m.def("make_discounting_conflict_mdp", &ddgc::MakeDiscountingConflictMdp,
        py::arg("gamma") = 0.9);
  m.def("make_dynamics_conflict_mdp", &ddgc::MakeDynamicsConflictMdp,
        py::arg("gamma") = 0.999);
  m.def(
      "make_random_mdp",
      [](int num_states, int num_actions, int num_goals, int branching,
         double gamma, std::uint64_t seed) {
        return ddgc::MakeRandomMdp(
            {num_states, num_actions, num_goals, branching, gamma, seed});
      },
      py::arg("num_states") = 10, py::arg("num_actions") = 2,
      py::arg("num_goals") = 3, py::arg("branching") = 2,
      py::arg("gamma") = 0.9, py::arg("seed") = 0);

  m.def("exact_d", [](const ddgc::DiscreteMdp& mdp,
                      const ddgc::TabularPolicy& policy) {
    return ddgc::ExactD(mdp, policy).probs;
  });
  m.def("exact_d_mixture",
        [](const ddgc::DiscreteMdp& mdp,
           const std::vector<std::pair<double, ddgc::TabularPolicy>>& mixture) {
          return ddgc::ExactDMixture(mdp, MixtureFromList(mixture)).probs;
        });
  m.def("objective", [](const std::vector<bool>& goal,
                        const std::vector<double>& d) {
    return ReportToDict(ddgc::Objective(goal, d));
  });
  m.def("metrics", [](const std::vector<double>& d,
                      const std::vector<bool>& goal) {
    const ddgc::DiversityMetrics x = ddgc::Metrics(d, goal);
    py::dict out;
    out["partial_entropy"] = x.partial_entropy;
    out["modified_partial_gini"] = x.modified_partial_gini;
    out["return_jgamma"] = x.return_jgamma;
    return out;
  });
  m.def(
      "brute_force_optimal_mixture",
      [](const ddgc::DiscreteMdp& mdp, double tolerance) {
        const ddgc::OptimalMixture opt =
            ddgc::BruteForceOptimalMixture(mdp, tolerance);
        py::dict out;
        out["f_star"] = opt.f_star;
        out["duality_gap"] = opt.duality_gap;
        out["iterations"] = opt.iterations;
        out["num_vertices"] = opt.num_vertices;
        out["mixture"] = MixtureToList(opt.mixture);
        return out;
      },
      py::arg("mdp"), py::arg("tolerance") = 1e-8);

  m.def(
      "estimate_d",
      [](const ddgc::DiscreteMdp& mdp, const ddgc::TabularPolicy& policy,
         int num_trajectories, int horizon, std::uint64_t seed,
         const std::string& convention) {
        const auto batch = ddgc::SampleBatch(mdp, ddgc::PolicyMixture(policy),
                                             num_trajectories, horizon, seed);
        return ddgc::EstimateD(batch, mdp.num_states(), mdp.gamma(),
                               ddgc::ParseEstimatorConvention(convention))
            .d_hat;
      },
      py::arg("mdp"), py::arg("policy"), py::arg("num_trajectories"),
      py::arg("horizon"), py::arg("seed") = 0, py::arg("convention") = "alg1");
  m.def("custom_reward", [](const std::vector<double>& d_hat,
                            const std::vector<bool>& goal) {
    return ddgc::CustomReward(d_hat, goal);
  });

  m.def(
      "run_exact_ddgc",
      [](const ddgc::DiscreteMdp& mdp, int K, std::optional<double> f_star) {
        const ddgc::ExactDdgcResult r = ddgc::RunExactDdgc(mdp, K, f_star);
        py::dict out;
        out["objective"] = r.objective;
        out["gaps"] = r.gaps;
        out["mixture"] = MixtureToList(r.mixture);
        return out;
      },
      py::arg("mdp"), py::arg("K"), py::arg("f_star") = std::nullopt);
  m.def(
      "run_ddgc",
      [](const ddgc::DiscreteMdp& mdp, int K, int N_T, int H, int N_FQI,
         std::uint64_t seed, const std::string& exploration) {
        ddgc::DdgcConfig c;
        c.K = K;
        c.N_T = N_T;
        c.H = H;
        c.N_FQI = N_FQI;
        c.seed = seed;
        c.exploration = ddgc::ParseExplorationKind(exploration);
        const ddgc::DdgcResult r = ddgc::RunDdgcDiscrete(mdp, c);
        py::list trace;
        for (const auto& it : r.trace) {
          py::dict row;
          row["iteration"] = it.iteration;
          row["d_hat"] = it.d_hat;
          row["reward"] = it.reward;
          row["weights"] = it.weights;
          row["exact_f"] = it.exact_f;
          trace.append(row);
        }
        py::dict out;
        out["mixture"] = MixtureToList(r.mixture);
        out["trace"] = trace;
        return out;
      },
      py::arg("mdp"), py::arg("K") = 8, py::arg("N_T") = 200,
      py::arg("H") = 30, py::arg("N_FQI") = 50, py::arg("seed") = 0,
      py::arg("exploration") = "random");
  m.def(
      "q_learning_count_bonus",
      [](const ddgc::DiscreteMdp& mdp, std::int64_t steps, double alpha,
         double bonus_scale, int horizon, std::uint64_t seed) {
        ddgc::QLearningOptions o;
        o.steps = steps;
        o.alpha = alpha;
        o.bonus_scale = bonus_scale;
        o.horizon = horizon;
        o.seed = seed;
        return ddgc::QLearningCountBonus(mdp, o).policy;
      },
      py::arg("mdp"), py::arg("steps"), py::arg("alpha") = 0.1,
      py::arg("bonus_scale") = 0.1, py::arg("horizon") = 30,
      py::arg("seed") = 0);
  m.def("smm_target_density", &ddgc::SmmTargetDensity);

  m.def(
      "run_experiment",
      [](const std::string& config_json, const std::filesystem::path& base_dir,
         int jobs) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::exception& e) {
          throw ddgc::ConfigError(e.what());
        }
        const ddgc::ExperimentConfig config =
            ddgc::ParseExperimentConfig(j, base_dir);
        py::list out;
        for (const auto& r : ddgc::RunExperiment(config, jobs)) {
          py::dict row;
          row["seed"] = r.seed;
          row["objective_f"] = r.Final().objective_f;
          row["return_jgamma"] = r.Final().return_jgamma;
          row["partial_entropy"] = r.Final().partial_entropy;
          row["modified_partial_gini"] = r.Final().modified_partial_gini;
          row["exact_d"] = r.exact_d;
          row["empirical_d"] = r.empirical_d;
          out.append(row);
        }
        return out;
      },
      py::arg("config_json"), py::arg("base_dir") = std::filesystem::path("."),
      py::arg("jobs") = 1);
}
