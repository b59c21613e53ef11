// Copyright 2026 The mmvqe Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "mmvqe/spectra.hpp"
#include "mmvqe/vqe.hpp"

namespace mmvqe {
namespace {

namespace fs = std::filesystem;

ExperimentSpec make_spec(Model m, double lambda, const std::string& ansatz, OptimizerKind k,
                         int iters, bool exact) {
  ExperimentSpec s;
  s.model = {m, lambda};
  s.ansatz = find_ansatz(s.model, ansatz);
  s.optimizer.kind = k;
  s.optimizer.max_iterations = iters;
  s.optimizer.seed = 11;
  s.estimator.mode = exact ? EstimatorMode::Exact : EstimatorMode::Sampled;
  s.replicas = 2;
  return s;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mmvqe_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Vqe, ExactEnergyCached) {
  const ModelSpec m{Model::BosonicL2, 0.5};
  const double a = exact_energy(m);
  EXPECT_EQ(a, exact_energy(m));
  EXPECT_NEAR(a, 3.36254, 1e-4);
}

TEST(Vqe, InitialPointUniformAngles) {
  const auto a = initial_point(500, 3);
  EXPECT_EQ(a, initial_point(500, 3));
  EXPECT_NE(a, initial_point(500, 4));
  double mean = 0.0;
  for (double x : a) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 2 * std::numbers::pi);
    mean += x / a.size();
  }
  EXPECT_NEAR(mean, std::numbers::pi, 0.3);
}

TEST(Vqe, ExactModeNeverBelowGround) {
  for (auto [m, name] : {std::pair{Model::BosonicL2, "tl_Ry_c"},
                         std::pair{Model::SusyL2, "ev_op_Hp15"}}) {
    for (OptimizerKind k : {OptimizerKind::COBYLA, OptimizerKind::SPSA}) {
      const auto spec = make_spec(m, 1.0, name, k, 60, true);
      const auto r = run_vqe(spec);
      EXPECT_EQ(static_cast<int>(r.history.size()), r.evaluations);
      for (double e : r.history) EXPECT_GE(e, r.exact_energy - 1e-9);
      EXPECT_EQ(r.vqe_energy, *std::min_element(r.history.begin(), r.history.end()));
      EXPECT_DOUBLE_EQ(r.state_energy, r.vqe_energy);
      EXPECT_EQ(r.gap, r.vqe_energy - r.exact_energy);
    }
  }
}

TEST(Vqe, SampledWithinShotNoiseOfBound) {
  const auto spec = make_spec(Model::BosonicL2, 0.2, "ev_op_H", OptimizerKind::SPSA, 80, false);
  const auto h = build_hamiltonian(spec.model);
  const double sigma = h.l1_norm() / std::sqrt(double(spec.estimator.shots));
  for (int rep = 0; rep < spec.replicas; ++rep) {
    const auto r = run_vqe(spec, rep);
    EXPECT_EQ(r.seed, spec.optimizer.seed + rep);
    EXPECT_GE(r.vqe_energy, r.exact_energy - 3 * sigma);
    EXPECT_GE(r.state_energy, r.exact_energy - 1e-9);
  }
}

TEST(Vqe, Reproducible) {
  const auto spec = make_spec(Model::BosonicL2, 2.0, "ev_op_H_2f", OptimizerKind::COBYLA, 120,
                              false);
  const auto a = run_vqe(spec, 1), b = run_vqe(spec, 1);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_NE(to_json(run_vqe(spec, 0)).dump(), to_json(a).dump());
}

TEST(Vqe, EigenstateGapIsZero) {
  // One-term Hamiltonian Z on one qubit; RY(pi)|0> = |1> is its ground state.
  const auto h = simplify({PauliString::parse("Z")});
  Circuit c;
  c.n_qubits = 1;
  c.n_params = 1;
  c.gates.push_back({GateKind::RY, 0, -1, {}, 0});
  EstimatorConfig cfg;
  cfg.mode = EstimatorMode::Exact;
  const auto v = simulate(c, std::vector<double>{std::numbers::pi});
  const double e = Estimator(h, cfg)(v, 0);
  EXPECT_NEAR(e - ground_energy(h).energy, 0.0, 1e-12);
}

TEST(Vqe, SpecValidation) {
  auto s = make_spec(Model::BosonicL2, 1.0, "tl_Ry_c", OptimizerKind::COBYLA, 10, true);
  s.ansatz = find_ansatz({Model::SusyL2, 1.0}, "ev_op_Hp15");
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = make_spec(Model::BosonicL2, 1.0, "tl_Ry_c", OptimizerKind::COBYLA, 10, true);
  s.replicas = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Sweep, EmptyIsEmpty) {
  const auto out = run_sweep({});
  EXPECT_TRUE(out.results.empty());
  EXPECT_TRUE(out.failures.empty());
}

TEST(Sweep, OrderedAndIndependentOfParallelism) {
  std::vector<ExperimentSpec> specs = {
      make_spec(Model::BosonicL2, 0.5, "ev_op_Hp", OptimizerKind::SPSA, 20, false),
      make_spec(Model::BosonicL2, 0.5, "effsu2_Ry_c", OptimizerKind::COBYLA, 30, false),
      make_spec(Model::SusyL2, 0.5, "ev_op_Hp15", OptimizerKind::COBYLA, 30, false),
  };
  const auto one = run_sweep(specs, 1);
  const auto many = run_sweep(specs, 3);
  ASSERT_EQ(one.results.size(), 6u);
  ASSERT_EQ(many.results.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(one.results[i].spec.ansatz.name, specs[i / 2].ansatz.name);
    EXPECT_EQ(one.results[i].replica, static_cast<int>(i % 2));
    EXPECT_EQ(to_json(one.results[i]).dump(), to_json(many.results[i]).dump());
  }
}

TEST(Sweep, FailuresAreRecorded) {
  auto bad = make_spec(Model::BosonicL2, 0.5, "ev_op_Hp", OptimizerKind::COBYLA, 10, true);
  bad.ansatz = find_ansatz({Model::SusyL2, 0.5}, "ev_op_Hp15");
  const auto good = make_spec(Model::BosonicL2, 0.5, "ev_op_Hp", OptimizerKind::COBYLA, 10, true);
  const auto out = run_sweep({bad, good}, 2);
  EXPECT_EQ(out.results.size(), 2u);
  EXPECT_EQ(out.failures.size(), 2u);
  EXPECT_FALSE(out.failures[0].message.empty());
}

TEST(Sweep, CatalogSizes) {
  ExperimentSpec base;
  const std::vector<OptimizerKind> two = {OptimizerKind::COBYLA, OptimizerKind::SPSA};
  const std::vector<double> all = {0.2, 0.5, 1.0, 2.0};
  EXPECT_EQ(catalog_specs(Model::BosonicL2, all, two, base).size(), 200u);
  EXPECT_EQ(catalog_specs(Model::SusyL2, all, two, base).size(), 96u);
  EXPECT_EQ(catalog_specs(Model::SusyL2, {0.2}, two, base).size(), 24u);
  EXPECT_EQ(catalog_specs(Model::BosonicL4, all, two, base).size(), 192u);
  EXPECT_TRUE(catalog_specs(Model::BosonicL2, {}, two, base).empty());
}

TEST(Summary, BestPerFamilyAndOptimizer) {
  std::vector<VqeResult> rs(3);
  rs[0].spec = make_spec(Model::BosonicL2, 0.2, "tl_Ry_c", OptimizerKind::COBYLA, 1, true);
  rs[0].vqe_energy = 3.3;
  rs[1].spec = make_spec(Model::BosonicL2, 0.2, "effsu2_Ry_f", OptimizerKind::COBYLA, 1, true);
  rs[1].vqe_energy = 3.2;
  rs[2].spec = make_spec(Model::BosonicL2, 0.2, "ev_op_H", OptimizerKind::COBYLA, 1, true);
  rs[2].vqe_energy = 3.25;
  for (auto& r : rs) {
    r.exact_energy = 3.14808;
    r.gap = r.vqe_energy - r.exact_energy;
  }
  const auto rows = summarize(rs);
  ASSERT_EQ(rows.size(), 3u);  // EfficientSU2, TwoLocal, EvolvedOperator
  for (const auto& row : rows) {
    if (row.family == Family::TwoLocal) EXPECT_EQ(row.ansatz, "tl_Ry_c");
    if (row.family == Family::EfficientSU2) EXPECT_EQ(row.vqe_energy, 3.2);
  }
}

TEST(Output, RunFilesCarryVersionConfigAndSeed) {
  const auto spec = make_spec(Model::BosonicL2, 0.2, "ev_op_r", OptimizerKind::COBYLA, 15, false);
  const auto r = run_vqe(spec, 0);
  const auto dir = temp_dir("runfiles");
  const nlohmann::json config = {{"command", "test"}};
  write_run_files(dir, r, config);
  EXPECT_EQ(run_stem(r), "bosonic2_l0.2_ev_op_r_cobyla_s11");

  std::ifstream in(dir / "bosonic2_l0.2_ev_op_r_cobyla_s11.json");
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.at("version"), version());
  EXPECT_EQ(doc.at("config"), config);
  EXPECT_EQ(doc.at("seed"), 11);
  EXPECT_EQ(doc.at("history").size(), static_cast<std::size_t>(r.evaluations));
  EXPECT_FALSE(doc.contains("wall_time"));

  const auto csv = read_lines(dir / "bosonic2_l0.2_ev_op_r_cobyla_s11_convergence.csv");
  ASSERT_GE(csv.size(), 3u);
  EXPECT_EQ(csv[0], std::string("# mmvqe ") + version());
  EXPECT_EQ(csv[1].rfind("# config ", 0), 0u);
  EXPECT_NE(csv[1].find("\"seed\":11"), std::string::npos);
  EXPECT_EQ(csv[2], "evaluation,energy");
  EXPECT_EQ(csv.size(), 3u + r.evaluations);
  fs::remove_all(dir);
}

TEST(Output, AggregateAndSummaryCsv) {
  const auto spec = make_spec(Model::BosonicL2, 0.2, "ev_op_r", OptimizerKind::COBYLA, 10, true);
  const auto out = run_sweep({spec}, 1);
  const auto dir = temp_dir("aggregate");
  write_aggregate_csv(dir / "aggregate.csv", out.results, {{"k", 1}});
  write_summary_csv(dir / "summary.csv", summarize(out.results), {{"k", 1}});
  write_failure_manifest(dir / "failures.json", {}, {{"k", 1}});
  const auto agg = read_lines(dir / "aggregate.csv");
  ASSERT_EQ(agg.size(), 3u + 2u);
  EXPECT_EQ(agg[2],
            "model,lambda,ansatz,optimizer,seed,exact_energy,vqe_energy,gap,evaluations,wall_time");
  EXPECT_EQ(agg[3].rfind("bosonic2,0.2,ev_op_r,cobyla,11,", 0), 0u);
  const auto sum = read_lines(dir / "summary.csv");
  ASSERT_EQ(sum.size(), 4u);
  std::ifstream in(dir / "failures.json");
  EXPECT_TRUE(nlohmann::json::parse(in).at("failures").empty());
  fs::remove_all(dir);
}

}  // namespace
}  // namespace mmvqe
