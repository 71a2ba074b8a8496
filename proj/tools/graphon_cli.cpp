// Command-line surface for the graphon core/cut-metric library.
//
// Exit codes: 0 success, 2 input or validation error, 3 verification or
// oracle failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graphon/analytic.hpp"
#include "graphon/closed_forms.hpp"
#include "graphon/core.hpp"
#include "graphon/cut_metric.hpp"
#include "graphon/finite_graph.hpp"
#include "graphon/io.hpp"
#include "graphon/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;

struct GraphonInput {
  std::string input_path;
  std::string spec;
  int blocks = 0;  // 0 = natural partition where one exists

  graphon::StepGraphon load() const {
    if (!input_path.empty()) return graphon::read_step_graphon(input_path);
    if (spec.empty()) throw graphon::ParseError("ParseError: need --input or --spec");
    const graphon::AnalyticGraphon fam = graphon::parse_analytic(spec);
    if (blocks > 0) return graphon::discretize(fam, blocks);
    return graphon::natural_step_graphon(fam);
  }
};

void add_graphon_flags(CLI::App* cmd, GraphonInput& in) {
  cmd->add_option("--input", in.input_path, "step graphon JSON file");
  cmd->add_option("--spec", in.spec,
                  "analytic family: min | const:a | twoblock:a,b,alpha | lower:delta | "
                  "upper:delta | appendix:N");
  cmd->add_option("--blocks", in.blocks, "discretize onto this many uniform blocks");
}

graphon::StepGraphon load_either(const std::string& arg, int blocks) {
  if (std::filesystem::exists(arg)) return graphon::read_step_graphon(arg);
  const graphon::AnalyticGraphon fam = graphon::parse_analytic(arg);
  if (blocks > 0) return graphon::discretize(fam, blocks);
  return graphon::natural_step_graphon(fam);
}

ordered_json active_set_json(const graphon::ActiveSet& k) {
  std::vector<int> blocks;
  for (int i = 0; i < static_cast<int>(k.member.size()); ++i) {
    if (k.contains(i)) blocks.push_back(i);
  }
  return blocks;
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kappa-cores, shell indices, degeneracy and cut distances of step graphons"};
  app.require_subcommand(1);

  // core
  GraphonInput core_in;
  double core_kappa = 0.0;
  auto* cmd_core = app.add_subcommand("core", "kappa-core filtration trace");
  add_graphon_flags(cmd_core, core_in);
  cmd_core->add_option("--kappa", core_kappa, "threshold in [0,1]")->required();

  // degeneracy / shells / density
  GraphonInput deg_in;
  bool deg_oracle = false;
  auto* cmd_deg = app.add_subcommand("degeneracy", "degeneracy via greedy peeling");
  add_graphon_flags(cmd_deg, deg_in);
  cmd_deg->add_flag("--oracle", deg_oracle, "cross-check against the subset oracle (<= 20 blocks)");

  GraphonInput shells_in;
  auto* cmd_shells = app.add_subcommand("shells", "per-block shell indices");
  add_graphon_flags(cmd_shells, shells_in);

  GraphonInput dens_in;
  auto* cmd_dens = app.add_subcommand("density", "edge density");
  add_graphon_flags(cmd_dens, dens_in);

  // cutnorm / cutdist
  std::string cn_a, cn_b;
  int cn_blocks = 0;
  auto* cmd_cutnorm = app.add_subcommand("cutnorm", "exact cut norm between two step graphons");
  cmd_cutnorm->add_option("--a", cn_a, "spec string or JSON path")->required();
  cmd_cutnorm->add_option("--b", cn_b, "spec string or JSON path")->required();
  cmd_cutnorm->add_option("--blocks", cn_blocks, "discretize analytic inputs onto this grid");

  std::string cd_a, cd_b, cd_mode = "exhaustive";
  int cd_grid = 4, cd_blocks = 0, cd_restarts = 32;
  std::uint64_t cd_seed = 0;
  auto* cmd_cutdist = app.add_subcommand("cutdist", "certified bounds on the cut distance");
  cmd_cutdist->add_option("--a", cd_a)->required();
  cmd_cutdist->add_option("--b", cd_b)->required();
  cmd_cutdist->add_option("--grid", cd_grid, "uniform grid for the permutation search");
  cmd_cutdist->add_option("--mode", cd_mode, "exhaustive | local");
  cmd_cutdist->add_option("--restarts", cd_restarts, "local search restarts");
  cmd_cutdist->add_option("--seed", cd_seed, "local search seed");
  cmd_cutdist->add_option("--blocks", cd_blocks, "discretize analytic inputs onto this grid");

  // sample
  GraphonInput sample_in;
  int sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  auto* cmd_sample = app.add_subcommand("sample", "sample a W-random graph");
  add_graphon_flags(cmd_sample, sample_in);
  cmd_sample->add_option("--n", sample_n, "node count")->required();
  cmd_sample->add_option("--seed", sample_seed, "generator seed");
  cmd_sample->add_option("--out", sample_out, "edge list output path (default stdout)");

  // graph-core / kwpr
  std::string gc_input;
  int gc_k = 0;
  auto* cmd_gcore = app.add_subcommand("graph-core", "k-core of a finite graph");
  cmd_gcore->add_option("--input", gc_input, "edge list file")->required();
  cmd_gcore->add_option("--k", gc_k)->required();

  std::string kwpr_input;
  auto* cmd_kwpr = app.add_subcommand("kwpr", "degeneracy / edge count inequality check");
  cmd_kwpr->add_option("--input", kwpr_input, "edge list file")->required();

  // verify
  std::string vf_suite = "all";
  int vf_trials = 100;
  std::uint64_t vf_seed = 0;
  auto* cmd_verify = app.add_subcommand("verify", "run a property-verification suite");
  cmd_verify->add_option("--suite", vf_suite,
                         "lemmas-core | continuity | density-bounds | mp-invariance | oracle | "
                         "kwpr | appendix | all");
  cmd_verify->add_option("--trials", vf_trials);
  cmd_verify->add_option("--seed", vf_seed);

  // curve
  GraphonInput curve_in;
  int curve_steps = 101;
  auto* cmd_curve = app.add_subcommand("curve", "CSV of (kappa, |K_kappa|)");
  add_graphon_flags(cmd_curve, curve_in);
  cmd_curve->add_option("--steps", curve_steps, "grid points on [0,1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*cmd_core) {
      if (core_kappa < 0.0 || core_kappa > 1.0) {
        throw graphon::OutOfRange("OutOfRange: kappa must lie in [0,1]");
      }
      const graphon::StepGraphon g = core_in.load();
      graphon::validate(g);
      const graphon::CoreTrace trace = graphon::kappa_core(g, core_kappa);
      ordered_json j;
      j["kappa"] = core_kappa;
      ordered_json stages = ordered_json::array();
      for (const auto& st : trace.stages) stages.push_back(active_set_json(st));
      j["stages"] = stages;
      j["terminal_blocks"] = active_set_json(trace.terminal);
      j["mass"] = trace.terminal.mass;
      print_json(j);
    } else if (*cmd_deg) {
      const graphon::StepGraphon g = deg_in.load();
      graphon::validate(g);
      const graphon::CoreDecomposition dec = graphon::decompose(g);
      ordered_json j;
      j["degeneracy"] = dec.degeneracy;
      if (deg_oracle) {
        const auto [exact, witness] = graphon::brute_force_degeneracy(g);
        j["oracle"] = exact;
        j["oracle_witness"] = witness;
        if (std::abs(exact - dec.degeneracy) > graphon::assertion_tol()) {
          j["match"] = false;
          print_json(j);
          return kExitVerify;
        }
        j["match"] = true;
      }
      print_json(j);
    } else if (*cmd_shells) {
      const graphon::StepGraphon g = shells_in.load();
      graphon::validate(g);
      const graphon::CoreDecomposition dec = graphon::decompose(g);
      ordered_json j;
      j["shells"] = std::vector<double>(dec.shells.data(), dec.shells.data() + dec.shells.size());
      j["degeneracy"] = dec.degeneracy;
      ordered_json peel = ordered_json::array();
      for (const auto& step : dec.peel_order) {
        peel.push_back({{"block", step.block},
                        {"degree", step.degree_at_removal},
                        {"running_max", step.running_max}});
      }
      j["peel_order"] = peel;
      print_json(j);
    } else if (*cmd_dens) {
      const graphon::StepGraphon g = dens_in.load();
      graphon::validate(g);
      ordered_json j;
      j["edge_density"] = graphon::edge_density(g);
      print_json(j);
    } else if (*cmd_cutnorm) {
      const graphon::StepGraphon a = load_either(cn_a, cn_blocks);
      const graphon::StepGraphon b = load_either(cn_b, cn_blocks);
      const graphon::CutNormWitness w = graphon::cut_norm(a, b);
      ordered_json j;
      j["value"] = w.value;
      j["S"] = w.s;
      j["T"] = w.t;
      j["sign"] = w.sign;
      print_json(j);
    } else if (*cmd_cutdist) {
      const graphon::StepGraphon a = load_either(cd_a, cd_blocks);
      const graphon::StepGraphon b = load_either(cd_b, cd_blocks);
      graphon::DeltaBoxMode mode;
      if (cd_mode == "exhaustive") {
        mode = graphon::DeltaBoxMode::kExhaustive;
      } else if (cd_mode == "local") {
        mode = graphon::DeltaBoxMode::kLocalSearch;
      } else {
        throw graphon::ParseError("ParseError: mode must be exhaustive or local");
      }
      const graphon::DeltaBoxEstimate est =
          graphon::delta_box_bounds(a, b, cd_grid, mode, cd_restarts, cd_seed);
      ordered_json j;
      j["lower"] = est.lower;
      j["upper"] = est.upper;
      j["method"] = est.method;
      j["best_permutation"] = est.best_permutation;
      j["resample_defect_a"] = est.resample_defect_a;
      j["resample_defect_b"] = est.resample_defect_b;
      print_json(j);
    } else if (*cmd_sample) {
      graphon::FiniteGraph fg;
      if (!sample_in.input_path.empty() || sample_in.blocks > 0) {
        fg = graphon::sample_graph(sample_in.load(), sample_n, sample_seed);
      } else {
        fg = graphon::sample_graph(graphon::parse_analytic(sample_in.spec), sample_n, sample_seed);
      }
      if (sample_out.empty()) {
        graphon::write_edge_list(std::cout, fg);
      } else {
        std::ofstream out(sample_out);
        if (!out) throw graphon::ParseError("ParseError: cannot open '" + sample_out + "'");
        graphon::write_edge_list(out, fg);
      }
    } else if (*cmd_gcore) {
      std::ifstream in(gc_input);
      if (!in) throw graphon::ParseError("ParseError: cannot open '" + gc_input + "'");
      const graphon::FiniteGraph fg = graphon::read_edge_list(in);
      const std::vector<int> members = graphon::k_core(fg, gc_k);
      ordered_json j;
      j["k"] = gc_k;
      j["members"] = members;
      j["count"] = members.size();
      print_json(j);
    } else if (*cmd_kwpr) {
      std::ifstream in(kwpr_input);
      if (!in) throw graphon::ParseError("ParseError: cannot open '" + kwpr_input + "'");
      const graphon::KwprReport rep = graphon::check_kwpr(graphon::read_edge_list(in));
      std::printf("%lld <= %lld <= %lld %s\n", rep.lower, rep.edges, rep.upper,
                  rep.holds ? "OK" : "VIOLATED");
      if (!rep.holds) return kExitVerify;
    } else if (*cmd_verify) {
      const graphon::VerifyReport rep = graphon::verify_suite(vf_suite, vf_trials, vf_seed);
      ordered_json j;
      j["suite"] = rep.suite;
      j["trials"] = rep.trials;
      j["failures"] = rep.failures;
      j["wall_ms"] = rep.wall_ms;
      if (vf_suite == "appendix" || vf_suite == "all") {
        const graphon::AlternationReport alt =
            graphon::appendix_alternation(graphon::appendix_spec(40), 6);
        ordered_json rows = ordered_json::array();
        for (const auto& r : alt.rows) {
          rows.push_back({{"i", r.i},
                          {"kappa_i", r.kappa},
                          {"stage_mid_left", r.stage_mid_left},
                          {"stage_mid_right", r.stage_mid_right},
                          {"order", r.order}});
        }
        j["appendix_report"] = rows;
      }
      print_json(j);
      if (!rep.failures.empty()) return kExitVerify;
    } else if (*cmd_curve) {
      const graphon::StepGraphon g = curve_in.load();
      graphon::validate(g);
      std::vector<double> grid;
      for (int i = 0; i < curve_steps; ++i) {
        grid.push_back(curve_steps == 1 ? 0.0 : static_cast<double>(i) / (curve_steps - 1));
      }
      std::printf("kappa,mass\n");
      for (const auto& [kappa, mass] : graphon::mass_of_core_curve(g, grid)) {
        std::printf("%.17g,%.17g\n", kappa, mass);
      }
    }
  } catch (const graphon::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
