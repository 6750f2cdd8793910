// homprod: build, inspect and stress single-shot homological-product codes.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "homprod/commands.hpp"

using namespace homprod;

namespace {

struct Outputs {
  std::string json_path;  // "-" for stdout
};

int emit(CommandOutput out, const GlobalOptions& g, const Outputs& o) {
  if (out.json.is_object() && !out.json.contains("seed")) out.json["seed"] = g.seed;
  const std::string dumped = out.json.dump(2) + "\n";
  if (!o.json_path.empty() && o.json_path != "-") {
    std::ofstream f(o.json_path);
    if (!f) {
      std::cerr << "error: cannot write " << o.json_path << "\n";
      return exit_code::input_error;
    }
    f << dumped;
  }
  if (out.exit_code != exit_code::ok && out.json.contains("error")) {
    std::cerr << out.text;
    return out.exit_code;
  }
  if (g.quiet) return out.exit_code;
  if (o.json_path == "-" || out.text.empty()) {
    std::cout << dumped;
  } else {
    std::cout << out.text;
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological-product code construction and single-shot analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  Outputs outputs;
  app.add_option("--seed", g.seed, "RNG seed for sampled sweeps")->capture_default_str();
  app.add_option("--max-weight", g.max_weight, "Weight budget for exhaustive searches")->capture_default_str();
  app.add_option("--max-evals", g.max_evaluations, "Search cost cap per distance or decode call")
      ->capture_default_str();
  app.add_option("--json", outputs.json_path, "Write the JSON result to PATH ('-' prints it)");
  app.add_flag("-q,--quiet", g.quiet, "Print nothing on success");

  std::function<CommandOutput()> run;

  BuildOptions build;
  auto* c_build = app.add_subcommand("build", "Build the single or double product of a classical code");
  c_build->add_option("--classical", build.classical, "Classical parity-check matrix (.pcm)")->required();
  c_build->add_option("--stages", build.stages, "1 or 2")->capture_default_str();
  c_build->add_option("--out", build.out, "Output complex directory")->required();
  c_build->add_flag("--allow-redundant", build.allow_redundant, "Accept rank-deficient checks");
  c_build->callback([&] { run = [&] { return cmd_build(build, g); }; });

  ReportOptions report;
  auto* c_report = app.add_subcommand("report", "Code parameters and distances");
  c_report->add_option("complex", report.complex_dir, "Complex directory")->required();
  c_report->callback([&] { run = [&] { return cmd_report(report, g); }; });

  DecodeOptions decode;
  auto* c_decode = app.add_subcommand("decode", "Single-shot decode one syndrome");
  c_decode->add_option("complex", decode.complex_dir, "Complex directory")->required();
  c_decode->add_option("--syndrome", decode.syndrome, "1 x m .pcm, Z-check bits then X-check bits")->required();
  c_decode->callback([&] { run = [&] { return cmd_decode(decode, g); }; });

  SweepOptions sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Adversarial sweep over small errors and measurement noise");
  c_sweep->add_option("complex", sweep.complex_dir, "Complex directory")->required();
  c_sweep->add_option("--u-max", sweep.u_max)->capture_default_str();
  c_sweep->add_option("--e-max", sweep.e_max)->capture_default_str();
  c_sweep->add_option("--t", sweep.t, "Soundness threshold: count, inf or auto")->capture_default_str();
  c_sweep->add_option("--f", sweep.f, "Soundness function, e.g. cubic or x^2/4")->capture_default_str();
  c_sweep->add_option("--samples", sweep.samples)->capture_default_str();
  c_sweep->add_option("--exhaustive-limit", sweep.exhaustive_limit)->capture_default_str();
  c_sweep->callback([&] { run = [&] { return cmd_sweep(sweep, g); }; });

  RoundsOptions rounds;
  auto* c_rounds = app.add_subcommand("rounds", "Multi-round simulation from a JSON schedule");
  c_rounds->add_option("complex", rounds.complex_dir, "Complex directory")->required();
  c_rounds->add_option("--schedule", rounds.schedule, "JSON array of {e_support, f_support, u_support}")
      ->required();
  c_rounds->add_option("--rounds", rounds.rounds)->capture_default_str();
  c_rounds->add_option("--t", rounds.t)->capture_default_str();
  c_rounds->add_option("--f", rounds.f)->capture_default_str();
  c_rounds->callback([&] { run = [&] { return cmd_rounds(rounds, g); }; });

  ProfileOptions profile;
  std::size_t profile_w = 0;
  auto* c_profile = app.add_subcommand("profile", "Worst preimage weight per syndrome weight");
  c_profile->add_option("complex", profile.complex_dir, "Complex directory")->required();
  c_profile->add_option("--map", profile.map, "z, x, zt or m1")->capture_default_str();
  c_profile->add_option("--x-max", profile.x_max)->capture_default_str();
  auto* w_opt = c_profile->add_option("--w-max", profile_w, "Domain weight bound (default --max-weight)");
  c_profile->add_option("--t", profile.t)->capture_default_str();
  c_profile->add_option("--f", profile.f)->capture_default_str();
  c_profile->callback([&] {
    if (w_opt->count() > 0) profile.w_max = profile_w;
    run = [&] { return cmd_profile(profile, g); };
  });

  WitnessOptions witness;
  auto* c_witness = app.add_subcommand("witness", "Constructive low-weight preimage for a syndrome");
  c_witness->add_option("complex", witness.complex_dir, "Single or double product directory")->required();
  c_witness->add_option("--syndrome", witness.syndrome, "1 x m .pcm")->required();
  c_witness->add_option("--map", witness.map, "zt or m1 (single products)")->capture_default_str();
  c_witness->add_option("--t", witness.t)->capture_default_str();
  c_witness->callback([&] { run = [&] { return cmd_witness(witness, g); }; });

  CertifyOptions certify;
  std::string certify_complex;
  auto* c_certify = app.add_subcommand("certify", "Certify or refute (t, f) soundness");
  c_certify->add_option("complex", certify_complex, "Complex directory");
  c_certify->add_option("--map", certify.map)->capture_default_str();
  c_certify->add_option("--checks", certify.checks, "Symplectic check matrix (n x 2n .pcm) instead");
  c_certify->add_option("--t", certify.t)->capture_default_str();
  c_certify->add_option("--f", certify.f)->capture_default_str();
  c_certify->callback([&] {
    certify.complex_dir = certify_complex;
    if (certify_complex.empty() == certify.checks.empty())
      throw CLI::ValidationError("certify", "give exactly one of a complex directory or --checks");
    run = [&] { return cmd_certify(certify, g); };
  });

  DiagOptions diag;
  auto* c_diag = app.add_subcommand("diag", "Local-Clifford diagonal form, pure errors and log");
  c_diag->add_option("--checks", diag.checks, "Symplectic check matrix (rows x|z)")->required();
  c_diag->add_option("--out", diag.out, "Directory for the artifacts");
  c_diag->callback([&] { run = [&] { return cmd_diag(diag, g); }; });

  BarrierOptions barrier;
  auto* c_barrier = app.add_subcommand("barrier", "Exact energy barrier of a small code");
  c_barrier->add_option("--checks", barrier.checks, "Symplectic check matrix (rows x|z)")->required();
  c_barrier->add_option("--sector", barrier.sector, "x, z or full")->capture_default_str();
  c_barrier->add_option("--n-limit", barrier.n_limit)->capture_default_str();
  c_barrier->callback([&] { run = [&] { return cmd_barrier(barrier, g); }; });

  Table1Options table1;
  std::size_t table1_row = 0;
  auto* c_table1 = app.add_subcommand("table1", "Rebuild the four example codes and compare");
  auto* row_opt = c_table1->add_option("--row", table1_row, "Only this row (1-4)");
  c_table1->callback([&] {
    if (row_opt->count() > 0) table1.only_row = table1_row;
    run = [&] { return cmd_table1(table1, g); };
  });

  PipelineOptions pipeline;
  auto* c_pipeline = app.add_subcommand("pipeline", "Classical code to certified single-shot code");
  c_pipeline->add_option("--classical", pipeline.classical)->required();
  c_pipeline->add_option("--out", pipeline.out)->required();
  c_pipeline->add_flag("--allow-redundant", pipeline.allow_redundant);
  c_pipeline->callback([&] { run = [&] { return cmd_pipeline(pipeline, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::input_error;
  }
  return emit(run_guarded(run), g, outputs);
}
