#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "homprod/chain.hpp"
#include "homprod/css.hpp"
#include "homprod/decode.hpp"
#include "homprod/soundness.hpp"
#include "homprod/stabsym.hpp"

namespace homprod {

namespace exit_code {
constexpr int ok = 0;
constexpr int input_error = 2;
constexpr int budget_exhausted = 3;
constexpr int counterexample = 4;
}  // namespace exit_code

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::size_t max_weight = 6;
  double max_evaluations = 2e7;  // search cost cap per distance or decode call
  bool quiet = false;
};

struct CommandOutput {
  nlohmann::json json;
  std::string text;  // human-readable view; empty means print the JSON
  int exit_code = exit_code::ok;
};

// ---- JSON views ----
nlohmann::json to_json(const Distance& d);
nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const CodeReport& r);
nlohmann::json to_json(const CheckStats& s);
nlohmann::json to_json(const SingleShotBudget& b);
nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const RoundTrace& t);
nlohmann::json to_json(const SoundnessProfile& p);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const DiagonalizedChecks& d);
nlohmann::json to_json(const EnergyReport& e);
nlohmann::json weight_or_inf(std::optional<std::size_t> v);
// 1-based support list.
nlohmann::json support_json(const BinVector& v);
BinVector support_from_json(const nlohmann::json& j, std::size_t n);

// Parses a count or "inf"; throws std::invalid_argument otherwise.
std::optional<std::size_t> parse_count_or_inf(const std::string& text);
PowerLaw parse_power_law_or_throw(const std::string& text);

// A complex directory plus, when present and consistent, the classical matrix it was built
// from (classical.pcm) and the intermediate single product.
struct LoadedComplex {
  ChainComplex complex;
  std::optional<BinMatrix> classical;
  std::optional<ChainComplex> single;
};

LoadedComplex load_complex(const std::filesystem::path& dir);

// min(d_0, d_0^T) of a classical parity-check matrix, within the budget.
std::optional<std::size_t> classical_threshold(const BinMatrix& h, const SearchBudget& budget);

// ---- commands ----
struct BuildOptions {
  std::filesystem::path classical;
  int stages = 2;
  std::filesystem::path out;
  bool allow_redundant = false;
};
CommandOutput cmd_build(const BuildOptions& o, const GlobalOptions& g);

struct ReportOptions {
  std::filesystem::path complex_dir;
};
CommandOutput cmd_report(const ReportOptions& o, const GlobalOptions& g);

struct DecodeOptions {
  std::filesystem::path complex_dir;
  std::filesystem::path syndrome;  // 1 x m .pcm, Z-check bits then X-check bits
};
CommandOutput cmd_decode(const DecodeOptions& o, const GlobalOptions& g);

struct SweepOptions {
  std::filesystem::path complex_dir;
  std::size_t u_max = 1;
  std::size_t e_max = 1;
  std::string t = "auto";  // count, "inf", or "auto" (from classical.pcm)
  std::string f = "cubic";
  std::size_t samples = 10000;
  double exhaustive_limit = 2e5;
};
CommandOutput cmd_sweep(const SweepOptions& o, const GlobalOptions& g);

struct RoundsOptions {
  std::filesystem::path complex_dir;
  std::filesystem::path schedule;
  std::size_t rounds = 10;
  std::string t = "auto";
  std::string f = "cubic";
};
CommandOutput cmd_rounds(const RoundsOptions& o, const GlobalOptions& g);

// Map selector: z = delta_0, x = delta_{-1}^T, zt = delta_0^T, m1 = delta_{-1}.
BinMatrix select_map(const ChainComplex& c, const std::string& which);

struct ProfileOptions {
  std::filesystem::path complex_dir;
  std::string map = "z";
  std::size_t x_max = 6;
  std::optional<std::size_t> w_max;  // defaults to --max-weight
  std::string t = "inf";
  std::string f = "quadratic";
};
CommandOutput cmd_profile(const ProfileOptions& o, const GlobalOptions& g);

struct WitnessOptions {
  std::filesystem::path complex_dir;
  std::filesystem::path syndrome;
  std::string map = "zt";  // length-2 complexes only: zt or m1
  std::string t = "auto";
};
CommandOutput cmd_witness(const WitnessOptions& o, const GlobalOptions& g);

struct CertifyOptions {
  std::filesystem::path complex_dir;  // either this with map ...
  std::string map = "z";
  std::filesystem::path checks;       // ... or a symplectic check set
  std::string t = "inf";
  std::string f = "quadratic";
};
CommandOutput cmd_certify(const CertifyOptions& o, const GlobalOptions& g);

struct DiagOptions {
  std::filesystem::path checks;
  std::filesystem::path out;
};
CommandOutput cmd_diag(const DiagOptions& o, const GlobalOptions& g);

struct BarrierOptions {
  std::filesystem::path checks;
  std::string sector = "x";
  std::size_t n_limit = 8;
};
CommandOutput cmd_barrier(const BarrierOptions& o, const GlobalOptions& g);

// Classical inputs of the four example double-product codes with their published values.
struct Table1Row {
  BinMatrix h;
  std::size_t n, k, d;
  std::size_t n_q, k_q, d_q;
  std::optional<std::size_t> d_ss;  // nullopt: infinite
  std::size_t max_check_weight;
  double mean_check_weight;
  double redundancy;
};
const std::vector<Table1Row>& table1_rows();

struct Table1Options {
  std::optional<std::size_t> only_row;  // 1-based
};
CommandOutput cmd_table1(const Table1Options& o, const GlobalOptions& g);

struct PipelineOptions {
  std::filesystem::path classical;
  std::filesystem::path out;
  bool allow_redundant = false;
};
CommandOutput cmd_pipeline(const PipelineOptions& o, const GlobalOptions& g);

// Runs fn, mapping library exceptions to exit codes with an "error" JSON field.
CommandOutput run_guarded(const std::function<CommandOutput()>& fn);

}  // namespace homprod
