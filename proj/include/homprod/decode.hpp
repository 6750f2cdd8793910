#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "homprod/css.hpp"
#include "homprod/rational.hpp"

namespace homprod {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RepairResult {
  Syndrome s_rec;
  bool metacheck_failure = false;
};

// Minimum-weight s_rec with H(s + s_rec) = 0, lexicographically first among ties.
// Throws BudgetExceeded when no repair of weight <= budget.max_weight exists.
RepairResult repair_syndrome(const CssCode& code, const Syndrome& s, const SearchBudget& budget);

struct QubitDecodeResult {
  PauliError e_rec;
  bool minimality_certified = true;
};

// Minimum-weight X and Z parts decoded independently. Falls back to an arbitrary solution,
// flagged as not certified, when a side exceeds the budget.
QubitDecodeResult qubit_decode(const CssCode& code, const Syndrome& repaired, const SearchBudget& budget);

struct DecodeResult {
  Syndrome s_rec;
  PauliError e_rec;
  bool metacheck_failure = false;
  std::optional<std::size_t> residual_wt_min;  // filled in when the true error is known
  bool minimality_certified = false;
};

DecodeResult single_shot_decode(const CssCode& code, const Syndrome& s, const SearchBudget& budget);

// Decodes sigma(E) + u and measures the residual E * E_rec, with wt_min searched up to
// residual_budget.
DecodeResult decode_and_score(const CssCode& code, const PauliError& e, const Syndrome& u,
                              const SearchBudget& budget, std::size_t residual_budget);

// Measurement budget p, qubit budget q (nullopt means infinite) and the soundness function.
struct SingleShotBudget {
  std::optional<Rational> p;
  std::optional<Rational> q;
  PowerLaw f;
  bool p_exact = true;
  bool q_exact = true;
  // Inputs kept for the per-condition checks.
  std::optional<std::size_t> d_ss;
  std::optional<std::size_t> t;
  std::optional<std::size_t> d_q;
};

// p = min(d_ss, t)/2, q = d_Q/2. t = nullopt means no soundness threshold.
SingleShotBudget thm1_budget(const CodeReport& report, std::optional<std::size_t> t, PowerLaw f);

enum class Contract { inside, boundary, outside };

// The three residual-error conditions: |u| < d_ss/2, |u| < t/2, f(2|u|) + wt(E) < d_Q/2.
// boundary: not inside, but inside once every strict inequality is relaxed to <=.
Contract classify(const SingleShotBudget& b, std::size_t u_weight, std::size_t e_weight);

struct SweepLimits {
  std::size_t e_max = 1;
  std::size_t u_max = 1;
  double exhaustive_limit = 2e5;  // pairs; above this the sweep samples
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

struct SweepViolation {
  PauliError e;
  Syndrome u;
  std::optional<std::size_t> residual;  // nullopt: above the bound
  Rational bound;
  std::string kind;  // "residual", "metacheck_failure", "repair_weight"
};

struct SweepReport {
  bool sampled = false;
  std::uint64_t seed = 0;
  std::size_t pairs_considered = 0;
  std::size_t pairs_checked = 0;  // inside the contract, decoded and asserted
  std::size_t boundary_cases = 0;
  std::size_t outside_contract = 0;
  std::size_t repairs_checked = 0;
  std::vector<SweepViolation> violations;
};

SweepReport adversarial_sweep(const CssCode& code, const SingleShotBudget& budget, const SweepLimits& limits,
                              const SearchBudget& search);

struct Round {
  PauliError e;
  Syndrome u;
};

struct RoundTrace {
  std::size_t round = 0;
  std::size_t e_weight = 0;
  std::size_t u_weight = 0;
  bool in_contract = true;
  bool metacheck_failure = false;
  std::optional<std::size_t> residual_wt_min;
  Rational bound;
  bool ok = true;
};

// Runs N rounds, cycling through the schedule. Round tau decodes sigma(E_tau R_{tau-1}) + u_tau.
std::vector<RoundTrace> multi_round_simulate(const CssCode& code, const SingleShotBudget& budget,
                                             const std::vector<Round>& schedule, std::size_t rounds,
                                             const SearchBudget& search);

// Per-round contract: |u_tau| < p and f(2|u_tau|) + f(2|u_{tau-1}|) + wt(E_tau) < q.
bool round_in_contract(const SingleShotBudget& b, std::size_t u_prev, std::size_t u_cur, std::size_t e_weight);

}  // namespace homprod
