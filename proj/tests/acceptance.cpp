// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Tolerances and sample counts are fixed here and must not be relaxed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "codes.hpp"
#include "homprod/commands.hpp"
#include "homprod/decode.hpp"
#include "homprod/soundness.hpp"
#include "homprod/stabsym.hpp"

using namespace homprod;
using nlohmann::json;

namespace {

constexpr double kTableTol = 1e-5;
constexpr double kTableSeconds = 120;
constexpr double kSingleShotSeconds = 600;
constexpr std::size_t kKunnethCodes = 10;
constexpr std::size_t kLen4Samples = 10000;
constexpr std::size_t kPartialInstances = 1000;
constexpr std::size_t kSweepPairs = 10000;
constexpr std::size_t kStabCodes = 5;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Opt = std::optional<std::size_t>;
Opt opt_mul(Opt a, Opt b) { return a && b ? Opt(*a * *b) : std::nullopt; }
Opt opt_min(Opt a, Opt b) { return !a ? b : !b ? a : Opt(std::min(*a, *b)); }
Opt opt_max(Opt a, Opt b) { return a && b ? Opt(std::max(*a, *b)) : std::nullopt; }
bool opt_ge(Opt a, Opt b) { return !a || (b && *a >= *b); }
std::string show(Opt v) { return v ? std::to_string(*v) : "inf"; }

double round5(double v) { return std::round(v * 1e5) / 1e5; }

double rational_json(const json& j) {
  const std::string s = j["exact"].get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

// Minimum weight of x with a x = 0 and x outside the column span of b, by enumerating all x.
Opt oracle_distance(const oracle::Dense& a, const oracle::Dense& b, std::size_t n, std::size_t b_cols) {
  const std::size_t base = oracle::rank(oracle::transpose(b, b_cols), n);
  Opt best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto x = oracle::bits_of(mask, n);
    const std::size_t w = oracle::weight(x);
    if (best && w >= *best) continue;
    if (oracle::weight(oracle::mul(a, x)) != 0) continue;
    auto rows = oracle::transpose(b, b_cols);
    rows.push_back(x);
    if (oracle::rank(rows, n) > base) best = w;
  }
  return best;
}

// Homological (x in C_j) or cohomological (y in C_{j+1}) distance of a complex, by brute force.
Opt oracle_level_distance(const ChainComplex& c, int j, bool cohomological) {
  if (!cohomological) {
    const std::size_t n = c.size(j);
    oracle::Dense a = c.has_level(j + 1) ? oracle::dense(c.map(j)) : oracle::Dense{};
    oracle::Dense b = c.has_level(j - 1) ? oracle::dense(c.map(j - 1)) : oracle::zeros(n, 0);
    return oracle_distance(a, b, n, c.has_level(j - 1) ? c.size(j - 1) : 0);
  }
  const std::size_t n = c.size(j + 1);
  oracle::Dense a = oracle::dense(c.map(j).transpose());
  oracle::Dense b = c.has_level(j + 2) ? oracle::dense(c.map(j + 1).transpose()) : oracle::zeros(n, 0);
  return oracle_distance(a, b, n, c.has_level(j + 2) ? c.size(j + 2) : 0);
}

SingleShotBudget budget_for(const CodeReport& r, std::size_t t) { return thm1_budget(r, t, PowerLaw::cubic()); }

CodeReport refined_report(const BinMatrix& h, const SearchBudget& budget) {
  const CssCode& code = codes::double_code(h);
  CodeReport r = code_report(code, budget);
  refine_double_product_report(r, code, codes::single(h), budget);
  return r;
}

SearchBudget capped(std::size_t max_weight) {
  SearchBudget b;
  b.max_weight = max_weight;
  b.max_evaluations = 2e7;
  return b;
}

// ---------------------------------------------------------------------------

Outcome table_reproduction(json& table_out) {
  Outcome o;
  const std::size_t n_q[] = {241, 913, 486, 3856};
  const std::size_t k_q[] = {1, 1, 6, 16};
  const std::size_t max_w[] = {6, 6, 6, 8};
  const double mean[] = {4.87179, 5.18, 6, 5.48077};
  const double red[] = {1.3, 1.31579, 0, 1.3};
  const auto t0 = Clock::now();
  CommandOutput out = cmd_table1(Table1Options{}, GlobalOptions{});
  const double elapsed = seconds_since(t0);
  table_out = out.json;
  const json& rows = out.json["rows"];
  o.require(rows.size() == 4, "four rows");
  for (std::size_t i = 0; i < rows.size() && i < 4; ++i) {
    const json& r = rows[i];
    const std::string tag = "row " + std::to_string(i + 1);
    o.require(r["n_q"]["computed"] == n_q[i], tag + " n_Q");
    o.require(r["k_q"]["computed"] == k_q[i], tag + " k_Q");
    o.require(r["max_check_weight"]["computed"] == max_w[i], tag + " max check weight");
    o.require(std::abs(round5(rational_json(r["mean_check_weight"]["computed"])) - mean[i]) <= kTableTol,
              tag + " mean check weight");
    const double computed = rational_json(r["redundancy"]["computed"]);
    if (i == 2) {
      const bool table_value = std::abs(round5(computed) - 1.33884) <= kTableTol;
      const bool size_value = std::abs(round5(computed) - 1.35) <= kTableTol;
      o.require(table_value || size_value, tag + " redundancy");
      bool logged = table_value;
      for (const auto& note : r["notes"]) logged = logged || note.get<std::string>().find("redundancy") != std::string::npos;
      o.require(logged, tag + " redundancy discrepancy logged");
      o.detail << "row 3 redundancy " << round5(computed) << (table_value ? "" : " (mismatch logged)") << "; ";
    } else {
      o.require(std::abs(round5(computed) - red[i]) <= kTableTol, tag + " redundancy");
    }
  }
  o.require(elapsed < kTableSeconds, "runtime under 2 minutes");
  o.detail << "runtime " << std::fixed << std::setprecision(1) << elapsed << " s";
  return o;
}

Outcome single_shot_distance(const json& table) {
  Outcome o;
  const auto t0 = Clock::now();
  CodeReport cyc = code_report(codes::double_code(codes::cyc3()), capped(3));
  o.require(cyc.d_ss.status == BoundStatus::exact && cyc.d_ss.value == 3u, "cyclic rep-3 d_ss = 3 exact");
  o.detail << "cyclic rep-3 d_ss = " << show(cyc.d_ss.value)
           << (cyc.d_ss.status == BoundStatus::exact ? " exact" : " lower bound") << "; ";
  for (std::size_t row : {0u, 1u, 3u}) {
    const auto& h = table1_rows()[row].h;
    ProductTower tower = build_tower(h, 2, false);
    const bool zero = betti(*tower.dbl, 1) == 0 && betti(*tower.dbl, -1) == 0;
    o.require(zero, "row " + std::to_string(row + 1) + " has k_{+-1} = 0");
    const json& dss = table["rows"][row]["d_ss"]["computed"];
    o.require(dss["value"] == "inf" && dss["status"] == "exact", "row " + std::to_string(row + 1) + " d_ss = inf");
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < kSingleShotSeconds, "runtime under 10 minutes");
  o.detail << "rows 1, 2, 4 have k_{+-1} = 0 and d_ss = inf; " << std::fixed << std::setprecision(1) << elapsed
           << " s";
  return o;
}

std::vector<std::pair<std::string, BinMatrix>> small_codes() {
  std::vector<std::pair<std::string, BinMatrix>> out;
  for (std::size_t n = 2; n <= 8; ++n) out.emplace_back("rep-" + std::to_string(n), oracle::repetition(n));
  for (std::size_t n = 3; n <= 8; ++n) out.emplace_back("cyclic rep-" + std::to_string(n), oracle::cyclic_repetition(n));
  out.emplace_back("hamming-7", BinMatrix::from_rows({{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}}));
  out.emplace_back("extended hamming-8", BinMatrix::from_rows({{1, 0, 1, 0, 1, 0, 1, 0},
                                                               {0, 1, 1, 0, 0, 1, 1, 0},
                                                               {0, 0, 0, 1, 1, 1, 1, 0},
                                                               {1, 1, 1, 1, 1, 1, 1, 1}}));
  out.emplace_back("full-rank square", BinMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}));
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 6; ++i) {
    const std::size_t m = 2 + rng() % 4, n = 3 + rng() % 6;
    out.emplace_back("random " + std::to_string(m) + "x" + std::to_string(n), oracle::random_matrix(m, n, rng));
  }
  return out;
}

// Kunneth value at level m of the product of c with itself, levels paired as i - j = m.
std::size_t kunneth(const ChainComplex& c, int m) {
  std::size_t k = 0;
  for (int i = c.min_level(); i <= c.max_level(); ++i)
    for (int j = c.min_level(); j <= c.max_level(); ++j)
      if (i - j == m) k += betti(c, i) * betti(c, j);
  return k;
}

Outcome kunneth_duality() {
  Outcome o;
  constexpr std::size_t kDoubleSizeLimit = 2500;
  std::size_t codes_checked = 0, levels = 0, doubles = 0;
  for (const auto& [name, h] : small_codes()) {
    const ChainComplex c = classical_complex(h);
    const ChainComplex s = single_product(c);
    for (int m = s.min_level(); m <= s.max_level(); ++m) {
      o.require(betti(s, m) == kunneth(c, m), name + " single level " + std::to_string(m) + " Kunneth");
      o.require(betti(s, m) == cobetti(s, m), name + " single level " + std::to_string(m) + " duality");
      ++levels;
    }
    std::size_t dbl_n0 = 0;
    for (int i = s.min_level(); i <= s.max_level(); ++i) dbl_n0 += s.size(i) * s.size(i);
    if (dbl_n0 <= kDoubleSizeLimit) {
      const ChainComplex d = double_product(s);
      for (int m = d.min_level(); m <= d.max_level(); ++m) {
        o.require(betti(d, m) == kunneth(s, m), name + " double level " + std::to_string(m) + " Kunneth");
        o.require(betti(d, m) == cobetti(d, m), name + " double level " + std::to_string(m) + " duality");
        ++levels;
      }
      ++doubles;
    }
    ++codes_checked;
  }
  o.require(codes_checked >= kKunnethCodes, "at least 10 codes");
  o.detail << codes_checked << " codes, " << doubles << " double products (level 0 <= " << kDoubleSizeLimit
           << "), " << levels << " levels";
  return o;
}

Outcome distance_identities() {
  Outcome o;
  SearchBudget budget;
  budget.max_weight = 9;
  std::size_t single_checks = 0, double_checks = 0;
  for (const auto& [name, h] : std::vector<std::pair<std::string, BinMatrix>>{
           {"rep-2", codes::rep2()}, {"rep-3", codes::rep3()}, {"cyclic rep-3", codes::cyc3()}}) {
    const ChainComplex c = classical_complex(h);
    const Opt d0 = oracle_level_distance(c, 0, false);
    const Opt d0t = oracle_level_distance(c, 0, true);
    const ChainComplex& s = codes::single(h);
    struct Quantity {
      std::string label;
      int level;
      bool co;
    };
    const Quantity qs[] = {{"d_-1", -1, false}, {"d_0^T", 0, true}, {"d_0", 0, false}, {"d_-1^T", -1, true}};
    std::map<std::string, Opt> got;
    for (const auto& q : qs) {
      const Opt truth = oracle_level_distance(s, q.level, q.co);
      const Distance lib = q.co ? cohomological_distance(s, q.level, budget) : homological_distance(s, q.level, budget);
      o.require(lib.status == BoundStatus::exact && lib.value == truth, name + " " + q.label + " library vs brute force");
      got[q.label] = truth;
      ++single_checks;
    }
    const Opt product = opt_mul(d0, d0t), lower = opt_min(d0, d0t);
    o.require(got["d_-1"] == product, name + " d_-1 = d_0 d_0^T");
    o.require(got["d_0^T"] == product, name + " d_0^T = d_0 d_0^T");
    o.require(opt_ge(got["d_0"], lower), name + " d_0 >= min");
    o.require(opt_ge(got["d_-1^T"], lower), name + " d_-1^T >= min");
    if (name == "cyclic rep-3") {
      o.require(got["d_-1"] == 9u, "cyclic rep-3 d_-1 = 9");
      o.detail << "cyclic rep-3 d_-1 = " << show(got["d_-1"]) << "; ";
    }
    // the library's predictions agree with the brute-force values
    for (const auto& p : predict_params(c, budget).distances) {
      if (!got.count(p.quantity)) continue;
      const bool ok = p.relation == Relation::equal ? got[p.quantity] == p.value : opt_ge(got[p.quantity], p.value);
      o.require(ok, name + " predicted " + p.quantity);
    }

    // double-product lower bounds
    const Opt bound_outer = opt_min(opt_min(got["d_-1"], opt_max(got["d_0"], got["d_-1^T"])), got["d_0^T"]);
    const Opt bound_meta = opt_min(got["d_0"], got["d_-1^T"]);
    const CodeReport r = refined_report(h, capped(6));
    const std::pair<const Distance*, Opt> pairs[] = {
        {&r.d_0, bound_outer}, {&r.d_m1_t, bound_outer}, {&r.d_1, bound_meta}, {&r.d_m2_t, bound_meta}};
    for (const auto& [dist, bound] : pairs) {
      if (dist->status == BoundStatus::exact) {
        o.require(opt_ge(dist->value, bound), name + " double-product exact distance below its lower bound");
        ++double_checks;
      }
      if (dist->upper_bound) o.require(opt_ge(dist->upper_bound, bound), name + " witness below the lower bound");
    }
  }
  o.detail << single_checks << " single-product distances, " << double_checks << " exact double-product distances";
  return o;
}

Outcome length2_certification() {
  Outcome o;
  std::size_t syndromes = 0;
  for (const auto& [name, h] : std::vector<std::pair<std::string, BinMatrix>>{{"rep-2", codes::rep2()},
                                                                             {"rep-3", codes::rep3()}}) {
    const ChainComplex c = classical_complex(h);
    const std::size_t t = *opt_min(oracle_level_distance(c, 0, false), oracle_level_distance(c, 0, true));
    const ChainComplex& s = codes::single(h);
    for (const auto& [label, delta] :
         std::vector<std::pair<std::string, BinMatrix>>{{"d_0^T", s.map(0).transpose()}, {"d_-1", s.map(-1)}}) {
      SoundnessProfile p = soundness_profile(delta, delta.cols(), delta.rows(), t, PowerLaw::quadratic());
      o.require(p.method == "full", name + " " + label + " exhaustive");
      o.require(p.verdict.kind == VerdictKind::certified, name + " " + label + " certified");
      // independent check over the whole domain
      const auto d = oracle::dense(delta);
      std::map<oracle::Row, std::size_t> best;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << delta.cols()); ++mask) {
        const auto r = oracle::bits_of(mask, delta.cols());
        const auto sy = oracle::mul(d, r);
        auto it = best.find(sy);
        if (it == best.end() || oracle::weight(r) < it->second) best[sy] = oracle::weight(r);
      }
      for (const auto& [sy, w] : best) {
        const std::size_t x = oracle::weight(sy);
        if (x >= t) continue;
        o.require(Rational(static_cast<std::int64_t>(w)) <= PowerLaw::quadratic()(x),
                  name + " " + label + " brute-force counterexample");
        ++syndromes;
      }
    }
  }
  o.detail << syndromes << " syndromes below threshold, 0 counterexamples required";
  return o;
}

Outcome length4_bound() {
  Outcome o;
  std::size_t exhaustive = 0, in_threshold = 0;
  {
    Len4Solver solver(codes::rep2());
    const BinMatrix map = solver.dbl().map(0);
    const std::size_t t = 2, n = map.cols();
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i; j <= n; ++j) {
        if (i == n && j != n) continue;
        BinVector r0(n);
        if (i < n) r0.set(i);
        if (j < n && j != i) r0.set(j);
        const BinVector s = map * r0;
        Len4Result res = solver.solve(s, t);
        o.require(map * res.r == s, "33-qubit preimage reproduces s");
        if (s.weight() < t) {
          o.require(Rational(static_cast<std::int64_t>(res.r.weight())) <= PowerLaw::cubic()(s.weight()),
                    "33-qubit |r| <= |s|^3/4");
          ++in_threshold;
        }
        ++exhaustive;
      }
  }
  std::size_t samples = 0, sample_in_threshold = 0, low_syndromes = 0;
  {
    Len4Solver solver(codes::rep3());
    const BinMatrix map = solver.dbl().map(0);
    const std::size_t t = 3, n = map.cols();
    // every syndrome of weight 1 or 2 (below t) that has a preimage
    const Gf2Solver image(map);
    const std::size_t m = map.rows();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        BinVector s = BinVector::unit(m, i);
        if (j != i) s.set(j);
        if (s.weight() >= t || !image.in_image(s)) continue;
        Len4Result res = solver.solve(s, t);
        o.require(map * res.r == s, "241-qubit low syndrome reproduced");
        o.require(Rational(static_cast<std::int64_t>(res.r.weight())) <= PowerLaw::cubic()(s.weight()),
                  "241-qubit low syndrome bound");
        ++low_syndromes;
      }
    std::mt19937_64 rng(6);
    for (; samples < kLen4Samples; ++samples) {
      BinVector r0(n);
      const std::size_t w = 1 + rng() % 3;
      for (std::size_t i = 0; i < w; ++i) r0.set(rng() % n);
      const BinVector s = map * r0;
      Len4Result res = solver.solve(s, t);
      o.require(map * res.r == s, "241-qubit sample reproduced");
      if (s.weight() < t) {
        o.require(Rational(static_cast<std::int64_t>(res.r.weight())) <= PowerLaw::cubic()(s.weight()),
                  "241-qubit sample bound");
        ++sample_in_threshold;
      }
    }
  }
  o.detail << "33-qubit: " << exhaustive << " r0 (" << in_threshold << " with |s| < t); 241-qubit: " << samples
           << " seeded samples (" << sample_in_threshold << " with |s| < t) and all " << low_syndromes
           << " image syndromes with |s| < t";
  return o;
}

Outcome partial_decoder() {
  Outcome o;
  std::size_t instances = 0, moved = 0;
  std::mt19937_64 rng(7);
  const double densities[] = {0.05, 0.1, 0.2, 0.4};
  for (const BinMatrix* h : {&codes::rep2(), &codes::rep3(), &codes::cyc3()}) {
    const ChainComplex& s = codes::single(*h);
    const BinMatrix d0 = s.map(0), dm1 = s.map(-1);
    const std::size_t nm1 = dm1.cols(), n0 = d0.cols(), n1 = d0.rows();
    for (int trial = 0; trial < 400; ++trial) {
      const double p = densities[trial % 4];
      const BinMatrix R_a = oracle::random_matrix(nm1, nm1, rng, p);
      const BinMatrix R_b = oracle::random_matrix(n0, n0, rng, p);
      const BinMatrix R_c = oracle::random_matrix(n1, n1, rng, p);
      const BinMatrix S_L = R_b * dm1 + dm1 * R_a;
      const BinMatrix S_R = d0 * R_b + R_c * d0;
      // start from an arbitrary R_b with the same M
      const BinMatrix start = R_b + dm1 * oracle::random_matrix(nm1, n0, rng, p);
      try {
        PartialDecodeState st = make_partial_state(start, S_L, S_R, d0, dm1);
        const BinMatrix M = st.M;
        partial_decode_Rb(st, d0, dm1);
        o.require(st.converged, "terminates");
        o.require(st.M == M && d0 * st.R_b * dm1 == M, "M preserved");
        o.require(check_partial_decode(st, d0, dm1).all(), "four output properties");
        for (bool b : terminal_conditions(st, d0, dm1)) o.require(b, "six terminal conditions");
        for (auto c : st.loop_counters) moved += c;
      } catch (const std::logic_error& e) {
        o.require(false, e.what());
      }
      ++instances;
    }
  }
  o.require(instances >= kPartialInstances, "at least 1000 instances");
  o.require(moved > 0, "some transform fired");
  o.detail << instances << " instances over rep-2, rep-3 and cyclic rep-3, " << moved << " transforms";
  return o;
}

Outcome decoder_guarantee() {
  Outcome o;
  const SearchBudget search;
  CodeReport r33;
  r33.d_q = Distance::exact_value(4);
  r33.d_ss = Distance::infinity();
  {
    const CodeReport full = refined_report(codes::rep2(), capped(6));
    o.require(full.d_q.status == BoundStatus::exact && full.d_q.value == 4u, "33-qubit d_Q = 4");
  }
  SweepLimits exhaustive;
  exhaustive.e_max = 2;
  exhaustive.u_max = 2;
  SweepReport a = adversarial_sweep(codes::code33(), budget_for(r33, 2), exhaustive, search);
  o.require(!a.sampled, "33-qubit sweep exhaustive");
  o.require(a.violations.empty(), "33-qubit violations");
  o.require(a.repairs_checked == a.pairs_checked, "33-qubit repairs checked");

  const CodeReport r241 = refined_report(codes::rep3(), capped(6));
  o.require(r241.d_q.status == BoundStatus::exact && r241.d_q.value == 9u, "241-qubit d_Q = 9");
  SweepLimits sampled;
  sampled.e_max = 4;
  sampled.u_max = 1;
  sampled.samples = 12000;
  sampled.seed = 8;
  SweepReport b = adversarial_sweep(codes::code241(), budget_for(r241, 3), sampled, search);
  o.require(b.pairs_checked >= kSweepPairs, "241-qubit pairs");
  o.require(b.violations.empty(), "241-qubit violations");
  o.require(b.repairs_checked == b.pairs_checked, "241-qubit repairs checked");
  for (const auto& v : a.violations) o.detail << "33-qubit " << v.kind << "; ";
  for (const auto& v : b.violations) o.detail << "241-qubit " << v.kind << "; ";
  o.detail << "33-qubit exhaustive " << a.pairs_checked << " pairs (" << a.boundary_cases
           << " on the boundary, recorded only); 241-qubit seeded " << b.pairs_checked << " pairs; "
           << a.repairs_checked + b.repairs_checked << " repairs";
  return o;
}

Outcome multi_round() {
  Outcome o;
  const CssCode& code = codes::code33();
  CodeReport r;
  r.d_q = Distance::exact_value(4);
  r.d_ss = Distance::infinity();
  const SingleShotBudget b = budget_for(r, 2);
  const SearchBudget search;
  std::mt19937_64 rng(9);
  std::size_t rounds = 0;
  for (int schedule_id = 0; schedule_id < 20; ++schedule_id) {
    std::vector<Round> schedule;
    for (int t = 0; t < 10; ++t) {
      PauliError e = PauliError::identity(33);
      const std::size_t kind = rng() % 4, q = rng() % 33;
      if (kind == 1 || kind == 3) e.x.set(q);
      if (kind == 2 || kind == 3) e.z.set(q);
      schedule.push_back({e, Syndrome{BinVector(20), BinVector(20)}});
    }
    auto trace = multi_round_simulate(code, b, schedule, 10, search);
    o.require(trace.size() == 10, "ten rounds");
    for (const auto& t : trace) {
      o.require(t.in_contract, "schedule within the budgets");
      o.require(t.ok && t.residual_wt_min.has_value(), "round ok");
      if (t.residual_wt_min)
        o.require(Rational(static_cast<std::int64_t>(*t.residual_wt_min)) <= t.bound, "residual within f(2|u|)");
      ++rounds;
    }
  }
  o.detail << "20 schedules, " << rounds << " rounds on the 33-qubit code";
  return o;
}

SymplecticCheckSet ising(std::size_t n) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::string r(n, 'I');
    r[i] = r[i + 1] = 'Z';
    rows.push_back(r);
  }
  return SymplecticCheckSet::from_paulis(rows);
}

SymplecticCheckSet surface_patch() {
  const ChainComplex& c = codes::single(codes::rep2());
  return SymplecticCheckSet::from_css(c.map(-1).transpose(), c.map(0));
}

std::vector<BinVector> stabilizer_group(const SymplecticCheckSet& s) {
  std::vector<BinVector> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.num_checks()); ++mask) {
    BinVector v(2 * s.n);
    for (std::size_t i = 0; i < s.num_checks(); ++i)
      if ((mask >> i) & 1u) v += s.checks.row(i);
    out.push_back(v);
  }
  return out;
}

Outcome stabilizer_diagonalization() {
  Outcome o;
  const BinMatrix hamming = BinMatrix::from_rows({{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}});
  const std::vector<std::pair<std::string, SymplecticCheckSet>> sets = {
      {"Steane", SymplecticCheckSet::from_css(hamming, hamming)},
      {"five-qubit", SymplecticCheckSet::from_paulis({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})},
      {"[[4,2,2]]", SymplecticCheckSet::from_paulis({"XXXX", "ZZZZ"})},
      {"surface patch", surface_patch()},
      {"Ising-4", ising(4)},
      {"Ising-7", ising(7)},
  };
  std::size_t count = 0;
  for (const auto& [name, s] : sets) {
    o.require(s.n <= 7 && s.commuting(), name + " valid");
    const DiagonalizedChecks d = diagonalize(s);
    const std::size_t m = d.generators.num_checks();
    o.require(d.pure_errors.size() == m, name + " pure error count");
    for (std::size_t i = 0; i < m && i < d.pure_errors.size(); ++i) {
      o.require(pauli_weight(d.pure_errors[i]) == 1, name + " single-qubit pure error");
      for (std::size_t j = 0; j < m; ++j)
        o.require(symplectic_product(d.pure_errors[i], d.generators.checks.row(j)) == (i == j),
                  name + " anticommutation pattern");
    }
    o.require(certify_checks(d.generators.checks, std::nullopt, PowerLaw::linear()).kind == VerdictKind::certified,
              name + " (inf, x)-sound");
    // independent check: every syndrome has a preimage of weight at most its own weight
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      BinVector sy(m);
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1u) sy.set(i);
      const BinVector e = preimage_from_pure_errors(d, sy);
      o.require(d.generators.syndrome(e) == sy && pauli_weight(e) <= sy.weight(), name + " preimage weight");
    }
    const LogicalWitness w = low_weight_logical(d);
    std::set<std::vector<std::uint8_t>> group;
    for (const auto& g : stabilizer_group(s)) group.insert(oracle::dense(g));
    o.require(s.syndrome(w.f).is_zero(), name + " logical has zero syndrome");
    o.require(!group.count(oracle::dense(w.f)), name + " logical outside the stabiliser");
    o.require(pauli_weight(w.f) <= d.generators.max_qubit_degree() + 1, name + " logical weight <= C + 1");
    ++count;
  }
  o.require(count >= kStabCodes, "at least five codes");
  o.detail << count << " codes including Steane";
  return o;
}

Outcome energy_bound() {
  Outcome o;
  // X sector: Z checks detect X errors; the sector distance and a certified linear soundness feed the bound.
  auto check = [&](const std::string& name, const SymplecticCheckSet& s, const BinMatrix& hz, Opt d, bool open_chain) {
    SoundnessProfile p = soundness_profile(hz, hz.cols(), hz.rows());
    Rational c(0);
    for (const auto& e : p.map)
      if (e.x > 0 && e.syndromes > 0) c = std::max(c, Rational(static_cast<std::int64_t>(e.worst), static_cast<std::int64_t>(e.x)));
    const PowerLaw f{1, c};
    const bool certified = certify(hz, std::nullopt, f).kind == VerdictKind::certified;
    o.require(certified, name + " soundness input certified");
    std::size_t degree = 0;
    for (std::size_t q = 0; q < hz.cols(); ++q) degree = std::max(degree, hz.column(q).weight());
    const ConfinementRadius bound = lemma3_bound(d, std::nullopt, f, degree);
    const EnergyReport e = energy_barrier(s, Sector::x);
    o.require(e.barrier.has_value(), name + " barrier found");
    if (e.barrier) {
      o.require(static_cast<double>(*e.barrier) >= bound.bound, name + " barrier >= bound");
      if (open_chain) o.require(*e.barrier == 1u, name + " barrier = 1");
      o.detail << name << " " << *e.barrier << " >= " << std::fixed << std::setprecision(3) << bound.bound << "; ";
    }
  };
  for (std::size_t n = 2; n <= 8; ++n) {
    const BinMatrix h = oracle::repetition(n);
    check("rep-" + std::to_string(n), ising(n), h, oracle_level_distance(classical_complex(h), 0, false), true);
  }
  const ChainComplex& patch = codes::single(codes::rep2());
  check("surface patch", surface_patch(), patch.map(0), oracle_level_distance(patch, 0, false), false);
  o.detail << "barrier >= bound shown per code";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  json table;
  const std::vector<Criterion> criteria = {
      {"table reproduction", [&] { return table_reproduction(table); }},
      {"single-shot distance", [&] { return single_shot_distance(table); }},
      {"Kunneth and duality", kunneth_duality},
      {"product distance identities", distance_identities},
      {"length-2 soundness certification", length2_certification},
      {"length-4 constructive bound", length4_bound},
      {"partial decoder", partial_decoder},
      {"single-shot decoder guarantee", decoder_guarantee},
      {"multi-round containment", multi_round},
      {"stabiliser diagonalization", stabilizer_diagonalization},
      {"energy barrier bound", energy_bound},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    all = all && o.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
