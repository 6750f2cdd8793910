#include "homprod/decode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "homprod/parallel.hpp"

namespace homprod {

namespace {

BinVector min_repair(const SubsetSearch& search, const BinMatrix& meta, const BinVector& part,
                     const SearchBudget& budget) {
  if (meta.rows() == 0) return BinVector(part.size());
  SearchOutcome o = search.find_min(meta * part, budget);
  if (o.status != SearchStatus::found)
    throw BudgetExceeded("no syndrome repair within weight " + std::to_string(budget.max_weight));
  return BinVector::from_support(part.size(), o.support);
}

std::size_t floor_of(const Rational& r) {
  if (r < 0) return 0;
  return static_cast<std::size_t>(r.numerator() / r.denominator());
}

}  // namespace

RepairResult repair_syndrome(const CssCode& code, const Syndrome& s, const SearchBudget& budget) {
  if (s.z_part.size() != code.z_checks().rows() || s.x_part.size() != code.x_checks().rows())
    throw std::invalid_argument("syndrome length mismatch");
  RepairResult r;
  if (!code.has_metachecks()) {
    r.s_rec = {BinVector(s.z_part.size()), BinVector(s.x_part.size())};
  } else {
    r.s_rec.z_part = min_repair(code.z_meta_search(), code.z_metachecks(), s.z_part, budget);
    r.s_rec.x_part = min_repair(code.x_meta_search(), code.x_metachecks(), s.x_part, budget);
  }
  r.metacheck_failure = !code.is_valid_syndrome(s + r.s_rec);
  return r;
}

QubitDecodeResult qubit_decode(const CssCode& code, const Syndrome& repaired, const SearchBudget& budget) {
  if (!code.is_valid_syndrome(repaired)) throw std::invalid_argument("syndrome is not in the image");
  QubitDecodeResult out;
  auto side = [&](const SubsetSearch& search, const BinMatrix& checks, const BinVector& part) {
    SearchOutcome o = search.find_min(part, budget);
    if (o.status == SearchStatus::found) return BinVector::from_support(code.n(), o.support);
    out.minimality_certified = false;
    return *solve(checks, part);
  };
  out.e_rec.x = side(code.x_decoder(), code.z_checks(), repaired.z_part);
  out.e_rec.z = side(code.z_decoder(), code.x_checks(), repaired.x_part);
  return out;
}

DecodeResult single_shot_decode(const CssCode& code, const Syndrome& s, const SearchBudget& budget) {
  DecodeResult d;
  RepairResult rep = repair_syndrome(code, s, budget);
  d.s_rec = rep.s_rec;
  d.metacheck_failure = rep.metacheck_failure;
  d.e_rec = PauliError::identity(code.n());
  if (rep.metacheck_failure) return d;
  QubitDecodeResult q = qubit_decode(code, s + rep.s_rec, budget);
  d.e_rec = q.e_rec;
  d.minimality_certified = q.minimality_certified;
  return d;
}

DecodeResult decode_and_score(const CssCode& code, const PauliError& e, const Syndrome& u,
                              const SearchBudget& budget, std::size_t residual_budget) {
  DecodeResult d = single_shot_decode(code, code.syndrome(e) + u, budget);
  if (d.metacheck_failure) return d;
  SearchBudget rb = budget;
  rb.max_weight = residual_budget;
  WtMin w = wt_min(code, e * d.e_rec, rb);
  if (w.exact) d.residual_wt_min = w.weight;
  return d;
}

SingleShotBudget thm1_budget(const CodeReport& report, std::optional<std::size_t> t, PowerLaw f) {
  SingleShotBudget b;
  b.f = f;
  b.t = t;
  b.d_ss = report.d_ss.value;
  b.d_q = report.d_q.value;
  std::optional<std::size_t> m;
  bool m_exact = true;
  if (b.d_ss) {
    m = b.d_ss;
    m_exact = report.d_ss.status == BoundStatus::exact;
  }
  if (t && (!m || *t <= *m)) {
    // d_ss >= its reported value >= t, so the minimum is exactly t
    m_exact = true;
    m = t;
  }
  if (m) b.p = Rational(static_cast<std::int64_t>(*m), 2);
  b.p_exact = m_exact;
  if (b.d_q) b.q = Rational(static_cast<std::int64_t>(*b.d_q), 2);
  b.q_exact = report.d_q.status == BoundStatus::exact;
  return b;
}

Contract classify(const SingleShotBudget& b, std::size_t u_weight, std::size_t e_weight) {
  const Rational two_u(2 * static_cast<std::int64_t>(u_weight));
  bool strict = true, relaxed = true;
  auto check = [&](const std::optional<std::size_t>& limit, const Rational& lhs) {
    if (!limit) return;
    const Rational rhs(static_cast<std::int64_t>(*limit));
    strict = strict && lhs < rhs;
    relaxed = relaxed && lhs <= rhs;
  };
  check(b.d_ss, two_u);
  check(b.t, two_u);
  check(b.d_q, Rational(2) * (b.f(two_u) + Rational(static_cast<std::int64_t>(e_weight))));
  if (strict) return Contract::inside;
  return relaxed ? Contract::boundary : Contract::outside;
}

bool round_in_contract(const SingleShotBudget& b, std::size_t u_prev, std::size_t u_cur, std::size_t e_weight) {
  const Rational uc(static_cast<std::int64_t>(u_cur));
  if (b.p && !(uc < *b.p)) return false;
  if (!b.q) return true;
  const Rational lhs = b.f(Rational(2) * uc) + b.f(Rational(2 * static_cast<std::int64_t>(u_prev))) +
                       Rational(static_cast<std::int64_t>(e_weight));
  return lhs < *b.q;
}

namespace {

// Calls fn(support) for every subset of [0, n) with exactly w elements, in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t w, Fn&& fn) {
  std::vector<std::size_t> idx(w);
  for (std::size_t i = 0; i < w; ++i) idx[i] = i;
  if (w > n) return;
  while (true) {
    fn(idx);
    std::size_t i = w;
    while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Syndrome syndrome_from_bits(std::size_t mz, std::size_t mx, const std::vector<std::size_t>& bits) {
  Syndrome s{BinVector(mz), BinVector(mx)};
  for (std::size_t b : bits) {
    if (b < mz)
      s.z_part.flip(b);
    else
      s.x_part.flip(b - mz);
  }
  return s;
}

struct Item {
  PauliError e;
  Syndrome u;
};

}  // namespace

SweepReport adversarial_sweep(const CssCode& code, const SingleShotBudget& budget, const SweepLimits& limits,
                              const SearchBudget& search) {
  const std::size_t n = code.n();
  const std::size_t mz = code.z_checks().rows(), mx = code.x_checks().rows();
  const std::size_t m = mz + mx;
  SweepReport rep;
  rep.seed = limits.seed;

  // Classes (|u|, wt(E)) and their sizes.
  std::vector<std::pair<std::size_t, std::size_t>> inside;
  std::vector<double> inside_counts;
  double inside_pairs = 0;
  for (std::size_t uw = 0; uw <= limits.u_max; ++uw)
    for (std::size_t ew = 0; ew <= limits.e_max; ++ew) {
      const double count = choose(m, uw) * choose(n, ew) * std::pow(3.0, static_cast<double>(ew));
      rep.pairs_considered += static_cast<std::size_t>(std::min(count, 1e18));
      switch (classify(budget, uw, ew)) {
        case Contract::inside:
          inside.emplace_back(uw, ew);
          inside_counts.push_back(count);
          inside_pairs += count;
          break;
        case Contract::boundary:
          rep.boundary_cases += static_cast<std::size_t>(std::min(count, 1e18));
          break;
        case Contract::outside:
          rep.outside_contract += static_cast<std::size_t>(std::min(count, 1e18));
          break;
      }
    }

  std::vector<Item> items;
  if (inside_pairs <= limits.exhaustive_limit) {
    for (auto [uw, ew] : inside) {
      std::vector<Syndrome> us;
      for_each_subset(m, uw, [&](const std::vector<std::size_t>& s) { us.push_back(syndrome_from_bits(mz, mx, s)); });
      for_each_subset(n, ew, [&](const std::vector<std::size_t>& supp) {
        // every assignment of X, Y, Z to the support
        std::size_t combos = 1;
        for (std::size_t i = 0; i < ew; ++i) combos *= 3;
        for (std::size_t code_id = 0; code_id < combos; ++code_id) {
          PauliError e = PauliError::identity(n);
          std::size_t c = code_id;
          for (std::size_t q : supp) {
            const std::size_t t = c % 3;
            c /= 3;
            if (t != 1) e.x.set(q);  // 0: X, 1: Z, 2: Y
            if (t != 0) e.z.set(q);
          }
          for (const auto& u : us) items.push_back({e, u});
        }
      });
    }
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(limits.seed);
    // Classes are drawn in proportion to min(size, samples) so tiny classes are not oversampled.
    std::vector<double> weights;
    for (double c : inside_counts) weights.push_back(std::min(c, static_cast<double>(limits.samples)));
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    for (std::size_t s = 0; s < limits.samples && !inside.empty(); ++s) {
      auto [uw, ew] = inside[pick(rng)];
      std::vector<std::size_t> ubits, qubits;
      std::vector<std::size_t> pool(m);
      for (std::size_t i = 0; i < m; ++i) pool[i] = i;
      for (std::size_t i = 0; i < uw; ++i) {
        std::size_t j = i + rng() % (m - i);
        std::swap(pool[i], pool[j]);
        ubits.push_back(pool[i]);
      }
      std::vector<std::size_t> qpool(n);
      for (std::size_t i = 0; i < n; ++i) qpool[i] = i;
      // cycle X-only, Z-only and mixed errors so both decoder sides are exercised
      const std::size_t mode = s % 3;
      PauliError e = PauliError::identity(n);
      for (std::size_t i = 0; i < ew; ++i) {
        std::size_t j = i + rng() % (n - i);
        std::swap(qpool[i], qpool[j]);
        const std::size_t q = qpool[i];
        const std::size_t t = mode == 0 ? 0 : mode == 1 ? 1 : rng() % 3;
        if (t != 1) e.x.set(q);
        if (t != 0) e.z.set(q);
      }
      items.push_back({e, syndrome_from_bits(mz, mx, ubits)});
    }
  }

  std::vector<std::vector<SweepViolation>> found(items.size());
  parallel_for(items.size(), [&](std::size_t i) {
    const Item& it = items[i];
    const std::size_t uw = it.u.weight();
    const Rational bound = budget.f(Rational(2 * static_cast<std::int64_t>(uw)));
    DecodeResult d = decode_and_score(code, it.e, it.u, search, floor_of(bound));
    const bool repair_guaranteed = !budget.d_ss || 2 * uw < *budget.d_ss;
    if (repair_guaranteed && d.metacheck_failure)
      found[i].push_back({it.e, it.u, std::nullopt, bound, "metacheck_failure"});
    if (repair_guaranteed && d.s_rec.weight() > uw) found[i].push_back({it.e, it.u, std::nullopt, bound, "repair_weight"});
    if (!d.metacheck_failure && (!d.residual_wt_min || Rational(static_cast<std::int64_t>(*d.residual_wt_min)) > bound))
      found[i].push_back({it.e, it.u, d.residual_wt_min, bound, "residual"});
  });
  rep.pairs_checked = items.size();
  rep.repairs_checked = items.size();
  for (auto& v : found)
    for (auto& x : v) rep.violations.push_back(std::move(x));
  return rep;
}

std::vector<RoundTrace> multi_round_simulate(const CssCode& code, const SingleShotBudget& budget,
                                             const std::vector<Round>& schedule, std::size_t rounds,
                                             const SearchBudget& search) {
  std::vector<RoundTrace> trace;
  PauliError residual = PauliError::identity(code.n());
  std::size_t u_prev = 0;
  for (std::size_t tau = 0; tau < rounds && !schedule.empty(); ++tau) {
    const Round& r = schedule[tau % schedule.size()];
    RoundTrace tr;
    tr.round = tau + 1;
    tr.e_weight = r.e.weight();
    tr.u_weight = r.u.weight();
    tr.in_contract = round_in_contract(budget, u_prev, tr.u_weight, tr.e_weight);
    tr.bound = budget.f(Rational(2 * static_cast<std::int64_t>(tr.u_weight)));
    const PauliError total = r.e * residual;
    DecodeResult d = single_shot_decode(code, code.syndrome(total) + r.u, search);
    tr.metacheck_failure = d.metacheck_failure;
    if (!d.metacheck_failure) {
      residual = total * d.e_rec;
      SearchBudget rb = search;
      if (tr.in_contract) rb.max_weight = floor_of(tr.bound);
      WtMin w = wt_min(code, residual, rb);
      if (w.exact) tr.residual_wt_min = w.weight;
      // Carry the lightest equivalent representative into the next round.
      if (w.weight) residual = w.representative;
    } else {
      residual = total;
    }
    if (tr.in_contract)
      tr.ok = !tr.metacheck_failure && tr.residual_wt_min &&
              Rational(static_cast<std::int64_t>(*tr.residual_wt_min)) <= tr.bound;
    u_prev = tr.u_weight;
    trace.push_back(tr);
  }
  return trace;
}

}  // namespace homprod
