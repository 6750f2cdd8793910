#include "homprod/stabsym.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace homprod {

SymplecticCheckSet::SymplecticCheckSet(std::size_t qubits, BinMatrix rows) : n(qubits), checks(std::move(rows)) {
  if (checks.rows() > 0 && checks.cols() != 2 * n) throw std::invalid_argument("checks need 2n columns");
  if (checks.rows() == 0) checks = BinMatrix(0, 2 * n);
}

SymplecticCheckSet SymplecticCheckSet::from_css(const BinMatrix& hx, const BinMatrix& hz) {
  const std::size_t n = std::max(hx.cols(), hz.cols());
  if ((hx.rows() && hx.cols() != n) || (hz.rows() && hz.cols() != n)) {
    throw std::invalid_argument("X and Z checks act on different qubit counts");
  }
  BinMatrix rows(hx.rows() + hz.rows(), 2 * n);
  rows.place(0, 0, hx);
  rows.place(hx.rows(), n, hz);
  return SymplecticCheckSet(n, rows);
}

SymplecticCheckSet SymplecticCheckSet::from_paulis(const std::vector<std::string>& rows) {
  if (rows.empty()) throw std::invalid_argument("no checks");
  const std::size_t n = rows.front().size();
  BinMatrix m(rows.size(), 2 * n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw std::invalid_argument("checks have different lengths");
    for (std::size_t q = 0; q < n; ++q) {
      switch (rows[r][q]) {
        case 'X':
          m.set(r, q);
          break;
        case 'Z':
          m.set(r, n + q);
          break;
        case 'Y':
          m.set(r, q);
          m.set(r, n + q);
          break;
        case 'I':
        case '_':
          break;
        default:
          throw std::invalid_argument(std::string("unknown Pauli letter ") + rows[r][q]);
      }
    }
  }
  return SymplecticCheckSet(n, m);
}

bool symplectic_product(const BinVector& a, const BinVector& b) {
  const std::size_t n = a.size() / 2;
  return a.slice(0, n).dot(b.slice(n, n)) != b.slice(0, n).dot(a.slice(n, n));
}

std::size_t pauli_weight(const BinVector& p) {
  const std::size_t n = p.size() / 2;
  return union_weight(p.slice(0, n), p.slice(n, n));
}

std::string pauli_string(const BinVector& p) {
  const std::size_t n = p.size() / 2;
  std::string out(n, 'I');
  for (std::size_t q = 0; q < n; ++q) {
    bool x = p.get(q), z = p.get(n + q);
    out[q] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return out;
}

bool SymplecticCheckSet::commuting() const {
  for (std::size_t i = 0; i < checks.rows(); ++i) {
    for (std::size_t j = i + 1; j < checks.rows(); ++j) {
      if (symplectic_product(checks.row(i), checks.row(j))) return false;
    }
  }
  return true;
}

BinVector SymplecticCheckSet::syndrome(const BinVector& pauli) const {
  if (pauli.size() != 2 * n) throw std::invalid_argument("Pauli has the wrong length");
  BinVector s(checks.rows());
  for (std::size_t i = 0; i < checks.rows(); ++i) {
    if (symplectic_product(checks.row(i), pauli)) s.set(i);
  }
  return s;
}

std::size_t SymplecticCheckSet::max_qubit_degree() const {
  std::size_t best = 0;
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t deg = 0;
    for (std::size_t i = 0; i < checks.rows(); ++i) deg += checks.get(i, q) || checks.get(i, n + q);
    best = std::max(best, deg);
  }
  return best;
}

std::string to_string(const CliffordStep& step) {
  switch (step.kind) {
    case CliffordStep::Kind::hadamard:
      return "H " + std::to_string(step.a + 1);
    case CliffordStep::Kind::phase_zy:
      return "ZY " + std::to_string(step.a + 1);
    case CliffordStep::Kind::swap:
      return "SWAP " + std::to_string(step.a + 1) + " " + std::to_string(step.b + 1);
  }
  return "";
}

void apply_step(BinVector& p, std::size_t n, const CliffordStep& step) {
  const std::size_t a = step.a;
  switch (step.kind) {
    case CliffordStep::Kind::hadamard: {
      bool x = p.get(a), z = p.get(n + a);
      p.set(a, z);
      p.set(n + a, x);
      break;
    }
    case CliffordStep::Kind::phase_zy:
      if (p.get(n + a)) p.flip(a);
      break;
    case CliffordStep::Kind::swap: {
      const std::size_t b = step.b;
      bool xa = p.get(a), za = p.get(n + a);
      p.set(a, p.get(b));
      p.set(n + a, p.get(n + b));
      p.set(b, xa);
      p.set(n + b, za);
      break;
    }
  }
}

BinVector DiagonalizedChecks::to_original(BinVector p) const {
  for (auto it = clifford_log.rbegin(); it != clifford_log.rend(); ++it) apply_step(p, n, *it);
  return p;
}

BinVector DiagonalizedChecks::to_frame(BinVector p) const {
  for (const auto& step : clifford_log) apply_step(p, n, step);
  return p;
}

DiagonalizedChecks diagonalize(const SymplecticCheckSet& s) {
  if (!s.commuting()) throw std::invalid_argument("checks do not commute");
  const std::size_t n = s.n;
  DiagonalizedChecks d;
  d.n = n;
  std::vector<BinVector> rows;
  for (std::size_t i = 0; i < s.checks.rows(); ++i) rows.push_back(s.checks.row(i));

  auto apply_all = [&](const CliffordStep& step) {
    for (auto& r : rows) apply_step(r, n, step);
    d.clifford_log.push_back(step);
  };
  auto x_bit = [&](const BinVector& r, std::size_t q) { return r.get(q); };
  auto z_bit = [&](const BinVector& r, std::size_t q) { return r.get(n + q); };

  std::size_t j = 0;
  for (; j < rows.size() && j < n; ++j) {
    // Pivot: first row from j on with support on a qubit >= j.
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t i = j; i < rows.size() && !pivot; ++i) {
      for (std::size_t q = j; q < n; ++q) {
        if (x_bit(rows[i], q) || z_bit(rows[i], q)) {
          pivot = std::make_pair(i, q);
          break;
        }
      }
    }
    if (!pivot) break;
    std::swap(rows[j], rows[pivot->first]);
    if (pivot->second != j) apply_all({CliffordStep::Kind::swap, j, pivot->second});
    const bool x = x_bit(rows[j], j), z = z_bit(rows[j], j);
    if (!x && z) {
      apply_all({CliffordStep::Kind::hadamard, j, 0});
    } else if (x && z) {
      apply_all({CliffordStep::Kind::phase_zy, j, 0});  // Y -> Z
      apply_all({CliffordStep::Kind::hadamard, j, 0});  // Z -> X
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != j && x_bit(rows[i], j)) rows[i] += rows[j];
    }
  }
  const std::size_t r = j;
  // Remaining rows are dependent; elimination has reduced them to zero.
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (!rows[i].is_zero()) throw std::logic_error("dependent check did not reduce to zero");
  }
  rows.resize(r);
  // A Y on a row's own pivot becomes X by swapping X and Y there, leaving Z fixed.
  for (std::size_t p = 0; p < r; ++p) {
    if (z_bit(rows[p], p)) {
      apply_all({CliffordStep::Kind::hadamard, p, 0});
      apply_all({CliffordStep::Kind::phase_zy, p, 0});
      apply_all({CliffordStep::Kind::hadamard, p, 0});
    }
  }

  d.k = n - r;
  BinMatrix frame(r, 2 * n);
  for (std::size_t i = 0; i < r; ++i) frame.set_row(i, rows[i]);
  d.frame_generators = SymplecticCheckSet(n, frame);
  BinMatrix orig(r, 2 * n);
  for (std::size_t i = 0; i < r; ++i) {
    orig.set_row(i, d.to_original(rows[i]));
    d.pure_errors.push_back(d.to_original(BinVector::unit(2 * n, n + i)));
  }
  d.generators = SymplecticCheckSet(n, orig);
  return d;
}

BinVector preimage_from_pure_errors(const DiagonalizedChecks& d, const BinVector& s) {
  if (s.size() != d.pure_errors.size()) throw std::invalid_argument("syndrome length must equal the generator count");
  BinVector e(2 * d.n);
  for (std::size_t j : s.support()) e += d.pure_errors[j];
  return e;
}

bool in_stabilizer(const SymplecticCheckSet& s, const BinVector& pauli) {
  return Gf2Solver(s.checks.transpose()).in_image(pauli);
}

LogicalWitness low_weight_logical(const DiagonalizedChecks& d) {
  if (d.k == 0) throw std::invalid_argument("code has no logical qubits");
  const std::size_t n = d.n;
  const std::size_t frame_qubit = n - d.k;
  // Original label of the first non-pivot frame qubit.
  BinVector probe = d.to_original(BinVector::unit(2 * n, frame_qubit));
  BinVector probe_z = d.to_original(BinVector::unit(2 * n, n + frame_qubit));
  std::size_t qubit = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (probe.get(q) || probe.get(n + q) || probe_z.get(q) || probe_z.get(n + q)) {
      qubit = q;
      break;
    }
  }
  LogicalWitness best;
  std::optional<std::size_t> best_weight;
  for (char c : {'X', 'Z', 'Y'}) {
    BinVector p(2 * n);
    if (c != 'Z') p.set(qubit);
    if (c != 'X') p.set(n + qubit);
    BinVector s = d.generators.syndrome(p);
    if (!best_weight || s.weight() < *best_weight) {
      best_weight = s.weight();
      best.p = p;
      best.f = preimage_from_pure_errors(d, s) + p;
    }
  }
  best.qubit = qubit;
  for (std::size_t i = 0; i < d.generators.num_checks(); ++i) {
    best.degree += d.generators.checks.get(i, qubit) || d.generators.checks.get(i, n + qubit);
  }
  if (!d.generators.syndrome(best.f).is_zero()) throw std::logic_error("logical has a nonzero syndrome");
  if (in_stabilizer(d.generators, best.f)) throw std::logic_error("logical lies in the stabiliser");
  return best;
}

std::optional<Sector> parse_sector(const std::string& text) {
  if (text == "x") return Sector::x;
  if (text == "z") return Sector::z;
  if (text == "full") return Sector::full;
  return std::nullopt;
}

std::string to_string(Sector s) {
  switch (s) {
    case Sector::x:
      return "x";
    case Sector::z:
      return "z";
    case Sector::full:
      return "full";
  }
  return "";
}

EnergyReport energy_barrier(const SymplecticCheckSet& s, Sector sector, std::size_t n_limit) {
  const std::size_t n = s.n;
  const std::size_t limit = sector == Sector::full ? std::min<std::size_t>(n_limit, 5) : n_limit;
  if (n > limit) throw std::invalid_argument("code too large for an exact barrier search");
  const std::size_t bits = sector == Sector::full ? 2 * n : n;
  const std::size_t nodes = std::size_t{1} << bits;

  // Node index to Pauli: x sector uses the X half, z sector the Z half, full both.
  auto pauli_of = [&](std::size_t node) {
    BinVector p(2 * n);
    for (std::size_t b = 0; b < bits; ++b) {
      if (!((node >> b) & 1)) continue;
      std::size_t pos = sector == Sector::z ? n + b : b;
      p.set(pos);
    }
    return p;
  };
  // Cost of each node, computed incrementally from single-bit flips.
  std::vector<BinVector> flip_effect(bits);
  for (std::size_t b = 0; b < bits; ++b) flip_effect[b] = s.syndrome(pauli_of(std::size_t{1} << b));
  std::vector<std::uint32_t> cost(nodes);
  {
    BinVector syn(s.num_checks());
    std::size_t prev = 0;
    for (std::size_t g = 0; g < nodes; ++g) {
      std::size_t gray = g ^ (g >> 1);
      if (g > 0) {
        std::size_t changed = gray ^ prev;
        syn += flip_effect[static_cast<std::size_t>(__builtin_ctzll(changed))];
      }
      cost[gray] = static_cast<std::uint32_t>(syn.weight());
      prev = gray;
    }
  }
  Gf2Solver stab(s.checks.transpose());

  // Moves: one qubit changes its Pauli. In the full sector a qubit can take any of 3 others.
  std::vector<std::size_t> moves;
  std::vector<WalkStep> move_steps;
  if (sector == Sector::full) {
    for (std::size_t q = 0; q < n; ++q) {
      moves.push_back(std::size_t{1} << q);
      move_steps.push_back({q, 'X'});
      moves.push_back(std::size_t{1} << (n + q));
      move_steps.push_back({q, 'Z'});
      moves.push_back((std::size_t{1} << q) | (std::size_t{1} << (n + q)));
      move_steps.push_back({q, 'Y'});
    }
  } else {
    for (std::size_t q = 0; q < n; ++q) {
      moves.push_back(std::size_t{1} << q);
      move_steps.push_back({q, sector == Sector::x ? 'X' : 'Z'});
    }
  }

  const std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> best(nodes, unseen);
  std::vector<std::uint32_t> parent_move(nodes, unseen);
  std::vector<bool> done(nodes, false);
  using Item = std::pair<std::uint32_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  best[0] = cost[0];
  pq.push({best[0], 0});
  EnergyReport report;
  while (!pq.empty()) {
    auto [b, node] = pq.top();
    pq.pop();
    if (done[node]) continue;
    done[node] = true;
    ++report.nodes_explored;
    if (node != 0 && cost[node] == 0) {
      BinVector p = pauli_of(node);
      if (!stab.in_image(p)) {
        report.barrier = b;
        report.endpoint = p;
        std::vector<WalkStep> walk;
        for (std::size_t cur = node; cur != 0;) {
          std::uint32_t m = parent_move[cur];
          walk.push_back(move_steps[m]);
          cur ^= moves[m];
        }
        std::reverse(walk.begin(), walk.end());
        report.witness_walk = std::move(walk);
        return report;
      }
    }
    for (std::size_t m = 0; m < moves.size(); ++m) {
      std::size_t next = node ^ moves[m];
      std::uint32_t nb = std::max(b, cost[next]);
      if (nb < best[next]) {
        best[next] = nb;
        parent_move[next] = static_cast<std::uint32_t>(m);
        pq.push({nb, next});
      }
    }
  }
  return report;
}

ConfinementRadius lemma3_bound(std::optional<std::size_t> d_q, std::optional<std::size_t> t, const PowerLaw& f,
                         std::size_t c) {
  if (c == 0) throw std::invalid_argument("qubit degree must be positive");
  std::optional<Rational> w;
  if (t) {
    std::int64_t tt = static_cast<std::int64_t>(*t);
    w = Rational(std::max<std::int64_t>(tt - 1, 0), static_cast<std::int64_t>(c));
  }
  if (d_q) {
    std::int64_t dd = static_cast<std::int64_t>(*d_q);
    Rational half(std::max<std::int64_t>(dd - 1, 0), 2);
    if (!w || half < *w) w = half;
  }
  ConfinementRadius out;
  out.w = w;
  out.bound = w ? f.inverse(*w) : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace homprod
