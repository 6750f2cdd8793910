#include <doctest.h>

#include "codes.hpp"
#include "homprod/soundness.hpp"
#include "homprod/stabsym.hpp"

#include <cmath>
#include <deque>
#include <set>

using namespace homprod;

namespace {

SymplecticCheckSet steane() {
  const BinMatrix h = BinMatrix::from_rows({{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}});
  return SymplecticCheckSet::from_css(h, h);
}

SymplecticCheckSet five_qubit() { return SymplecticCheckSet::from_paulis({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}); }

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

// All stabiliser group elements.
std::vector<BinVector> group(const SymplecticCheckSet& s) {
  std::vector<BinVector> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.num_checks()); ++mask) {
    BinVector v(2 * s.n);
    for (std::size_t i = 0; i < s.num_checks(); ++i)
      if ((mask >> i) & 1u) v += s.checks.row(i);
    out.push_back(v);
  }
  return out;
}

// Reference barrier: smallest b for which a walk of single-qubit X flips with at most b
// violated checks links the identity to a logical.
std::size_t x_barrier_oracle(const SymplecticCheckSet& s) {
  const std::size_t n = s.n;
  auto members = group(s);
  std::set<std::vector<std::uint8_t>> stab;
  for (const auto& g : members) stab.insert(oracle::dense(g));
  auto pauli_of = [&](std::uint64_t mask) {
    BinVector p(2 * n);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) p.set(i);
    return p;
  };
  for (std::size_t b = 0; b <= s.num_checks(); ++b) {
    std::vector<char> seen(std::size_t{1} << n, 0);
    std::deque<std::uint64_t> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      const std::uint64_t cur = queue.front();
      queue.pop_front();
      const BinVector p = pauli_of(cur);
      if (s.syndrome(p).is_zero() && !stab.count(oracle::dense(p))) return b;
      for (std::size_t q = 0; q < n; ++q) {
        const std::uint64_t nxt = cur ^ (std::uint64_t{1} << q);
        if (seen[nxt] || s.syndrome(pauli_of(nxt)).weight() > b) continue;
        seen[nxt] = 1;
        queue.push_back(nxt);
      }
    }
  }
  return SIZE_MAX;
}

void check_pattern(const DiagonalizedChecks& d) {
  const std::size_t m = d.generators.num_checks();
  REQUIRE(d.pure_errors.size() == m);
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(pauli_weight(d.pure_errors[i]) == 1);
    for (std::size_t j = 0; j < m; ++j)
      CHECK(symplectic_product(d.pure_errors[i], d.generators.checks.row(j)) == (i == j));
  }
}

}  // namespace

TEST_CASE("one-qubit Z code") {
  SymplecticCheckSet s = SymplecticCheckSet::from_paulis({"Z"});
  DiagonalizedChecks d = diagonalize(s);
  CHECK(d.k == 0);
  CHECK(pauli_string(d.frame_generators.checks.row(0)) == "X");
  CHECK(pauli_string(d.to_frame(d.pure_errors[0])) == "Z");
  CHECK(pauli_string(d.pure_errors[0]) == "X");
  CHECK_THROWS_AS(low_weight_logical(d), std::invalid_argument);
}

TEST_CASE("diagonalization gives the anticommutation pattern") {
  for (const auto& s : {ising(3), steane(), five_qubit(), surface_patch(), ising(6),
                        SymplecticCheckSet::from_paulis({"XXXX", "ZZZZ"})}) {
    REQUIRE(s.commuting());
    DiagonalizedChecks d = diagonalize(s);
    check_pattern(d);
    CHECK(d.k == s.n - rank(s.checks));
    // frame row j is X on qubit j, Z or I on the other pivots
    for (std::size_t j = 0; j < d.frame_generators.num_checks(); ++j) {
      const BinVector& row = d.frame_generators.checks.row(j);
      CHECK(row.get(j));
      CHECK_FALSE(row.get(s.n + j));
      for (std::size_t i = 0; i < d.frame_generators.num_checks(); ++i)
        if (i != j) CHECK_FALSE(row.get(i));
    }
    // the generators span the original stabiliser
    CHECK(rank(BinMatrix::vstack({d.generators.checks, s.checks})) == rank(s.checks));
    for (std::size_t j = 0; j < d.generators.num_checks(); ++j)
      CHECK(d.to_original(d.to_frame(d.generators.checks.row(j))) == d.generators.checks.row(j));
  }
}

TEST_CASE("Steane pure errors and preimages") {
  DiagonalizedChecks d = diagonalize(steane());
  CHECK(d.generators.num_checks() == 6);
  CHECK(d.k == 1);
  CHECK(preimage_from_pure_errors(d, BinVector(6)).is_zero());
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    BinVector s(6);
    for (std::size_t i = 0; i < 6; ++i)
      if ((mask >> i) & 1u) s.set(i);
    BinVector e = preimage_from_pure_errors(d, s);
    CHECK(pauli_weight(e) <= s.weight());
    CHECK(d.generators.syndrome(e) == s);
  }
}

TEST_CASE("diagonalized check sets are (inf, x)-sound") {
  for (const auto& s : {ising(4), steane(), five_qubit(), surface_patch(), ising(7)}) {
    DiagonalizedChecks d = diagonalize(s);
    Verdict v = certify_checks(d.generators.checks, std::nullopt, PowerLaw::linear());
    CHECK(v.kind == VerdictKind::certified);
  }
  // the same stabiliser with other generators need not be: (1, 0) needs X1 X3
  SymplecticCheckSet nested = SymplecticCheckSet::from_paulis({"ZZII", "ZZZZ"});
  CHECK(certify_checks(nested.checks, std::nullopt, PowerLaw::linear()).kind == VerdictKind::counterexample);
  CHECK(certify_checks(diagonalize(nested).generators.checks, std::nullopt, PowerLaw::linear()).kind ==
        VerdictKind::certified);
}

TEST_CASE("low-weight logicals") {
  for (const auto& s : {ising(3), steane(), five_qubit(), surface_patch()}) {
    DiagonalizedChecks d = diagonalize(s);
    LogicalWitness w = low_weight_logical(d);
    CHECK(s.syndrome(w.f).is_zero());
    CHECK_FALSE(in_stabilizer(s, w.f));
    CHECK(pauli_weight(w.f) <= s.max_qubit_degree() + 1);
    CHECK(pauli_weight(w.p) == 1);
    std::set<std::vector<std::uint8_t>> g;
    for (const auto& v : group(s)) g.insert(oracle::dense(v));
    CHECK(g.count(oracle::dense(w.f)) == 0);
  }
}

TEST_CASE("energy barriers") {
  for (std::size_t n = 2; n <= 8; ++n) {
    EnergyReport e = energy_barrier(ising(n), Sector::x);
    CHECK(e.barrier == 1u);
    CHECK(x_barrier_oracle(ising(n)) == 1u);
  }
  EnergyReport patch = energy_barrier(surface_patch(), Sector::x);
  CHECK(patch.barrier == 1u);
  CHECK(x_barrier_oracle(surface_patch()) == 1u);
  EnergyReport st = energy_barrier(steane(), Sector::x);
  CHECK(st.barrier == x_barrier_oracle(steane()));
  // the witness walk ends on a logical and never exceeds the barrier
  BinVector p(2 * 7);
  for (const auto& step : st.witness_walk) {
    REQUIRE(step.pauli == 'X');
    p.flip(step.qubit);
    CHECK(steane().syndrome(p).weight() <= *st.barrier);
  }
  CHECK(p == st.endpoint);
  CHECK(steane().syndrome(p).is_zero());
  CHECK_FALSE(in_stabilizer(steane(), p));
  // distance-one code
  EnergyReport one = energy_barrier(SymplecticCheckSet::from_paulis({"ZI"}), Sector::x);
  CHECK(one.barrier == 0u);
  CHECK(one.witness_walk.size() == 1);
  CHECK_THROWS_AS(energy_barrier(steane(), Sector::full), std::invalid_argument);
}

TEST_CASE("confinement radius arithmetic") {
  ConfinementRadius a = lemma3_bound(3, std::nullopt, PowerLaw::linear(), 2);
  CHECK(*a.w == Rational(1));
  CHECK(a.bound == doctest::Approx(1.0));
  ConfinementRadius b = lemma3_bound(3, 3, PowerLaw::quadratic(), 4);
  CHECK(*b.w == Rational(1, 2));
  CHECK(b.bound == doctest::Approx(std::sqrt(2.0)));
  ConfinementRadius c = lemma3_bound(5, 1, PowerLaw::linear(), 3);
  CHECK(*c.w == Rational(0));
  CHECK(c.bound == doctest::Approx(0.0));
}
