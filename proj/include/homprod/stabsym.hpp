#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homprod/gf2.hpp"
#include "homprod/rational.hpp"

namespace homprod {

// Stabiliser checks as rows (x | z) of length 2n. Phases are ignored.
struct SymplecticCheckSet {
  std::size_t n = 0;
  BinMatrix checks;

  SymplecticCheckSet() = default;
  SymplecticCheckSet(std::size_t qubits, BinMatrix rows);

  // X-type rows from hx followed by Z-type rows from hz.
  static SymplecticCheckSet from_css(const BinMatrix& hx, const BinMatrix& hz);
  // Rows like "XZZXI"; 'I' or '_' for identity.
  static SymplecticCheckSet from_paulis(const std::vector<std::string>& rows);

  std::size_t num_checks() const { return checks.rows(); }
  bool commuting() const;
  // Bit i is the symplectic product of check i with the Pauli (x | z).
  BinVector syndrome(const BinVector& pauli) const;
  // Largest number of checks acting on one qubit.
  std::size_t max_qubit_degree() const;
};

// Symplectic inner product of two (x | z) vectors.
bool symplectic_product(const BinVector& a, const BinVector& b);
std::size_t pauli_weight(const BinVector& pauli);
std::string pauli_string(const BinVector& pauli);

// Local Clifford steps: hadamard swaps X and Z on a qubit, phase_zy swaps Z and Y
// (x ^= z), swap exchanges two qubit labels. Each step is its own inverse.
struct CliffordStep {
  enum class Kind { hadamard, phase_zy, swap } kind = Kind::hadamard;
  std::size_t a = 0;
  std::size_t b = 0;
};

std::string to_string(const CliffordStep& step);
void apply_step(BinVector& pauli, std::size_t n, const CliffordStep& step);

struct DiagonalizedChecks {
  std::size_t n = 0;
  std::size_t k = 0;
  SymplecticCheckSet generators;        // n - k independent rows, original frame
  SymplecticCheckSet frame_generators;  // row j is X on qubit j and Z or I on the other pivots
  std::vector<BinVector> pure_errors;   // single-qubit, original frame; anticommute with row j only
  std::vector<CliffordStep> clifford_log;

  // Frame Pauli to original frame.
  BinVector to_original(BinVector frame_pauli) const;
  BinVector to_frame(BinVector pauli) const;
};

// Throws std::invalid_argument on non-commuting rows.
DiagonalizedChecks diagonalize(const SymplecticCheckSet& s);

// Product of the pure errors selected by s (one bit per generator).
BinVector preimage_from_pure_errors(const DiagonalizedChecks& d, const BinVector& s);

struct LogicalWitness {
  BinVector f;        // zero syndrome, outside the stabiliser
  BinVector p;        // the single-qubit seed
  std::size_t qubit = 0;  // original label of the seed qubit
  std::size_t degree = 0;  // generators acting on that qubit
};

// Seeds a single-qubit Pauli on the first non-pivot qubit (X, Z, Y; fewest violated
// generators), cancels its syndrome with pure errors and returns the product. Throws
// std::invalid_argument when k = 0.
LogicalWitness low_weight_logical(const DiagonalizedChecks& d);

bool in_stabilizer(const SymplecticCheckSet& s, const BinVector& pauli);

enum class Sector { x, z, full };

std::optional<Sector> parse_sector(const std::string& text);
std::string to_string(Sector s);

struct WalkStep {
  std::size_t qubit = 0;
  char pauli = 'X';  // the Pauli multiplied in at this step
};

struct EnergyReport {
  std::optional<std::size_t> barrier;  // nullopt: no nontrivial logical reachable in the sector
  std::vector<WalkStep> witness_walk;
  BinVector endpoint;                  // the logical reached
  std::size_t nodes_explored = 0;
};

// Exact barrier by bottleneck shortest path over all errors of the sector. The x and z sectors
// need n <= n_limit; the full sector needs n <= min(n_limit, 5).
EnergyReport energy_barrier(const SymplecticCheckSet& s, Sector sector, std::size_t n_limit = 8);

struct ConfinementRadius {
  std::optional<Rational> w;  // nullopt: infinite
  double bound = 0;           // f^{-1}(w), +inf when w is infinite
};

// w = min[(t - 1)/C, (d_Q - 1)/2]; nullopt inputs are infinite.
ConfinementRadius lemma3_bound(std::optional<std::size_t> d_q, std::optional<std::size_t> t, const PowerLaw& f,
                         std::size_t c);

}  // namespace homprod
