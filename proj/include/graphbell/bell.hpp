#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphbell/pauli.hpp"
#include "graphbell/state.hpp"

namespace graphbell {

/// A signed sum of Hermitian Pauli strings together with its bound under
/// local hidden variable theories (once computed) and provenance metadata.
struct BellOperator {
  std::string label;
  std::vector<PauliString> terms;          // every phase is +1 or -1
  std::vector<PauliString> generators;     // empty unless generator-built
  std::string notes;                       // expansion pattern, corrections, ...
  std::optional<QubitOrder> display_order;
  std::optional<double> lhv_bound;         // set after an exhaustive search

  [[nodiscard]] std::size_t qubit_count() const;
};

/// Rejects empty operators, mixed lengths, non-real phases, and pairs of terms
/// with identical axes but opposite signs (the latter signal non-commuting
/// inputs upstream). Identical signed terms are tolerated: degenerate generator
/// sets legitimately produce repeats.
void validate_bell(const BellOperator& b);

/// Expands (1+ga) gb (1+gc)(1+gd) ge (1+gf) into its 16 signed product terms.
/// The generators must be Hermitian and pairwise commuting.
[[nodiscard]] BellOperator expand_bell(const PauliString& ga, const PauliString& gb,
                                       const PauliString& gc, const PauliString& gd,
                                       const PauliString& ge, const PauliString& gf,
                                       std::string label = {});

/// The optimal stabilizer Bell operator for the LC6 state (16 terms, displayed
/// in qubit order 5-1-3-2-4-6).
[[nodiscard]] BellOperator lc6_bell();

/// The optimal stabilizer Bell operator for the Y6 state (16 terms, displayed
/// in qubit order 1-3-2-4-5-6).
[[nodiscard]] BellOperator y6_bell();

/// Mermin operator for the six-qubit GHZ state: the 32 full-correlation X/Y
/// stabilizer elements, signed so every term has expectation +1 on GHZ6.
[[nodiscard]] BellOperator mermin_ghz6();

/// Sum of term expectations on the given state.
[[nodiscard]] double quantum_value(const BellOperator& b, const StateVector& s);

/// Thrown when the deterministic-assignment space exceeds the configured cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LhvOptions {
  std::uint64_t assignment_cap = std::uint64_t{1} << 24;
  std::uint64_t parallel_threshold = std::uint64_t{1} << 20;
  unsigned worker_count = 0;  // 0: use hardware concurrency
};

/// One deterministic local strategy: a +/-1 outcome for every (qubit, axis)
/// pair appearing in the operator. Identity factors are implicitly +1.
struct LhvAssignment {
  struct Entry {
    int qubit;
    PauliAxis axis;
    int value;  // +1 or -1
  };
  std::vector<Entry> entries;

  [[nodiscard]] int value_for(int qubit, PauliAxis axis) const;
};

struct LhvSearchResult {
  double best_value = 0.0;
  LhvAssignment best_assignment;
  std::uint64_t assignments_searched = 0;
};

/// Exhaustive maximum of the operator over all deterministic local strategies.
/// The search space has one binary variable per distinct non-identity axis per
/// qubit; convexity makes deterministic strategies optimal, so this maximum is
/// the LHV bound. Large spaces are split across parallel workers.
[[nodiscard]] LhvSearchResult lhv_search(const BellOperator& b, const LhvOptions& opt = {});

/// Convenience wrapper returning only the bound.
[[nodiscard]] double lhv_bound(const BellOperator& b, const LhvOptions& opt = {});

/// Value of the operator under one deterministic strategy.
[[nodiscard]] double evaluate_lhv(const BellOperator& b, const LhvAssignment& assignment);

/// quantum_value / lhv_bound; requires the bound to have been computed.
[[nodiscard]] double violation_ratio(const BellOperator& b, const StateVector& s);

/// Writes the line-based operator document (label, order, bound, one signed
/// token per term). Uses b.display_order unless an explicit order is given.
void write_bell(std::ostream& out, const BellOperator& b,
                const std::optional<QubitOrder>& order = std::nullopt);

/// Parses the document produced by write_bell.
[[nodiscard]] BellOperator read_bell(std::istream& in);

}  // namespace graphbell
