#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "graphbell/pauli.hpp"

namespace graphbell {

template <class Scalar>
using DenseVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <class Scalar>
using DenseMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact amplitudes over the 2^n computational basis. Basis index bit layout:
/// qubit 1 is the most significant bit.
using StateVector = DenseVector<double>;
using DensityOperator = DenseMatrix<double>;

/// Dense construction is exact and cheap only for small registers.
inline constexpr int kMaxDenseQubits = 8;

/// Undirected simple graph on vertices 1..n; edges are stored normalized (u < v).
struct GraphSpec {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  GraphSpec(int n, std::vector<std::pair<int, int>> edges);

  static GraphSpec path(int n);

  /// Reads "n" on the first data line followed by one "u v" pair per line.
  /// Blank lines and lines starting with '#' are skipped.
  static GraphSpec read(std::istream& in);
};

/// Eq.-style stabilizer generators: generator i has X at vertex i and Z at
/// each neighbour. Returns n Hermitian, mutually commuting strings.
[[nodiscard]] std::vector<PauliString> stabilizer_generators(const GraphSpec& g);

/// Dense graph state: the unique joint +1 eigenstate of the generators.
/// Requires n <= kMaxDenseQubits.
[[nodiscard]] StateVector graph_state(const GraphSpec& g);

enum class NamedState { LC4, LC6, Y6, GHZ6 };

[[nodiscard]] std::optional<NamedState> named_state_from_string(std::string_view name);
[[nodiscard]] std::string_view to_string(NamedState s);
[[nodiscard]] int qubit_count(NamedState s);

/// Experimental-basis states built directly from their defining superpositions.
[[nodiscard]] StateVector build_named_state(NamedState which);

/// Canonical stabilizer generators of each named state (the state is the +1
/// eigenstate of all of them).
[[nodiscard]] std::vector<PauliString> named_state_generators(NamedState which);

/// Display order conventionally used for this state's observables.
[[nodiscard]] QubitOrder named_state_order(NamedState which);

[[nodiscard]] int qubit_count(const StateVector& s);
[[nodiscard]] int qubit_count(const DensityOperator& rho);

/// Multiplies by a global phase so the first nonzero amplitude is real positive.
[[nodiscard]] StateVector fix_global_phase(StateVector s);

/// <s|P|s> for Hermitian P; the result is real to 1e-12 by construction.
[[nodiscard]] double expectation(const StateVector& s, const PauliString& p);

/// tr(rho P) for Hermitian P, evaluated through the dense matrix of P.
[[nodiscard]] double expectation(const DensityOperator& rho, const PauliString& p);

/// Dense 2^n x 2^n matrix of a Pauli string (Kronecker product of 2x2 factors).
[[nodiscard]] DensityOperator pauli_matrix(const PauliString& p);

[[nodiscard]] DensityOperator pure_density(const StateVector& s);

}  // namespace graphbell
