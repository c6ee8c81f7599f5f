#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace graphbell {

/// Single-qubit Pauli operator label. I is the multiplicative identity on its qubit.
enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Global phase of a Pauli string, tracked exactly as a power of i (never floating point).
enum class Phase : std::uint8_t { PlusOne = 0, PlusI = 1, MinusOne = 2, MinusI = 3 };

[[nodiscard]] constexpr Phase operator*(Phase a, Phase b) noexcept {
  return static_cast<Phase>((static_cast<unsigned>(a) + static_cast<unsigned>(b)) & 3u);
}

/// True for +1 and -1; a Pauli string is Hermitian exactly when its phase is real.
[[nodiscard]] constexpr bool is_real(Phase p) noexcept {
  return (static_cast<unsigned>(p) & 1u) == 0;
}

[[nodiscard]] std::complex<double> phase_value(Phase p) noexcept;
[[nodiscard]] std::string phase_str(Phase p);

/// A phase-tracked tensor product of single-qubit Pauli operators.
///
/// Qubits are numbered 1..n, with qubit 1 the leftmost tensor factor. Values are
/// immutable after construction and safe to share across threads.
///
/// Each qubit additionally carries a display-case flag (lowercase letters in
/// formatted tokens). The flag is presentation metadata only: it does not
/// participate in the algebra or in equality comparisons.
class PauliString {
 public:
  struct SiteOp {
    int qubit;  // 1-based
    char op;    // one of IXYZixyz; lowercase sets the display-case flag
  };

  /// Identity string of length n, phase +1.
  explicit PauliString(std::size_t n);

  PauliString(Phase phase, std::vector<PauliAxis> axes, std::uint64_t lowercase_mask = 0);

  static PauliString identity(std::size_t n);

  /// Builds a string from explicit site operators, e.g. {{5, 'x'}, {1, 'X'}, {3, 'Z'}}.
  /// Unlisted qubits carry the identity. A leading sign is given via `phase`.
  static PauliString from_sites(std::size_t n, std::initializer_list<SiteOp> sites,
                                Phase phase = Phase::PlusOne);

  [[nodiscard]] std::size_t size() const noexcept { return axes_.size(); }
  [[nodiscard]] Phase phase() const noexcept { return phase_; }
  [[nodiscard]] PauliAxis axis(int qubit) const;  // qubit in 1..n
  [[nodiscard]] const std::vector<PauliAxis>& axes() const noexcept { return axes_; }
  [[nodiscard]] bool is_hermitian() const noexcept { return is_real(phase_); }
  [[nodiscard]] bool is_identity() const noexcept;
  [[nodiscard]] bool lowercase_at(int qubit) const;
  [[nodiscard]] std::uint64_t lowercase_mask() const noexcept { return lowercase_; }

  /// Copy with the phase multiplied by `factor`.
  [[nodiscard]] PauliString with_phase_factor(Phase factor) const;
  [[nodiscard]] PauliString negated() const { return with_phase_factor(Phase::MinusOne); }

  /// Algebraic equality: phase and axes. The display-case mask is ignored.
  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.phase_ == b.phase_ && a.axes_ == b.axes_;
  }
  friend bool operator!=(const PauliString& a, const PauliString& b) { return !(a == b); }

  /// Total order for use in sets/maps; sorts by axes then phase.
  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.axes_ != b.axes_) return a.axes_ < b.axes_;
    return static_cast<unsigned>(a.phase_) < static_cast<unsigned>(b.phase_);
  }

 private:
  Phase phase_;
  std::vector<PauliAxis> axes_;
  std::uint64_t lowercase_;
};

/// Exact operator product a·b with accumulated phase. Lengths must match.
[[nodiscard]] PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff a and b commute: the number of positions where both axes are
/// non-identity and different is even.
[[nodiscard]] bool commutes(const PauliString& a, const PauliString& b);

/// Number of non-identity tensor factors.
[[nodiscard]] int weight(const PauliString& p) noexcept;

/// A displayed qubit order: the permutation of 1..n used when parsing and
/// formatting observable tokens (token position k shows the axis of qubit
/// order[k], not qubit k+1).
class QubitOrder {
 public:
  /// 1-2-...-n.
  static QubitOrder identity(std::size_t n);

  /// Parses a dash-separated permutation such as "5-1-3-2-4-6".
  static QubitOrder parse(std::string_view text);

  explicit QubitOrder(std::vector<int> display_to_qubit);

  [[nodiscard]] std::size_t size() const noexcept { return display_to_qubit_.size(); }
  /// Qubit shown at token position `pos` (0-based position, 1-based qubit).
  [[nodiscard]] int qubit_at(std::size_t pos) const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const QubitOrder& a, const QubitOrder& b) {
    return a.display_to_qubit_ == b.display_to_qubit_;
  }

 private:
  std::vector<int> display_to_qubit_;
};

/// Parses a signed observable token, e.g. "-xXZZYy" under order 5-1-3-2-4-6.
///
/// Grammar: [+-]?[IXYZixyz]{n}. The Unicode minus sign U+2212 is accepted as
/// well. Letter case only sets the per-qubit display flag; the resulting phase
/// is always +1 or -1.
[[nodiscard]] PauliString parse_observable(std::string_view token, const QubitOrder& order);

/// Formats a real-phase string as a signed token under the given order.
/// Positive strings carry no sign character, so format(parse(t)) == t for
/// canonical tokens. Throws for phases +/-i, which the grammar cannot express.
[[nodiscard]] std::string format_observable(const PauliString& p, const QubitOrder& order);

}  // namespace graphbell
