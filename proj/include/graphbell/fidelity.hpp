#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "graphbell/pauli.hpp"
#include "graphbell/state.hpp"

namespace graphbell {

/// The 2^k subset products of k commuting, independent, Hermitian generators.
/// Element 0 is +identity; elements carry exact signs and case metadata.
class StabilizerGroup {
 public:
  static StabilizerGroup from_generators(std::vector<PauliString> generators);

  [[nodiscard]] int generator_count() const noexcept { return static_cast<int>(generators_.size()); }
  [[nodiscard]] int qubit_count() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] const std::vector<PauliString>& elements() const noexcept { return elements_; }
  [[nodiscard]] const std::vector<PauliString>& generators() const noexcept { return generators_; }
  [[nodiscard]] bool contains(const PauliString& p) const;

  /// histogram[w] = number of group elements with weight w (histogram[0] = 1).
  [[nodiscard]] std::vector<std::size_t> weight_histogram() const;

 private:
  StabilizerGroup() = default;
  std::vector<PauliString> generators_;
  std::vector<PauliString> elements_;  // subset-mask order
  int n_ = 0;
};

/// F = 2^(-k) sum of <S> over the group; requires k = n so the group projects
/// onto a unique state.
[[nodiscard]] double exact_fidelity(const StateVector& s, const StabilizerGroup& group);
[[nodiscard]] double exact_fidelity(const DensityOperator& rho, const StabilizerGroup& group);

/// F(p) = 2^(-k) sum of p^weight(S): the exact fidelity of the group's state
/// under uniform single-qubit depolarizing with retention p.
[[nodiscard]] double fidelity_under_depolarizing(const StabilizerGroup& group, double p);

/// Genuine multipartite entanglement criterion: strictly F > 1/2.
[[nodiscard]] bool gme_check(double fidelity);

/// One line per element: signed token (in the given display order) and weight.
void write_group(std::ostream& out, const StabilizerGroup& group, const QubitOrder& order);

}  // namespace graphbell
