#include "graphbell/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace graphbell {

StabilizerGroup StabilizerGroup::from_generators(std::vector<PauliString> generators) {
  if (generators.empty()) throw std::invalid_argument("stabilizer group: no generators");
  const int k = static_cast<int>(generators.size());
  if (k > 16) throw std::invalid_argument("stabilizer group: too many generators");
  const std::size_t n = generators.front().size();
  for (const PauliString& g : generators) {
    if (g.size() != n) throw std::invalid_argument("stabilizer group: mixed qubit counts");
    if (!g.is_hermitian()) throw std::invalid_argument("stabilizer group: non-Hermitian generator");
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!commutes(generators[static_cast<std::size_t>(i)], generators[static_cast<std::size_t>(j)])) {
        throw std::invalid_argument("stabilizer group: generators do not commute");
      }
    }
  }

  StabilizerGroup group;
  group.n_ = static_cast<int>(n);
  const std::size_t count = std::size_t{1} << k;
  group.elements_.reserve(count);
  std::set<PauliString> seen;
  for (std::size_t mask = 0; mask < count; ++mask) {
    PauliString element(n);
    for (int bit = 0; bit < k; ++bit) {
      if (mask & (std::size_t{1} << bit)) {
        element = multiply(element, generators[static_cast<std::size_t>(bit)]);
      }
    }
    if (!element.is_hermitian()) {
      throw std::invalid_argument("stabilizer group: non-Hermitian subset product");
    }
    if (!seen.insert(element).second) {
      throw std::invalid_argument("stabilizer group: generators are dependent");
    }
    group.elements_.push_back(std::move(element));
  }
  group.generators_ = std::move(generators);
  return group;
}

bool StabilizerGroup::contains(const PauliString& p) const {
  return std::find(elements_.begin(), elements_.end(), p) != elements_.end();
}

std::vector<std::size_t> StabilizerGroup::weight_histogram() const {
  std::vector<std::size_t> histogram(static_cast<std::size_t>(n_) + 1, 0);
  for (const PauliString& s : elements_) ++histogram[static_cast<std::size_t>(weight(s))];
  return histogram;
}

namespace {

double clamp_unit(double value) {
  if (value < 0.0 && value > -1e-9) return 0.0;
  if (value > 1.0 && value < 1.0 + 1e-9) return 1.0;
  return value;
}

template <typename State>
double group_average(const State& s, const StabilizerGroup& group) {
  if (group.generator_count() != group.qubit_count()) {
    throw std::invalid_argument("exact_fidelity: group does not pin a unique state (k != n)");
  }
  if (qubit_count(s) != group.qubit_count()) {
    throw std::invalid_argument("exact_fidelity: state/group dimension mismatch");
  }
  double total = 0.0;
  for (const PauliString& element : group.elements()) total += expectation(s, element);
  return clamp_unit(total / static_cast<double>(group.size()));
}

}  // namespace

double exact_fidelity(const StateVector& s, const StabilizerGroup& group) {
  return group_average(s, group);
}

double exact_fidelity(const DensityOperator& rho, const StabilizerGroup& group) {
  return group_average(rho, group);
}

double fidelity_under_depolarizing(const StabilizerGroup& group, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("fidelity_under_depolarizing: p outside [0,1]");
  }
  const auto histogram = group.weight_histogram();
  double total = 0.0;
  for (std::size_t w = 0; w < histogram.size(); ++w) {
    total += static_cast<double>(histogram[w]) * std::pow(p, static_cast<double>(w));
  }
  return clamp_unit(total / static_cast<double>(group.size()));
}

bool gme_check(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw std::invalid_argument("gme_check: fidelity outside [0,1]");
  }
  return fidelity > 0.5;
}

void write_group(std::ostream& out, const StabilizerGroup& group, const QubitOrder& order) {
  for (const PauliString& element : group.elements()) {
    out << format_observable(element, order) << ' ' << weight(element) << '\n';
  }
}

}  // namespace graphbell
