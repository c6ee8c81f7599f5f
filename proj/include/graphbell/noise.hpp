#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graphbell/bell.hpp"
#include "graphbell/pauli.hpp"
#include "graphbell/state.hpp"

namespace graphbell {

/// Per-qubit depolarizing strengths: retention probability p_i in [0,1] for
/// qubit i, with p_i = 1 meaning noiseless. Acting on each qubit separately,
/// the channel damps a Pauli expectation by the product of p_i over the
/// string's non-identity sites.
class DepolarizingNoise {
 public:
  explicit DepolarizingNoise(std::vector<double> retention);
  static DepolarizingNoise uniform(double p, int n);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(p_.size()); }
  [[nodiscard]] double retention(int qubit) const;  // qubit in 1..n
  [[nodiscard]] const std::vector<double>& values() const noexcept { return p_; }

 private:
  std::vector<double> p_;
};

/// Analytic damping: ideal expectation times prod of p_i over non-identity sites.
[[nodiscard]] double noisy_expectation(double ideal, const PauliString& term,
                                       const DepolarizingNoise& noise);

/// Sum of damped per-term expectations; ideal_values must align with b.terms.
[[nodiscard]] double noisy_bell_value(const BellOperator& b, std::span<const double> ideal_values,
                                      const DepolarizingNoise& noise);

/// Per-term expectations of b on s, in term order (inputs for the noisy sums).
[[nodiscard]] std::vector<double> ideal_term_values(const BellOperator& b, const StateVector& s);

struct DecayCurve {
  struct Sample {
    double p;
    double value;
  };
  std::vector<Sample> samples;  // p strictly increasing in [0,1]
  std::string operator_label;
  std::string grid;  // "p_min,p_max,steps" as parsed
};

/// Samples noisy_bell_value under uniform noise on an evenly spaced p grid.
[[nodiscard]] DecayCurve sweep_uniform(const BellOperator& b, std::span<const double> ideal_values,
                                       double p_min, double p_max, int steps);

/// CSV with header "p,value,operator".
void write_csv(std::ostream& out, const DecayCurve& curve);

struct ThresholdResult {
  double p_star = 0.0;
  int iterations = 0;
  double bound = 0.0;
  double value_at_p_star = 0.0;
};

/// Bisects for the uniform retention p* where the noisy value meets the LHV
/// bound. Requires b.lhv_bound and a noiseless value above it; the interval
/// is narrowed to width 1e-9.
[[nodiscard]] ThresholdResult violation_threshold(const BellOperator& b,
                                                  std::span<const double> ideal_values);

/// Dense density-operator route: applies rho -> p rho + (1-p) tr_i(rho) x I/2
/// qubit by qubit. Exists as an independent oracle for the analytic damping.
/// Requires n <= 6.
[[nodiscard]] DensityOperator apply_depolarizing_dm(const StateVector& s,
                                                    const DepolarizingNoise& noise);
[[nodiscard]] DensityOperator apply_depolarizing_dm(DensityOperator rho,
                                                    const DepolarizingNoise& noise);

}  // namespace graphbell
