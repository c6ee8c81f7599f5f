#include "graphbell/noise.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace graphbell {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("retention probability outside [0,1]");
  }
}

}  // namespace

DepolarizingNoise::DepolarizingNoise(std::vector<double> retention) : p_(std::move(retention)) {
  if (p_.empty()) throw std::invalid_argument("DepolarizingNoise: empty retention vector");
  for (double p : p_) check_probability(p);
}

DepolarizingNoise DepolarizingNoise::uniform(double p, int n) {
  check_probability(p);
  if (n < 1) throw std::invalid_argument("DepolarizingNoise: qubit count must be positive");
  return DepolarizingNoise(std::vector<double>(static_cast<std::size_t>(n), p));
}

double DepolarizingNoise::retention(int qubit) const {
  if (qubit < 1 || qubit > size()) throw std::out_of_range("DepolarizingNoise: qubit index");
  return p_[static_cast<std::size_t>(qubit - 1)];
}

double noisy_expectation(double ideal, const PauliString& term, const DepolarizingNoise& noise) {
  if (std::abs(ideal) > 1.0 + 1e-12) {
    throw std::invalid_argument("noisy_expectation: |ideal| exceeds 1");
  }
  const int n = static_cast<int>(term.size());
  if (noise.size() != n) {
    throw std::invalid_argument("noisy_expectation: noise/term size mismatch");
  }
  double damping = 1.0;
  for (int q = 1; q <= n; ++q) {
    if (term.axis(q) != PauliAxis::I) damping *= noise.retention(q);
  }
  return ideal * damping;
}

double noisy_bell_value(const BellOperator& b, std::span<const double> ideal_values,
                        const DepolarizingNoise& noise) {
  if (ideal_values.size() != b.terms.size()) {
    throw std::invalid_argument("noisy_bell_value: ideal_values/terms size mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    total += noisy_expectation(ideal_values[i], b.terms[i], noise);
  }
  return total;
}

std::vector<double> ideal_term_values(const BellOperator& b, const StateVector& s) {
  std::vector<double> values;
  values.reserve(b.terms.size());
  for (const PauliString& term : b.terms) values.push_back(expectation(s, term));
  return values;
}

DecayCurve sweep_uniform(const BellOperator& b, std::span<const double> ideal_values, double p_min,
                         double p_max, int steps) {
  check_probability(p_min);
  check_probability(p_max);
  if (!(p_min < p_max)) throw std::invalid_argument("sweep_uniform: need p_min < p_max");
  if (steps < 2) throw std::invalid_argument("sweep_uniform: need at least 2 grid points");

  DecayCurve curve;
  curve.operator_label = b.label;
  {
    std::ostringstream g;
    g << p_min << ',' << p_max << ',' << steps;
    curve.grid = g.str();
  }
  curve.samples.reserve(static_cast<std::size_t>(steps));
  const int n = static_cast<int>(b.qubit_count());
  for (int k = 0; k < steps; ++k) {
    // Hit both endpoints exactly; interior points by linear interpolation.
    const double t = static_cast<double>(k) / static_cast<double>(steps - 1);
    const double p = (k == steps - 1) ? p_max : p_min + t * (p_max - p_min);
    curve.samples.push_back({p, noisy_bell_value(b, ideal_values, DepolarizingNoise::uniform(p, n))});
  }
  return curve;
}

void write_csv(std::ostream& out, const DecayCurve& curve) {
  out << "p,value,operator\n";
  std::ostringstream row;
  row.precision(12);
  for (const auto& s : curve.samples) {
    row.str("");
    row << s.p << ',' << s.value << ',' << curve.operator_label << '\n';
    out << row.str();
  }
}

ThresholdResult violation_threshold(const BellOperator& b, std::span<const double> ideal_values) {
  if (!b.lhv_bound.has_value()) {
    throw std::invalid_argument("violation_threshold: operator has no LHV bound attached");
  }
  const double bound = *b.lhv_bound;
  const int n = static_cast<int>(b.qubit_count());
  const auto value_at = [&](double p) {
    return noisy_bell_value(b, ideal_values, DepolarizingNoise::uniform(p, n));
  };
  if (!(value_at(1.0) > bound)) {
    throw std::domain_error("violation_threshold: no violation at p = 1");
  }

  // noisy_bell_value is monotone in p here (every violating operator's damped
  // terms shrink together), so bisection on [0,1] converges to the crossing.
  double lo = 0.0;
  double hi = 1.0;
  int iterations = 0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (value_at(mid) > bound) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++iterations;
  }
  ThresholdResult result;
  result.p_star = 0.5 * (lo + hi);
  result.iterations = iterations;
  result.bound = bound;
  result.value_at_p_star = value_at(result.p_star);
  return result;
}

namespace {

// rho -> p rho + (1-p) tr_i(rho) x I/2 on one qubit, by index arithmetic:
// with the target bit masked out, the partial-trace term averages the two
// diagonal blocks and zeroes the off-diagonal ones.
DensityOperator depolarize_one_qubit(const DensityOperator& rho, int qubit, double p, int n) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index bit = Eigen::Index{1} << (n - qubit);  // qubit 1 = MSB
  DensityOperator out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      std::complex<double> mixed = 0.0;
      if ((r & bit) == (c & bit)) {
        mixed = 0.5 * (rho(r & ~bit, c & ~bit) + rho(r | bit, c | bit));
      }
      out(r, c) = p * rho(r, c) + (1.0 - p) * mixed;
    }
  }
  return out;
}

}  // namespace

DensityOperator apply_depolarizing_dm(DensityOperator rho, const DepolarizingNoise& noise) {
  const int n = noise.size();
  if (n > 6) throw std::invalid_argument("apply_depolarizing_dm: dimension cap (n <= 6)");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("apply_depolarizing_dm: density operator/noise size mismatch");
  }
  for (int q = 1; q <= n; ++q) {
    const double p = noise.retention(q);
    if (p == 1.0) continue;
    rho = depolarize_one_qubit(rho, q, p, n);
  }
  return rho;
}

DensityOperator apply_depolarizing_dm(const StateVector& s, const DepolarizingNoise& noise) {
  if (qubit_count(s) != noise.size()) {
    throw std::invalid_argument("apply_depolarizing_dm: state/noise size mismatch");
  }
  return apply_depolarizing_dm(pure_density(s), noise);
}

}  // namespace graphbell
