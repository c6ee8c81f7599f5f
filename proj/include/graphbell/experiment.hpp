#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "graphbell/bell.hpp"
#include "graphbell/noise.hpp"
#include "graphbell/pauli.hpp"
#include "graphbell/state.hpp"

namespace graphbell {

/// One measured setting: the signed observable, the estimate of its
/// expectation, the standard error, and (for simulated data) the event count.
struct MeasurementRecord {
  PauliString term;
  double estimate = 0.0;
  double sigma = 0.0;                 // >= 0
  std::optional<long long> events;    // absent for ingested literature values
};

/// Simulates one counting run: N ~ Poisson(mean_events) detection events, each
/// a +/-1 outcome with P(+1) = (1 + E)/2 where E is the noisy expectation of
/// the signed term on s. estimate = (N+ - N-)/N, sigma = sqrt((1-estimate^2)/N).
/// Deterministic for a fixed seed. A zero Poisson draw is resampled once, then
/// reported as an error.
[[nodiscard]] MeasurementRecord simulate_counts(const StateVector& s, const DepolarizingNoise& noise,
                                                const PauliString& term, double mean_events,
                                                std::uint64_t seed);

/// Simulates every term of b as an independent setting. Per-setting seeds are
/// split deterministically from master_seed, so records depend only on
/// (inputs, master_seed) and not on evaluation order.
[[nodiscard]] std::vector<MeasurementRecord> simulate_operator(const StateVector& s,
                                                               const DepolarizingNoise& noise,
                                                               const BellOperator& b,
                                                               double mean_events,
                                                               std::uint64_t master_seed);

struct TableDocument {
  std::vector<MeasurementRecord> records;
  std::optional<QubitOrder> order;  // from the argument or a "# order=" comment
};

/// Reads a measurement table: optional "# order=5-1-3-2-4-6" comment lines, a
/// header "observable,value,sigma[,events]", then one row per setting. Tokens
/// are parsed under the declared order (argument and comment must agree when
/// both are present). The Unicode minus sign is accepted everywhere.
[[nodiscard]] TableDocument ingest_table(std::istream& in,
                                         std::optional<QubitOrder> declared_order = std::nullopt);

/// Writes the table format ingest_table reads, including the order comment.
void write_records_csv(std::ostream& out, const std::vector<MeasurementRecord>& records,
                       const QubitOrder& order);

struct BellAggregate {
  double value = 0.0;        // sum of estimates
  double sigma = 0.0;        // sqrt(sum of sigma^2), independent settings
  double bound = 0.0;        // LHV bound the records are compared against
  double sigmas_above = 0.0; // (value - bound)/sigma
  double ratio_d = 0.0;      // value/bound
  double sigma_d = 0.0;      // sigma/bound
  std::size_t record_count = 0;
};

/// Sums records into a Bell aggregate with quadrature error propagation. When
/// a reference operator is given, the records must cover each of its terms
/// exactly once (duplicates and gaps are errors).
[[nodiscard]] BellAggregate aggregate_bell(const std::vector<MeasurementRecord>& records,
                                           double bound,
                                           const BellOperator* reference = nullptr);

}  // namespace graphbell
