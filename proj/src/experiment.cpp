#include "graphbell/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphbell {

namespace {

// splitmix64 step: the standard seed-stream splitter.
std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void replace_unicode_minus(std::string& line) {
  static constexpr std::string_view kMinus = "\xE2\x88\x92";
  std::size_t pos = 0;
  while ((pos = line.find(kMinus, pos)) != std::string::npos) {
    line.replace(pos, kMinus.size(), "-");
    ++pos;
  }
}

std::string strip(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(strip(line.substr(start)));
      break;
    }
    fields.push_back(strip(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& field, const char* what) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("ingest_table: non-numeric ") + what + " '" + field + "'");
  }
  if (consumed != field.size()) {
    throw std::invalid_argument(std::string("ingest_table: trailing junk in ") + what + " '" + field + "'");
  }
  return value;
}

long long parse_events(const std::string& field) {
  std::size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(field, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("ingest_table: non-numeric events '" + field + "'");
  }
  if (consumed != field.size() || value < 0) {
    throw std::invalid_argument("ingest_table: bad events '" + field + "'");
  }
  return value;
}

void check_record(const MeasurementRecord& record) {
  if (record.sigma < 0.0) throw std::invalid_argument("measurement record: negative sigma");
  if (std::abs(record.estimate) > 1.0 + 3.0 * record.sigma) {
    throw std::invalid_argument("measurement record: |estimate| exceeds 1 + 3 sigma");
  }
}

}  // namespace

MeasurementRecord simulate_counts(const StateVector& s, const DepolarizingNoise& noise,
                                  const PauliString& term, double mean_events, std::uint64_t seed) {
  if (!term.is_hermitian()) throw std::invalid_argument("simulate_counts: non-Hermitian term");
  if (!(mean_events > 0.0)) throw std::invalid_argument("simulate_counts: mean_events must be positive");

  const double e_true = noisy_expectation(expectation(s, term), term, noise);
  const double prob_plus = 0.5 * (1.0 + e_true);

  std::mt19937_64 rng(seed);
  std::poisson_distribution<long long> poisson(mean_events);
  long long n = poisson(rng);
  if (n == 0) n = poisson(rng);  // resample a zero draw once
  if (n == 0) throw std::domain_error("simulate_counts: zero events after resampling");

  long long n_plus = 0;
  if (prob_plus >= 1.0) {
    n_plus = n;
  } else if (prob_plus > 0.0) {
    std::binomial_distribution<long long> binomial(n, prob_plus);
    n_plus = binomial(rng);
  }

  MeasurementRecord record{term, 0.0, 0.0, n};
  record.estimate = static_cast<double>(2 * n_plus - n) / static_cast<double>(n);
  record.sigma = std::sqrt((1.0 - record.estimate * record.estimate) / static_cast<double>(n));
  return record;
}

std::vector<MeasurementRecord> simulate_operator(const StateVector& s, const DepolarizingNoise& noise,
                                                 const BellOperator& b, double mean_events,
                                                 std::uint64_t master_seed) {
  std::uint64_t stream = master_seed;
  std::vector<std::uint64_t> seeds;
  seeds.reserve(b.terms.size());
  for (std::size_t i = 0; i < b.terms.size(); ++i) seeds.push_back(splitmix64_next(stream));

  std::vector<MeasurementRecord> records;
  records.reserve(b.terms.size());
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    records.push_back(simulate_counts(s, noise, b.terms[i], mean_events, seeds[i]));
  }
  return records;
}

TableDocument ingest_table(std::istream& in, std::optional<QubitOrder> declared_order) {
  TableDocument doc;
  doc.order = std::move(declared_order);

  std::string line;
  bool header_seen = false;
  bool has_events_column = false;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    replace_unicode_minus(line);
    const std::string trimmed = strip(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      const std::string comment = strip(trimmed.substr(1));
      if (comment.rfind("order=", 0) == 0) {
        QubitOrder comment_order = QubitOrder::parse(comment.substr(6));
        if (doc.order.has_value() && !(*doc.order == comment_order)) {
          throw std::invalid_argument("ingest_table: declared order conflicts with '# order=' comment");
        }
        doc.order = std::move(comment_order);
      }
      continue;
    }
    if (!header_seen) {
      if (trimmed == "observable,value,sigma") {
        has_events_column = false;
      } else if (trimmed == "observable,value,sigma,events") {
        has_events_column = true;
      } else {
        throw std::invalid_argument("ingest_table: expected header 'observable,value,sigma[,events]'");
      }
      header_seen = true;
      continue;
    }

    const auto fields = split_fields(trimmed);
    const std::size_t expected = has_events_column ? 4 : 3;
    if (fields.size() != expected) {
      throw std::invalid_argument("ingest_table: wrong field count on line " + std::to_string(line_number));
    }
    if (!doc.order.has_value()) {
      throw std::invalid_argument("ingest_table: no qubit order declared (flag or '# order=' comment)");
    }
    MeasurementRecord record{parse_observable(fields[0], *doc.order),
                             parse_double(fields[1], "value"), parse_double(fields[2], "sigma"),
                             std::nullopt};
    if (has_events_column && !fields[3].empty()) record.events = parse_events(fields[3]);
    check_record(record);
    doc.records.push_back(std::move(record));
  }
  if (!header_seen) {
    throw std::invalid_argument("ingest_table: missing header 'observable,value,sigma[,events]'");
  }
  return doc;
}

void write_records_csv(std::ostream& out, const std::vector<MeasurementRecord>& records,
                       const QubitOrder& order) {
  const bool with_events = std::all_of(records.begin(), records.end(),
                                       [](const MeasurementRecord& r) { return r.events.has_value(); });
  out << "# order=" << order.str() << '\n';
  out << (with_events ? "observable,value,sigma,events" : "observable,value,sigma") << '\n';
  std::ostringstream row;
  row.precision(12);
  for (const MeasurementRecord& record : records) {
    row.str("");
    row << format_observable(record.term, order) << ',' << record.estimate << ',' << record.sigma;
    if (with_events) row << ',' << *record.events;
    row << '\n';
    out << row.str();
  }
}

BellAggregate aggregate_bell(const std::vector<MeasurementRecord>& records, double bound,
                             const BellOperator* reference) {
  if (records.empty()) throw std::invalid_argument("aggregate_bell: no records");
  if (bound == 0.0) throw std::invalid_argument("aggregate_bell: bound must be nonzero");
  if (reference != nullptr) {
    if (records.size() != reference->terms.size()) {
      throw std::invalid_argument("aggregate_bell: record count does not match reference operator");
    }
    std::vector<bool> matched(reference->terms.size(), false);
    for (const MeasurementRecord& record : records) {
      bool found = false;
      for (std::size_t i = 0; i < reference->terms.size(); ++i) {
        if (!matched[i] && reference->terms[i] == record.term) {
          matched[i] = true;
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument("aggregate_bell: record term missing from or duplicated in reference");
      }
    }
  }

  BellAggregate agg;
  agg.bound = bound;
  agg.record_count = records.size();
  double variance = 0.0;
  for (const MeasurementRecord& record : records) {
    check_record(record);
    agg.value += record.estimate;
    variance += record.sigma * record.sigma;
  }
  agg.sigma = std::sqrt(variance);
  if (agg.sigma > 0.0) {
    agg.sigmas_above = (agg.value - bound) / agg.sigma;
  } else {
    agg.sigmas_above = agg.value == bound
                           ? 0.0
                           : std::copysign(std::numeric_limits<double>::infinity(), agg.value - bound);
  }
  agg.ratio_d = agg.value / bound;
  agg.sigma_d = agg.sigma / std::abs(bound);
  return agg;
}

}  // namespace graphbell
