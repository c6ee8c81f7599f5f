#include "graphbell/bell.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace graphbell {

std::size_t BellOperator::qubit_count() const {
  return terms.empty() ? 0 : terms.front().size();
}

void validate_bell(const BellOperator& b) {
  if (b.terms.empty()) throw std::invalid_argument("BellOperator: no terms");
  const std::size_t n = b.terms.front().size();
  std::map<std::vector<PauliAxis>, Phase> seen;
  for (const PauliString& t : b.terms) {
    if (t.size() != n) throw std::invalid_argument("BellOperator: mixed term lengths");
    if (!t.is_hermitian()) {
      throw std::invalid_argument("BellOperator: term with non-real phase " +
                                  phase_str(t.phase()));
    }
    auto [it, inserted] = seen.emplace(t.axes(), t.phase());
    if (!inserted && it->second != t.phase()) {
      throw std::invalid_argument(
          "BellOperator: terms with identical axes but opposite signs");
    }
  }
}

BellOperator expand_bell(const PauliString& ga, const PauliString& gb, const PauliString& gc,
                         const PauliString& gd, const PauliString& ge, const PauliString& gf,
                         std::string label) {
  const PauliString* gens[6] = {&ga, &gb, &gc, &gd, &ge, &gf};
  const std::size_t n = ga.size();
  for (const PauliString* g : gens) {
    if (g->size() != n) throw std::invalid_argument("expand_bell: generator length mismatch");
    if (!g->is_hermitian()) throw std::invalid_argument("expand_bell: non-Hermitian generator");
  }
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (!commutes(*gens[i], *gens[j])) {
        throw std::invalid_argument("expand_bell: generators do not commute");
      }
    }
  }

  BellOperator out;
  out.label = std::move(label);
  out.generators = {ga, gb, gc, gd, ge, gf};
  out.terms.reserve(16);
  const PauliString* optional_slots[4] = {&ga, &gc, &gd, &gf};
  for (unsigned mask = 0; mask < 16; ++mask) {
    PauliString term = multiply(gb, ge);
    for (int bit = 0; bit < 4; ++bit) {
      if (mask & (1u << bit)) term = multiply(term, *optional_slots[bit]);
    }
    out.terms.push_back(std::move(term));
  }
  validate_bell(out);
  return out;
}

BellOperator lc6_bell() {
  const auto g = named_state_generators(NamedState::LC6);  // g[0] = g1, ...
  BellOperator b = expand_bell(g[4], g[0], g[2], g[1], g[3], g[5], "B_LC6");
  b.generators = g;
  b.notes = "expansion (1+g5) g1 (1+g3)(1+g2) g4 (1+g6)";
  b.display_order = named_state_order(NamedState::LC6);
  return b;
}

BellOperator y6_bell() {
  const auto g = named_state_generators(NamedState::Y6);
  BellOperator b = expand_bell(g[2], g[0], g[4], g[1], g[3], g[5], "B_Y6");
  b.generators = g;
  b.notes =
      "expansion (1+g3) g1 (1+g5)(1+g2) g4 (1+g6); g4 = X2X4x6 (the Z2Z4z6 variant "
      "anticommutes with g1 and does not stabilize the Y6 state)";
  b.display_order = named_state_order(NamedState::Y6);
  return b;
}

BellOperator mermin_ghz6() {
  BellOperator b;
  b.label = "M_GHZ6";
  b.notes =
      "full-correlation X/Y stabilizer elements of GHZ6, signed so every term has "
      "expectation +1";
  b.display_order = QubitOrder::identity(6);
  for (unsigned y_mask = 0; y_mask < 64; ++y_mask) {
    const int y_count = std::popcount(y_mask);
    if (y_count & 1) continue;
    std::vector<PauliAxis> axes(6, PauliAxis::X);
    for (int q = 0; q < 6; ++q) {
      if (y_mask & (1u << q)) axes[static_cast<std::size_t>(q)] = PauliAxis::Y;
    }
    const Phase sign = ((y_count / 2) & 1) ? Phase::MinusOne : Phase::PlusOne;
    b.terms.emplace_back(sign, std::move(axes));
  }
  validate_bell(b);
  return b;
}

double quantum_value(const BellOperator& b, const StateVector& s) {
  validate_bell(b);
  double total = 0.0;
  for (const PauliString& t : b.terms) total += expectation(s, t);
  return total;
}

int LhvAssignment::value_for(int qubit, PauliAxis axis) const {
  for (const Entry& e : entries) {
    if (e.qubit == qubit && e.axis == axis) return e.value;
  }
  throw std::invalid_argument("LhvAssignment: no value for qubit " + std::to_string(qubit));
}

namespace {

struct RangeMax {
  double value;
  std::uint64_t argmax;
};

RangeMax scan_assignments(const std::vector<std::uint64_t>& term_masks,
                          const std::vector<double>& term_signs, std::uint64_t lo,
                          std::uint64_t hi) {
  RangeMax best{-static_cast<double>(term_masks.size()) - 1.0, lo};
  for (std::uint64_t m = lo; m < hi; ++m) {
    double value = 0.0;
    for (std::size_t t = 0; t < term_masks.size(); ++t) {
      value += (std::popcount(m & term_masks[t]) & 1) ? -term_signs[t] : term_signs[t];
    }
    if (value > best.value) best = {value, m};
  }
  return best;
}

}  // namespace

LhvSearchResult lhv_search(const BellOperator& b, const LhvOptions& opt) {
  validate_bell(b);
  const int n = static_cast<int>(b.qubit_count());

  // One binary variable per distinct non-identity axis per qubit.
  std::vector<int> var_of(static_cast<std::size_t>(n) * 3, -1);
  std::vector<LhvAssignment::Entry> vars;
  for (const PauliString& t : b.terms) {
    for (int q = 1; q <= n; ++q) {
      const PauliAxis ax = t.axis(q);
      if (ax == PauliAxis::I) continue;
      auto& slot = var_of[static_cast<std::size_t>(q - 1) * 3 +
                          (static_cast<std::size_t>(ax) - 1)];
      if (slot < 0) {
        slot = static_cast<int>(vars.size());
        vars.push_back({q, ax, +1});
      }
    }
  }
  const std::size_t bits = vars.size();
  if (bits >= 63 || (std::uint64_t{1} << bits) > opt.assignment_cap) {
    std::ostringstream msg;
    msg << "lhv_search: assignment space 2^" << bits << " exceeds cap " << opt.assignment_cap
        << " (raise the cap to search anyway)";
    throw CapExceeded(msg.str());
  }
  const std::uint64_t space = std::uint64_t{1} << bits;

  std::vector<std::uint64_t> term_masks;
  std::vector<double> term_signs;
  term_masks.reserve(b.terms.size());
  for (const PauliString& t : b.terms) {
    std::uint64_t mask = 0;
    for (int q = 1; q <= n; ++q) {
      const PauliAxis ax = t.axis(q);
      if (ax == PauliAxis::I) continue;
      mask |= std::uint64_t{1} << var_of[static_cast<std::size_t>(q - 1) * 3 +
                                         (static_cast<std::size_t>(ax) - 1)];
    }
    term_masks.push_back(mask);
    term_signs.push_back(t.phase() == Phase::MinusOne ? -1.0 : 1.0);
  }

  unsigned workers = opt.worker_count ? opt.worker_count : std::thread::hardware_concurrency();
  if (workers < 1) workers = 1;
  RangeMax best{0.0, 0};
  if (space >= opt.parallel_threshold && workers > 1) {
    const std::uint64_t chunk = (space + workers - 1) / workers;
    std::vector<std::future<RangeMax>> futures;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min(space, lo + chunk);
      if (lo >= hi) break;
      futures.push_back(std::async(std::launch::async, scan_assignments,
                                   std::cref(term_masks), std::cref(term_signs), lo, hi));
    }
    best = futures.front().get();
    for (std::size_t i = 1; i < futures.size(); ++i) {
      const RangeMax r = futures[i].get();
      if (r.value > best.value) best = r;
    }
  } else {
    best = scan_assignments(term_masks, term_signs, 0, space);
  }

  LhvSearchResult result;
  result.best_value = best.value;
  result.assignments_searched = space;
  result.best_assignment.entries = vars;
  for (std::size_t v = 0; v < bits; ++v) {
    result.best_assignment.entries[v].value = (best.argmax >> v) & 1 ? -1 : +1;
  }
  return result;
}

double lhv_bound(const BellOperator& b, const LhvOptions& opt) {
  return lhv_search(b, opt).best_value;
}

double evaluate_lhv(const BellOperator& b, const LhvAssignment& assignment) {
  validate_bell(b);
  const int n = static_cast<int>(b.qubit_count());
  double total = 0.0;
  for (const PauliString& t : b.terms) {
    double product = t.phase() == Phase::MinusOne ? -1.0 : 1.0;
    for (int q = 1; q <= n; ++q) {
      const PauliAxis ax = t.axis(q);
      if (ax != PauliAxis::I) product *= assignment.value_for(q, ax);
    }
    total += product;
  }
  return total;
}

double violation_ratio(const BellOperator& b, const StateVector& s) {
  if (!b.lhv_bound) {
    throw std::invalid_argument("violation_ratio: lhv_bound has not been computed");
  }
  if (*b.lhv_bound <= 0.0) throw std::invalid_argument("violation_ratio: non-positive bound");
  return quantum_value(b, s) / *b.lhv_bound;
}

void write_bell(std::ostream& out, const BellOperator& b,
                const std::optional<QubitOrder>& order) {
  validate_bell(b);
  const QubitOrder display =
      order ? *order : (b.display_order ? *b.display_order : QubitOrder::identity(b.qubit_count()));
  out << "label " << b.label << "\n";
  out << "order " << display.str() << "\n";
  if (b.lhv_bound) out << "lhv_bound " << *b.lhv_bound << "\n";
  if (!b.notes.empty()) out << "notes " << b.notes << "\n";
  for (const PauliString& g : b.generators) {
    out << "gen " << format_observable(g, display) << "\n";
  }
  for (const PauliString& t : b.terms) {
    out << "term " << format_observable(t, display) << "\n";
  }
}

BellOperator read_bell(std::istream& in) {
  BellOperator b;
  std::optional<QubitOrder> order;
  std::vector<std::string> gen_tokens;
  std::vector<std::string> term_tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
    if (key == "label") {
      b.label = value;
    } else if (key == "order") {
      order = QubitOrder::parse(value);
    } else if (key == "lhv_bound") {
      b.lhv_bound = std::stod(value);
    } else if (key == "notes") {
      b.notes = value;
    } else if (key == "gen") {
      gen_tokens.push_back(value);
    } else if (key == "term") {
      term_tokens.push_back(value);
    } else {
      throw std::invalid_argument("read_bell: unknown key '" + key + "'");
    }
  }
  if (!order) throw std::invalid_argument("read_bell: missing order line");
  if (term_tokens.empty()) throw std::invalid_argument("read_bell: no terms");
  for (const auto& tok : gen_tokens) b.generators.push_back(parse_observable(tok, *order));
  for (const auto& tok : term_tokens) b.terms.push_back(parse_observable(tok, *order));
  b.display_order = *order;
  validate_bell(b);
  return b;
}

}  // namespace graphbell
