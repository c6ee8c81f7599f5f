#include "graphbell/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphbell/bell.hpp"
#include "graphbell/experiment.hpp"
#include "graphbell/fidelity.hpp"
#include "graphbell/noise.hpp"
#include "graphbell/pauli.hpp"
#include "graphbell/state.hpp"

namespace graphbell::cli {

namespace {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string state_name;
  std::string graph_path;
  std::string operator_name;
  std::string order_text;
  std::string format = "human";
  std::string grid_text = "0,1,11";
  std::string in_path;
  std::string out_path;
  double bound = 4.0;
  double retention = 1.0;
  double mean_events = 400.0;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t cap = LhvOptions{}.assignment_cap;
  bool dump_group = false;
};

/// Document sink: --out file when given, the session stream otherwise.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw FileError("cannot open output file: " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string fmt(double v, int precision = 12) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << v;
  return ss.str();
}

struct LoadedState {
  std::string label;
  StateVector vec;
  std::vector<PauliString> generators;
  QubitOrder order;
};

LoadedState load_graph_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open graph file: " + path);
  try {
    GraphSpec g = GraphSpec::read(in);
    return LoadedState{"graph[" + path + "]", graph_state(g), stabilizer_generators(g),
                       QubitOrder::identity(static_cast<std::size_t>(g.n))};
  } catch (const std::exception& e) {
    throw FileError("malformed graph file '" + path + "': " + e.what());
  }
}

LoadedState load_named_state(const std::string& name) {
  const auto named = named_state_from_string(name);
  if (!named) throw std::invalid_argument("unknown state name: " + name);
  return LoadedState{std::string(to_string(*named)), build_named_state(*named),
                     named_state_generators(*named), named_state_order(*named)};
}

LoadedState load_state(const Options& o, const std::string& fallback_name) {
  if (!o.graph_path.empty()) return load_graph_state(o.graph_path);
  if (!o.state_name.empty()) return load_named_state(o.state_name);
  if (!fallback_name.empty()) return load_named_state(fallback_name);
  throw CLI::RequiredError("--state or --graph");
}

BellOperator build_operator(const std::string& name) {
  if (name == "lc6") return lc6_bell();
  if (name == "y6") return y6_bell();
  if (name == "mermin") return mermin_ghz6();
  throw std::invalid_argument("unknown operator name: " + name);
}

std::string default_state_for(const std::string& operator_name) {
  if (operator_name == "lc6") return "lc6";
  if (operator_name == "y6") return "y6";
  return "ghz6";
}

QubitOrder pick_order(const Options& o, const QubitOrder& fallback) {
  if (o.order_text.empty()) return fallback;
  return QubitOrder::parse(o.order_text);
}

QubitOrder operator_order(const Options& o, const BellOperator& b) {
  return pick_order(o, b.display_order ? *b.display_order : QubitOrder::identity(b.qubit_count()));
}

LhvOptions lhv_options(const Options& o) {
  LhvOptions opt;
  opt.assignment_cap = o.cap;
  return opt;
}

struct GridSpec {
  double p_min = 0.0;
  double p_max = 1.0;
  int steps = 11;
};

GridSpec parse_grid(const std::string& text) {
  std::istringstream in(text);
  GridSpec grid;
  char c1 = 0;
  char c2 = 0;
  if (!(in >> grid.p_min >> c1 >> grid.p_max >> c2 >> grid.steps) || c1 != ',' || c2 != ',' ||
      !in.eof()) {
    throw CLI::ValidationError("--grid", "expected p_min,p_max,steps");
  }
  if (!(grid.p_min >= 0.0 && grid.p_max <= 1.0 && grid.p_min < grid.p_max)) {
    throw CLI::ValidationError("--grid", "bounds must satisfy 0 <= p_min < p_max <= 1");
  }
  if (grid.steps < 2) throw CLI::ValidationError("--grid", "need at least 2 steps");
  return grid;
}

// ---- subcommand bodies ----------------------------------------------------

void cmd_state_verify(const Options& o, std::ostream& session_out) {
  const LoadedState loaded = load_state(o, "");
  const QubitOrder order = pick_order(o, loaded.order);
  const int n = qubit_count(loaded.vec);

  std::vector<std::string> tokens;
  std::vector<double> values;
  bool all_stabilized = true;
  for (const PauliString& g : loaded.generators) {
    tokens.push_back(format_observable(g, order));
    values.push_back(expectation(loaded.vec, g));
    if (std::abs(values.back() - 1.0) > 1e-9) all_stabilized = false;
  }

  std::ostream& out = session_out;
  if (o.format == "csv") {
    out << "generator,expectation\n";
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      out << tokens[i] << ',' << fmt(values[i]) << '\n';
    }
    return;
  }
  if (o.format == "structured") {
    out << "state=" << loaded.label << '\n';
    out << "qubits=" << n << '\n';
    out << "order=" << order.str() << '\n';
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      out << "generator=" << tokens[i] << " expectation=" << fmt(values[i]) << '\n';
    }
    out << "eigenstate=" << (all_stabilized ? "true" : "false") << '\n';
    return;
  }
  out << "state " << loaded.label << " (" << n << " qubits), order " << order.str() << "\n";
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out << "  g" << (i + 1) << "  " << tokens[i] << "  " << fmt(values[i]) << '\n';
  }
  out << (all_stabilized ? "stabilizer eigenstate: yes" : "stabilizer eigenstate: NO") << " ("
      << tokens.size() << " generators checked)\n";
}

void cmd_bell_expand(const Options& o, std::ostream& session_out) {
  const BellOperator b = build_operator(o.operator_name);
  const QubitOrder order = operator_order(o, b);
  OutputTarget target(o.out_path, session_out);
  std::ostream& out = target.stream();

  if (o.format == "structured") {
    write_bell(out, b, order);
    return;
  }
  if (o.format == "csv") {
    out << "index,observable\n";
    for (std::size_t i = 0; i < b.terms.size(); ++i) {
      out << (i + 1) << ',' << format_observable(b.terms[i], order) << '\n';
    }
    return;
  }
  out << "operator " << b.label << ": " << b.terms.size() << " terms on " << b.qubit_count()
      << " qubits, order " << order.str() << '\n';
  if (!b.notes.empty()) out << "  " << b.notes << '\n';
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    out << std::setw(4) << (i + 1) << "  " << format_observable(b.terms[i], order) << '\n';
  }
}

void cmd_bell_eval(const Options& o, std::ostream& session_out) {
  BellOperator b = build_operator(o.operator_name);
  const LoadedState loaded = load_state(o, default_state_for(o.operator_name));
  const double value = quantum_value(b, loaded.vec);
  const LhvSearchResult search = lhv_search(b, lhv_options(o));
  b.lhv_bound = search.best_value;
  const double ratio = value / search.best_value;

  std::ostream& out = session_out;
  if (o.format == "structured") {
    out << "operator=" << b.label << '\n';
    out << "state=" << loaded.label << '\n';
    out << "quantum_value=" << fmt(value) << '\n';
    out << "lhv_bound=" << fmt(search.best_value) << '\n';
    out << "assignments=" << search.assignments_searched << '\n';
    out << "ratio_d=" << fmt(ratio) << '\n';
    return;
  }
  out << "operator " << b.label << " on state " << loaded.label << '\n';
  out << "  quantum value  " << fmt(value) << '\n';
  out << "  LHV bound      " << fmt(search.best_value) << "  (" << search.assignments_searched
      << " assignments searched)\n";
  out << "  ratio D        " << fmt(ratio) << '\n';
}

void cmd_noise_sweep(const Options& o, std::ostream& session_out) {
  const GridSpec grid = parse_grid(o.grid_text);
  const BellOperator b = build_operator(o.operator_name);
  const LoadedState loaded = load_state(o, default_state_for(o.operator_name));
  const std::vector<double> ideal = ideal_term_values(b, loaded.vec);
  const DecayCurve curve = sweep_uniform(b, ideal, grid.p_min, grid.p_max, grid.steps);

  OutputTarget target(o.out_path, session_out);
  std::ostream& out = target.stream();
  if (o.format == "human") {
    double noiseless = 0.0;
    for (double v : ideal) noiseless += v;
    out << "operator " << b.label << " on state " << loaded.label << ", noiseless value "
        << fmt(noiseless) << '\n';
    out << "  p        value        normalized\n";
    for (const auto& s : curve.samples) {
      out << "  " << std::left << std::setw(9) << fmt(s.p, 6) << std::setw(13) << fmt(s.value, 9)
          << fmt(s.value / noiseless, 9) << std::right << '\n';
    }
    return;
  }
  write_csv(out, curve);
}

void cmd_noise_threshold(const Options& o, std::ostream& session_out) {
  BellOperator b = build_operator(o.operator_name);
  const LoadedState loaded = load_state(o, default_state_for(o.operator_name));
  const std::vector<double> ideal = ideal_term_values(b, loaded.vec);
  const LhvSearchResult search = lhv_search(b, lhv_options(o));
  b.lhv_bound = search.best_value;
  const ThresholdResult threshold = violation_threshold(b, ideal);

  std::ostream& out = session_out;
  if (o.format == "structured") {
    out << "operator=" << b.label << '\n';
    out << "bound=" << fmt(threshold.bound) << '\n';
    out << "p_star=" << fmt(threshold.p_star) << '\n';
    out << "iterations=" << threshold.iterations << '\n';
    return;
  }
  out << "operator " << b.label << " on state " << loaded.label << '\n';
  out << "  LHV bound          " << fmt(threshold.bound) << '\n';
  out << "  threshold p*       " << fmt(threshold.p_star) << '\n';
  out << "  value at p*        " << fmt(threshold.value_at_p_star) << '\n';
  out << "  bisection steps    " << threshold.iterations << '\n';
}

void cmd_fidelity(const Options& o, std::ostream& session_out) {
  if (!(o.retention >= 0.0 && o.retention <= 1.0)) {
    throw std::invalid_argument("fidelity: retention --p must lie in [0,1]");
  }
  const LoadedState loaded = load_state(o, "");
  const StabilizerGroup group = StabilizerGroup::from_generators(loaded.generators);
  const QubitOrder order = pick_order(o, loaded.order);

  std::ostream& out = session_out;
  if (o.dump_group) {
    write_group(out, group, order);
    return;
  }
  const double fidelity = o.retention < 1.0 ? fidelity_under_depolarizing(group, o.retention)
                                            : exact_fidelity(loaded.vec, group);
  const bool gme = gme_check(fidelity);
  if (o.format == "structured") {
    out << "state=" << loaded.label << '\n';
    out << "p=" << fmt(o.retention) << '\n';
    out << "fidelity=" << fmt(fidelity) << '\n';
    out << "gme=" << (gme ? "true" : "false") << '\n';
    return;
  }
  out << "state " << loaded.label << " (" << group.qubit_count() << " qubits, group order "
      << group.size() << ")\n";
  if (o.retention < 1.0) out << "  uniform depolarizing retention p = " << fmt(o.retention) << '\n';
  out << "  fidelity F = " << fmt(fidelity) << '\n';
  out << "  genuine multipartite entanglement (F > 1/2): " << (gme ? "yes" : "no") << '\n';
}

void cmd_experiment_simulate(const Options& o, std::ostream& session_out) {
  const BellOperator b = build_operator(o.operator_name);
  const LoadedState loaded = load_state(o, default_state_for(o.operator_name));
  const QubitOrder order = operator_order(o, b);
  const auto noise = DepolarizingNoise::uniform(o.retention, qubit_count(loaded.vec));
  const std::vector<MeasurementRecord> records =
      simulate_operator(loaded.vec, noise, b, o.mean_events, o.seed);

  OutputTarget target(o.out_path, session_out);
  std::ostream& out = target.stream();
  if (o.format == "human") {
    out << "operator " << b.label << " on state " << loaded.label << ": " << records.size()
        << " settings, mean events " << fmt(o.mean_events) << ", p " << fmt(o.retention)
        << ", seed " << o.seed << '\n';
    for (const MeasurementRecord& r : records) {
      out << "  " << format_observable(r.term, order) << "  " << std::setw(12) << fmt(r.estimate, 6)
          << " +/- " << fmt(r.sigma, 6) << "  (" << *r.events << " events)\n";
    }
    return;
  }
  write_records_csv(out, records, order);
}

TableDocument ingest_file(const Options& o) {
  if (o.in_path.empty()) throw CLI::RequiredError("--in");
  std::ifstream in(o.in_path);
  if (!in) throw FileError("cannot open input file: " + o.in_path);
  std::optional<QubitOrder> declared;
  if (!o.order_text.empty()) declared = QubitOrder::parse(o.order_text);
  try {
    return ingest_table(in, std::move(declared));
  } catch (const std::exception& e) {
    throw FileError("malformed table '" + o.in_path + "': " + e.what());
  }
}

void cmd_experiment_ingest(const Options& o, std::ostream& session_out) {
  const TableDocument doc = ingest_file(o);
  OutputTarget target(o.out_path, session_out);
  std::ostream& out = target.stream();
  if (o.format == "human") {
    out << "records " << doc.records.size() << '\n';
    if (doc.order) out << "order " << doc.order->str() << '\n';
    double sum = 0.0;
    for (const MeasurementRecord& r : doc.records) sum += r.estimate;
    out << "sum of estimates " << fmt(sum) << '\n';
    return;
  }
  if (doc.records.empty()) return;
  write_records_csv(out, doc.records, *doc.order);
}

void cmd_experiment_aggregate(const Options& o, std::ostream& session_out) {
  const TableDocument doc = ingest_file(o);
  std::optional<BellOperator> reference;
  if (!o.operator_name.empty()) reference = build_operator(o.operator_name);
  const BellAggregate agg =
      aggregate_bell(doc.records, o.bound, reference ? &*reference : nullptr);

  OutputTarget target(o.out_path, session_out);
  std::ostream& out = target.stream();
  if (o.format == "json") {
    nlohmann::json j;
    j["records"] = agg.record_count;
    j["value"] = agg.value;
    j["sigma"] = agg.sigma;
    j["bound"] = agg.bound;
    j["sigmas_above"] = agg.sigmas_above;
    j["D"] = agg.ratio_d;
    j["sigma_D"] = agg.sigma_d;
    out << j.dump(2) << '\n';
    return;
  }
  if (o.format == "structured") {
    out << "records=" << agg.record_count << '\n';
    out << "value=" << fmt(agg.value) << '\n';
    out << "sigma=" << fmt(agg.sigma) << '\n';
    out << "bound=" << fmt(agg.bound) << '\n';
    out << "sigmas_above=" << fmt(agg.sigmas_above) << '\n';
    out << "D=" << fmt(agg.ratio_d) << '\n';
    out << "sigma_D=" << fmt(agg.sigma_d) << '\n';
    return;
  }
  out << "records        " << agg.record_count << '\n';
  out << "value          " << fmt(agg.value, 6) << " +/- " << fmt(agg.sigma, 6) << '\n';
  out << "bound          " << fmt(agg.bound, 6) << '\n';
  out << "sigmas above   " << fmt(agg.sigmas_above, 6) << '\n';
  out << "ratio D        " << fmt(agg.ratio_d, 6) << " +/- " << fmt(agg.sigma_d, 6) << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"stabilizer Bell-inequality analysis on small graph states"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> state_names{"lc4", "lc6", "y6", "ghz6"};
  const std::vector<std::string> operator_names{"lc6", "y6", "mermin"};

  auto add_state_options = [&](CLI::App* cmd) {
    auto* s = cmd->add_option("--state", o.state_name, "Named state")->check(CLI::IsMember(state_names));
    auto* g = cmd->add_option("--graph", o.graph_path, "Graph file: qubit count, then one edge per line");
    s->excludes(g);
    g->excludes(s);
  };
  auto add_order_option = [&](CLI::App* cmd) {
    cmd->add_option("--order", o.order_text, "Display qubit order, e.g. 5-1-3-2-4-6");
  };
  auto add_format_option = [&](CLI::App* cmd, const std::vector<std::string>& choices,
                               const std::string& default_format) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember(choices))
        ->default_str(default_format);
  };
  // The Options object is shared across subcommands, so per-command format
  // defaults are applied at callback time, not at registration time.
  auto format_or = [&o](CLI::App* cmd, const char* default_format) {
    if (cmd->count("--format") == 0) o.format = default_format;
  };
  auto add_operator_option = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--operator", o.operator_name, "Bell operator: lc6, y6, or mermin")
                    ->check(CLI::IsMember(operator_names));
    if (required) opt->required();
  };
  auto add_cap_option = [&](CLI::App* cmd) {
    cmd->add_option("--cap", o.cap, "LHV assignment-space cap")->envname("GRAPHBELL_LHV_CAP");
  };
  auto add_out_option = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out_path, "Write the document to this file instead of stdout");
  };

  auto* state_cmd = app.add_subcommand("state", "Graph-state construction and verification");
  state_cmd->require_subcommand(1);
  auto* verify = state_cmd->add_subcommand("verify", "Check generator expectations on the state");
  add_state_options(verify);
  add_order_option(verify);
  add_format_option(verify, {"human", "csv", "structured"}, "human");
  verify->callback([&] {
    format_or(verify, "human");
    cmd_state_verify(o, out);
  });

  auto* bell_cmd = app.add_subcommand("bell", "Bell operator expansion and evaluation");
  bell_cmd->require_subcommand(1);
  auto* expand = bell_cmd->add_subcommand("expand", "List the operator's signed terms");
  add_operator_option(expand, true);
  add_order_option(expand);
  add_format_option(expand, {"human", "csv", "structured"}, "human");
  add_out_option(expand);
  expand->callback([&] {
    format_or(expand, "human");
    cmd_bell_expand(o, out);
  });

  auto* eval = bell_cmd->add_subcommand("eval", "Quantum value, LHV bound, and ratio D");
  add_operator_option(eval, true);
  add_state_options(eval);
  add_order_option(eval);
  add_format_option(eval, {"human", "structured"}, "human");
  add_cap_option(eval);
  eval->callback([&] {
    format_or(eval, "human");
    cmd_bell_eval(o, out);
  });

  auto* noise_cmd = app.add_subcommand("noise", "Depolarizing-noise analysis");
  noise_cmd->require_subcommand(1);
  auto* sweep = noise_cmd->add_subcommand("sweep", "Bell value vs uniform retention p");
  add_operator_option(sweep, true);
  add_state_options(sweep);
  sweep->add_option("--grid", o.grid_text, "p_min,p_max,steps")->default_str("0,1,11");
  add_format_option(sweep, {"csv", "human"}, "csv");
  add_out_option(sweep);
  sweep->callback([&] {
    format_or(sweep, "csv");
    cmd_noise_sweep(o, out);
  });

  auto* threshold = noise_cmd->add_subcommand("threshold", "Retention p* where the violation vanishes");
  add_operator_option(threshold, true);
  add_state_options(threshold);
  add_format_option(threshold, {"human", "structured"}, "human");
  add_cap_option(threshold);
  threshold->callback([&] {
    format_or(threshold, "human");
    cmd_noise_threshold(o, out);
  });

  auto* fidelity = app.add_subcommand("fidelity", "Exact fidelity and the F > 1/2 GME check");
  add_state_options(fidelity);
  add_order_option(fidelity);
  fidelity->add_option("--p", o.retention, "Uniform depolarizing retention")->default_str("1");
  fidelity->add_flag("--dump-group", o.dump_group, "List all stabilizer-group elements with weights");
  add_format_option(fidelity, {"human", "structured"}, "human");
  fidelity->callback([&] {
    format_or(fidelity, "human");
    cmd_fidelity(o, out);
  });

  auto* experiment_cmd = app.add_subcommand("experiment", "Counting-statistics simulation and tables");
  experiment_cmd->require_subcommand(1);
  auto* simulate = experiment_cmd->add_subcommand("simulate", "Monte Carlo run over all operator settings");
  add_operator_option(simulate, true);
  add_state_options(simulate);
  add_order_option(simulate);
  simulate->add_option("--p", o.retention, "Uniform depolarizing retention")->default_str("1");
  simulate->add_option("--events", o.mean_events, "Mean Poisson events per setting")->default_str("400");
  simulate->add_option("--seed", o.seed, "Master seed")->default_str(std::to_string(kDefaultSeed));
  add_format_option(simulate, {"csv", "human"}, "csv");
  add_out_option(simulate);
  simulate->callback([&] {
    format_or(simulate, "csv");
    cmd_experiment_simulate(o, out);
  });

  auto* ingest = experiment_cmd->add_subcommand("ingest", "Validate and normalize a measurement table");
  ingest->add_option("--in", o.in_path, "Input CSV")->required();
  add_order_option(ingest);
  add_format_option(ingest, {"csv", "human"}, "csv");
  add_out_option(ingest);
  ingest->callback([&] {
    format_or(ingest, "csv");
    cmd_experiment_ingest(o, out);
  });

  auto* aggregate = experiment_cmd->add_subcommand("aggregate", "Error-propagated Bell aggregate");
  aggregate->add_option("--in", o.in_path, "Input CSV")->required();
  aggregate->add_option("--bound", o.bound, "LHV bound to compare against")->default_str("4");
  add_operator_option(aggregate, false);
  add_order_option(aggregate);
  add_format_option(aggregate, {"human", "structured", "json"}, "human");
  add_out_option(aggregate);
  aggregate->callback([&] {
    format_or(aggregate, "human");
    cmd_experiment_aggregate(o, out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFile;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace graphbell::cli
