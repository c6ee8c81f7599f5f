#include "graphbell/state.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace graphbell {

namespace {

int bit_of(std::size_t index, int qubit, int n) {
  return static_cast<int>((index >> (n - qubit)) & 1u);
}

void require_dense_size(int n, const char* what) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw std::invalid_argument(std::string(what) + ": dense backend supports 1.." +
                                std::to_string(kMaxDenseQubits) + " qubits, got " +
                                std::to_string(n));
  }
}

int checked_qubit_count(Eigen::Index dim, const char* what) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument(std::string(what) + ": dimension is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

}  // namespace

GraphSpec::GraphSpec(int n_, std::vector<std::pair<int, int>> edges_) : n(n_) {
  if (n < 1) throw std::invalid_argument("GraphSpec: vertex count must be positive");
  std::set<std::pair<int, int>> normalized;
  for (auto [u, v] : edges_) {
    if (u == v) throw std::invalid_argument("GraphSpec: self-loop at vertex " + std::to_string(u));
    if (u < 1 || u > n || v < 1 || v > n) {
      throw std::invalid_argument("GraphSpec: edge endpoint outside 1.." + std::to_string(n));
    }
    normalized.emplace(std::min(u, v), std::max(u, v));
  }
  edges.assign(normalized.begin(), normalized.end());
}

GraphSpec GraphSpec::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return GraphSpec(n, std::move(edges));
}

GraphSpec GraphSpec::read(std::istream& in) {
  std::optional<int> n;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream row(line);
    std::string first;
    if (!(row >> first) || first[0] == '#') continue;
    if (!n) {
      std::size_t used = 0;
      n = std::stoi(first, &used);
      if (used != first.size()) throw std::invalid_argument("GraphSpec: bad vertex count line");
      int extra;
      if (row >> extra) throw std::invalid_argument("GraphSpec: trailing data on count line");
      continue;
    }
    int u = 0, v = 0;
    std::istringstream pair_row(line);
    if (!(pair_row >> u >> v)) {
      throw std::invalid_argument("GraphSpec: expected 'u v' on line " + std::to_string(lineno));
    }
    edges.emplace_back(u, v);
  }
  if (!n) throw std::invalid_argument("GraphSpec: missing vertex count");
  return GraphSpec(*n, std::move(edges));
}

std::vector<PauliString> stabilizer_generators(const GraphSpec& g) {
  std::vector<std::vector<PauliAxis>> axes(
      static_cast<std::size_t>(g.n),
      std::vector<PauliAxis>(static_cast<std::size_t>(g.n), PauliAxis::I));
  for (int i = 0; i < g.n; ++i) axes[i][i] = PauliAxis::X;
  for (auto [u, v] : g.edges) {
    axes[u - 1][v - 1] = PauliAxis::Z;
    axes[v - 1][u - 1] = PauliAxis::Z;
  }
  std::vector<PauliString> out;
  out.reserve(static_cast<std::size_t>(g.n));
  for (auto& a : axes) out.emplace_back(Phase::PlusOne, std::move(a));
  return out;
}

StateVector graph_state(const GraphSpec& g) {
  require_dense_size(g.n, "graph_state");
  const std::size_t dim = std::size_t{1} << g.n;
  const double norm = std::pow(2.0, -0.5 * g.n);
  StateVector s(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    int parity = 0;
    for (auto [u, v] : g.edges) parity ^= bit_of(idx, u, g.n) & bit_of(idx, v, g.n);
    s[static_cast<Eigen::Index>(idx)] = parity ? -norm : norm;
  }
  return s;
}

std::optional<NamedState> named_state_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "lc4") return NamedState::LC4;
  if (lower == "lc6") return NamedState::LC6;
  if (lower == "y6") return NamedState::Y6;
  if (lower == "ghz6") return NamedState::GHZ6;
  return std::nullopt;
}

std::string_view to_string(NamedState s) {
  switch (s) {
    case NamedState::LC4:
      return "LC4";
    case NamedState::LC6:
      return "LC6";
    case NamedState::Y6:
      return "Y6";
    case NamedState::GHZ6:
      return "GHZ6";
  }
  return "?";
}

int qubit_count(NamedState s) { return s == NamedState::LC4 ? 4 : 6; }

StateVector build_named_state(NamedState which) {
  switch (which) {
    case NamedState::LC4: {
      // 1/2 [ |00>_13 (|00>_24 + |11>_24) + |11>_13 (|00>_24 - |11>_24) ]
      StateVector s = StateVector::Zero(16);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const std::size_t idx =
              static_cast<std::size_t>(a << 3 | b << 2 | a << 1 | b);  // q1 q2 q3 q4
          s[static_cast<Eigen::Index>(idx)] = (a & b) ? -0.5 : 0.5;
        }
      }
      return fix_global_phase(std::move(s));
    }
    case NamedState::LC6: {
      // 1/sqrt(8) { [|00>_51 + |11>_51] |0>_3 [|~0>_2 |00>_46 + |~1>_2 |11>_46]
      //           + [|00>_51 - |11>_51] |1>_3 [|~1>_2 |00>_46 + |~0>_2 |11>_46] }
      // with |~0> = (|0>+|1>)/sqrt(2), |~1> = (|0>-|1>)/sqrt(2) on qubit 2.
      StateVector s = StateVector::Zero(64);
      for (int a = 0; a < 2; ++a) {        // shared value of qubits 5 and 1
        for (int t = 0; t < 2; ++t) {      // shared value of qubits 4 and 6
          for (int u = 0; u < 2; ++u) {    // computational value of qubit 2
            for (int b3 = 0; b3 < 2; ++b3) {
              const std::size_t idx = static_cast<std::size_t>(
                  a << 5 | u << 4 | b3 << 3 | t << 2 | a << 1 | t);
              const int sign_exp = (b3 == 0) ? (t & u) : (a ^ ((1 - t) & u));
              s[static_cast<Eigen::Index>(idx)] += sign_exp ? -0.25 : 0.25;
            }
          }
        }
      }
      return fix_global_phase(std::move(s));
    }
    case NamedState::Y6: {
      // Equal superposition of four basis terms: qubits 1,3,5 share one bit,
      // qubit 2 is free, qubits 4 and 6 carry their XOR.
      StateVector s = StateVector::Zero(64);
      for (int a = 0; a < 2; ++a) {
        for (int t = 0; t < 2; ++t) {
          const int w = a ^ t;
          const std::size_t idx =
              static_cast<std::size_t>(a << 5 | t << 4 | a << 3 | w << 2 | a << 1 | w);
          s[static_cast<Eigen::Index>(idx)] = 0.5;
        }
      }
      return fix_global_phase(std::move(s));
    }
    case NamedState::GHZ6: {
      StateVector s = StateVector::Zero(64);
      const double amp = 1.0 / std::sqrt(2.0);
      s[0] = amp;
      s[63] = amp;
      return fix_global_phase(std::move(s));
    }
  }
  throw std::invalid_argument("build_named_state: unknown state");
}

std::vector<PauliString> named_state_generators(NamedState which) {
  using PS = PauliString;
  switch (which) {
    case NamedState::LC4:
      return {
          PS::from_sites(4, {{1, 'X'}, {3, 'X'}, {2, 'Z'}}),
          PS::from_sites(4, {{2, 'X'}, {4, 'X'}, {1, 'Z'}}),
          PS::from_sites(4, {{1, 'Z'}, {3, 'Z'}}),
          PS::from_sites(4, {{2, 'Z'}, {4, 'Z'}}),
      };
    case NamedState::LC6:
      return {
          PS::from_sites(6, {{5, 'x'}, {1, 'X'}, {3, 'Z'}}),  // g1
          PS::from_sites(6, {{3, 'Z'}, {2, 'X'}, {4, 'Z'}}),  // g2
          PS::from_sites(6, {{1, 'Z'}, {3, 'X'}, {2, 'Z'}}),  // g3
          PS::from_sites(6, {{2, 'Z'}, {4, 'X'}, {6, 'x'}}),  // g4
          PS::from_sites(6, {{5, 'z'}, {1, 'Z'}}),            // g5
          PS::from_sites(6, {{4, 'Z'}, {6, 'z'}}),            // g6
      };
    case NamedState::Y6:
      return {
          PS::from_sites(6, {{1, 'X'}, {3, 'X'}, {2, 'X'}, {5, 'x'}}),  // g1
          PS::from_sites(6, {{1, 'Z'}, {2, 'Z'}, {4, 'Z'}}),            // g2
          PS::from_sites(6, {{1, 'Z'}, {3, 'Z'}}),                      // g3
          PS::from_sites(6, {{2, 'X'}, {4, 'X'}, {6, 'x'}}),            // g4
          PS::from_sites(6, {{1, 'Z'}, {5, 'z'}}),                      // g5
          PS::from_sites(6, {{4, 'Z'}, {6, 'z'}}),                      // g6
      };
    case NamedState::GHZ6: {
      std::vector<PauliString> gens;
      gens.push_back(PS::from_sites(
          6, {{1, 'X'}, {2, 'X'}, {3, 'X'}, {4, 'X'}, {5, 'X'}, {6, 'X'}}));
      for (int i = 1; i < 6; ++i) {
        gens.push_back(PS::from_sites(6, {{i, 'Z'}, {i + 1, 'Z'}}));
      }
      return gens;
    }
  }
  throw std::invalid_argument("named_state_generators: unknown state");
}

QubitOrder named_state_order(NamedState which) {
  switch (which) {
    case NamedState::LC6:
      return QubitOrder::parse("5-1-3-2-4-6");
    case NamedState::Y6:
      return QubitOrder::parse("1-3-2-4-5-6");
    case NamedState::LC4:
      return QubitOrder::identity(4);
    case NamedState::GHZ6:
      return QubitOrder::identity(6);
  }
  throw std::invalid_argument("named_state_order: unknown state");
}

int qubit_count(const StateVector& s) { return checked_qubit_count(s.size(), "StateVector"); }

int qubit_count(const DensityOperator& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("DensityOperator: not square");
  return checked_qubit_count(rho.rows(), "DensityOperator");
}

StateVector fix_global_phase(StateVector s) {
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double mag = std::abs(s[i]);
    if (mag > 1e-12) {
      s *= std::conj(s[i]) / mag;
      break;
    }
  }
  return s;
}

double expectation(const StateVector& s, const PauliString& p) {
  const int n = qubit_count(s);
  if (static_cast<std::size_t>(n) != p.size()) {
    throw std::invalid_argument("expectation: state/string length mismatch");
  }
  if (!p.is_hermitian()) {
    throw std::invalid_argument("expectation: non-Hermitian string (phase " +
                                phase_str(p.phase()) + ")");
  }
  std::uint64_t flip_mask = 0;  // X and Y sites exchange basis states
  std::uint64_t sign_mask = 0;  // Y and Z sites pick up (-1)^bit
  int y_count = 0;
  for (int q = 1; q <= n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - q);
    switch (p.axis(q)) {
      case PauliAxis::I:
        break;
      case PauliAxis::X:
        flip_mask |= bit;
        break;
      case PauliAxis::Y:
        flip_mask |= bit;
        sign_mask |= bit;
        ++y_count;
        break;
      case PauliAxis::Z:
        sign_mask |= bit;
        break;
    }
  }
  const std::size_t dim = std::size_t{1} << n;
  std::complex<double> acc = 0.0;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const double sign = (std::popcount(idx & sign_mask) & 1) ? -1.0 : 1.0;
    acc += std::conj(s[static_cast<Eigen::Index>(idx ^ flip_mask)]) * sign *
           s[static_cast<Eigen::Index>(idx)];
  }
  const std::complex<double> front =
      phase_value(p.phase()) * phase_value(static_cast<Phase>(y_count & 3));
  const std::complex<double> value = front * acc;
  if (std::abs(value.imag()) > 1e-12) {
    throw std::runtime_error("expectation: result has non-negligible imaginary part");
  }
  return value.real();
}

double expectation(const DensityOperator& rho, const PauliString& p) {
  const int n = qubit_count(rho);
  if (static_cast<std::size_t>(n) != p.size()) {
    throw std::invalid_argument("expectation: density/string length mismatch");
  }
  if (!p.is_hermitian()) throw std::invalid_argument("expectation: non-Hermitian string");
  const std::complex<double> value = (rho * pauli_matrix(p)).trace();
  if (std::abs(value.imag()) > 1e-10) {
    throw std::runtime_error("expectation: trace has non-negligible imaginary part");
  }
  return value.real();
}

DensityOperator pauli_matrix(const PauliString& p) {
  const int n = static_cast<int>(p.size());
  require_dense_size(n, "pauli_matrix");
  using Mat2 = Eigen::Matrix2cd;
  const std::complex<double> im(0.0, 1.0);
  Mat2 single[4];
  single[0] << 1, 0, 0, 1;
  single[1] << 0, 1, 1, 0;
  single[2] << 0, -im, im, 0;
  single[3] << 1, 0, 0, -1;
  DensityOperator m = DensityOperator::Identity(1, 1);
  for (int q = 1; q <= n; ++q) {
    m = Eigen::kroneckerProduct(m, single[static_cast<unsigned>(p.axis(q))]).eval();
  }
  return phase_value(p.phase()) * m;
}

DensityOperator pure_density(const StateVector& s) { return s * s.adjoint(); }

}  // namespace graphbell
