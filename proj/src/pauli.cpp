#include "graphbell/pauli.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace graphbell {

namespace {

constexpr std::size_t kMaxQubits = 64;  // lowercase flags live in one word

// sigma_a * sigma_b = i^k sigma_c, encoded as (k << 2) | c.
constexpr std::uint8_t kProductTable[4][4] = {
    // b:  I           X           Y           Z
    {0x0 | 0, 0x0 | 1, 0x0 | 2, 0x0 | 3},  // a = I
    {0x0 | 1, 0x0 | 0, 0x4 | 3, 0xC | 2},  // a = X   (XY=+iZ, XZ=-iY)
    {0x0 | 2, 0xC | 3, 0x0 | 0, 0x4 | 1},  // a = Y   (YX=-iZ, YZ=+iX)
    {0x0 | 3, 0x4 | 2, 0xC | 1, 0x0 | 0},  // a = Z   (ZX=+iY, ZY=-iX)
};

void require_same_length(const PauliString& a, const PauliString& b, const char* what) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << what << ": length mismatch (" << a.size() << " vs " << b.size() << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

std::complex<double> phase_value(Phase p) noexcept {
  switch (p) {
    case Phase::PlusOne:
      return {1.0, 0.0};
    case Phase::PlusI:
      return {0.0, 1.0};
    case Phase::MinusOne:
      return {-1.0, 0.0};
    case Phase::MinusI:
      return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

std::string phase_str(Phase p) {
  switch (p) {
    case Phase::PlusOne:
      return "+1";
    case Phase::PlusI:
      return "+i";
    case Phase::MinusOne:
      return "-1";
    case Phase::MinusI:
      return "-i";
  }
  return "+1";
}

PauliString::PauliString(std::size_t n)
    : phase_(Phase::PlusOne), axes_(n, PauliAxis::I), lowercase_(0) {
  if (n == 0 || n > kMaxQubits) throw std::invalid_argument("PauliString: bad qubit count");
}

PauliString::PauliString(Phase phase, std::vector<PauliAxis> axes, std::uint64_t lowercase_mask)
    : phase_(phase), axes_(std::move(axes)), lowercase_(lowercase_mask) {
  if (axes_.empty() || axes_.size() > kMaxQubits) {
    throw std::invalid_argument("PauliString: bad qubit count");
  }
}

PauliString PauliString::identity(std::size_t n) { return PauliString(n); }

PauliString PauliString::from_sites(std::size_t n, std::initializer_list<SiteOp> sites,
                                    Phase phase) {
  std::vector<PauliAxis> axes(n, PauliAxis::I);
  std::uint64_t lower = 0;
  for (const SiteOp& s : sites) {
    if (s.qubit < 1 || static_cast<std::size_t>(s.qubit) > n) {
      throw std::invalid_argument("PauliString::from_sites: qubit out of range");
    }
    PauliAxis ax;
    switch (s.op) {
      case 'I': case 'i': ax = PauliAxis::I; break;
      case 'X': case 'x': ax = PauliAxis::X; break;
      case 'Y': case 'y': ax = PauliAxis::Y; break;
      case 'Z': case 'z': ax = PauliAxis::Z; break;
      default:
        throw std::invalid_argument(std::string("PauliString::from_sites: bad operator '") +
                                    s.op + "'");
    }
    axes[static_cast<std::size_t>(s.qubit - 1)] = ax;
    if (s.op >= 'a' && s.op <= 'z') lower |= std::uint64_t{1} << (s.qubit - 1);
  }
  return PauliString(phase, std::move(axes), lower);
}

PauliAxis PauliString::axis(int qubit) const {
  if (qubit < 1 || static_cast<std::size_t>(qubit) > axes_.size()) {
    throw std::out_of_range("PauliString::axis: qubit out of range");
  }
  return axes_[static_cast<std::size_t>(qubit - 1)];
}

bool PauliString::is_identity() const noexcept {
  return std::all_of(axes_.begin(), axes_.end(), [](PauliAxis a) { return a == PauliAxis::I; });
}

bool PauliString::lowercase_at(int qubit) const {
  if (qubit < 1 || static_cast<std::size_t>(qubit) > axes_.size()) {
    throw std::out_of_range("PauliString::lowercase_at: qubit out of range");
  }
  return (lowercase_ >> (qubit - 1)) & 1u;
}

PauliString PauliString::with_phase_factor(Phase factor) const {
  return PauliString(phase_ * factor, axes_, lowercase_);
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_length(a, b, "multiply");
  const std::size_t n = a.size();
  std::vector<PauliAxis> axes(n);
  unsigned k = static_cast<unsigned>(a.phase()) + static_cast<unsigned>(b.phase());
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint8_t entry = kProductTable[static_cast<unsigned>(a.axes()[q])]
                                            [static_cast<unsigned>(b.axes()[q])];
    axes[q] = static_cast<PauliAxis>(entry & 0x3u);
    k += entry >> 2;
  }
  // Display case is a per-qubit property shared by both operands in practice.
  return PauliString(static_cast<Phase>(k & 3u), std::move(axes),
                     a.lowercase_mask() | b.lowercase_mask());
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_length(a, b, "commutes");
  int anti = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    const PauliAxis ax = a.axes()[q];
    const PauliAxis bx = b.axes()[q];
    if (ax != PauliAxis::I && bx != PauliAxis::I && ax != bx) ++anti;
  }
  return (anti & 1) == 0;
}

int weight(const PauliString& p) noexcept {
  return static_cast<int>(
      std::count_if(p.axes().begin(), p.axes().end(), [](PauliAxis a) { return a != PauliAxis::I; }));
}

QubitOrder QubitOrder::identity(std::size_t n) {
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i) + 1;
  return QubitOrder(std::move(perm));
}

QubitOrder QubitOrder::parse(std::string_view text) {
  std::vector<int> perm;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && text[j] != '-') ++j;
    const std::string part(text.substr(i, j - i));
    if (part.empty()) throw std::invalid_argument("QubitOrder: empty component in '" +
                                                  std::string(text) + "'");
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("QubitOrder: bad component '" + part + "'");
    }
    if (used != part.size()) throw std::invalid_argument("QubitOrder: bad component '" + part + "'");
    perm.push_back(value);
    i = j + 1;
  }
  return QubitOrder(std::move(perm));
}

QubitOrder::QubitOrder(std::vector<int> display_to_qubit)
    : display_to_qubit_(std::move(display_to_qubit)) {
  const std::size_t n = display_to_qubit_.size();
  if (n == 0 || n > 64) throw std::invalid_argument("QubitOrder: bad size");
  std::vector<bool> seen(n, false);
  for (int q : display_to_qubit_) {
    if (q < 1 || static_cast<std::size_t>(q) > n || seen[static_cast<std::size_t>(q - 1)]) {
      throw std::invalid_argument("QubitOrder: not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(q - 1)] = true;
  }
}

int QubitOrder::qubit_at(std::size_t pos) const {
  if (pos >= display_to_qubit_.size()) throw std::out_of_range("QubitOrder::qubit_at");
  return display_to_qubit_[pos];
}

std::string QubitOrder::str() const {
  std::string out;
  for (std::size_t i = 0; i < display_to_qubit_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(display_to_qubit_[i]);
  }
  return out;
}

PauliString parse_observable(std::string_view token, const QubitOrder& order) {
  Phase phase = Phase::PlusOne;
  std::string_view rest = token;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    if (rest.front() == '-') phase = Phase::MinusOne;
    rest.remove_prefix(1);
  } else if (rest.size() >= 3 && rest.substr(0, 3) == "\xE2\x88\x92") {
    phase = Phase::MinusOne;  // U+2212 minus sign
    rest.remove_prefix(3);
  }
  const std::size_t n = order.size();
  if (rest.size() != n) {
    throw std::invalid_argument("parse_observable: token '" + std::string(token) + "' has " +
                                std::to_string(rest.size()) + " letters, expected " +
                                std::to_string(n));
  }
  std::vector<PauliAxis> axes(n, PauliAxis::I);
  std::uint64_t lower = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const char c = rest[pos];
    PauliAxis ax;
    switch (c) {
      case 'I': case 'i': ax = PauliAxis::I; break;
      case 'X': case 'x': ax = PauliAxis::X; break;
      case 'Y': case 'y': ax = PauliAxis::Y; break;
      case 'Z': case 'z': ax = PauliAxis::Z; break;
      default:
        throw std::invalid_argument("parse_observable: invalid character '" + std::string(1, c) +
                                    "' in token '" + std::string(token) + "'");
    }
    const int qubit = order.qubit_at(pos);
    axes[static_cast<std::size_t>(qubit - 1)] = ax;
    if (c >= 'a' && c <= 'z') lower |= std::uint64_t{1} << (qubit - 1);
  }
  return PauliString(phase, std::move(axes), lower);
}

std::string format_observable(const PauliString& p, const QubitOrder& order) {
  if (p.size() != order.size()) {
    throw std::invalid_argument("format_observable: string/order length mismatch");
  }
  if (!p.is_hermitian()) {
    throw std::invalid_argument("format_observable: phase " + phase_str(p.phase()) +
                                " cannot be expressed in a signed token");
  }
  std::string out;
  if (p.phase() == Phase::MinusOne) out += '-';
  static constexpr char kUpper[] = {'I', 'X', 'Y', 'Z'};
  static constexpr char kLower[] = {'i', 'x', 'y', 'z'};
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int qubit = order.qubit_at(pos);
    const auto ax = static_cast<unsigned>(p.axis(qubit));
    out += p.lowercase_at(qubit) ? kLower[ax] : kUpper[ax];
  }
  return out;
}

}  // namespace graphbell
