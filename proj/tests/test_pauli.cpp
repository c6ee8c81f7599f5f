#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <complex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphbell/pauli.hpp"
#include "test_util.hpp"

using namespace graphbell;
using C = std::complex<double>;

namespace {

// Independent oracle: explicit 2x2 matrices, no shared code with the library.
struct M2 {
  C a, b, c, d;  // [[a, b], [c, d]]
};

M2 axis_matrix(PauliAxis ax) {
  switch (ax) {
    case PauliAxis::I:
      return {1, 0, 0, 1};
    case PauliAxis::X:
      return {0, 1, 1, 0};
    case PauliAxis::Y:
      return {0, C(0, -1), C(0, 1), 0};
    case PauliAxis::Z:
      return {1, 0, 0, -1};
  }
  return {1, 0, 0, 1};
}

M2 matmul(const M2& p, const M2& q) {
  return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c,
          p.c * q.b + p.d * q.d};
}

bool matrix_equals(const M2& p, const M2& q) {
  const auto eq = [](C x, C y) { return std::abs(x - y) < 1e-12; };
  return eq(p.a, q.a) && eq(p.b, q.b) && eq(p.c, q.c) && eq(p.d, q.d);
}

// Decomposes a 2x2 product into (i^k, axis) by searching the 16 candidates.
std::pair<Phase, PauliAxis> decompose(const M2& m) {
  for (unsigned k = 0; k < 4; ++k) {
    const C scalar = phase_value(static_cast<Phase>(k));
    for (unsigned ax = 0; ax < 4; ++ax) {
      const M2 basis = axis_matrix(static_cast<PauliAxis>(ax));
      const M2 scaled{scalar * basis.a, scalar * basis.b, scalar * basis.c, scalar * basis.d};
      if (matrix_equals(m, scaled)) return {static_cast<Phase>(k), static_cast<PauliAxis>(ax)};
    }
  }
  FAIL("product is not i^k times a Pauli matrix");
  return {Phase::PlusOne, PauliAxis::I};
}

PauliString single(PauliAxis ax, Phase phase = Phase::PlusOne) {
  return PauliString(phase, {ax});
}

}  // namespace

TEST_CASE("single-qubit products match the explicit matrix algebra") {
  for (unsigned a = 0; a < 4; ++a) {
    for (unsigned b = 0; b < 4; ++b) {
      const auto ax_a = static_cast<PauliAxis>(a);
      const auto ax_b = static_cast<PauliAxis>(b);
      const PauliString product = multiply(single(ax_a), single(ax_b));
      const auto [want_phase, want_axis] = decompose(matmul(axis_matrix(ax_a), axis_matrix(ax_b)));
      CAPTURE(a);
      CAPTURE(b);
      CHECK(product.phase() == want_phase);
      CHECK(product.axis(1) == want_axis);
    }
  }
}

TEST_CASE("named single-qubit identities") {
  CHECK(multiply(single(PauliAxis::X), single(PauliAxis::Y)) == single(PauliAxis::Z, Phase::PlusI));
  CHECK(multiply(single(PauliAxis::Y), single(PauliAxis::X)) == single(PauliAxis::Z, Phase::MinusI));
  CHECK(multiply(single(PauliAxis::Y), single(PauliAxis::Z)) == single(PauliAxis::X, Phase::PlusI));
  CHECK(multiply(single(PauliAxis::Z), single(PauliAxis::Y)) == single(PauliAxis::X, Phase::MinusI));
  CHECK(multiply(single(PauliAxis::Z), single(PauliAxis::X)) == single(PauliAxis::Y, Phase::PlusI));
  CHECK(multiply(single(PauliAxis::X), single(PauliAxis::Z)) == single(PauliAxis::Y, Phase::MinusI));
  for (unsigned ax = 1; ax < 4; ++ax) {
    const auto p = single(static_cast<PauliAxis>(ax));
    CHECK(multiply(p, p) == single(PauliAxis::I));
  }
}

TEST_CASE("phase arithmetic is the cyclic group of powers of i") {
  for (unsigned a = 0; a < 4; ++a) {
    for (unsigned b = 0; b < 4; ++b) {
      const Phase combined = static_cast<Phase>(a) * static_cast<Phase>(b);
      const C want = phase_value(static_cast<Phase>(a)) * phase_value(static_cast<Phase>(b));
      CHECK(std::abs(phase_value(combined) - want) < 1e-12);
    }
  }
  CHECK(is_real(Phase::PlusOne));
  CHECK(is_real(Phase::MinusOne));
  CHECK_FALSE(is_real(Phase::PlusI));
  CHECK_FALSE(is_real(Phase::MinusI));
  CHECK(phase_str(Phase::PlusI) == "+i");
  CHECK(phase_str(Phase::MinusOne) == "-1");
}

TEST_CASE("multiply on random strings: associativity, identity, involution") {
  auto rng = testutil::make_rng(0xA11CE);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + (rng() % 8);
    const PauliString a = testutil::random_pauli(rng, n, /*hermitian_only=*/false);
    const PauliString b = testutil::random_pauli(rng, n, false);
    const PauliString c = testutil::random_pauli(rng, n, false);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    CHECK(multiply(a, PauliString::identity(n)) == a);
    CHECK(multiply(PauliString::identity(n), a) == a);

    const PauliString square = multiply(a, a);
    CHECK(square.is_identity());
    CHECK(square.phase() == a.phase() * a.phase());
  }
  CHECK_THROWS_AS(multiply(PauliString::identity(2), PauliString::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("multiply ORs the display-case masks") {
  const QubitOrder order = QubitOrder::identity(4);
  const PauliString a = parse_observable("xXII", order);
  const PauliString b = parse_observable("IIzZ", order);
  const PauliString ab = multiply(a, b);
  CHECK(format_observable(ab, order) == "xXzZ");
}

TEST_CASE("commutes agrees with comparing both product orders") {
  auto rng = testutil::make_rng(0xC0107);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + (rng() % 7);
    const PauliString a = testutil::random_pauli(rng, n, false);
    const PauliString b = testutil::random_pauli(rng, n, false);
    CHECK(commutes(a, b) == (multiply(a, b) == multiply(b, a)));
  }
}

TEST_CASE("weight counts non-identity factors") {
  auto rng = testutil::make_rng(0x3E1647);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + (rng() % 10);
    const PauliString p = testutil::random_pauli(rng, n, false);
    int manual = 0;
    for (int q = 1; q <= static_cast<int>(n); ++q) {
      if (p.axis(q) != PauliAxis::I) ++manual;
    }
    CHECK(weight(p) == manual);
  }
  CHECK(weight(PauliString::identity(6)) == 0);
}

TEST_CASE("from_sites builds strings with case metadata") {
  const PauliString g = PauliString::from_sites(6, {{5, 'z'}, {1, 'X'}, {3, 'Z'}});
  CHECK(g.axis(1) == PauliAxis::X);
  CHECK(g.axis(3) == PauliAxis::Z);
  CHECK(g.axis(5) == PauliAxis::Z);
  CHECK(g.axis(2) == PauliAxis::I);
  CHECK(g.lowercase_at(5));
  CHECK_FALSE(g.lowercase_at(1));
  CHECK(g.is_hermitian());

  CHECK_THROWS_AS(PauliString::from_sites(4, {{5, 'X'}}), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_sites(4, {{1, 'Q'}}), std::invalid_argument);
  CHECK_THROWS_AS(PauliString(0), std::invalid_argument);
  CHECK_THROWS_AS(single(PauliAxis::X).axis(2), std::out_of_range);
}

TEST_CASE("equality ignores display case but not sign") {
  const QubitOrder order = QubitOrder::identity(6);
  const PauliString lower = parse_observable("xXZZXx", order);
  const PauliString upper = parse_observable("XXZZXX", order);
  const PauliString negated = parse_observable("-XXZZXX", order);
  CHECK(lower == upper);
  CHECK(lower != negated);
  CHECK(upper.negated() == negated);
  CHECK(lower.lowercase_mask() != upper.lowercase_mask());
}

TEST_CASE("qubit order parses and validates permutations") {
  const QubitOrder order = QubitOrder::parse("5-1-3-2-4-6");
  CHECK(order.size() == 6);
  CHECK(order.qubit_at(0) == 5);
  CHECK(order.qubit_at(1) == 1);
  CHECK(order.qubit_at(5) == 6);
  CHECK(order.str() == "5-1-3-2-4-6");
  CHECK(QubitOrder::identity(3).str() == "1-2-3");

  CHECK_THROWS_AS(QubitOrder::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(QubitOrder::parse("1-1-2"), std::invalid_argument);
  CHECK_THROWS_AS(QubitOrder::parse("1-2-9"), std::invalid_argument);
  CHECK_THROWS_AS(QubitOrder::parse("1--2"), std::invalid_argument);
  CHECK_THROWS_AS(QubitOrder::parse("1-2-x"), std::invalid_argument);
  CHECK_THROWS_AS(QubitOrder::identity(3).qubit_at(3), std::out_of_range);
}

TEST_CASE("observable tokens place letters by display position") {
  const QubitOrder order = QubitOrder::parse("5-1-3-2-4-6");
  const PauliString p = parse_observable("xXZZXx", order);
  CHECK(p.axis(5) == PauliAxis::X);
  CHECK(p.axis(1) == PauliAxis::X);
  CHECK(p.axis(3) == PauliAxis::Z);
  CHECK(p.axis(2) == PauliAxis::Z);
  CHECK(p.axis(4) == PauliAxis::X);
  CHECK(p.axis(6) == PauliAxis::X);
  CHECK(p.lowercase_at(5));
  CHECK(p.lowercase_at(6));
  CHECK_FALSE(p.lowercase_at(2));

  // The same string renders differently under another order but stays equal.
  const std::string canonical = format_observable(p, QubitOrder::identity(6));
  CHECK(canonical == "XZZXxx");
  CHECK(parse_observable(canonical, QubitOrder::identity(6)) == p);
}

TEST_CASE("token parse/format round-trips for random tokens") {
  auto rng = testutil::make_rng(0x70CEF);
  const char upper[] = {'I', 'X', 'Y', 'Z'};
  const char lower[] = {'i', 'x', 'y', 'z'};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + (rng() % 8);
    // Random display order: random permutation of 1..n.
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i) + 1;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    const QubitOrder order{std::vector<int>(perm)};

    std::string token;
    if (rng() % 2) token += '-';
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned ax = rng() % 4;
      token += (rng() % 2) ? lower[ax] : upper[ax];
    }
    const PauliString parsed = parse_observable(token, order);
    CHECK(format_observable(parsed, order) == token);
  }
}

TEST_CASE("unicode minus parses like ASCII minus") {
  const QubitOrder order = QubitOrder::parse(testutil::kLc6TableOrder);
  const PauliString unicode = parse_observable("\xE2\x88\x92yYZZXx", order);
  const PauliString ascii = parse_observable("-yYZZXx", order);
  CHECK(unicode == ascii);
  CHECK(unicode.phase() == Phase::MinusOne);
  CHECK(format_observable(unicode, order) == "-yYZZXx");
}

TEST_CASE("token parse failures") {
  const QubitOrder order = QubitOrder::identity(4);
  CHECK_THROWS_AS(parse_observable("XXX", order), std::invalid_argument);    // too short
  CHECK_THROWS_AS(parse_observable("XXXXX", order), std::invalid_argument);  // too long
  CHECK_THROWS_AS(parse_observable("XQXX", order), std::invalid_argument);   // bad letter
  CHECK_THROWS_AS(parse_observable("X-XX", order), std::invalid_argument);   // interior sign
  CHECK_THROWS_AS(parse_observable("", order), std::invalid_argument);
  CHECK_THROWS_AS(parse_observable("--XXXX", order), std::invalid_argument);
}

TEST_CASE("format_observable rejects imaginary phases") {
  const PauliString p(Phase::PlusI, {PauliAxis::X, PauliAxis::Y});
  CHECK_THROWS_AS(format_observable(p, QubitOrder::identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(format_observable(PauliString::identity(3), QubitOrder::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("ordering is usable for sets and deduplicates by algebraic value") {
  auto rng = testutil::make_rng(0x5E7);
  std::set<PauliString> seen;
  const QubitOrder order = QubitOrder::identity(3);
  const PauliString a = parse_observable("XYZ", order);
  const PauliString b = parse_observable("xyz", order);  // same algebraic value
  const PauliString c = parse_observable("-XYZ", order);
  seen.insert(a);
  seen.insert(b);
  seen.insert(c);
  CHECK(seen.size() == 2);
  for (int trial = 0; trial < 50; ++trial) {
    const PauliString p = testutil::random_pauli(rng, 3, false);
    CHECK_FALSE(p < p);
  }
}
