#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "charp/poly.hpp"

using namespace charp;

namespace {

ContextPtr ring(std::uint32_t p, std::vector<std::string> vars, MonomialOrder o = MonomialOrder::grevlex) {
  return Context::make(p, std::move(vars), o);
}

Poly P(const ContextPtr& c, const char* s) { return Poly::parse(c, s); }

Poly random_poly(const ContextPtr& c, std::mt19937& rng, int terms, int maxexp) {
  std::vector<std::pair<Monomial, Coeff>> t;
  std::uniform_int_distribution<int> e(0, maxexp);
  std::uniform_int_distribution<Coeff> co(1, c->characteristic() - 1);
  for (int i = 0; i < terms; ++i) {
    Monomial m(c->nvars());
    for (auto& x : m) x = e(rng);
    t.emplace_back(m, co(rng));
  }
  return Poly::from_terms(c, t);
}

Poly reassemble(const std::vector<DigitTerm>& terms, const ContextPtr& c, std::uint64_t q) {
  Poly acc(c);
  for (const auto& t : terms) acc += t.coefficient.frobenius_power(q) * Poly::monomial(c, t.digit);
  return acc;
}

}  // namespace

TEST_CASE("field arithmetic") {
  PrimeField F(7);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.from_int(-1) == 6);
  CHECK(F.pow(3, 6) == 1);
  CHECK(is_prime(2147483647ULL));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(Context::make(4, {"x"}), InvalidArgument);
}

TEST_CASE("parse and format") {
  auto c3 = ring(3, {"x", "y", "z"});
  Poly f = P(c3, "x^2 - y*z");
  CHECK(f.to_string() == "x^2 + 2*y*z");
  CHECK(P(c3, "0").is_zero());
  auto c2 = ring(2, {"x", "y"});
  CHECK(P(c2, "x+ x").to_string() == "0");
  CHECK(P(c3, "2x(y+1)^2") == P(c3, "2*x*y^2 + 4*x*y + 2*x"));
  CHECK(P(c3, "-(x-y)") == P(c3, "y - x"));
  CHECK_THROWS_AS(P(c3, "x + w"), ParseError);
  CHECK_THROWS_AS(P(c3, "x + * y"), ParseError);
  try {
    P(c3, "x + (y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("parse is inverse to format") {
  std::mt19937 rng(11);
  for (auto p : {2u, 3u, 7u}) {
    auto c = ring(p, {"x", "y", "z"});
    for (int i = 0; i < 50; ++i) {
      Poly f = random_poly(c, rng, 6, 4);
      CHECK(Poly::parse(c, f.to_string()) == f);
    }
  }
}

TEST_CASE("monomial orders") {
  auto lex = ring(2, {"x", "y"}, MonomialOrder::lex);
  CHECK(P(lex, "y^3 + x").to_string() == "x + y^3");
  auto grl = ring(2, {"x", "y", "z"});
  CHECK(P(grl, "x*z + y^2").to_string() == "y^2 + x*z");
  auto dl = ring(2, {"x", "y", "z"}, MonomialOrder::deglex);
  CHECK(P(dl, "x*z + y^2").to_string() == "x*z + y^2");
  CHECK(parse_monomial_order("graded-lex") == MonomialOrder::deglex);
}

TEST_CASE("arithmetic") {
  auto c = ring(3, {"x", "y"});
  CHECK(P(c, "(x+y)^3") == P(c, "x^3 + y^3"));
  CHECK(P(c, "(x+y)^4") == P(c, "(x+y)^3 * (x+y)"));
  CHECK(P(c, "(x+1)^5") == P(c, "(x+1)*(x+1)*(x+1)*(x+1)*(x+1)"));
  CHECK(P(c, "x^2*y - x*y^2").exact_divide(P(c, "x - y")) == P(c, "x*y"));
  CHECK_THROWS_AS(P(c, "x^2 + 1").exact_divide(P(c, "x")), InternalError);
  CHECK(P(c, "x^3*y + x^2*y^2").monomial_content() == Monomial{2, 1});
  CHECK(P(c, "x^2 + y^2").is_homogeneous());
  CHECK_FALSE(P(c, "x^2 + y").is_homogeneous());
}

TEST_CASE("bracket powers") {
  auto c2 = ring(2, {"x", "y"});
  std::vector<Poly> m{P(c2, "x"), P(c2, "y")};
  auto b = bracket_power(m, 1);
  CHECK(b[0] == P(c2, "x^2"));
  CHECK(b[1] == P(c2, "y^2"));
  auto c3 = ring(3, {"x", "y", "z"});
  std::vector<Poly> s{P(c3, "x + y")};
  CHECK(bracket_power(s, 1)[0] == P(c3, "x^3 + y^3"));
  std::vector<Poly> f{P(c3, "x^2 - y*z")};
  CHECK(bracket_power(f, 1)[0] == P(c3, "x^6 - y^3*z^3"));
  CHECK_THROWS(bracket_power(f, 0));
  // Concatenation commutes with bracket powers.
  std::vector<Poly> both{P(c3, "x + y"), P(c3, "x^2 - y*z")};
  auto bb = bracket_power(both, 2);
  CHECK(bb[0] == bracket_power(s, 2)[0]);
  CHECK(bb[1] == bracket_power(f, 2)[0]);
  auto big = ring(2, {"x"});
  std::vector<Poly> x{P(big, "x^2")};
  CHECK_THROWS_AS(bracket_power(x, 31), InvalidArgument);
}

TEST_CASE("digit decomposition examples") {
  auto c2 = ring(2, {"x", "y", "z"});
  auto d = frobenius_decompose(P(c2, "x^3"), 1);
  REQUIRE(d.size() == 1);
  CHECK(d[0].digit == Monomial{1, 0, 0});
  CHECK(d[0].coefficient == P(c2, "x"));

  d = frobenius_decompose(P(c2, "x^2 + y*z"), 1);
  REQUIRE(d.size() == 2);
  CHECK(d[0].digit == Monomial{0, 0, 0});
  CHECK(d[0].coefficient == P(c2, "x"));
  CHECK(d[1].digit == Monomial{0, 1, 1});
  CHECK(d[1].coefficient == P(c2, "1"));

  auto c3 = ring(3, {"x", "y"});
  d = frobenius_decompose(P(c3, "y^3 + x^2*y"), 1);
  REQUIRE(d.size() == 2);
  CHECK(d[0].digit == Monomial{0, 0});
  CHECK(d[0].coefficient == P(c3, "y"));
  CHECK(d[1].digit == Monomial{2, 1});
  CHECK(d[1].coefficient == P(c3, "1"));
}

TEST_CASE("digit decomposition properties") {
  std::mt19937 rng(5);
  for (auto p : {2u, 3u, 5u}) {
    auto c = ring(p, {"x", "y", "z"});
    for (int e = 1; e <= 2; ++e) {
      const std::uint64_t q = checked_pow(p, e);
      for (int i = 0; i < 25; ++i) {
        Poly f = random_poly(c, rng, 7, 12);
        auto d = frobenius_decompose(f, e);
        for (const auto& t : d) {
          for (Exp b : t.digit) CHECK((b >= 0 && static_cast<std::uint64_t>(b) < q));
          CHECK_FALSE(t.coefficient.is_zero());
        }
        for (std::size_t k = 1; k < d.size(); ++k)
          CHECK(digit_index(d[k - 1].digit, q) < digit_index(d[k].digit, q));
        CHECK(reassemble(d, c, q) == f);

        // Linearity over q-th powers.
        Poly g = random_poly(c, rng, 3, 2);
        if (g.is_zero()) continue;
        auto dg = frobenius_decompose(f * g.frobenius_power(q), e);
        REQUIRE(dg.size() == d.size());
        for (std::size_t k = 0; k < d.size(); ++k) {
          CHECK(dg[k].digit == d[k].digit);
          CHECK(dg[k].coefficient == d[k].coefficient * g);
        }
      }
    }
  }
}

TEST_CASE("weighted degrees") {
  auto c = Context::make(2, {"x", "y"}, MonomialOrder::grevlex, {Rational(1), Rational(3, 2)});
  CHECK(P(c, "x^3 + y^2").is_homogeneous());
  CHECK_FALSE(P(c, "x^3 + y").is_homogeneous());
  CHECK(P(c, "x^3 + x*y^0").degree() == Rational(3));
  CHECK(P(c, "x^3 + y^2").degree() == Rational(3));
  CHECK(c->grading_step() == Rational(1, 2));
  CHECK_THROWS_AS(Context::make(2, {"x"}, MonomialOrder::grevlex, {Rational(0)}), InvalidArgument);
}
