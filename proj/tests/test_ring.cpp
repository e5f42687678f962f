#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "charp/ring.hpp"
#include "fixtures.hpp"

using namespace charp;
using namespace fixtures;

TEST_CASE("krull dimension") {
  CHECK(krull_dimension(*xy(2)) == 1);
  CHECK(krull_dimension(*quadric(3)) == 2);
  CHECK(krull_dimension(*polynomial(5, 1)) == 1);
  CHECK(krull_dimension(*point(2)) == 0);
  CHECK(xy(2)->homogeneous());
  CHECK_THROWS_AS(make_ring(2, {"x"}, "1"), InvalidArgument);
}

TEST_CASE("primes") {
  auto R = xy(2);
  auto P = PrimeSpec::make(R, ideal(R, "x"), "(x)");
  CHECK(P.alpha == 1);
  CHECK_FALSE(P.maximal);
  auto m = PrimeSpec::homogeneous_maximal(R);
  CHECK(m.alpha == 0);
  CHECK(m.maximal);
  CHECK_THROWS_AS(PrimeSpec::make(R, IdealHandle::parse(R->context(), "x - 1"), "bad"), InvalidArgument);
  auto Q = quadric(3);
  CHECK(PrimeSpec::make(Q, ideal(Q, "x, y"), "(x,y)").alpha == 1);
  CHECK(PrimeSpec::make(Q, ideal(Q, ""), "0").alpha == 2);
}

TEST_CASE("gamma of modules") {
  auto Q = quadric(3);
  CHECK(gamma(GradedModule::free(Q, {Rational(0)})) == 2);
  auto R = xy(2);
  auto Mx = GradedModule::cyclic(R, ideal(R, "x"));
  CHECK(annihilator(Mx) == ideal(R, "x"));
  CHECK(gamma(Mx) == 1);
  CHECK(gamma(GradedModule::cyclic(R, ideal(R, "x, y"))) == 0);
  CHECK(gamma(GradedModule::cyclic(R, ideal(R, "1"))) == -1);
  // ann(R/(x) + R/(y)) = (x) cap (y) = 0 in R.
  auto both = Mx.direct_sum(GradedModule::cyclic(R, ideal(R, "y")));
  CHECK(annihilator(both) == R->ideal());
  CHECK(gamma(both) == 1);
}

TEST_CASE("gamma at a prime from components") {
  auto Q = quadric(3);
  CHECK(gamma_local(PrimeSpec::homogeneous_maximal(Q), {ideal(Q, "")}) == 2);
  auto R = xy(2);
  auto Py = PrimeSpec::make(R, ideal(R, "y"));
  CHECK_FALSE(gamma_local(Py, {ideal(R, "x")}).has_value());
  auto Px = PrimeSpec::make(R, ideal(R, "x"));
  CHECK(gamma_local(Px, {ideal(R, "x"), ideal(R, "y")}) == 1);
  CHECK(gamma_local(PrimeSpec::homogeneous_maximal(R), {ideal(R, "x"), ideal(R, "y")}) == 1);
}

TEST_CASE("local length examples") {
  auto c = Context::make(3, {"x", "y"});
  auto I = [&](const char* s) { return IdealHandle::parse(c, s); };
  CHECK(length_at_prime(I("x, y"), I("x, y")) == 1);
  CHECK(length_at_prime(I("x^2, y"), I("x, y")) == 2);
  CHECK(length_at_prime(I("x^2"), I("x")) == 2);
  CHECK(length_at_prime(I("x^3*(y+1)"), I("x")) == 3);
  CHECK(length_at_prime(I("x^2, x*y"), I("x")) == 1);
  CHECK(length_at_prime(I("y"), I("x")) == 0);
  CHECK_THROWS_AS(length_at_prime(I("x*y"), I("x, y")), NotCofinite);
}

TEST_CASE("local length at m equals colength") {
  std::mt19937 rng(3);
  auto c = Context::make(2, {"x", "y", "z"});
  auto m = IdealHandle::variables(c);
  std::uniform_int_distribution<int> ex(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Poly> gens;
    for (int v = 0; v < 3; ++v) {
      Monomial a(3, 0);
      a[v] = ex(rng);
      gens.push_back(Poly::monomial(c, a));
    }
    // an extra homogeneous mixed generator
    Monomial b{ex(rng) - 1, ex(rng) - 1, 1};
    Monomial d{b[0] + 1, b[1], 0};
    gens.push_back(Poly::monomial(c, b) + Poly::monomial(c, d));
    IdealHandle J(c, gens);
    REQUIRE(colength(J).has_value());
    CHECK(length_at_prime(J, m) == static_cast<std::int64_t>(*colength(J)));
  }
}

TEST_CASE("local length along a non-maximal prime") {
  // At P = (x) every polynomial in y alone is a unit, so the length of
  // (x^a g(y), x^b h(y)) is min(a, b).
  std::mt19937 rng(9);
  auto c = Context::make(5, {"x", "y"});
  auto P = IdealHandle::parse(c, "x");
  std::uniform_int_distribution<int> ex(1, 5), co(1, 4);
  for (int trial = 0; trial < 15; ++trial) {
    auto gy = [&] {
      std::vector<std::pair<Monomial, Coeff>> t{{Monomial{0, 0}, static_cast<Coeff>(co(rng))},
                                                {Monomial{0, ex(rng)}, static_cast<Coeff>(co(rng))}};
      return Poly::from_terms(c, t);
    };
    int a = ex(rng), b = ex(rng);
    Poly f = Poly::monomial(c, Monomial{a, 0}) * gy();
    Poly g = Poly::monomial(c, Monomial{b, 0}) * gy();
    CHECK(length_at_prime(IdealHandle(c, {f, g}), P) == std::min(a, b));
  }
}

TEST_CASE("dimension counts along chains") {
  // alpha(P) + height(P) = dim R on these domains; heights read off a chain.
  auto Q = quadric(3);
  CHECK(PrimeSpec::make(Q, ideal(Q, "")).alpha + 0 == 2);
  CHECK(PrimeSpec::make(Q, ideal(Q, "x, y")).alpha + 1 == 2);
  CHECK(PrimeSpec::homogeneous_maximal(Q).alpha + 2 == 2);
  auto R = xy(3);
  CHECK(PrimeSpec::make(R, ideal(R, "x")).alpha + 0 <= 1);
  CHECK(PrimeSpec::homogeneous_maximal(R).alpha + 1 <= 1);
}
