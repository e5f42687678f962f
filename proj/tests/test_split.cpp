#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "charp/split.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace charp;
using namespace fixtures;

namespace {

PrimeSpec m_of(const RingPtr& R) { return PrimeSpec::homogeneous_maximal(R); }

// Hypersurface rings small enough for the dense oracle.
std::vector<std::pair<RingPtr, int>> hypersurfaces() {
  return {{xy(2), 3}, {xy(3), 2}, {quadric(3), 2}, {fermat(2), 2}, {fermat(7), 1}, {umbrella(2), 2}};
}

Poly random_poly(const ContextPtr& c, std::mt19937& rng) {
  std::uniform_int_distribution<int> ex(0, 3);
  std::uniform_int_distribution<Coeff> co(0, c->characteristic() - 1);
  std::vector<std::pair<Monomial, Coeff>> t;
  for (int k = 0; k < 3; ++k) {
    Monomial m(c->nvars());
    for (auto& x : m) x = ex(rng);
    t.emplace_back(m, co(rng));
  }
  return Poly::from_terms(c, t);
}

}  // namespace

TEST_CASE("Fedder classification") {
  CHECK(fedder_is_fpure(m_of(quadric(3))));
  CHECK_FALSE(fedder_is_fpure(m_of(fermat(2))));
  CHECK(fedder_is_fpure(m_of(fermat(7))));
  CHECK(fedder_is_fpure(m_of(xy(2))));
  CHECK(fedder_is_fpure(m_of(polynomial(3, 2))));
  auto R = xy(2);
  CHECK_THROWS_AS(fedder_is_fpure(PrimeSpec::make(R, ideal(R, "x"))), InvalidArgument);
}

TEST_CASE("splitting ideals") {
  auto R = xy(2);
  for (int e = 1; e <= 3; ++e) {
    auto s = splitting_ideal(m_of(R), e);
    CHECK(s.preimage == ideal(R, "x, y"));
    CHECK(splitting_number(s) == 1);
  }
  auto S = polynomial(2, 1);
  auto s = splitting_ideal(m_of(S), 1);
  CHECK(s.preimage == ideal(S, "x^2"));
  CHECK(splitting_number(s) == 2);
}

TEST_CASE("splitting ideals contain m^[q] + I") {
  for (auto& [R, emax] : hypersurfaces())
    for (int e = 1; e <= emax; ++e) {
      auto m = m_of(R);
      auto s = splitting_ideal(m, e);
      CHECK(s.preimage.contains(IdealHandle(R->context(), bracket_power(m.ideal.generators(), e))));
      CHECK(s.preimage.contains(R->ideal()));
    }
}

TEST_CASE("splitting numbers against the hypersurface oracle") {
  std::mt19937 rng(17);
  for (auto& [R, emax] : hypersurfaces())
    for (int e = 1; e <= emax; ++e) {
      const std::int64_t q = checked_pow(R->characteristic(), e);
      const Poly& f = R->ideal().generators().at(0);
      auto s = splitting_ideal(m_of(R), e);
      CHECK(splitting_number(s) == static_cast<std::int64_t>(oracle::hypersurface_splitting_number(f, q)));
      for (int k = 0; k < 10; ++k) {
        Poly c = random_poly(R->context(), rng);
        CHECK(s.preimage.contains(c) == oracle::hypersurface_splitting_ideal_contains(f, c, q));
      }
    }
}

TEST_CASE("splitting numbers at non-maximal primes") {
  auto R = xy(3);
  auto Px = PrimeSpec::make(R, ideal(R, "x"));
  for (int e = 1; e <= 2; ++e) {
    const std::int64_t q = checked_pow(3, e);
    CHECK(splitting_number(Px, e) == q);
    CHECK(module_splitting_number(GradedModule::free(R, {Rational(0)}), e, &Px) == q);
  }
  auto Q = quadric(3);
  auto P = PrimeSpec::make(Q, ideal(Q, "x, y"));
  auto zero = PrimeSpec::make(Q, ideal(Q, ""));
  CHECK(splitting_number(P, 1) == 9);
  CHECK(splitting_number(zero, 1) == 9);
  CHECK(module_splitting_number(GradedModule::free(Q, {Rational(0)}), 1, &P) == 9);
  CHECK(module_splitting_number(GradedModule::free(Q, {Rational(0)}), 1, &zero) == 9);
}

TEST_CASE("splitting primes") {
  auto R = xy(2);
  auto sp = splitting_prime(m_of(R), 3);
  REQUIRE(sp.prime.has_value());
  CHECK(*sp.prime == ideal(R, "x, y"));
  CHECK(sp.stabilized_at == 2);

  auto S = polynomial(3, 1);
  auto ss = splitting_prime(m_of(S), 3);
  CHECK(ss.f_pure);
  CHECK(ss.prime->is_zero());
  CHECK(ss.stabilized_at == 2);
  CHECK(ss.intersections.back() == ideal(S, "x^27"));

  CHECK_FALSE(splitting_prime(m_of(fermat(2)), 2).f_pure);
}

TEST_CASE("strong F-regularity certificates") {
  auto Q = quadric(3);
  const Poly& f = Q->ideal().generators()[0];
  REQUIRE_FALSE(oracle::hypersurface_splitting_ideal_contains(f, poly(Q, "y"), 3));
  auto c = sfr_certificate(Q, poly(Q, "y"), 2);
  CHECK(c.outcome == SfrOutcome::certified);
  CHECK(c.e == 1);

  auto R = xy(2);
  auto d = sfr_certificate(R, poly(R, "x + y"), 3);
  CHECK(d.outcome == SfrOutcome::evidence_not_sfr);
  REQUIRE(d.ideal.has_value());
  CHECK(*d.ideal == ideal(R, "x, y"));

  auto S = polynomial(5, 1);
  auto g = sfr_certificate(S, poly(S, "1"), 1);
  CHECK(g.outcome == SfrOutcome::certified);
  CHECK(g.e == 1);

  auto h = sfr_certificate(fermat(2), poly(fermat(2), "x"), 2);
  CHECK(h.outcome == SfrOutcome::evidence_not_sfr);
}

TEST_CASE("free rank examples") {
  auto S = polynomial(3, 1);
  auto RplusRx = GradedModule::free(S, {Rational(0)}).direct_sum(GradedModule::cyclic(S, ideal(S, "x")));
  CHECK(free_rank(RplusRx) == 1);
  CHECK(free_rank(GradedModule::free(S, {Rational(0), Rational(1)})) == 2);

  // The maximal ideal of F_p[x,y] presented on x, y with the Koszul relation.
  auto T = polynomial(3, 2);
  GradedModule m = GradedModule::free(T, {Rational(1), Rational(1)});
  m.relations.columns.push_back(Vec{poly(T, "y"), poly(T, "-x")});
  CHECK(free_rank(m) == 0);
}

TEST_CASE("module splitting numbers") {
  auto R = xy(2);
  auto A = GradedModule::free(R, {Rational(0)});
  auto C = GradedModule::cyclic(R, ideal(R, "x"));
  for (int e = 1; e <= 3; ++e) {
    CHECK(module_splitting_number(A, e) == 1);
    CHECK(module_splitting_number(C, e) == 0);
    CHECK(module_splitting_number(A.direct_sum(C), e) == 1);
  }
}

TEST_CASE("free rank agrees with the Fedder colength") {
  for (auto& [R, emax] : hypersurfaces()) {
    if (!fedder_is_fpure(m_of(R))) continue;
    for (int e = 1; e <= std::min(emax, 2); ++e)
      CHECK(module_splitting_number(GradedModule::free(R, {Rational(0)}), e) == splitting_number(m_of(R), e));
  }
}

TEST_CASE("supermultiplicativity and the rank bound") {
  for (auto R : {quadric(3), xy(2), umbrella(2), polynomial(2, 2)}) {
    auto M = GradedModule::free(R, {Rational(0)});
    std::vector<std::int64_t> a{1};
    for (int e = 1; e <= 3; ++e) {
      const std::int64_t q = checked_pow(R->characteristic(), e);
      if (checked_pow(q, R->nvars()) > 800) break;
      a.push_back(module_splitting_number(M, e));
      CHECK(a[e] <= checked_pow(q, R->gamma()));
    }
    for (std::size_t e = 1; e < a.size(); ++e)
      for (std::size_t f = 1; e + f < a.size(); ++f) CHECK(a[e + f] >= a[e] * a[f]);
  }
}

TEST_CASE("splitting numbers grow under generization") {
  auto Q = quadric(3);
  std::vector<PrimeSpec> chain{PrimeSpec::make(Q, ideal(Q, "")), PrimeSpec::make(Q, ideal(Q, "x, y")), m_of(Q)};
  auto R = xy(2);
  std::vector<PrimeSpec> chain2{PrimeSpec::make(R, ideal(R, "y")), m_of(R)};
  for (const auto* c : {&chain, &chain2})
    for (int e = 1; e <= 2; ++e)
      for (std::size_t k = 1; k < c->size(); ++k)
        CHECK(splitting_number((*c)[k - 1], e) >= splitting_number((*c)[k], e));
}
