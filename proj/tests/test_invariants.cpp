#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "charp/invariants.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace charp;
using namespace fixtures;

namespace {

PrimeSpec m_of(const RingPtr& R) { return PrimeSpec::homogeneous_maximal(R); }
PrimeSpec at(const RingPtr& R, const std::string& P, const std::string& name) {
  return PrimeSpec::make(R, ideal(R, P), name);
}

GradedModule ring_module(const RingPtr& R) { return GradedModule::free(R, {Rational(0)}); }

bool all_passed(const std::vector<TheoremCheck>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

}  // namespace

TEST_CASE("Hilbert-Kunz function of the xy ring") {
  auto R = xy(2);
  auto h = hk_function(R, {1, 2, 3});
  CHECK(h.raw == std::vector<std::int64_t>{3, 7, 15});
  CHECK(h.dimension == 1);
  for (int e = 1; e <= 3; ++e) {
    const std::int64_t q = checked_pow(2, e);
    CHECK(h.raw[e - 1] == static_cast<std::int64_t>(oracle::hk_length(R->ideal().generators(), q)));
    CHECK(h.normalized[e - 1] == Rational(2) - Rational(1, q));
  }
  CHECK(h.fit.limit == doctest::Approx(2).epsilon(1e-9));
  CHECK(h.fit.coefficient == doctest::Approx(-1).epsilon(1e-9));
}

TEST_CASE("Hilbert-Kunz function of regular rings and the quadric") {
  auto S = polynomial(3, 2);
  auto h = hk_function(S, {1, 2});
  CHECK(h.raw == std::vector<std::int64_t>{9, 81});
  CHECK(h.normalized == std::vector<Rational>{Rational(1), Rational(1)});

  auto Q = quadric(3);
  auto k = hk_function(Q, {1, 2});
  const auto& f = Q->ideal().generators();
  CHECK(k.raw[0] == static_cast<std::int64_t>(oracle::hk_length(f, 3)));
  CHECK(k.raw[1] == static_cast<std::int64_t>(oracle::hk_length(f, 9)));
  CHECK(k.raw == std::vector<std::int64_t>{13, 121});
  CHECK(k.normalized == std::vector<Rational>{Rational(13, 9), Rational(121, 81)});
  REQUIRE(k.fit.richardson.has_value());
  CHECK(std::abs(*k.fit.richardson - 1.5) < 0.03);
  CHECK(std::abs(k.fit.limit - 1.5) < 0.03);
}

TEST_CASE("Hilbert-Kunz length agrees with the length at m") {
  for (auto R : {xy(3), quadric(3), fermat(2)}) {
    auto h = hk_function(R, {1});
    IdealHandle m = R->maximal_ideal();
    IdealHandle K = IdealHandle(R->context(), bracket_power(m.generators(), 1)) + R->ideal();
    CHECK(h.raw[0] == length_at_prime(K, m));
  }
}

TEST_CASE("convergence fits") {
  auto f = convergence_diagnostics({Rational(3, 2), Rational(7, 4), Rational(15, 8)}, {1, 2, 3}, 2);
  CHECK(f.limit == doctest::Approx(2));
  CHECK(f.coefficient == doctest::Approx(-1));
  CHECK(f.max_residual < 1e-12);
  auto c = convergence_diagnostics({Rational(1), Rational(1), Rational(1)}, {1, 2, 3}, 5);
  CHECK(c.limit == doctest::Approx(1));
  CHECK(c.coefficient == doctest::Approx(0));
  CHECK_THROWS_AS(convergence_diagnostics({Rational(1)}, {1}, 2), InvalidArgument);

  // Exact sequences L + C p^-e are recovered for any L, C.
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int t = 0; t < 20; ++t) {
    const std::uint32_t p = t % 2 ? 3 : 2;
    Rational L(d(rng), 3), C(d(rng), 7);
    std::vector<Rational> x;
    for (int e = 1; e <= 4; ++e) x.push_back(L + C / Rational(checked_pow(p, e)));
    auto g = convergence_diagnostics(x, {1, 2, 3, 4}, p);
    CHECK(g.limit == doctest::Approx(static_cast<double>(L.numerator()) / L.denominator()));
    CHECK(*g.richardson == doctest::Approx(static_cast<double>(L.numerator()) / L.denominator()));
  }
}

TEST_CASE("Frobenius Betti sequences") {
  auto R = xy(2);
  auto b = frobenius_betti_sequence(ring_module(R), 1, {1, 2, 3});
  CHECK(b.gamma == 1);
  CHECK_FALSE(b.over_normalized);
  for (int e = 1; e <= 3; ++e) {
    const std::int64_t q = checked_pow(2, e);
    CHECK(b.beta[e - 1][0] == static_cast<std::int64_t>(oracle::hk_length(R->ideal().generators(), q)));
    CHECK(b.beta[e - 1][1] == 2 * (q - 1));
    CHECK(b.normalized_beta[e - 1][1] == Rational(2 * (q - 1), q));
    CHECK(b.chi[e - 1][1] == -1);
  }
  CHECK(b.beta_fits[1].limit == doctest::Approx(2));
  CHECK(all_passed(b.checks));

  auto over = frobenius_betti_sequence(ring_module(R), 1, {1, 2, 3}, 2);
  CHECK(over.over_normalized);
  for (std::size_t k = 1; k < over.normalized_beta.size(); ++k)
    CHECK(over.normalized_beta[k][1] < over.normalized_beta[k - 1][1]);
  CHECK(std::abs(over.beta_fits[1].limit) < 0.2);

  auto S = polynomial(2, 2);
  auto r = frobenius_betti_sequence(ring_module(S), 1, {1, 2});
  for (const auto& row : r.beta) CHECK(row[1] == 0);

  CHECK_THROWS_AS(frobenius_betti_sequence(ring_module(R), 1, {1}, 0), InvalidArgument);
}

TEST_CASE("beta telescopes into chi at every e") {
  for (auto R : {quadric(3), xy(3), fermat(2)}) {
    auto b = frobenius_betti_sequence(ring_module(R), 2, {1});
    CHECK(all_passed(b.checks));
    const auto& beta = b.beta[0];
    const auto& chi = b.chi[0];
    std::int64_t alt = 0;
    for (int j = 0; j <= 2; ++j) {
      alt = beta[j] - alt;
      CHECK(chi[j] == alt);
    }
  }
}

TEST_CASE("local-global Euler characteristics on the xy ring") {
  auto R = xy(2);
  std::vector<PrimeSpec> primes{m_of(R), at(R, "x", "(x)"), at(R, "y", "(y)")};
  auto c = chi_local_global(ring_module(R), 1, 1, primes);
  REQUIRE(c.per_prime.size() == 3);
  CHECK(c.per_prime[0].beta == std::vector<std::int64_t>{3, 2});
  CHECK(c.per_prime[1].beta == std::vector<std::int64_t>{2, 0});
  CHECK(c.per_prime[2].beta == std::vector<std::int64_t>{2, 0});
  CHECK(c.per_prime[0].chi == -1);
  CHECK(c.per_prime[1].chi == -2);
  CHECK(c.per_prime[2].chi == -2);
  CHECK(c.global == -1);
  CHECK(c.max_local == -1);
  CHECK(all_passed(c.checks));
  CHECK_NOTHROW(require(c.checks));
}

TEST_CASE("local-global Euler characteristics on regular rings and the quadric") {
  auto S = polynomial(2, 2);
  std::vector<PrimeSpec> primes{m_of(S), at(S, "x", "(x)"), at(S, "", "(0)")};
  for (int e = 1; e <= 2; ++e) {
    const std::int64_t q = checked_pow(2, e);
    auto c = chi_local_global(ring_module(S), 1, e, primes);
    for (const auto& r : c.per_prime) CHECK(r.chi == -q * q);
    CHECK(c.global == -q * q);
    CHECK(all_passed(c.checks));
  }

  auto Q = quadric(3);
  std::vector<PrimeSpec> qp{m_of(Q), at(Q, "x, y", "(x,y)"), at(Q, "", "(0)")};
  auto c = chi_local_global(ring_module(Q), 0, 1, qp);
  CHECK(c.global == static_cast<std::int64_t>(oracle::hk_length(Q->ideal().generators(), 3)));
  CHECK(c.per_prime[0].chi == c.global);
  CHECK(all_passed(c.checks));
}

TEST_CASE("chi is additive over direct sums at every prime") {
  auto R = xy(2);
  auto A = ring_module(R);
  auto C = GradedModule::cyclic(R, ideal(R, "x"));
  std::vector<PrimeSpec> primes{m_of(R), at(R, "x", "(x)"), at(R, "y", "(y)")};
  for (int i = 0; i <= 1; ++i) {
    auto a = chi_local_global(A, i, 1, primes);
    auto c = chi_local_global(C, i, 1, primes);
    auto s = chi_local_global(A.direct_sum(C), i, 1, primes);
    CHECK(s.global == a.global + c.global);
    for (std::size_t k = 0; k < primes.size(); ++k) CHECK(s.per_prime[k].chi == a.per_prime[k].chi + c.per_prime[k].chi);
  }
}

TEST_CASE("splitting rate detection") {
  CHECK(detect_splitting_rate({0, 0, 0}, {1, 2, 3}, 2, 2) == -1);
  CHECK(detect_splitting_rate({1, 1, 1}, {1, 2, 3}, 2, 2) == 0);
  CHECK(detect_splitting_rate({4, 16}, {1, 2}, 2, 2) == 2);
  CHECK(detect_splitting_rate({5, 41}, {1, 2}, 3, 2) == 2);
  CHECK(detect_splitting_rate({4, 64}, {1, 2}, 2, 2) == 2);
  CHECK(detect_splitting_rate({3}, {1}, 3, 2) == 1);
  // c p^(l e) with a bounded constant recovers l.
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int l = 0; l <= 3; ++l)
      for (std::int64_t c : {1, 2, 3}) {
        std::vector<std::int64_t> a;
        for (int e = 1; e <= 3; ++e) a.push_back(c * checked_pow(p, l * e));
        CHECK(detect_splitting_rate(a, {1, 2, 3}, p, 3) == l);
      }
}

TEST_CASE("splitting ratio reports") {
  auto R = xy(2);
  auto r = splitting_ratio_report(ring_module(R), {1, 2, 3});
  CHECK(r.a == std::vector<std::int64_t>{1, 1, 1});
  CHECK(r.sr == 0);
  CHECK(r.r_F == Rational(1));
  CHECK_FALSE(r.heuristic.empty());
  CHECK(all_passed(r.checks));
  CHECK_FALSE(r.checks.empty());

  auto S = polynomial(2, 2);
  auto s = splitting_ratio_report(ring_module(S), {1, 2});
  CHECK(s.a == std::vector<std::int64_t>{4, 16});
  CHECK(s.sr == 2);
  CHECK(s.r_F == Rational(1));

  auto M = ring_module(R).direct_sum(GradedModule::cyclic(R, ideal(R, "x")));
  std::vector<PrimeSpec> primes{m_of(R), at(R, "x", "(x)"), at(R, "y", "(y)")};
  auto t = splitting_ratio_report(M, {1, 2, 3}, primes);
  CHECK(t.a == std::vector<std::int64_t>{1, 1, 1});
  CHECK(t.sr == 0);
  CHECK(all_passed(t.checks));
  REQUIRE(t.per_prime.size() == 3);
  CHECK(t.per_prime[0].sr == 0);
}

TEST_CASE("splitting ratio of the quadric at several primes") {
  auto Q = quadric(3);
  std::vector<PrimeSpec> primes{m_of(Q), at(Q, "x, y", "(x,y)"), at(Q, "", "(0)")};
  auto r = splitting_ratio_report(ring_module(Q), {1, 2}, primes);
  const auto& f = Q->ideal().generators()[0];
  CHECK(r.a[0] == static_cast<std::int64_t>(oracle::hypersurface_splitting_number(f, 3)));
  CHECK(r.a[1] == static_cast<std::int64_t>(oracle::hypersurface_splitting_number(f, 9)));
  CHECK(r.sr == 2);
  CHECK(r.r_F == Rational(r.a[1], 81));
  CHECK(all_passed(r.checks));
  for (const auto& p : r.per_prime) CHECK(p.sr == 2);
}

TEST_CASE("stratification by splitting rate") {
  auto R = xy(2);
  std::vector<PrimeSpec> primes{m_of(R), at(R, "x", "(x)"), at(R, "y", "(y)")};
  auto s = stratify_W(ring_module(R), primes, {1, 2});
  CHECK(s.strata.size() == 2);
  CHECK(s.strata[0] == std::vector<std::string>{"m"});
  CHECK(s.strata[1] == std::vector<std::string>{"(x)", "(y)"});
  CHECK(s.localization_zero.empty());
  for (const auto& [l, r] : s.min_r_F) CHECK(r > Rational(0));
  CHECK(all_passed(s.checks));

  auto S = polynomial(2, 2);
  std::vector<PrimeSpec> sp{m_of(S), at(S, "x", "(x)"), at(S, "", "(0)")};
  auto t = stratify_W(ring_module(S), sp, {1, 2});
  CHECK(t.strata.size() == 1);
  CHECK(t.strata.begin()->first == 2);
  CHECK(t.strata.begin()->second.size() == 3);
  CHECK(all_passed(t.checks));
  // Generization chain (0) in (x) in m within one stratum was checked.
  CHECK(t.checks.size() > 1);
}

TEST_CASE("stratification of a torsion module") {
  auto R = xy(2);
  std::vector<PrimeSpec> primes{m_of(R), at(R, "x", "(x)"), at(R, "y", "(y)")};
  auto s = stratify_W(GradedModule::cyclic(R, ideal(R, "x")), primes, {1, 2});
  CHECK(s.localization_zero == std::vector<std::string>{"(y)"});
  CHECK(s.strata[-1] == std::vector<std::string>{"m"});
  // R/(x) localized at (x) is the field F_p(y), which splits off q copies.
  CHECK(s.strata[1] == std::vector<std::string>{"(x)"});
  CHECK(s.per_prime[1].a == std::vector<std::int64_t>{2, 4});
  CHECK(all_passed(s.checks));
}

TEST_CASE("the two-field model") {
  FieldModel model{3, {0, 1}};
  CHECK(model.gamma() == 1);
  for (int e = 1; e <= 4; ++e) {
    const std::int64_t q = checked_pow(3, e);
    // Localizing at S x 0 keeps the transcendental factor.
    CHECK(field_model_chi(model, e, 1, 1) == -q);
    CHECK(field_model_chi(model, e, 1, 0) == -1);
    CHECK(field_model_chi(model, e, 0, 1) == q);
  }
  auto r = field_model_report(model, {1, 2, 3});
  CHECK(r.limits == std::vector<Rational>{Rational(0), Rational(-1)});
  CHECK(r.max_over_spec == Rational(0));
  CHECK(r.max_over_top_locus == Rational(-1));
  CHECK(r.argmax_by_e == std::vector<int>{0, 0, 0});
  CHECK(r.limit_along_argmax == Rational(0));
  CHECK(r.normalized[2][0] == Rational(-1, 27));

  FieldModel single{5, {0}};
  CHECK(field_model_chi(single, 3, 1, 0) == -1);
  CHECK(field_model_report(single, {1, 2}).limits[0] == Rational(-1));

  CHECK_THROWS_AS(field_model_chi(model, 1, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(field_model_chi(model, 1, 2, 0), InvalidArgument);
}

TEST_CASE("require reports the failing inequality") {
  std::vector<TheoremCheck> checks{{"a", "1 <= 2", true}, {"b", "3 <= 2", false}};
  CHECK_THROWS_AS(require(checks), TheoremViolation);
  CHECK_NOTHROW(require({checks[0]}));
}
