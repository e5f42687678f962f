#include "charp/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace charp {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

std::string str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

Rational power_ratio(std::int64_t value, std::uint32_t p, int exponent) {
  return Rational(value, checked_pow(p, exponent));
}

std::string prime_label(const PrimeSpec& P) { return P.name.empty() ? "(" + P.ideal.to_string() + ")" : P.name; }

bool graded_maximal(const PrimeSpec& P) { return P.maximal && P.ideal == P.ring->maximal_ideal(); }

std::optional<double> richardson(const std::vector<Rational>& x, const std::vector<int>& es, std::uint32_t p) {
  const std::size_t n = x.size();
  if (n < 2 || es[n - 1] != es[n - 2] + 1) return std::nullopt;
  return (p * to_double(x[n - 1]) - to_double(x[n - 2])) / (p - 1.0);
}

FitReport fit_or_point(const std::vector<Rational>& x, const std::vector<int>& es, std::uint32_t p) {
  if (x.size() >= 2) return convergence_diagnostics(x, es, p);
  FitReport f;
  f.points = x.size();
  if (!x.empty()) f.limit = to_double(x[0]);
  return f;
}

TheoremCheck check(std::string name, std::string statement, bool ok) { return {std::move(name), std::move(statement), ok}; }

int module_gamma(const GradedModule& M) { return gamma(M); }

}  // namespace

void require(const std::vector<TheoremCheck>& checks) {
  for (const auto& c : checks)
    if (!c.passed) throw TheoremViolation(c.name + " fails: " + c.statement);
}

FitReport convergence_diagnostics(const std::vector<Rational>& values, const std::vector<int>& es, std::uint32_t p) {
  if (values.size() < 2 || values.size() != es.size())
    throw InvalidArgument("a convergence fit needs at least two points");
  const std::size_t n = values.size();
  std::vector<double> u(n), x(n);
  double ub = 0, xb = 0;
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = std::pow(static_cast<double>(p), -es[k]);
    x[k] = to_double(values[k]);
    ub += u[k] / n;
    xb += x[k] / n;
  }
  double suu = 0, sux = 0;
  for (std::size_t k = 0; k < n; ++k) {
    suu += (u[k] - ub) * (u[k] - ub);
    sux += (u[k] - ub) * (x[k] - xb);
  }
  if (suu == 0) throw InvalidArgument("convergence fit needs distinct exponents");
  FitReport f;
  f.points = n;
  f.coefficient = sux / suu;
  f.limit = xb - f.coefficient * ub;
  for (std::size_t k = 0; k < n; ++k)
    f.max_residual = std::max(f.max_residual, std::abs(x[k] - f.limit - f.coefficient * u[k]));
  f.richardson = richardson(values, es, p);
  return f;
}

HkReport hk_function(RingPtr ring, const std::vector<int>& es) {
  if (!ring->homogeneous()) throw InvalidArgument("Hilbert-Kunz function needs a homogeneous ring");
  HkReport rep;
  rep.es = es;
  rep.dimension = ring->dimension();
  const std::uint32_t p = ring->characteristic();
  IdealHandle m = ring->maximal_ideal();
  for (int e : es) {
    if (e < 1) throw InvalidArgument("Frobenius exponent must be positive");
    IdealHandle K = IdealHandle(ring->context(), bracket_power(m.generators(), e)) + ring->ideal();
    auto c = colength(K);
    if (!c) throw InternalError("m^[q] + I is not m-primary");
    rep.raw.push_back(static_cast<std::int64_t>(*c));
    rep.normalized.push_back(power_ratio(rep.raw.back(), p, e * rep.dimension));
  }
  rep.fit = fit_or_point(rep.normalized, es, p);
  return rep;
}

BettiSequenceReport frobenius_betti_sequence(const GradedModule& M, int i, const std::vector<int>& es,
                                             std::optional<int> gamma_override) {
  BettiSequenceReport rep;
  rep.es = es;
  rep.i = i;
  rep.gamma_module = module_gamma(M);
  rep.gamma = gamma_override.value_or(rep.gamma_module);
  if (rep.gamma < rep.gamma_module)
    throw InvalidArgument("normalization exponent " + str(rep.gamma) + " is below gamma(M) = " + str(rep.gamma_module));
  rep.over_normalized = rep.gamma > rep.gamma_module;
  const std::uint32_t p = M.ring->characteristic();
  for (int e : es) {
    auto b = betti_numbers(M, e, i);
    rep.beta.push_back(b.beta);
    rep.chi.push_back(b.chi);
    std::vector<Rational> nb, nc;
    for (auto v : b.beta) nb.push_back(power_ratio(v, p, e * rep.gamma));
    for (auto v : b.chi) nc.push_back(power_ratio(v, p, e * rep.gamma));
    rep.normalized_beta.push_back(nb);
    rep.normalized_chi.push_back(nc);
    for (int j = 1; j <= i; ++j) {
      bool ok = b.beta[j] == b.chi[j] + b.chi[j - 1];
      rep.checks.push_back(check("beta_i = chi_i + chi_{i-1}",
                                 "e=" + str(e) + ", i=" + str(j) + ": " + str(b.beta[j]) + " = " + str(b.chi[j]) +
                                     " + " + str(b.chi[j - 1]),
                                 ok));
    }
  }
  for (int j = 0; j <= i; ++j) {
    std::vector<Rational> col;
    for (const auto& row : rep.normalized_beta) col.push_back(row[j]);
    rep.beta_fits.push_back(fit_or_point(col, es, p));
  }
  return rep;
}

ChiComparison chi_local_global(const GradedModule& M, int i, int e, const std::vector<PrimeSpec>& primes) {
  if (primes.empty()) throw InvalidArgument("the local-global comparison needs at least one prime");
  ChiComparison rep;
  rep.e = e;
  rep.i = i;
  rep.dimension = M.ring->dimension();
  GradedModule N = e > 0 ? pushforward_module(M, e) : M;
  Resolution res = free_resolution(N, i + 1);
  rep.global = chi_global(res, i);
  rep.mu_global = mu_omega(res, i);
  for (int j = 0; j <= i; ++j) rep.ranks.push_back(res.rank(j));
  std::int64_t tail = rep.global - rep.mu_global;  // alternating sum of b_{i-1}, ..., b_0
  bool first = true;
  for (const auto& P : primes) {
    PrimeChi row;
    row.prime = prime_label(P);
    row.beta = local_betti(res, graded_maximal(P) ? nullptr : &P.ideal);
    row.beta.resize(i + 1);
    row.chi = chi_from_betti(row.beta).back();
    row.mu_local = row.chi - tail;
    rep.checks.push_back(check("local generators bound global generators",
                               "mu_{R_P}(Omega_" + str(i) + ")_P = " + str(row.mu_local) + " <= mu_R(Omega_" + str(i) +
                                   ") = " + str(rep.mu_global) + " at " + row.prime,
                               row.mu_local <= rep.mu_global));
    rep.max_local = first ? row.chi : std::max(rep.max_local, row.chi);
    first = false;
    rep.per_prime.push_back(std::move(row));
  }
  const std::string lhs = "max_P chi_" + str(i) + "(" + str(e) + ",P) = " + str(rep.max_local);
  rep.checks.push_back(check("local-global lower bound", lhs + " <= chi_" + str(i) + "(" + str(e) + ") = " + str(rep.global),
                             rep.max_local <= rep.global));
  rep.checks.push_back(check("local-global upper bound",
                             "chi_" + str(i) + "(" + str(e) + ") = " + str(rep.global) + " <= " + lhs + " + dim R = " +
                                 str(rep.max_local + rep.dimension),
                             rep.global <= rep.max_local + rep.dimension));
  return rep;
}

int detect_splitting_rate(const std::vector<std::int64_t>& a, const std::vector<int>& es, std::uint32_t p, int cap) {
  const std::size_t n = a.size();
  if (std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; })) return -1;
  const double lp = std::log(static_cast<double>(p));
  double l;
  if (n >= 2 && a[n - 1] > 0 && a[n - 2] > 0 && es[n - 1] != es[n - 2])
    l = std::log(static_cast<double>(a[n - 1]) / a[n - 2]) / ((es[n - 1] - es[n - 2]) * lp);
  else {
    std::size_t k = n;
    while (a[k - 1] == 0) --k;
    l = std::log(static_cast<double>(a[k - 1])) / (es[k - 1] * lp);
  }
  return std::clamp(static_cast<int>(std::lround(l)), 0, cap);
}

namespace {

PrimeSplit split_at(const GradedModule& M, const PrimeSpec& P, const std::vector<int>& es, const IdealHandle& ann,
                    int cap) {
  PrimeSplit row;
  row.prime = prime_label(P);
  row.alpha = P.alpha;
  row.localization_zero = !P.ideal.contains(ann);
  const std::uint32_t p = M.ring->characteristic();
  for (int e : es) row.a.push_back(row.localization_zero ? 0 : module_splitting_number(M, e, &P));
  row.sr = detect_splitting_rate(row.a, es, p, cap);
  if (row.sr >= 0) row.r_F = power_ratio(row.a.back(), p, es.back() * row.sr);
  return row;
}

}  // namespace

SplitRatioReport splitting_ratio_report(const GradedModule& M, const std::vector<int>& es,
                                        const std::vector<PrimeSpec>& primes) {
  if (es.empty()) throw InvalidArgument("empty range of Frobenius exponents");
  SplitRatioReport rep;
  rep.es = es;
  const std::uint32_t p = M.ring->characteristic();
  const int cap = M.ring->gamma();
  const int d = M.ring->dimension();
  for (int e : es) rep.a.push_back(module_splitting_number(M, e));
  rep.sr = detect_splitting_rate(rep.a, es, p, cap);
  rep.heuristic = "sr = round(log_p(a_E / a_{E-1})) clamped to [0, gamma(R)], -1 when every a_e vanishes; "
                  "r_F = a_E / p^(E sr)";
  if (rep.sr >= 0) {
    for (std::size_t k = 0; k < es.size(); ++k) rep.normalized.push_back(power_ratio(rep.a[k], p, es[k] * rep.sr));
    rep.r_F = rep.normalized.back();
    rep.richardson = richardson(rep.normalized, es, p);
  }

  const bool is_ring = M.num_generators() == 1 && M.num_relations() == 0;
  if (rep.sr == 0) {
    if (is_ring) {
      bool ok = std::all_of(rep.a.begin(), rep.a.end(), [](std::int64_t v) { return v == 1; });
      std::string s;
      for (auto v : rep.a) s += (s.empty() ? "" : ", ") + str(v);
      rep.checks.push_back(check("sr = 0 forces a_e(R) = 1", "a_e(R) = (" + s + ") all equal 1", ok));
    }
    for (std::size_t k = 1; k < rep.a.size(); ++k)
      rep.checks.push_back(check("sr = 0 gives non-decreasing a_e(M)",
                                 "a_" + str(es[k - 1]) + " = " + str(rep.a[k - 1]) + " <= a_" + str(es[k]) + " = " +
                                     str(rep.a[k]),
                                 rep.a[k - 1] <= rep.a[k]));
  }

  if (!primes.empty()) {
    IdealHandle ann = annihilator(M);
    int min_sr = cap + 1;
    for (const auto& P : primes) {
      rep.per_prime.push_back(split_at(M, P, es, ann, cap));
      min_sr = std::min(min_sr, rep.per_prime.back().sr);
    }
    rep.checks.push_back(check("global splitting rate bounded by local ones",
                               "sr(M) = " + str(rep.sr) + " <= min_P sr(M_P) = " + str(min_sr), rep.sr <= min_sr));
    for (std::size_t k = 0; k < es.size(); ++k) {
      std::int64_t mn = rep.per_prime[0].a[k];
      for (const auto& r : rep.per_prime) mn = std::min(mn, r.a[k]);
      rep.checks.push_back(check("free rank local-global bound",
                                 "a_" + str(es[k]) + "(M) = " + str(rep.a[k]) + " >= min_P a_" + str(es[k]) +
                                     "(M_P) - dim R = " + str(mn - d),
                                 rep.a[k] >= mn - d));
    }
  }
  return rep;
}

StrataReport stratify_W(const GradedModule& M, const std::vector<PrimeSpec>& primes, const std::vector<int>& es) {
  if (primes.empty()) throw InvalidArgument("stratification needs at least one prime");
  if (es.empty()) throw InvalidArgument("empty range of Frobenius exponents");
  StrataReport rep;
  IdealHandle ann = annihilator(M);
  const int cap = M.ring->gamma();
  for (const auto& P : primes) {
    PrimeSplit row = split_at(M, P, es, ann, cap);
    if (row.localization_zero)
      rep.localization_zero.push_back(row.prime);
    else {
      rep.strata[row.sr].push_back(row.prime);
      if (row.sr >= 0) {
        auto it = rep.min_r_F.find(row.sr);
        if (it == rep.min_r_F.end() || row.r_F < it->second) rep.min_r_F[row.sr] = row.r_F;
      }
    }
    rep.per_prime.push_back(std::move(row));
  }
  for (const auto& [l, r] : rep.min_r_F)
    rep.checks.push_back(check("splitting ratio positive on its stratum",
                               "min r_F on W_" + str(l) + " = " + str(r) + " > 0", r > Rational(0)));
  for (std::size_t q = 0; q < primes.size(); ++q)
    for (std::size_t b = 0; b < primes.size(); ++b) {
      const auto& Q = rep.per_prime[q];
      const auto& P = rep.per_prime[b];
      if (q == b || Q.localization_zero || P.localization_zero || Q.sr != P.sr) continue;
      if (!primes[b].ideal.contains(primes[q].ideal)) continue;
      for (std::size_t k = 0; k < es.size(); ++k)
        rep.checks.push_back(check("splitting numbers grow under generization",
                                   "a_" + str(es[k]) + " at " + Q.prime + " = " + str(Q.a[k]) + " >= a_" + str(es[k]) +
                                       " at " + P.prime + " = " + str(P.a[k]),
                                   Q.a[k] >= P.a[k]));
    }
  return rep;
}

int FieldModel::gamma() const {
  if (alphas.empty()) throw InvalidArgument("field model without factors");
  return *std::max_element(alphas.begin(), alphas.end());
}

std::int64_t field_model_chi(const FieldModel& model, int e, int i, int factor) {
  if (factor < 0 || factor >= static_cast<int>(model.alphas.size()))
    throw InvalidArgument("field model has no factor " + str(factor));
  if (i < 0 || i > 1) throw InvalidArgument("field model Euler characteristics are defined for i <= 1");
  if (e < 0) throw InvalidArgument("Frobenius exponent must be nonnegative");
  std::int64_t v = checked_pow(model.p, e * model.alphas[factor]);
  return i == 0 ? v : -v;
}

FieldModelReport field_model_report(const FieldModel& model, const std::vector<int>& es) {
  FieldModelReport rep;
  rep.es = es;
  rep.gamma = model.gamma();
  const int k = static_cast<int>(model.alphas.size());
  for (int e : es) {
    std::vector<std::int64_t> row;
    std::vector<Rational> nrow;
    int best = 0;
    for (int f = 0; f < k; ++f) {
      row.push_back(field_model_chi(model, e, 1, f));
      nrow.push_back(power_ratio(row.back(), model.p, e * rep.gamma));
      if (row[f] > row[best]) best = f;
    }
    rep.chi1.push_back(row);
    rep.normalized.push_back(nrow);
    rep.argmax_by_e.push_back(best);
  }
  // -p^(e alpha) / p^(e gamma) is constant -1 when alpha = gamma and tends to 0 otherwise.
  bool first = true;
  for (int f = 0; f < k; ++f) {
    Rational lim = model.alphas[f] == rep.gamma ? Rational(-1) : Rational(0);
    rep.limits.push_back(lim);
    rep.max_over_spec = first ? lim : std::max(rep.max_over_spec, lim);
    first = false;
  }
  first = true;
  for (int f = 0; f < k; ++f)
    if (model.alphas[f] == rep.gamma) {
      rep.max_over_top_locus = first ? rep.limits[f] : std::max(rep.max_over_top_locus, rep.limits[f]);
      first = false;
    }
  if (!rep.argmax_by_e.empty()) rep.limit_along_argmax = rep.limits[rep.argmax_by_e.back()];
  return rep;
}

}  // namespace charp
