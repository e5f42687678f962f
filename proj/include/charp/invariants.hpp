#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charp/resolve.hpp"
#include "charp/split.hpp"

namespace charp {

/// Outcome of one finite-e theorem instance; `statement` is the inequality
/// with the computed numbers substituted.
struct TheoremCheck {
  std::string name;
  std::string statement;
  bool passed = true;
};

/// Throws TheoremViolation naming the first failed check.
void require(const std::vector<TheoremCheck>& checks);

/// Least-squares fit of x_e = L + C p^(-e), plus the two-point Richardson
/// value (p x_E - x_{E-1}) / (p - 1) from the last two points.
struct FitReport {
  double limit = 0;
  double coefficient = 0;
  double max_residual = 0;
  std::optional<double> richardson;
  std::size_t points = 0;
};
FitReport convergence_diagnostics(const std::vector<Rational>& values, const std::vector<int>& es, std::uint32_t p);

struct HkReport {
  std::vector<int> es;
  std::vector<std::int64_t> raw;  // lambda(R/m^[q])
  int dimension = 0;
  std::vector<Rational> normalized;
  FitReport fit;
};
HkReport hk_function(RingPtr ring, const std::vector<int>& es);

struct BettiSequenceReport {
  std::vector<int> es;
  int i = 0;
  int gamma = 0;         // normalization exponent used
  int gamma_module = 0;  // gamma(M)
  bool over_normalized = false;  // gamma > gamma(M): limits vanish
  std::vector<std::vector<std::int64_t>> beta;  // per e, indices 0..i
  std::vector<std::vector<std::int64_t>> chi;
  std::vector<std::vector<Rational>> normalized_beta;
  std::vector<std::vector<Rational>> normalized_chi;
  std::vector<FitReport> beta_fits;  // per index
  std::vector<TheoremCheck> checks;
};
BettiSequenceReport frobenius_betti_sequence(const GradedModule& M, int i, const std::vector<int>& es,
                                             std::optional<int> gamma = std::nullopt);

struct PrimeChi {
  std::string prime;
  std::vector<std::int64_t> beta;  // 0..i
  std::int64_t chi = 0;
  std::int64_t mu_local = 0;  // mu_{R_P}(Omega_i(e)_P)
};

struct ChiComparison {
  int e = 0;
  int i = 0;
  std::int64_t global = 0;  // mu_R(Omega_i) + alternating sum
  std::int64_t mu_global = 0;
  std::vector<std::int64_t> ranks;  // b_0..b_i
  std::vector<PrimeChi> per_prime;
  std::int64_t max_local = 0;
  int dimension = 0;
  std::vector<TheoremCheck> checks;
};
ChiComparison chi_local_global(const GradedModule& M, int i, int e, const std::vector<PrimeSpec>& primes);

/// sr detection at finite e: all zero gives -1; otherwise the exponent
/// round(log_p(a_E / a_{E-1})) clamped to [0, cap], or from a_E alone when
/// only one value is positive.
int detect_splitting_rate(const std::vector<std::int64_t>& a, const std::vector<int>& es, std::uint32_t p, int cap);

struct PrimeSplit {
  std::string prime;
  int alpha = 0;
  bool localization_zero = false;
  std::vector<std::int64_t> a;
  int sr = -1;
  Rational r_F{0};
};

struct SplitRatioReport {
  std::vector<int> es;
  std::vector<std::int64_t> a;
  int sr = -1;
  Rational r_F{0};  // a_E / p^(E sr)
  std::optional<double> richardson;
  std::vector<Rational> normalized;
  std::string heuristic;
  std::vector<PrimeSplit> per_prime;
  std::vector<TheoremCheck> checks;
};
SplitRatioReport splitting_ratio_report(const GradedModule& M, const std::vector<int>& es,
                                        const std::vector<PrimeSpec>& primes = {});

struct StrataReport {
  std::map<int, std::vector<std::string>> strata;  // sr -> primes
  std::vector<std::string> localization_zero;
  std::map<int, Rational> min_r_F;
  std::vector<PrimeSplit> per_prime;
  std::vector<TheoremCheck> checks;
};
StrataReport stratify_W(const GradedModule& M, const std::vector<PrimeSpec>& primes, const std::vector<int>& es);

/// A finite product of fields K_k with [F_*K_k : K_k] = p^alpha_k.
struct FieldModel {
  std::uint32_t p = 2;
  std::vector<int> alphas;
  int gamma() const;
};

/// chi_i(e) at the prime whose localization keeps factor `factor` (the
/// kernel of the projection onto it): chi_0 = p^(e alpha), chi_1 = -p^(e alpha).
std::int64_t field_model_chi(const FieldModel& model, int e, int i, int factor);

struct FieldModelReport {
  std::vector<int> es;
  int gamma = 0;
  std::vector<std::vector<std::int64_t>> chi1;      // per e, per factor
  std::vector<std::vector<Rational>> normalized;    // per e, per factor
  std::vector<Rational> limits;                     // per factor
  Rational max_over_spec{0};
  Rational max_over_top_locus{0};                   // primes P with gamma(R_P) = gamma
  std::vector<int> argmax_by_e;                     // factor attaining max chi_1(e, P)
  Rational limit_along_argmax{0};
};
FieldModelReport field_model_report(const FieldModel& model, const std::vector<int>& es);

}  // namespace charp
