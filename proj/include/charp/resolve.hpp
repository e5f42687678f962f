#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "charp/frob.hpp"
#include "charp/ring.hpp"

namespace charp {

/// Free resolution F_len -> ... -> F_1 -> F_0 -> M -> 0 over R.
/// maps[j-1] is A_j : F_j -> F_{j-1}; the image of A_j is Omega_j and
/// Omega_0 is M itself.
struct Resolution {
  GradedModule module;  // the presentation F_1 -> F_0 -> M, pruned
  std::vector<std::vector<Rational>> degrees;
  std::vector<PolyMatrix> maps;
  bool minimal = true;

  int length() const { return static_cast<int>(maps.size()); }
  /// b_j = rank F_j.
  std::vector<std::int64_t> ranks() const;
  std::int64_t rank(int j) const { return static_cast<std::int64_t>(degrees.at(j).size()); }
};

/// Minimal graded resolution with `steps` maps, or its identity-padded
/// variant: every step j < steps gains a summand R -> R.
Resolution free_resolution(const GradedModule& M, int steps, bool minimal = true);

/// Adds R --1--> R between F_{j+1} and F_j for every j in [0, length).
Resolution pad(const Resolution& res);

/// Block-diagonal sum of resolutions of the same length.
Resolution direct_sum(const std::vector<Resolution>& parts);

/// mu_R(Omega_i) for a graded resolution, computed by graded Nakayama.
std::int64_t mu_omega(const Resolution& res, int i);

/// Global Euler characteristic mu_R(Omega_i) + sum_{j=1}^{i} (-1)^j b_{i-j}.
std::int64_t chi_global(const Resolution& res, int i);

/// beta_j at P for j < length: b_j - rank(A_j (x) k(P)) - rank(A_{j+1} (x) k(P)).
/// nullopt for P means the homogeneous maximal ideal, where constant terms
/// give the ranks.
std::vector<std::int64_t> local_betti(const Resolution& res, const IdealHandle* P);

/// Alternating sums chi_i = sum_{j<=i} (-1)^{i-j} beta_j.
std::vector<std::int64_t> chi_from_betti(const std::vector<std::int64_t>& beta);

struct BettiReport {
  int e = 0;
  int i_max = 0;
  std::vector<std::int64_t> beta;
  std::vector<std::int64_t> chi;
  std::int64_t mu_last = 0;  // mu(Omega_{i_max}); globally only
  int gamma = 0;
  bool global = true;
};

/// Betti numbers of F^e_*M (e = 0 means M itself) for i <= i_max, globally
/// (minimal graded resolution) or at a prime.
BettiReport betti_numbers(const GradedModule& M, int e, int i_max, const PrimeSpec* at = nullptr);

/// chi_i from a report.
std::int64_t chi(const BettiReport& report, int i);

struct SchanuelReport {
  int i = 0;
  std::int64_t chi_difference = 0;
  std::int64_t bound = 0;
  std::vector<std::int64_t> rank_differences;  // |b_j - b'_j|, j <= i
  bool both_minimal = false;
  bool holds = true;
};

/// Compares two resolutions of the same module; throws TheoremViolation when
/// the global chi difference exceeds dim R or, for two minimal resolutions,
/// some |b_j - b'_j| exceeds dim(R) 2^(j-1).
SchanuelReport schanuel_compare(const Resolution& a, const Resolution& b, int i);

/// Checks A_j A_{j+1} = 0 modulo I for every j.
bool is_complex(const Resolution& res);

}  // namespace charp
