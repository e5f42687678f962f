#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "charp/frob.hpp"
#include "charp/ring.hpp"

namespace charp {

/// I_e at a prime, stored as its preimage in S.
struct SplittingIdeal {
  PrimeSpec locus;
  int e = 0;
  IdealHandle preimage;
};

/// Fedder's test at a maximal ideal: (I^[p] : I) not inside m^[p].
bool fedder_is_fpure(const PrimeSpec& at);

/// Preimage ((P^[q] + I^[q]) : (I^[q] : I)).
SplittingIdeal splitting_ideal(const PrimeSpec& at, int e);

/// a_e(R_P) p^(e alpha(P)): the colength of I_e at the homogeneous maximal
/// ideal, otherwise its length at P scaled by the residue degree.
std::int64_t splitting_number(const PrimeSpec& at, int e);
std::int64_t splitting_number(const SplittingIdeal& I);

struct SplittingPrimeReport {
  bool f_pure = true;
  std::vector<IdealHandle> intersections;  // J_E for E = 1..e_max
  std::vector<IdealHandle> candidates;     // J_E without its bracket-power part
  std::optional<int> stabilized_at;        // first E with candidate_E = candidate_{E-1}
  std::optional<IdealHandle> prime;        // last candidate
};

/// Intersections of I_1..I_E. A finite intersection still contains a
/// bracket power of m, so each J_E is also reported with its Groebner
/// elements lying in m^[q_E] + I dropped; that candidate is what must
/// stabilise. Stabilisation is evidence only.
SplittingPrimeReport splitting_prime(const PrimeSpec& at, int e_max);

enum class SfrOutcome { certified, evidence_not_sfr, inconclusive };

struct SfrCertificate {
  SfrOutcome outcome = SfrOutcome::inconclusive;
  int e = 0;                          // certifying exponent
  std::optional<IdealHandle> ideal;   // splitting prime evidence
  std::vector<bool> membership;       // c in I_e for e = 1..checked
};

/// The caller asserts that R_c is regular.
SfrCertificate sfr_certificate(RingPtr ring, const Poly& c, int e_max);

/// Maximal rank of a free summand of a graded module (at the homogeneous
/// maximal ideal), from the rank of the pairing Hom(M, R) x M -> R -> k.
std::int64_t free_rank(const GradedModule& M);

/// frk of M_P over R_P: the pairing is read over the residue field of P.
std::int64_t free_rank_at(const GradedModule& M, const PrimeSpec& at);

/// frk(F^e_*M), globally or at a prime.
std::int64_t module_splitting_number(const GradedModule& M, int e, const PrimeSpec* at = nullptr);

const char* to_string(SfrOutcome o);

}  // namespace charp
