#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "charp/gb.hpp"

namespace charp {

struct GradedModule;

/// R = S/I. The ideal lives in the ambient polynomial ring S; every ideal of
/// R is handled through its preimage in S.
class QuotientRing {
 public:
  static std::shared_ptr<const QuotientRing> make(IdealHandle I);

  const ContextPtr& context() const { return I_.context(); }
  const IdealHandle& ideal() const { return I_; }
  std::uint32_t characteristic() const { return context()->characteristic(); }
  int nvars() const { return context()->nvars(); }
  bool homogeneous() const { return homogeneous_; }
  /// Krull dimension, computed once.
  int dimension() const;
  /// gamma(R); equals dim R over a perfect prime field.
  int gamma() const { return dimension(); }
  /// The homogeneous maximal ideal (all variables) as a preimage in S.
  IdealHandle maximal_ideal() const;
  /// Preimage in S of the ideal of R generated by `gens`.
  IdealHandle preimage(std::vector<Poly> gens) const;
  Poly reduce(const Poly& f) const { return I_.normal_form(f); }

 private:
  explicit QuotientRing(IdealHandle I);

  IdealHandle I_;
  bool homogeneous_ = false;
  mutable std::once_flag dim_once_;
  mutable int dim_ = 0;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

/// A prime of R given by its preimage P in S (primality is assumed).
struct PrimeSpec {
  RingPtr ring;
  IdealHandle ideal;
  std::string name;
  int alpha = 0;  // dim R/P
  bool maximal = false;

  /// Checks I subset P and P proper; computes alpha.
  static PrimeSpec make(RingPtr ring, IdealHandle P, std::string name = {});
  static PrimeSpec homogeneous_maximal(RingPtr ring);
};

int krull_dimension(const QuotientRing& R);

/// Annihilator (0 :_R M) as a preimage in S.
IdealHandle annihilator(const GradedModule& M);

/// gamma(M) = dim R/ann(M); -1 for the zero module.
int gamma(const GradedModule& M);

/// max dim(R/Q) over supplied components Q contained in P; nullopt when no
/// component is contained in P (the localization M_P vanishes).
std::optional<int> gamma_local(const PrimeSpec& P, const std::vector<IdealHandle>& components);

/// Length of S_P/J_P for J contained in P with P minimal over J. Returns 0
/// when J is not contained in P; throws NotCofinite when the layers do not
/// terminate within the configured bound.
std::int64_t length_at_prime(const IdealHandle& J, const IdealHandle& P);

}  // namespace charp
