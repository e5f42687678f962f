#pragma once

#include <string>
#include <vector>

#include "charp/gb.hpp"
#include "charp/ring.hpp"

namespace charp {

/// Finitely presented graded R-module: the cokernel of `relations`, whose
/// rows are indexed by generators and whose columns are relations. Entries
/// are kept reduced modulo the defining ideal of R.
struct GradedModule {
  RingPtr ring;
  std::vector<Rational> degrees;
  PolyMatrix relations;
  std::string provenance = "user";

  int num_generators() const { return static_cast<int>(degrees.size()); }
  int num_relations() const { return relations.cols(); }
  /// Degree of every relation column (0 for zero columns).
  std::vector<Rational> relation_degrees() const;
  /// Throws InvalidArgument when a column is not homogeneous.
  void validate() const;

  static GradedModule free(RingPtr ring, std::vector<Rational> degrees);
  /// R/J for an ideal J of S (taken modulo I).
  static GradedModule cyclic(RingPtr ring, const IdealHandle& J, Rational degree = Rational(0));
  GradedModule direct_sum(const GradedModule& other) const;
};

/// F^e_*R presented over R on the q^n digit monomials.
GradedModule pushforward_ring(RingPtr ring, int e);

/// F^e_*M, generators ordered by (generator of M, digit monomial).
GradedModule pushforward_module(const GradedModule& M, int e);

/// Removes relations with a unit entry together with the generator they
/// eliminate, then drops zero and repeated columns.
GradedModule prune(const GradedModule& M);

/// Direct summands collecting the generators whose degrees agree modulo the
/// grading step. Homogeneous relations never mix classes.
std::vector<GradedModule> split_by_degree_class(const GradedModule& M);

/// Rank of F^e_*R at the zero ideal of a domain R; checked against q^gamma(R).
std::int64_t generic_rank_pushforward(RingPtr ring, int e);

/// Rank of M at the prime P: generators minus the rank of the relations over
/// the residue field of P.
std::int64_t rank_at_prime(const GradedModule& M, const IdealHandle& P);

}  // namespace charp
