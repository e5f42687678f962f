#include "charp/split.hpp"

#include "charp/linalg.hpp"

namespace charp {

namespace {

bool graded_maximal(const PrimeSpec& P) { return P.maximal && P.ideal == P.ring->maximal_ideal(); }

// I^[q] : I. Principal ideals skip the general colon.
IdealHandle frobenius_colon(const IdealHandle& I, int e) {
  const ContextPtr& ctx = I.context();
  const auto& gens = I.generators();
  if (gens.empty()) return IdealHandle::unit(ctx);
  const std::uint64_t q = static_cast<std::uint64_t>(checked_pow(ctx->characteristic(), e));
  if (gens.size() == 1) return IdealHandle(ctx, {gens[0].pow(q - 1)});
  return colon(IdealHandle(ctx, bracket_power(gens, e)), I);
}

IdealHandle bracket(const IdealHandle& P, int e) {
  return IdealHandle(P.context(), bracket_power(P.generators(), e));
}

std::int64_t residue_scale(const PrimeSpec& P, int e) {
  return checked_pow(P.ring->characteristic(), e * P.alpha);
}

// Rank over k(P) of the evaluation pairing of one degree class; nullptr
// means the homogeneous maximal ideal.
std::int64_t pairing_rank(const GradedModule& S, const IdealHandle* P) {
  GradedModule M = prune(S);
  const int b = M.num_generators();
  if (b == 0) return 0;
  if (M.num_relations() == 0) return b;
  const ContextPtr& ctx = M.ring->context();
  // Hom(M, R) = {phi in R^b : phi A = 0}: syzygies of the rows of A.
  PolyMatrix At = M.relations.transpose();
  std::vector<Rational> row_deg, col_deg;
  for (const auto& d : M.relation_degrees()) row_deg.push_back(-d);
  for (const auto& d : M.degrees) col_deg.push_back(-d);
  auto hom = syzygies(At, row_deg, col_deg, &M.ring->ideal());
  if (hom.matrix.cols() == 0) return 0;
  if (P) return generic_rank(hom.matrix, *P);
  DenseMatrix D(b, hom.matrix.cols());
  for (int c = 0; c < hom.matrix.cols(); ++c)
    for (int r = 0; r < b; ++r) D.at(r, c) = hom.matrix.columns[c][r].constant_term();
  return static_cast<std::int64_t>(rank(D, ctx->field()));
}

}  // namespace

bool fedder_is_fpure(const PrimeSpec& at) {
  if (!at.maximal) throw InvalidArgument("Fedder's criterion needs a maximal ideal");
  IdealHandle C = frobenius_colon(at.ring->ideal(), 1);
  IdealHandle mp = bracket(at.ideal, 1);
  for (const auto& g : C.generators())
    if (!mp.contains(g)) return true;
  return false;
}

SplittingIdeal splitting_ideal(const PrimeSpec& at, int e) {
  if (e < 1) throw InvalidArgument("Frobenius exponent must be positive");
  const IdealHandle& I = at.ring->ideal();
  IdealHandle K = bracket(at.ideal, e) + bracket(I, e);
  SplittingIdeal s;
  s.locus = at;
  s.e = e;
  s.preimage = colon(K, frobenius_colon(I, e));
  return s;
}

std::int64_t splitting_number(const SplittingIdeal& I) {
  if (I.preimage.is_unit()) return 0;
  if (graded_maximal(I.locus)) {
    auto c = colength(I.preimage);
    if (!c) throw InternalError("splitting ideal at m is not m-primary");
    return static_cast<std::int64_t>(*c);
  }
  return length_at_prime(I.preimage, I.locus.ideal) * residue_scale(I.locus, I.e);
}

std::int64_t splitting_number(const PrimeSpec& at, int e) { return splitting_number(splitting_ideal(at, e)); }

SplittingPrimeReport splitting_prime(const PrimeSpec& at, int e_max) {
  if (e_max < 1) throw InvalidArgument("e_max must be positive");
  SplittingPrimeReport rep;
  const IdealHandle& I = at.ring->ideal();
  for (int E = 1; E <= e_max; ++E) {
    IdealHandle Ie = splitting_ideal(at, E).preimage;
    if (E == 1 && Ie.is_unit()) {
      rep.f_pure = false;
      return rep;
    }
    IdealHandle J = rep.intersections.empty() ? Ie : intersect(rep.intersections.back(), Ie);
    rep.intersections.push_back(J);
    IdealHandle noise = bracket(at.ideal, E) + I;
    std::vector<Poly> keep = I.generators();
    for (const auto& g : J.groebner_basis())
      if (!noise.contains(g)) keep.push_back(g);
    IdealHandle cand(at.ring->context(), std::move(keep));
    if (!rep.stabilized_at && !rep.candidates.empty() && rep.candidates.back() == cand) rep.stabilized_at = E;
    if (rep.stabilized_at && !(rep.candidates.back() == cand)) rep.stabilized_at.reset();
    rep.candidates.push_back(cand);
  }
  rep.prime = rep.candidates.back();
  return rep;
}

SfrCertificate sfr_certificate(RingPtr ring, const Poly& c, int e_max) {
  if (e_max < 1) throw InvalidArgument("e_max must be positive");
  PrimeSpec m = PrimeSpec::homogeneous_maximal(ring);
  SfrCertificate cert;
  for (int e = 1; e <= e_max; ++e) {
    IdealHandle Ie = splitting_ideal(m, e).preimage;
    bool in = Ie.contains(c);
    cert.membership.push_back(in);
    if (!in) {
      cert.outcome = SfrOutcome::certified;
      cert.e = e;
      return cert;
    }
    if (e == 1 && Ie.is_unit()) {
      cert.outcome = SfrOutcome::evidence_not_sfr;
      cert.ideal = Ie;
      return cert;
    }
  }
  auto sp = splitting_prime(m, std::max(e_max, 2));
  if (sp.stabilized_at && sp.prime && !(*sp.prime == ring->ideal()) && sp.prime->contains(c)) {
    cert.outcome = SfrOutcome::evidence_not_sfr;
    cert.ideal = sp.prime;
  }
  return cert;
}

std::int64_t free_rank(const GradedModule& M) {
  std::int64_t total = 0;
  for (const auto& S : split_by_degree_class(M)) total += pairing_rank(S, nullptr);
  return total;
}

std::int64_t free_rank_at(const GradedModule& M, const PrimeSpec& at) {
  if (graded_maximal(at)) return free_rank(M);
  std::int64_t total = 0;
  for (const auto& S : split_by_degree_class(M)) total += pairing_rank(S, &at.ideal);
  return total;
}

std::int64_t module_splitting_number(const GradedModule& M, int e, const PrimeSpec* at) {
  GradedModule F = e > 0 ? pushforward_module(M, e) : M;
  return at ? free_rank_at(F, *at) : free_rank(F);
}

const char* to_string(SfrOutcome o) {
  switch (o) {
    case SfrOutcome::certified:
      return "CERTIFIED_SFR";
    case SfrOutcome::evidence_not_sfr:
      return "EVIDENCE_NOT_SFR";
    case SfrOutcome::inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

}  // namespace charp
