#include "charp/ring.hpp"

#include <algorithm>

#include "charp/frob.hpp"

namespace charp {

QuotientRing::QuotientRing(IdealHandle I) : I_(std::move(I)) { homogeneous_ = I_.is_homogeneous(); }

std::shared_ptr<const QuotientRing> QuotientRing::make(IdealHandle I) {
  if (I.is_unit()) throw InvalidArgument("the defining ideal is the unit ideal");
  return std::shared_ptr<const QuotientRing>(new QuotientRing(std::move(I)));
}

int QuotientRing::dimension() const {
  std::call_once(dim_once_, [this] { dim_ = charp::dimension(I_); });
  return dim_;
}

IdealHandle QuotientRing::maximal_ideal() const {
  std::vector<Poly> gens;
  for (int i = 0; i < nvars(); ++i) gens.push_back(Poly::variable(context(), i));
  return IdealHandle(context(), std::move(gens));
}

IdealHandle QuotientRing::preimage(std::vector<Poly> gens) const {
  for (const auto& g : I_.generators()) gens.push_back(g);
  return IdealHandle(context(), std::move(gens));
}

PrimeSpec PrimeSpec::make(RingPtr ring, IdealHandle P, std::string name) {
  if (!P.contains(ring->ideal()))
    throw InvalidArgument("prime " + (name.empty() ? P.to_string() : name) + " does not contain the defining ideal");
  if (P.is_unit()) throw InvalidArgument("prime " + name + " is the unit ideal");
  PrimeSpec s;
  s.ring = std::move(ring);
  s.ideal = std::move(P);
  s.name = std::move(name);
  s.alpha = dimension(s.ideal);
  s.maximal = s.alpha == 0;
  return s;
}

PrimeSpec PrimeSpec::homogeneous_maximal(RingPtr ring) {
  IdealHandle m = ring->maximal_ideal();
  return make(std::move(ring), std::move(m), "m");
}

int krull_dimension(const QuotientRing& R) { return R.dimension(); }

IdealHandle annihilator(const GradedModule& M) {
  const RingPtr& R = M.ring;
  const ContextPtr& ctx = R->context();
  const int b = M.num_generators();
  if (b == 0) return IdealHandle::unit(ctx);
  auto rdeg = M.relation_degrees();
  std::optional<IdealHandle> acc;
  for (int i = 0; i < b; ++i) {
    // ann(e_i) is the first coordinate of the syzygies of [e_i | A].
    PolyMatrix m = PolyMatrix::zero(ctx, b, 1 + M.num_relations());
    m.columns[0][i] = Poly::constant(ctx, 1);
    for (int c = 0; c < M.num_relations(); ++c) m.columns[1 + c] = M.relations.columns[c];
    std::vector<Rational> cdeg{M.degrees[i]};
    cdeg.insert(cdeg.end(), rdeg.begin(), rdeg.end());
    auto syz = syzygies(m, M.degrees, cdeg, &R->ideal());
    std::vector<Poly> gens = R->ideal().generators();
    for (const auto& col : syz.matrix.columns)
      if (!col[0].is_zero()) gens.push_back(col[0]);
    IdealHandle ann(ctx, std::move(gens));
    acc = acc ? intersect(*acc, ann) : ann;
  }
  return *acc;
}

int gamma(const GradedModule& M) {
  IdealHandle ann = annihilator(M);
  if (ann.is_unit()) return -1;
  return dimension(ann);
}

std::optional<int> gamma_local(const PrimeSpec& P, const std::vector<IdealHandle>& components) {
  std::optional<int> best;
  for (const auto& Q : components)
    if (P.ideal.contains(Q)) {
      int d = dimension(Q);
      if (!best || d > *best) best = d;
    }
  return best;
}

std::int64_t length_at_prime(const IdealHandle& J, const IdealHandle& P) {
  if (!P.contains(J)) return 0;
  const int n = P.context()->nvars();
  auto base = hilbert_data(P.leading_monomials(), n);
  const int d = base.dimension;
  const std::int64_t eP = base.multiplicity;
  // lambda_t = e_d(S/(P^t + J)) / e(S/P); P is the only minimal prime of
  // P^t + J, so the associativity formula isolates the local length.
  std::int64_t prev = 0;
  const int bound = limits().layer_bound.load();
  for (int t = 1; t <= bound + 1; ++t) {
    IdealHandle K = P.power(t) + J;
    auto h = hilbert_data(K.leading_monomials(), n);
    if (h.dimension != d) throw InternalError("dimension drop while measuring a local length");
    if (h.multiplicity % eP != 0) throw InternalError("non-integral local length");
    std::int64_t lambda = h.multiplicity / eP;
    if (lambda == prev) return lambda;
    prev = lambda;
  }
  throw NotCofinite("local length did not stabilise within " + std::to_string(bound) +
                    " layers; the prime is probably not minimal over the ideal");
}

}  // namespace charp
