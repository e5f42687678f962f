#include "charp/frob.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace charp {

std::vector<Rational> GradedModule::relation_degrees() const {
  std::vector<Rational> out;
  out.reserve(relations.columns.size());
  for (const auto& col : relations.columns) out.push_back(column_degree(col, degrees).value_or(Rational(0)));
  return out;
}

void GradedModule::validate() const {
  if (relations.rows != num_generators())
    throw InvalidArgument("relation matrix has " + std::to_string(relations.rows) + " rows for " +
                          std::to_string(num_generators()) + " generators");
  for (int c = 0; c < num_relations(); ++c) {
    const Vec& col = relations.columns[c];
    auto d = column_degree(col, degrees);
    if (!d) continue;
    for (int r = 0; r < relations.rows; ++r) {
      const Poly& f = col[r];
      if (f.is_zero()) continue;
      if (!f.is_homogeneous() || f.degree() + degrees[r] != *d)
        throw InvalidArgument("relation " + std::to_string(c) + " is not homogeneous");
    }
  }
}

GradedModule GradedModule::free(RingPtr ring, std::vector<Rational> degrees) {
  GradedModule M;
  const int b = static_cast<int>(degrees.size());
  M.relations = PolyMatrix::zero(ring->context(), b, 0);
  M.ring = std::move(ring);
  M.degrees = std::move(degrees);
  M.provenance = "free";
  return M;
}

GradedModule GradedModule::cyclic(RingPtr ring, const IdealHandle& J, Rational degree) {
  GradedModule M = free(ring, {degree});
  for (const auto& g : J.generators()) {
    Poly r = ring->reduce(g);
    if (!r.is_zero()) M.relations.columns.push_back(Vec{r});
  }
  M.provenance = "cyclic";
  return M;
}

GradedModule GradedModule::direct_sum(const GradedModule& other) const {
  GradedModule M;
  M.ring = ring;
  M.degrees = degrees;
  M.degrees.insert(M.degrees.end(), other.degrees.begin(), other.degrees.end());
  const int b1 = num_generators(), b = static_cast<int>(M.degrees.size());
  M.relations = PolyMatrix::zero(ring->context(), b, 0);
  for (const auto& col : relations.columns) {
    Vec v = zero_vec(ring->context(), b);
    std::copy(col.begin(), col.end(), v.begin());
    M.relations.columns.push_back(std::move(v));
  }
  for (const auto& col : other.relations.columns) {
    Vec v = zero_vec(ring->context(), b);
    std::copy(col.begin(), col.end(), v.begin() + b1);
    M.relations.columns.push_back(std::move(v));
  }
  M.provenance = provenance + "+" + other.provenance;
  return M;
}

namespace {

std::vector<Monomial> digit_box(int n, std::int64_t q) {
  std::vector<Monomial> out;
  Monomial m(n, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(m);
      return;
    }
    for (m[i] = 0; m[i] < q; ++m[i]) self(self, i + 1);
    m[i] = 0;
  };
  rec(rec, 0);
  return out;
}

// Expands sum_i v_i e_i (as an element of F^e_* S^b) over the digit basis.
Vec expand(const Vec& v, const QuotientRing& R, std::int64_t q, std::int64_t box, int e) {
  const ContextPtr& ctx = R.context();
  Vec out = zero_vec(ctx, static_cast<int>(v.size() * box));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (auto& t : frobenius_decompose(v[i], e)) {
      auto k = static_cast<std::size_t>(i * box + digit_index(t.digit, q));
      out[k] = R.reduce(t.coefficient);
    }
  }
  return out;
}

}  // namespace

GradedModule pushforward_module(const GradedModule& M, int e) {
  if (e < 1) throw InvalidArgument("Frobenius exponent must be positive");
  const RingPtr& R = M.ring;
  const ContextPtr& ctx = R->context();
  const int n = ctx->nvars();
  const std::int64_t q = checked_pow(ctx->characteristic(), e);
  const std::int64_t box = checked_pow(q, n);
  const std::size_t b = M.degrees.size();
  const std::size_t cap = limits().max_generators.load();
  if (box > static_cast<std::int64_t>(cap) || static_cast<std::size_t>(box) * b > cap)
    throw SizeGuardExceeded("pushforward would have " + std::to_string(box) + " x " + std::to_string(b) +
                            " generators (limit " + std::to_string(cap) + ")");

  auto digits = digit_box(n, q);
  GradedModule F;
  F.ring = R;
  F.provenance = "F^" + std::to_string(e) + "_*(" + M.provenance + ")";
  for (std::size_t i = 0; i < b; ++i)
    for (const auto& d : digits) F.degrees.push_back((ctx->degree(d.data()) + M.degrees[i]) / Rational(q));
  const int rows = static_cast<int>(F.degrees.size());
  F.relations = PolyMatrix::zero(ctx, rows, 0);

  auto add = [&](Vec v) {
    if (!is_zero(v)) F.relations.columns.push_back(std::move(v));
  };
  for (const auto& a : M.relations.columns)
    for (const auto& c : digits) {
      Vec shifted(a.size(), Poly(ctx));
      for (std::size_t i = 0; i < a.size(); ++i) shifted[i] = a[i].mul_term(1, c.data());
      add(expand(shifted, *R, q, box, e));
    }
  for (const auto& f : R->ideal().generators())
    for (std::size_t i = 0; i < b; ++i)
      for (const auto& c : digits) {
        Vec v = zero_vec(ctx, static_cast<int>(b));
        v[i] = f.mul_term(1, c.data());
        add(expand(v, *R, q, box, e));
      }
  return F;
}

GradedModule pushforward_ring(RingPtr ring, int e) {
  GradedModule F = pushforward_module(GradedModule::free(std::move(ring), {Rational(0)}), e);
  F.provenance = "F^" + std::to_string(e) + "_*R";
  return F;
}

GradedModule prune(const GradedModule& M) {
  const ContextPtr& ctx = M.ring->context();
  const PrimeField& F = ctx->field();
  const int b = M.num_generators();
  std::vector<Vec> cols = M.relations.columns;
  std::vector<char> row_alive(b, 1), col_alive(cols.size(), 1);

  auto nnz = [&](const Vec& v) {
    int k = 0;
    for (int r = 0; r < b; ++r) k += row_alive[r] && !v[r].is_zero();
    return k;
  };

  for (;;) {
    int best_col = -1, best_row = -1, best_nnz = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!col_alive[c]) continue;
      int row = -1;
      for (int r = 0; r < b && row < 0; ++r)
        if (row_alive[r] && cols[c][r].is_constant() && !cols[c][r].is_zero()) row = r;
      if (row < 0) continue;
      int k = nnz(cols[c]);
      if (best_col < 0 || k < best_nnz) {
        best_col = static_cast<int>(c);
        best_row = row;
        best_nnz = k;
        if (k == 1) break;
      }
    }
    if (best_col < 0) break;
    const Vec pivot = cols[best_col];
    const Coeff inv = F.inv(pivot[best_row].lead_coeff());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!col_alive[c] || static_cast<int>(c) == best_col || cols[c][best_row].is_zero()) continue;
      Poly factor = cols[c][best_row].scaled(inv);
      for (int r = 0; r < b; ++r)
        if (row_alive[r] && !pivot[r].is_zero()) cols[c][r] = M.ring->reduce(cols[c][r] - factor * pivot[r]);
    }
    row_alive[best_row] = 0;
    col_alive[best_col] = 0;
  }

  GradedModule out;
  out.ring = M.ring;
  out.provenance = M.provenance;
  std::vector<int> keep;
  for (int r = 0; r < b; ++r)
    if (row_alive[r]) {
      keep.push_back(r);
      out.degrees.push_back(M.degrees[r]);
    }
  out.relations = PolyMatrix::zero(ctx, static_cast<int>(keep.size()), 0);
  std::vector<Vec> seen;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (!col_alive[c]) continue;
    Vec v;
    v.reserve(keep.size());
    for (int r : keep) v.push_back(cols[c][r]);
    if (is_zero(v)) continue;
    int k = lead_component(v);
    Coeff s = F.inv(v[k].lead_coeff());
    for (auto& f : v) f = f.scaled(s);
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    out.relations.columns.push_back(std::move(v));
  }
  return out;
}

std::vector<GradedModule> split_by_degree_class(const GradedModule& M) {
  const ContextPtr& ctx = M.ring->context();
  const Rational step = ctx->grading_step();
  auto key = [&](Rational d) {
    Rational k = d / step;
    std::int64_t fl = k.numerator() / k.denominator();
    if (k < Rational(fl)) --fl;
    return d - Rational(fl) * step;
  };
  std::map<Rational, std::vector<int>> classes;
  for (int i = 0; i < M.num_generators(); ++i) classes[key(M.degrees[i])].push_back(i);

  std::vector<int> class_of(M.num_generators()), pos(M.num_generators());
  std::vector<GradedModule> out;
  for (const auto& [k, members] : classes) {
    GradedModule S;
    S.ring = M.ring;
    S.provenance = M.provenance;
    for (std::size_t j = 0; j < members.size(); ++j) {
      class_of[members[j]] = static_cast<int>(out.size());
      pos[members[j]] = static_cast<int>(j);
      S.degrees.push_back(M.degrees[members[j]]);
    }
    S.relations = PolyMatrix::zero(ctx, static_cast<int>(members.size()), 0);
    out.push_back(std::move(S));
  }
  for (const auto& col : M.relations.columns) {
    int lead = lead_component(col);
    if (lead < 0) continue;
    GradedModule& S = out[class_of[lead]];
    Vec v = zero_vec(ctx, S.num_generators());
    for (int r = 0; r < M.num_generators(); ++r) {
      if (col[r].is_zero()) continue;
      if (class_of[r] != class_of[lead]) throw InvalidArgument("relation mixes degree classes; module is not graded");
      v[pos[r]] = col[r];
    }
    S.relations.columns.push_back(std::move(v));
  }
  return out;
}

std::int64_t rank_at_prime(const GradedModule& M, const IdealHandle& P) {
  std::int64_t total = 0;
  for (const auto& S : split_by_degree_class(M)) {
    GradedModule T = prune(S);
    total += T.num_generators();
    if (T.num_relations() > 0) total -= generic_rank(T.relations, P);
  }
  return total;
}

std::int64_t generic_rank_pushforward(RingPtr ring, int e) {
  GradedModule F = pushforward_ring(ring, e);
  std::int64_t r = rank_at_prime(F, ring->ideal());
  std::int64_t expected = checked_pow(ring->characteristic(), e * ring->gamma());
  if (r != expected)
    throw InternalError("generic rank of F^e_*R is " + std::to_string(r) + ", expected " + std::to_string(expected));
  return r;
}

}  // namespace charp
