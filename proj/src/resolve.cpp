#include "charp/resolve.hpp"

#include <cstdlib>

#include "charp/linalg.hpp"

namespace charp {

std::vector<std::int64_t> Resolution::ranks() const {
  std::vector<std::int64_t> out;
  for (const auto& d : degrees) out.push_back(static_cast<std::int64_t>(d.size()));
  return out;
}

namespace {

PolyMatrix select_columns(const PolyMatrix& m, const std::vector<int>& keep) {
  PolyMatrix out = PolyMatrix::zero(m.ctx, m.rows, 0);
  for (int c : keep) out.columns.push_back(m.columns[c]);
  return out;
}

// Minimal graded resolution of a pruned presentation whose generators lie in
// a single degree class.
Resolution resolve_summand(const GradedModule& P, int steps) {
  const IdealHandle& I = P.ring->ideal();
  Resolution res;
  res.module = P;
  res.degrees.push_back(P.degrees);
  if (steps == 0) return res;

  auto rdeg = P.relation_degrees();
  auto keep = select_minimal_generators(P.relations, P.degrees, rdeg, &I);
  PolyMatrix A = select_columns(P.relations, keep);
  std::vector<Rational> deg;
  for (int c : keep) deg.push_back(rdeg[c]);
  res.maps.push_back(A);
  res.degrees.push_back(deg);

  for (int j = 2; j <= steps; ++j) {
    const PolyMatrix& prev = res.maps.back();
    const auto& tgt = res.degrees[j - 2];
    const auto& src = res.degrees[j - 1];
    if (prev.cols() == 0) {
      res.maps.push_back(PolyMatrix::zero(P.ring->context(), 0, 0));
      res.degrees.emplace_back();
      continue;
    }
    auto syz = syzygies(prev, tgt, src, &I);
    auto k = select_minimal_generators(syz.matrix, src, syz.degrees, &I);
    PolyMatrix B = select_columns(syz.matrix, k);
    for (auto& col : B.columns)
      for (auto& f : col) f = I.normal_form(f);
    std::vector<Rational> d;
    for (int c : k) d.push_back(syz.degrees[c]);
    res.maps.push_back(std::move(B));
    res.degrees.push_back(std::move(d));
  }
  return res;
}

std::size_t constant_rank(const PolyMatrix& m) {
  if (m.rows == 0 || m.cols() == 0) return 0;
  DenseMatrix D(m.rows, m.cols());
  bool any = false;
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows; ++r) {
      Coeff v = m.columns[c][r].constant_term();
      D.at(r, c) = v;
      any = any || v != 0;
    }
  return any ? rank(D, m.ctx->field()) : 0;
}

}  // namespace

Resolution direct_sum(const std::vector<Resolution>& parts) {
  if (parts.empty()) throw InvalidArgument("direct sum of no resolutions");
  const int len = parts[0].length();
  const ContextPtr& ctx = parts[0].module.ring->context();
  Resolution out;
  out.module = parts[0].module;
  out.minimal = true;
  for (std::size_t k = 1; k < parts.size(); ++k) out.module = out.module.direct_sum(parts[k].module);
  out.module.provenance = parts[0].module.provenance;
  out.degrees.assign(len + 1, {});
  for (const auto& p : parts) {
    if (p.length() != len) throw InternalError("direct sum of resolutions of different lengths");
    out.minimal = out.minimal && p.minimal;
    for (int j = 0; j <= len; ++j) out.degrees[j].insert(out.degrees[j].end(), p.degrees[j].begin(), p.degrees[j].end());
  }
  for (int j = 1; j <= len; ++j) {
    const int rows = static_cast<int>(out.degrees[j - 1].size());
    PolyMatrix A = PolyMatrix::zero(ctx, rows, 0);
    int row0 = 0;
    for (const auto& p : parts) {
      for (const auto& col : p.maps[j - 1].columns) {
        Vec v = zero_vec(ctx, rows);
        std::copy(col.begin(), col.end(), v.begin() + row0);
        A.columns.push_back(std::move(v));
      }
      row0 += static_cast<int>(p.degrees[j - 1].size());
    }
    out.maps.push_back(std::move(A));
  }
  return out;
}

Resolution free_resolution(const GradedModule& M, int steps, bool minimal) {
  if (steps < 0) throw InvalidArgument("resolution length must be nonnegative");
  std::vector<Resolution> parts;
  for (const auto& S : split_by_degree_class(M)) parts.push_back(resolve_summand(prune(S), steps));
  Resolution res;
  if (parts.empty()) {
    res.module = GradedModule::free(M.ring, {});
    res.degrees.assign(steps + 1, {});
    for (int j = 0; j < steps; ++j) res.maps.push_back(PolyMatrix::zero(M.ring->context(), 0, 0));
  } else {
    res = direct_sum(parts);
  }
  res.module.provenance = M.provenance;
  return minimal ? res : pad(res);
}

Resolution pad(const Resolution& res) {
  const int len = res.length();
  const ContextPtr& ctx = res.module.ring->context();
  Resolution out = res;
  out.minimal = false;
  // Block j (0 <= j < len) adds a target generator to F_j and a source
  // generator to F_{j+1}; extras are appended in block order.
  std::vector<std::vector<std::pair<int, bool>>> extras(len + 1);  // (block, is_source)
  for (int j = 0; j < len; ++j) {
    extras[j + 1].emplace_back(j, true);
    extras[j].emplace_back(j, false);
  }
  for (int k = 0; k <= len; ++k)
    for (std::size_t t = 0; t < extras[k].size(); ++t) out.degrees[k].push_back(Rational(0));
  for (int k = 1; k <= len; ++k) {
    const PolyMatrix& A = res.maps[k - 1];
    const int rows = static_cast<int>(out.degrees[k - 1].size());
    PolyMatrix B = PolyMatrix::zero(ctx, rows, 0);
    for (const auto& col : A.columns) {
      Vec v = zero_vec(ctx, rows);
      std::copy(col.begin(), col.end(), v.begin());
      B.columns.push_back(std::move(v));
    }
    const int base_rows = static_cast<int>(res.degrees[k - 1].size());
    for (const auto& [block, source] : extras[k]) {
      Vec v = zero_vec(ctx, rows);
      if (source)
        for (std::size_t t = 0; t < extras[k - 1].size(); ++t)
          if (extras[k - 1][t] == std::make_pair(block, false)) v[base_rows + t] = Poly::constant(ctx, 1);
      B.columns.push_back(std::move(v));
    }
    out.maps[k - 1] = std::move(B);
  }
  return out;
}

std::int64_t mu_omega(const Resolution& res, int i) {
  if (i == 0) {
    const GradedModule& M = res.module;
    return M.num_generators() - static_cast<std::int64_t>(constant_rank(M.relations));
  }
  if (i > res.length()) throw InvalidArgument("resolution too short for Omega_" + std::to_string(i));
  if (res.minimal) return res.rank(i);
  const PolyMatrix& A = res.maps[i - 1];
  if (A.cols() == 0) return 0;
  return static_cast<std::int64_t>(
      select_minimal_generators(A, res.degrees[i - 1], res.degrees[i], &res.module.ring->ideal()).size());
}

std::int64_t chi_global(const Resolution& res, int i) {
  std::int64_t v = mu_omega(res, i);
  for (int j = 1; j <= i; ++j) v += (j % 2 ? -1 : 1) * res.rank(i - j);
  return v;
}

std::vector<std::int64_t> local_betti(const Resolution& res, const IdealHandle* P) {
  const int len = res.length();
  std::vector<std::int64_t> r(len + 2, 0);
  for (int j = 1; j <= len; ++j) {
    const PolyMatrix& A = res.maps[j - 1];
    if (A.cols() == 0 || A.rows == 0) continue;
    r[j] = P ? generic_rank(A, *P) : static_cast<std::int64_t>(constant_rank(A));
  }
  std::vector<std::int64_t> beta;
  for (int j = 0; j < len; ++j) beta.push_back(res.rank(j) - r[j] - r[j + 1]);
  return beta;
}

std::vector<std::int64_t> chi_from_betti(const std::vector<std::int64_t>& beta) {
  std::vector<std::int64_t> out;
  std::int64_t acc = 0;
  for (auto b : beta) {
    acc = b - acc;
    out.push_back(acc);
  }
  return out;
}

BettiReport betti_numbers(const GradedModule& M, int e, int i_max, const PrimeSpec* at) {
  if (i_max < 0) throw InvalidArgument("homological index must be nonnegative");
  GradedModule N = e > 0 ? pushforward_module(M, e) : M;
  BettiReport rep;
  rep.e = e;
  rep.i_max = i_max;
  rep.global = at == nullptr;
  rep.gamma = M.num_relations() == 0 && M.num_generators() > 0 ? M.ring->gamma() : gamma(M);
  if (!at) {
    Resolution res = free_resolution(N, i_max, true);
    for (int j = 0; j <= i_max; ++j) rep.beta.push_back(res.rank(j));
    rep.mu_last = mu_omega(res, i_max);
  } else {
    Resolution res = free_resolution(N, i_max + 1, true);
    bool graded_max = at->maximal && at->ideal == M.ring->maximal_ideal();
    rep.beta = local_betti(res, graded_max ? nullptr : &at->ideal);
  }
  rep.chi = chi_from_betti(rep.beta);
  return rep;
}

std::int64_t chi(const BettiReport& report, int i) { return report.chi.at(i); }

SchanuelReport schanuel_compare(const Resolution& a, const Resolution& b, int i) {
  SchanuelReport rep;
  rep.i = i;
  rep.bound = a.module.ring->dimension();
  rep.chi_difference = std::llabs(chi_global(a, i) - chi_global(b, i));
  rep.both_minimal = a.minimal && b.minimal;
  std::string failure;
  if (rep.chi_difference > rep.bound)
    failure = "Euler characteristic difference " + std::to_string(rep.chi_difference) + " exceeds dim R = " +
              std::to_string(rep.bound);
  for (int j = 0; j <= i; ++j) {
    std::int64_t d = std::llabs(a.rank(j) - b.rank(j));
    rep.rank_differences.push_back(d);
    if (rep.both_minimal && j >= 1 && d > rep.bound * (std::int64_t{1} << (j - 1)) && failure.empty())
      failure = "rank difference " + std::to_string(d) + " at step " + std::to_string(j) + " exceeds dim(R) 2^(j-1)";
  }
  rep.holds = failure.empty();
  if (!rep.holds) throw TheoremViolation(failure);
  return rep;
}

bool is_complex(const Resolution& res) {
  const IdealHandle& I = res.module.ring->ideal();
  auto vanishes = [&](const PolyMatrix& m) {
    for (const auto& col : m.columns)
      for (const auto& f : col)
        if (!I.normal_form(f).is_zero()) return false;
    return true;
  };
  for (int j = 1; j < res.length(); ++j) {
    const PolyMatrix& A = res.maps[j - 1];
    const PolyMatrix& B = res.maps[j];
    if (A.cols() == 0 || B.cols() == 0 || A.rows == 0) continue;
    if (!vanishes(A * B)) return false;
  }
  return true;
}

}  // namespace charp
