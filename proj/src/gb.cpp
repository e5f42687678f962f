#include "charp/gb.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

#include "charp/linalg.hpp"

namespace charp {

Vec zero_vec(const ContextPtr& ctx, int n) { return Vec(n, Poly(ctx)); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& f) { return f.is_zero(); });
}

int lead_component(const Vec& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) return static_cast<int>(k);
  return -1;
}

PolyMatrix PolyMatrix::zero(ContextPtr ctx, int rows, int cols) {
  PolyMatrix m;
  m.ctx = ctx;
  m.rows = rows;
  m.columns.assign(cols, zero_vec(ctx, rows));
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t = zero(ctx, cols(), rows);
  for (int c = 0; c < cols(); ++c)
    for (int r = 0; r < rows; ++r) t.columns[r][c] = columns[c][r];
  return t;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (o.rows != cols()) throw InvalidArgument("matrix dimensions do not match");
  PolyMatrix out = zero(ctx, rows, o.cols());
  for (int j = 0; j < o.cols(); ++j)
    for (int i = 0; i < cols(); ++i) {
      const Poly& a = o.columns[j][i];
      if (a.is_zero()) continue;
      for (int r = 0; r < rows; ++r)
        if (!columns[i][r].is_zero()) out.columns[j][r] += a * columns[i][r];
    }
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const Vec& v) { return charp::is_zero(v); });
}

// ---------------------------------------------------------------------------
// polynomial reduction

namespace {

const Poly* find_poly_reducer(std::span<const Poly> basis, const Exp* m, int n) {
  for (const auto& g : basis)
    if (!g.is_zero() && divides(g.lead_exp(), m, n)) return &g;
  return nullptr;
}

}  // namespace

Poly reduce_poly(const Poly& f, std::span<const Poly> basis) {
  if (f.is_zero() || basis.empty()) return f;
  const int n = f.ctx().nvars();
  const PrimeField& F = f.ctx().field();
  Poly work = f;
  Poly rem(f.context());
  Monomial shift(n);
  std::size_t pos = 0;
  while (pos < work.size()) {
    const Exp* m = work.exp_ptr(pos);
    const Poly* g = find_poly_reducer(basis, m, n);
    if (!g) {
      rem.append_term(m, work.coeff(pos));
      ++pos;
      continue;
    }
    for (int k = 0; k < n; ++k) shift[k] = m[k] - g->lead_exp()[k];
    Coeff c = F.mul(work.coeff(pos), F.inv(g->lead_coeff()));
    work.sub_mul_term(pos, c, shift.data(), *g);
    pos = 0;
  }
  return rem;
}

std::vector<Poly> reduce_groebner_basis(std::vector<Poly> gb) {
  std::erase_if(gb, [](const Poly& g) { return g.is_zero(); });
  if (gb.empty()) return gb;
  const Context& C = gb.front().ctx();
  const int n = C.nvars();
  for (auto& g : gb) g = g.monic();
  std::stable_sort(gb.begin(), gb.end(), [&C](const Poly& a, const Poly& b) {
    return C.compare(a.lead_exp(), b.lead_exp()) < 0;
  });
  std::vector<Poly> minimal;
  for (auto& g : gb) {
    bool redundant = false;
    for (const auto& h : minimal)
      if (divides(h.lead_exp(), g.lead_exp(), n)) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(std::move(g));
  }
  std::vector<Poly> out;
  out.reserve(minimal.size());
  for (const auto& g : minimal) {
    Poly lead = Poly::monomial(g.context(), g.exponents(0), 1);
    Poly tail = g - lead;
    out.push_back(lead + reduce_poly(tail, minimal));
  }
  std::sort(out.begin(), out.end(), [&C](const Poly& a, const Poly& b) {
    return C.compare(a.lead_exp(), b.lead_exp()) > 0;
  });
  return out;
}

// ---------------------------------------------------------------------------
// GroebnerEngine

GroebnerEngine::GroebnerEngine(ContextPtr ctx, int rank, std::vector<Rational> shifts, Options options)
    : ctx_(std::move(ctx)), rank_(rank), shifts_(std::move(shifts)), opt_(options) {
  if (rank_ < 0) throw InvalidArgument("negative module rank");
  if (shifts_.empty()) shifts_.assign(rank_, Rational(0));
  if (static_cast<int>(shifts_.size()) != rank_) throw InvalidArgument("shift count does not match rank");
  if (opt_.collect_syzygies) opt_.track = true;
  budget_ = opt_.budget ? opt_.budget : limits().pair_budget.load();
  by_comp_.resize(rank_);
}

Rational GroebnerEngine::term_degree(int comp, const Exp* m) const {
  return ctx_->degree(m) + shifts_[comp];
}

bool GroebnerEngine::done(int a, int b) const {
  if (a < b) std::swap(a, b);
  return done_[a][b] != 0;
}

void GroebnerEngine::mark_done(int a, int b) {
  if (a < b) std::swap(a, b);
  done_[a][b] = 1;
}

int GroebnerEngine::find_reducer(int comp, const Exp* m) const {
  const int n = ctx_->nvars();
  for (int idx : by_comp_[comp])
    if (divides(elems_[idx].lead.data(), m, n)) return idx;
  return -1;
}

namespace {

// rep -= c * x^shift * other, growing rep as needed.
void rep_axpy(Vec& rep, const ContextPtr& ctx, Coeff c, const Exp* shift, const Vec& other) {
  if (rep.size() < other.size()) rep.resize(other.size(), Poly(ctx));
  for (std::size_t t = 0; t < other.size(); ++t)
    if (!other[t].is_zero()) rep[t].sub_mul_term(0, c, shift, other[t]);
}

}  // namespace

Vec GroebnerEngine::reduce(Vec u, Vec* rep) const {
  // Top reduction only: stops once the leading term is irreducible.
  const int n = ctx_->nvars();
  Monomial shift(n);
  int k = lead_component(u);
  while (k >= 0) {
    const Exp* m = u[k].lead_exp();
    int r = find_reducer(k, m);
    if (r < 0) break;
    const Element& e = elems_[r];
    for (int i = 0; i < n; ++i) shift[i] = m[i] - e.lead[i];
    Coeff c = u[k].lead_coeff();
    for (int j = k; j < rank_; ++j)
      if (!e.v[j].is_zero()) u[j].sub_mul_term(0, c, shift.data(), e.v[j]);
    if (rep && !e.rep.empty()) rep_axpy(*rep, ctx_, c, shift.data(), e.rep);
    while (k < rank_ && u[k].is_zero()) ++k;
    if (k == rank_) k = -1;
  }
  return u;
}

Vec GroebnerEngine::normal_form(const Vec& v) const {
  if (static_cast<int>(v.size()) != rank_) throw InvalidArgument("vector length does not match module rank");
  const int n = ctx_->nvars();
  Vec u = v;
  Monomial shift(n);
  for (int k = 0; k < rank_; ++k) {
    Poly rem(ctx_);
    std::size_t pos = 0;
    while (pos < u[k].size()) {
      const Exp* m = u[k].exp_ptr(pos);
      int r = find_reducer(k, m);
      if (r < 0) {
        rem.append_term(m, u[k].coeff(pos));
        ++pos;
        continue;
      }
      const Element& e = elems_[r];
      for (int i = 0; i < n; ++i) shift[i] = m[i] - e.lead[i];
      Coeff c = u[k].coeff(pos);
      u[k].sub_mul_term(pos, c, shift.data(), e.v[k]);
      pos = 0;
      for (int j = k + 1; j < rank_; ++j)
        if (!e.v[j].is_zero()) u[j].sub_mul_term(0, c, shift.data(), e.v[j]);
    }
    u[k] = std::move(rem);
  }
  return u;
}

Vec GroebnerEngine::reduce_rep(Vec rep) const {
  if (quotient_gb_.empty()) return rep;
  for (auto& r : rep) r = reduce_poly(r, quotient_gb_);
  return rep;
}

void GroebnerEngine::insert(Vec v, Vec rep, Rational degree, bool quotient) {
  const int comp = lead_component(v);
  const PrimeField& F = ctx_->field();
  const Coeff lc = v[comp].lead_coeff();
  if (lc != 1) {
    Coeff inv = F.inv(lc);
    for (auto& f : v) f = f.scaled(inv);
    for (auto& f : rep) f = f.scaled(inv);
  }
  Element e;
  e.lead.assign(v[comp].lead_exp(), v[comp].lead_exp() + ctx_->nvars());
  e.comp = comp;
  e.v = std::move(v);
  e.rep = opt_.track ? reduce_rep(std::move(rep)) : Vec{};
  e.degree = degree;
  e.quotient = quotient;
  const int idx = static_cast<int>(elems_.size());
  const int n = ctx_->nvars();
  done_.emplace_back(idx, 0);
  for (int other : by_comp_[comp]) {
    const Element& o = elems_[other];
    if (quotient && o.quotient) {
      done_[idx][other] = 1;
      continue;
    }
    if (!opt_.collect_syzygies && rank_ == 1 && coprime(o.lead.data(), e.lead.data(), n)) {
      done_[idx][other] = 1;
      continue;
    }
    Monomial l = lcm(o.lead.data(), e.lead.data(), n);
    pairs_.insert(Pair{term_degree(comp, l.data()), ctx_->total_degree(l.data()), idx, other});
  }
  by_comp_[comp].push_back(idx);
  elems_.push_back(std::move(e));
}

void GroebnerEngine::add_quotient_relations(std::span<const Poly> ideal_gb) {
  for (const auto& g : ideal_gb) {
    if (g.is_zero()) continue;
    quotient_gb_.push_back(g);
  }
  for (int k = 0; k < rank_; ++k)
    for (const auto& g : ideal_gb) {
      if (g.is_zero()) continue;
      Vec v = zero_vec(ctx_, rank_);
      v[k] = g;
      insert(std::move(v), {}, term_degree(k, g.lead_exp()), true);
    }
}

void GroebnerEngine::add_generator(const Vec& v, Rational degree) {
  if (static_cast<int>(v.size()) != rank_) throw InvalidArgument("vector length does not match module rank");
  Vec rep;
  if (opt_.track) {
    if (started_) throw InternalError("tracked generators must be added before completion");
    const int idx = tracked_++;
    rep = zero_vec(ctx_, idx + 1);
    rep[idx] = Poly::constant(ctx_, 1);
  }
  Vec u = reduce(v, opt_.track ? &rep : nullptr);
  if (is_zero(u)) {
    if (opt_.collect_syzygies) syzygies_.push_back({reduce_rep(std::move(rep)), degree});
    return;
  }
  insert(std::move(u), std::move(rep), degree, false);
}

void GroebnerEngine::complete() { complete_up_to(std::nullopt); }

void GroebnerEngine::complete_up_to(std::optional<Rational> max_degree) {
  started_ = true;
  const int n = ctx_->nvars();
  Monomial si(n), sj(n);
  while (!pairs_.empty()) {
    auto it = pairs_.begin();
    if (max_degree && it->degree > *max_degree) break;
    Pair pr = *it;
    pairs_.erase(it);
    const int i = pr.i, j = pr.j;
    const Element& a = elems_[i];
    const Element& b = elems_[j];
    const int comp = a.comp;
    Monomial l = lcm(a.lead.data(), b.lead.data(), n);
    bool skip = false;
    for (int m : by_comp_[comp]) {
      if (m == i || m == j) continue;
      if (!divides(elems_[m].lead.data(), l.data(), n)) continue;
      if (done(i, m) && done(j, m)) {
        skip = true;
        break;
      }
    }
    mark_done(i, j);
    if (skip) continue;
    if (++pairs_processed_ > budget_)
      throw BudgetExceeded("Groebner pair budget of " + std::to_string(budget_) + " exceeded");
    for (int k = 0; k < n; ++k) {
      si[k] = l[k] - a.lead[k];
      sj[k] = l[k] - b.lead[k];
    }
    Vec s = zero_vec(ctx_, rank_);
    for (int c = comp; c < rank_; ++c) {
      if (!a.v[c].is_zero()) s[c] = a.v[c].mul_term(1, si.data());
      if (!b.v[c].is_zero()) s[c].sub_mul_term(0, 1, sj.data(), b.v[c]);
    }
    Vec rep;
    if (opt_.track) {
      if (!a.rep.empty()) rep_axpy(rep, ctx_, ctx_->field().neg(1), si.data(), a.rep);
      if (!b.rep.empty()) rep_axpy(rep, ctx_, 1, sj.data(), b.rep);
    }
    Vec u = reduce(std::move(s), opt_.track ? &rep : nullptr);
    if (is_zero(u)) {
      if (opt_.collect_syzygies) {
        rep.resize(tracked_, Poly(ctx_));
        rep = reduce_rep(std::move(rep));
        if (!is_zero(rep)) syzygies_.push_back({std::move(rep), pr.degree});
      }
      continue;
    }
    insert(std::move(u), std::move(rep), pr.degree, false);
  }
}

std::vector<Vec> GroebnerEngine::reduced_basis(bool include_quotient) const {
  const int n = ctx_->nvars();
  std::vector<Vec> out;
  for (int k = 0; k < rank_; ++k) {
    std::vector<int> keep;
    for (int idx : by_comp_[k]) {
      bool redundant = false;
      for (int other : by_comp_[k]) {
        if (other == idx) continue;
        const auto& lo = elems_[other].lead;
        const auto& li = elems_[idx].lead;
        if (divides(lo.data(), li.data(), n) && (lo != li || other < idx)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) keep.push_back(idx);
    }
    std::sort(keep.begin(), keep.end(), [&](int a, int b) {
      return ctx_->compare(elems_[a].lead.data(), elems_[b].lead.data()) > 0;
    });
    for (int idx : keep) {
      const Element& e = elems_[idx];
      if (e.quotient && !include_quotient) continue;
      Vec tail = e.v;
      Poly lead = Poly::monomial(ctx_, e.lead, 1);
      tail[k] = tail[k] - lead;
      Vec red = normal_form(tail);
      red[k] = red[k] + lead;
      out.push_back(std::move(red));
    }
  }
  return out;
}

std::vector<std::vector<Monomial>> GroebnerEngine::leading_monomials() const {
  const int n = ctx_->nvars();
  std::vector<std::vector<Monomial>> out(rank_);
  for (int k = 0; k < rank_; ++k) {
    for (int idx : by_comp_[k]) {
      const auto& li = elems_[idx].lead;
      bool redundant = false;
      for (int other : by_comp_[k]) {
        if (other == idx) continue;
        const auto& lo = elems_[other].lead;
        if (divides(lo.data(), li.data(), n) && (lo != li || other < idx)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) out[k].push_back(li);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// IdealHandle

IdealHandle::IdealHandle(ContextPtr ctx, std::vector<Poly> gens) : s_(std::make_shared<State>()) {
  if (!ctx) throw InvalidArgument("ideal needs a context");
  for (const auto& g : gens)
    if (g.context() && g.context() != ctx && g.ctx().nvars() != ctx->nvars())
      throw InvalidArgument("generator from a different ring");
  s_->ctx = std::move(ctx);
  std::erase_if(gens, [](const Poly& g) { return g.is_zero(); });
  s_->gens = std::move(gens);
}

IdealHandle IdealHandle::from_groebner_basis(ContextPtr ctx, std::vector<Poly> gb) {
  IdealHandle h(std::move(ctx), std::move(gb));
  std::call_once(h.s_->once, [&h] { h.s_->gb = reduce_groebner_basis(h.s_->gens); });
  return h;
}

IdealHandle IdealHandle::parse(ContextPtr ctx, std::string_view text) {
  std::vector<Poly> gens;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      std::string_view piece = text.substr(start, i - start);
      bool blank = std::all_of(piece.begin(), piece.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
      if (!blank) {
        try {
          gens.push_back(Poly::parse(ctx, piece));
        } catch (const ParseError& e) {
          throw ParseError(std::string("in ideal generator '") + std::string(piece) + "': " + e.what(),
                           start + e.position());
        }
      } else if (i < text.size()) {
        throw ParseError("empty ideal generator", start);
      }
      start = i + 1;
    }
  }
  return IdealHandle(std::move(ctx), std::move(gens));
}

IdealHandle IdealHandle::unit(ContextPtr ctx) {
  Poly one = Poly::constant(ctx, 1);
  return from_groebner_basis(ctx, {one});
}

IdealHandle IdealHandle::variables(ContextPtr ctx) {
  std::vector<Poly> gens;
  for (int i = 0; i < ctx->nvars(); ++i) gens.push_back(Poly::variable(ctx, i));
  return from_groebner_basis(ctx, std::move(gens));
}

const ContextPtr& IdealHandle::context() const {
  if (!s_) throw InvalidArgument("uninitialised ideal");
  return s_->ctx;
}

const std::vector<Poly>& IdealHandle::generators() const {
  if (!s_) throw InvalidArgument("uninitialised ideal");
  return s_->gens;
}

const std::vector<Poly>& IdealHandle::groebner_basis() const {
  if (!s_) throw InvalidArgument("uninitialised ideal");
  std::call_once(s_->once, [this] {
    State& s = *s_;
    if (s.gens.empty()) return;
    for (const auto& g : s.gens)
      if (g.is_constant()) {
        s.gb = {Poly::constant(s.ctx, 1)};
        return;
      }
    GroebnerEngine eng(s.ctx, 1, {Rational(0)});
    for (const auto& g : s.gens) eng.add_generator({g}, g.degree());
    eng.complete();
    std::vector<Poly> gb;
    for (auto& v : eng.reduced_basis()) gb.push_back(std::move(v[0]));
    s.gb = reduce_groebner_basis(std::move(gb));
  });
  return s_->gb;
}

Poly IdealHandle::normal_form(const Poly& f) const { return reduce_poly(f, groebner_basis()); }

bool IdealHandle::contains(const Poly& f) const { return normal_form(f).is_zero(); }

bool IdealHandle::contains(const IdealHandle& other) const {
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

bool IdealHandle::operator==(const IdealHandle& other) const {
  return groebner_basis() == other.groebner_basis();
}

bool IdealHandle::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb[0].is_constant();
}

bool IdealHandle::is_zero() const { return generators().empty(); }

bool IdealHandle::is_homogeneous() const {
  for (const auto& g : generators())
    if (!g.is_homogeneous()) return false;
  return true;
}

std::vector<Monomial> IdealHandle::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : groebner_basis()) {
    auto e = g.exponents(0);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

IdealHandle IdealHandle::operator+(const IdealHandle& other) const {
  std::vector<Poly> gens = generators();
  gens.insert(gens.end(), other.generators().begin(), other.generators().end());
  return IdealHandle(context(), std::move(gens));
}

IdealHandle IdealHandle::operator*(const IdealHandle& other) const {
  std::vector<Poly> gens;
  for (const auto& a : generators())
    for (const auto& b : other.generators()) gens.push_back(a * b);
  return IdealHandle(context(), std::move(gens));
}

IdealHandle IdealHandle::power(int t) const {
  if (t < 0) throw InvalidArgument("negative ideal power");
  if (t == 0) return unit(context());
  const auto& g = generators();
  std::vector<Poly> out;
  // Products over multisets of generator indices.
  std::vector<int> idx(t, 0);
  const int m = static_cast<int>(g.size());
  if (m == 0) return zero(context());
  while (true) {
    Poly prod = g[idx[0]];
    for (int k = 1; k < t; ++k) prod = prod * g[idx[k]];
    out.push_back(std::move(prod));
    int k = t - 1;
    while (k >= 0 && idx[k] == m - 1) --k;
    if (k < 0) break;
    ++idx[k];
    for (int r = k + 1; r < t; ++r) idx[r] = idx[k];
  }
  return IdealHandle(context(), std::move(out));
}

std::string IdealHandle::to_string() const {
  std::ostringstream os;
  os << "(";
  const auto& g = groebner_basis();
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? ", " : "") << g[i].to_string();
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// SubmoduleHandle

SubmoduleHandle::SubmoduleHandle(ContextPtr ctx, int rank, std::vector<Vec> gens,
                                 std::vector<Rational> shifts, std::optional<IdealHandle> quotient)
    : ctx_(std::move(ctx)),
      rank_(rank),
      gens_(std::move(gens)),
      shifts_(std::move(shifts)),
      quotient_(std::move(quotient)),
      once_(std::make_shared<std::once_flag>()),
      engine_(std::make_shared<std::unique_ptr<GroebnerEngine>>()),
      gb_(std::make_shared<std::vector<Vec>>()) {
  if (shifts_.empty()) shifts_.assign(rank_, Rational(0));
  for (const auto& g : gens_)
    if (static_cast<int>(g.size()) != rank_) throw InvalidArgument("generator length does not match rank");
}

const GroebnerEngine& SubmoduleHandle::engine() const {
  std::call_once(*once_, [this] {
    auto eng = std::make_unique<GroebnerEngine>(ctx_, rank_, shifts_);
    if (quotient_) eng->add_quotient_relations(quotient_->groebner_basis());
    for (const auto& g : gens_) {
      auto d = column_degree(g, shifts_);
      if (d) eng->add_generator(g, *d);
    }
    eng->complete();
    *gb_ = eng->reduced_basis(false);
    *engine_ = std::move(eng);
  });
  return **engine_;
}

const std::vector<Vec>& SubmoduleHandle::groebner_basis() const {
  engine();
  return *gb_;
}

Vec SubmoduleHandle::normal_form(const Vec& v) const { return engine().normal_form(v); }

bool SubmoduleHandle::contains(const Vec& v) const { return is_zero(normal_form(v)); }

std::optional<Rational> column_degree(const Vec& column, std::span<const Rational> row_degrees) {
  int k = lead_component(column);
  if (k < 0) return std::nullopt;
  return column[k].degree() + row_degrees[k];
}

// ---------------------------------------------------------------------------
// elimination helpers

namespace {

std::vector<int> shift_map(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 1);
  return m;
}

// Drops the first variable, which must not occur.
Poly drop_first_variable(const Poly& f, const ContextPtr& target) {
  const int n = target->nvars();
  std::vector<std::pair<Monomial, Coeff>> terms;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto e = f.exponents(i);
    if (e[0] != 0) throw InternalError("elimination variable survived");
    terms.emplace_back(Monomial(e.begin() + 1, e.begin() + 1 + n), f.coeff(i));
  }
  return Poly::from_terms(target, std::move(terms));
}

IdealHandle intersect_by_elimination(const IdealHandle& I, const IdealHandle& J) {
  const ContextPtr& ctx = I.context();
  ContextPtr big = ctx->with_elimination_variable("_t");
  auto map = shift_map(ctx->nvars());
  Poly t = Poly::variable(big, 0);
  Poly one_minus_t = Poly::constant(big, 1) - t;
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) gens.push_back(t * g.embed(big, map));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * g.embed(big, map));
  IdealHandle H(big, std::move(gens));
  std::vector<Poly> out;
  for (const auto& g : H.groebner_basis())
    if (g.exponents(0)[0] == 0) out.push_back(drop_first_variable(g, ctx));
  return IdealHandle::from_groebner_basis(ctx, std::move(out));
}

}  // namespace

IdealHandle intersect(const IdealHandle& I, const IdealHandle& J) {
  if (I.is_zero() || J.is_zero()) return IdealHandle::zero(I.context());
  if (J.contains(I)) return IdealHandle::from_groebner_basis(I.context(), I.groebner_basis());
  if (I.contains(J)) return IdealHandle::from_groebner_basis(J.context(), J.groebner_basis());
  return intersect_by_elimination(I, J);
}

IdealHandle colon_by_elimination(const IdealHandle& I, const IdealHandle& J) {
  const ContextPtr& ctx = I.context();
  std::optional<IdealHandle> acc;
  for (const auto& g : J.generators()) {
    IdealHandle piece = [&] {
      if (I.contains(g)) return IdealHandle::unit(ctx);
      if (I.is_zero()) return IdealHandle::zero(ctx);
      IdealHandle inter = intersect(I, IdealHandle(ctx, {g}));
      std::vector<Poly> q;
      for (const auto& h : inter.groebner_basis()) q.push_back(h.exact_divide(g));
      return IdealHandle(ctx, std::move(q));
    }();
    acc = acc ? intersect(*acc, piece) : piece;
  }
  if (!acc) return IdealHandle::unit(ctx);
  return IdealHandle::from_groebner_basis(ctx, acc->groebner_basis());
}

std::vector<std::pair<Rational, std::vector<Monomial>>> standard_monomials_by_degree(
    const IdealHandle& J) {
  const ContextPtr& ctx = J.context();
  const int n = ctx->nvars();
  auto leads = J.leading_monomials();
  std::map<Rational, std::vector<Monomial>> groups;
  if (!colength(J)) throw NotCofinite("ideal does not have finite colength");
  Monomial m(n, 0);
  auto in_lt = [&](const Monomial& x) {
    for (const auto& l : leads)
      if (divides(l.data(), x.data(), n)) return true;
    return false;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      groups[ctx->degree(m.data())].push_back(m);
      return;
    }
    for (m[i] = 0;; ++m[i]) {
      if (in_lt(m)) break;
      self(self, i + 1);
    }
    m[i] = 0;
  };
  rec(rec, 0);
  std::vector<std::pair<Rational, std::vector<Monomial>>> out;
  for (auto& [d, mons] : groups) {
    std::sort(mons.begin(), mons.end(), [&ctx](const Monomial& a, const Monomial& b) {
      return ctx->compare(a.data(), b.data()) > 0;
    });
    out.emplace_back(d, std::move(mons));
  }
  return out;
}

IdealHandle colon_by_linear_algebra(const IdealHandle& I, const IdealHandle& J) {
  const ContextPtr& ctx = I.context();
  const int n = ctx->nvars();
  const PrimeField& F = ctx->field();
  if (!I.is_homogeneous() || !J.is_homogeneous()) throw InvalidArgument("linear-algebra colon needs homogeneous ideals");
  auto groups = standard_monomials_by_degree(I);
  std::map<Rational, std::size_t> group_of;
  std::vector<std::map<Monomial, std::size_t>> index(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    group_of[groups[g].first] = g;
    for (std::size_t i = 0; i < groups[g].second.size(); ++i) index[g][groups[g].second[i]] = i;
  }
  std::vector<Poly> jgens;
  for (const auto& g : J.generators())
    if (!I.contains(g)) jgens.push_back(g);
  const std::vector<Poly>& Igb = I.groebner_basis();
  std::vector<Poly> gb = Igb;
  std::vector<Monomial> leads = I.leading_monomials();
  if (jgens.empty()) return IdealHandle::unit(ctx);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& [deg, mons] = groups[g];
    // Rows: coordinates of every product, stacked over generators of J.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // (target group, row offset)
    std::size_t rows = 0;
    for (const auto& h : jgens) {
      auto it = group_of.find(deg + h.degree());
      if (it == group_of.end()) {
        blocks.emplace_back(SIZE_MAX, 0);
        continue;
      }
      blocks.emplace_back(it->second, rows);
      rows += groups[it->second].second.size();
    }
    std::vector<std::vector<Coeff>> kernel_rows;
    if (rows == 0) {
      for (std::size_t i = 0; i < mons.size(); ++i) {
        std::vector<Coeff> v(mons.size(), 0);
        v[i] = 1;
        kernel_rows.push_back(std::move(v));
      }
    } else {
      DenseMatrix A(rows, mons.size());
      for (std::size_t c = 0; c < mons.size(); ++c) {
        Poly mono = Poly::monomial(ctx, mons[c], 1);
        for (std::size_t k = 0; k < jgens.size(); ++k) {
          auto [tg, off] = blocks[k];
          if (tg == SIZE_MAX) continue;
          Poly img = reduce_poly(mono * jgens[k], Igb);
          for (std::size_t t = 0; t < img.size(); ++t) {
            auto e = img.exponents(t);
            auto it = index[tg].find(Monomial(e.begin(), e.end()));
            if (it == index[tg].end()) throw InternalError("normal form left the standard basis");
            A.at(off + it->second, c) = img.coeff(t);
          }
        }
      }
      kernel_rows = kernel(A, F);
    }
    std::vector<Poly> fresh;
    for (const auto& row : kernel_rows) {
      std::size_t piv = 0;
      while (piv < row.size() && row[piv] == 0) ++piv;
      const Monomial& lead = mons[piv];
      bool covered = false;
      for (const auto& l : leads)
        if (divides(l.data(), lead.data(), n)) {
          covered = true;
          break;
        }
      if (covered) continue;
      std::vector<std::pair<Monomial, Coeff>> terms;
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) terms.emplace_back(mons[i], row[i]);
      fresh.push_back(Poly::from_terms(ctx, std::move(terms)));
    }
    for (auto& f : fresh) {
      auto e = f.exponents(0);
      leads.emplace_back(e.begin(), e.end());
      gb.push_back(std::move(f));
    }
  }
  return IdealHandle::from_groebner_basis(ctx, std::move(gb));
}

IdealHandle colon(const IdealHandle& I, const IdealHandle& J) {
  const ContextPtr& ctx = I.context();
  if (J.is_zero() || I.contains(J)) return IdealHandle::unit(ctx);
  if (I.is_homogeneous() && J.is_homogeneous() && colength(I)) return colon_by_linear_algebra(I, J);
  return colon_by_elimination(I, J);
}

std::optional<std::uint64_t> colength(const IdealHandle& J) {
  const ContextPtr& ctx = J.context();
  const int n = ctx->nvars();
  auto leads = J.leading_monomials();
  std::vector<bool> bounded(n, false);
  for (const auto& l : leads) {
    int support = 0, var = -1;
    for (int i = 0; i < n; ++i)
      if (l[i]) ++support, var = i;
    if (support == 0) return 0;
    if (support == 1) bounded[var] = true;
  }
  if (!std::all_of(bounded.begin(), bounded.end(), [](bool b) { return b; })) return std::nullopt;
  Monomial m(n, 0);
  std::uint64_t count = 0;
  auto in_lt = [&]() {
    for (const auto& l : leads)
      if (divides(l.data(), m.data(), n)) return true;
    return false;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      ++count;
      return;
    }
    for (m[i] = 0;; ++m[i]) {
      if (in_lt()) break;
      self(self, i + 1);
    }
    m[i] = 0;
  };
  rec(rec, 0);
  return count;
}

// ---------------------------------------------------------------------------
// Hilbert series of monomial ideals

namespace {

using IntPoly = std::vector<std::int64_t>;

void add_into(IntPoly& a, const IntPoly& b, int shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens, int n) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    auto sa = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    auto sb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    return sa != sb ? sa < sb : a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> out;
  for (auto& g : gens) {
    bool red = false;
    for (const auto& h : out)
      if (divides(h.data(), g.data(), n)) {
        red = true;
        break;
      }
    if (!red) out.push_back(std::move(g));
  }
  return out;
}

IntPoly numerator(std::vector<Monomial> gens, int n) {
  gens = minimalize(std::move(gens), n);
  if (gens.empty()) return {1};
  for (const auto& g : gens)
    if (std::all_of(g.begin(), g.end(), [](Exp e) { return e == 0; })) return {0};
  // Pairwise coprime generators: product of (1 - t^deg).
  bool coprime_all = true;
  std::vector<int> count(n, 0);
  for (const auto& g : gens)
    for (int i = 0; i < n; ++i)
      if (g[i] && ++count[i] > 1) coprime_all = false;
  if (coprime_all) {
    IntPoly acc{1};
    for (const auto& g : gens) {
      int d = static_cast<int>(std::accumulate(g.begin(), g.end(), std::int64_t{0}));
      IntPoly next(acc.size() + d, 0);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        next[i] += acc[i];
        next[i + d] -= acc[i];
      }
      acc = std::move(next);
    }
    return acc;
  }
  // Pivot x_i^k with k the smallest exponent of x_i in a mixed generator; it
  // is never in the ideal and removes that generator from J + (x_i^k).
  int var = -1;
  Exp k = 0;
  for (const auto& g : gens) {
    int support = 0;
    for (int i = 0; i < n; ++i) support += g[i] != 0;
    if (support < 2) continue;
    for (int i = 0; i < n; ++i)
      if (g[i] && count[i] > 1 && (var < 0 || count[i] > count[var] || (i == var && g[i] < k))) {
        var = i;
        k = g[i];
      }
  }
  for (const auto& g : gens)
    if (g[var] && g[var] < k) {
      int support = 0;
      for (int i = 0; i < n; ++i) support += g[i] != 0;
      if (support >= 2) k = g[var];
    }
  Monomial pivot(n, 0);
  pivot[var] = k;
  std::vector<Monomial> plus = gens;
  plus.push_back(pivot);
  std::vector<Monomial> quot;
  for (auto g : gens) {
    g[var] = std::max<Exp>(0, g[var] - k);
    quot.push_back(std::move(g));
  }
  IntPoly out = numerator(std::move(plus), n);
  add_into(out, numerator(std::move(quot), n), k);
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

HilbertData hilbert_data(std::span<const Monomial> monomial_gens, int nvars) {
  HilbertData h;
  h.numerator = numerator(std::vector<Monomial>(monomial_gens.begin(), monomial_gens.end()), nvars);
  IntPoly q = h.numerator;
  if (std::all_of(q.begin(), q.end(), [](std::int64_t c) { return c == 0; })) {
    h.dimension = -1;
    h.multiplicity = 0;
    return h;
  }
  int order = 0;
  // Divide by (1 - t) while t = 1 is a root.
  while (std::accumulate(q.begin(), q.end(), std::int64_t{0}) == 0) {
    IntPoly r(q.size() - 1, 0);
    std::int64_t run = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      run += q[i];
      r[i] = run;
    }
    q = std::move(r);
    ++order;
  }
  h.dimension = nvars - order;
  h.multiplicity = std::accumulate(q.begin(), q.end(), std::int64_t{0});
  return h;
}

int dimension(const IdealHandle& J) {
  if (J.is_unit()) return -1;
  const int n = J.context()->nvars();
  auto leads = J.leading_monomials();
  if (n > 24) return hilbert_data(leads, n).dimension;
  std::vector<std::uint32_t> supports;
  for (const auto& l : leads) {
    std::uint32_t s = 0;
    for (int i = 0; i < n; ++i)
      if (l[i]) s |= 1u << i;
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t u = 0; u < (1u << n); ++u) {
    int size = std::popcount(u);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~u) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

// ---------------------------------------------------------------------------
// generic rank

namespace {

struct RankTerm {
  std::int64_t tdeg;
  std::size_t size;
};

int generic_rank_block(std::vector<std::vector<Poly>> rows, const IdealHandle& P) {
  const auto& gb = P.groebner_basis();
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  const int n = P.context()->nvars();
  std::vector<bool> row_alive(rows.size(), true), col_alive(ncols, true);
  std::uint64_t steps = 0;
  const std::uint64_t budget = limits().pair_budget.load();
  int rank = 0;
  while (true) {
    // Pivot: smallest total degree, then fewest terms.
    int pr = -1, pc = -1;
    RankTerm best{0, 0};
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!row_alive[r]) continue;
      for (std::size_t c = 0; c < ncols; ++c) {
        if (!col_alive[c] || rows[r][c].is_zero()) continue;
        RankTerm t{rows[r][c].total_degree(), rows[r][c].size()};
        if (pr < 0 || t.tdeg < best.tdeg || (t.tdeg == best.tdeg && t.size < best.size)) {
          pr = static_cast<int>(r);
          pc = static_cast<int>(c);
          best = t;
        }
      }
    }
    if (pr < 0) break;
    ++rank;
    row_alive[pr] = false;
    col_alive[pc] = false;
    const Poly a = rows[pr][pc];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!row_alive[r] || rows[r][pc].is_zero()) continue;
      if (++steps > budget) throw BudgetExceeded("generic rank elimination budget exceeded");
      const Poly b = rows[r][pc];
      bool nonzero = false;
      for (std::size_t c = 0; c < ncols; ++c) {
        if (!col_alive[c]) continue;
        Poly v = a * rows[r][c] - b * rows[pr][c];
        rows[r][c] = reduce_poly(v, gb);
        nonzero = nonzero || !rows[r][c].is_zero();
      }
      rows[r][pc] = Poly(P.context());
      if (!nonzero) {
        row_alive[r] = false;
        continue;
      }
      // Strip the common monomial factor; it is a unit in Frac(S/P).
      Monomial content;
      bool first = true;
      for (std::size_t c = 0; c < ncols; ++c) {
        if (!col_alive[c] || rows[r][c].is_zero()) continue;
        Monomial mc = rows[r][c].monomial_content();
        if (first) content = mc, first = false;
        else
          for (int k = 0; k < n; ++k) content[k] = std::min(content[k], mc[k]);
      }
      if (std::any_of(content.begin(), content.end(), [](Exp e) { return e > 0; }))
        for (std::size_t c = 0; c < ncols; ++c)
          if (col_alive[c] && !rows[r][c].is_zero())
            rows[r][c] = reduce_poly(rows[r][c].divide_monomial(content.data()), gb);
    }
  }
  return rank;
}

}  // namespace

int generic_rank(const PolyMatrix& m, const IdealHandle& P) {
  const int R = m.rows, C = m.cols();
  if (R == 0 || C == 0) return 0;
  const auto& gb = P.groebner_basis();
  if (P.is_unit()) throw InvalidArgument("generic rank needs a proper prime");
  std::vector<std::vector<Poly>> red(R, std::vector<Poly>(C, Poly(m.ctx)));
  for (int c = 0; c < C; ++c)
    for (int r = 0; r < R; ++r)
      if (!m.at(r, c).is_zero()) red[r][c] = reduce_poly(m.at(r, c), gb);
  // Split into connected components of the row/column incidence graph.
  std::vector<int> parent(R + C);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c)
      if (!red[r][c].is_zero()) parent[find(r)] = find(R + c);
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> comps;
  for (int r = 0; r < R; ++r) comps[find(r)].first.push_back(r);
  for (int c = 0; c < C; ++c) comps[find(R + c)].second.push_back(c);
  int total = 0;
  for (auto& [root, rc] : comps) {
    auto& [rs, cs] = rc;
    if (rs.empty() || cs.empty()) continue;
    std::vector<std::vector<Poly>> block(rs.size(), std::vector<Poly>(cs.size(), Poly(m.ctx)));
    bool any = false;
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) {
        block[i][j] = red[rs[i]][cs[j]];
        any = any || !block[i][j].is_zero();
      }
    if (any) total += generic_rank_block(std::move(block), P);
  }
  return total;
}

// ---------------------------------------------------------------------------
// syzygies and minimal generators

SyzygyResult syzygies(const PolyMatrix& m, std::span<const Rational> row_degrees,
                      std::span<const Rational> column_degrees, const IdealHandle* quotient) {
  if (static_cast<int>(row_degrees.size()) != m.rows || static_cast<int>(column_degrees.size()) != m.cols())
    throw InvalidArgument("degree lists do not match matrix shape");
  GroebnerEngine::Options opt;
  opt.track = true;
  opt.collect_syzygies = true;
  GroebnerEngine eng(m.ctx, m.rows, std::vector<Rational>(row_degrees.begin(), row_degrees.end()), opt);
  if (quotient) eng.add_quotient_relations(quotient->groebner_basis());
  for (int c = 0; c < m.cols(); ++c) eng.add_generator(m.columns[c], column_degrees[c]);
  eng.complete();
  SyzygyResult out;
  out.matrix.ctx = m.ctx;
  out.matrix.rows = m.cols();
  for (const auto& s : eng.syzygies()) {
    Vec v = s.coefficients;
    v.resize(m.cols(), Poly(m.ctx));
    if (is_zero(v)) continue;
    bool dup = false;
    for (const auto& w : out.matrix.columns)
      if (w == v) {
        dup = true;
        break;
      }
    if (dup) continue;
    out.matrix.columns.push_back(std::move(v));
    out.degrees.push_back(s.degree);
  }
  return out;
}

std::vector<int> select_minimal_generators(const PolyMatrix& m, std::span<const Rational> row_degrees,
                                           std::span<const Rational> column_degrees,
                                           const IdealHandle* quotient) {
  const int C = m.cols();
  std::vector<int> order;
  for (int c = 0; c < C; ++c)
    if (!is_zero(m.columns[c])) order.push_back(c);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return column_degrees[a] < column_degrees[b]; });
  GroebnerEngine eng(m.ctx, m.rows, std::vector<Rational>(row_degrees.begin(), row_degrees.end()));
  if (quotient) eng.add_quotient_relations(quotient->groebner_basis());
  const PrimeField& F = m.ctx->field();
  std::vector<int> kept;
  for (std::size_t s = 0; s < order.size();) {
    const Rational d = column_degrees[order[s]];
    std::size_t t = s;
    while (t < order.size() && column_degrees[order[t]] == d) ++t;
    eng.complete_up_to(d);
    std::vector<Vec> nfs;
    std::map<std::pair<int, Monomial>, std::size_t> coord;
    for (std::size_t k = s; k < t; ++k) {
      Vec nf = eng.normal_form(m.columns[order[k]]);
      for (int r = 0; r < m.rows; ++r)
        for (std::size_t i = 0; i < nf[r].size(); ++i) {
          auto e = nf[r].exponents(i);
          coord.try_emplace({r, Monomial(e.begin(), e.end())}, coord.size());
        }
      nfs.push_back(std::move(nf));
    }
    IncrementalEchelon ech(coord.size(), F);
    for (std::size_t k = s; k < t; ++k) {
      const Vec& nf = nfs[k - s];
      if (is_zero(nf)) continue;
      std::vector<Coeff> v(coord.size(), 0);
      for (int r = 0; r < m.rows; ++r)
        for (std::size_t i = 0; i < nf[r].size(); ++i) {
          auto e = nf[r].exponents(i);
          v[coord.at({r, Monomial(e.begin(), e.end())})] = nf[r].coeff(i);
        }
      if (ech.add(std::move(v))) {
        kept.push_back(order[k]);
        eng.add_generator(m.columns[order[k]], d);
      }
    }
    s = t;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace charp
