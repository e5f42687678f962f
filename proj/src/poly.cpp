#include "charp/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace charp {

Limits& limits() {
  static Limits instance;
  return instance;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 2 || p > 2147483647u || !is_prime(p))
    throw InvalidArgument("characteristic must be a prime in [2, 2^31-1], got " +
                          std::to_string(p));
}

Coeff PrimeField::inv(Coeff a) const {
  if (a == 0) throw InternalError("inverse of zero in F_" + std::to_string(p_));
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Coeff>(t);
}

Coeff PrimeField::pow(Coeff a, std::uint64_t k) const {
  Coeff result = 1 % p_;
  Coeff base = a;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Coeff PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Coeff>(r);
}

std::string to_string(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::grevlex: return "grevlex";
    case MonomialOrder::lex: return "lex";
    case MonomialOrder::deglex: return "graded-lex";
  }
  return "grevlex";
}

MonomialOrder parse_monomial_order(std::string_view text) {
  if (text == "grevlex") return MonomialOrder::grevlex;
  if (text == "lex") return MonomialOrder::lex;
  if (text == "graded-lex" || text == "deglex" || text == "glex") return MonomialOrder::deglex;
  throw InvalidArgument("unknown monomial order '" + std::string(text) + "'");
}

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw SizeGuardExceeded("integer overflow in power");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Context

ContextPtr Context::make(std::uint32_t p, std::vector<std::string> names, MonomialOrder order,
                         std::vector<Rational> var_degrees, int elimination_block) {
  std::shared_ptr<Context> ctx(new Context(p));
  if (names.empty()) throw InvalidArgument("a polynomial ring needs at least one variable");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw InvalidArgument("duplicate variable name '" + names[i] + "'");
  ctx->nvars_ = static_cast<int>(names.size());
  ctx->names_ = std::move(names);
  ctx->order_ = order;
  if (var_degrees.empty()) var_degrees.assign(ctx->nvars_, Rational(1));
  if (static_cast<int>(var_degrees.size()) != ctx->nvars_)
    throw InvalidArgument("number of variable degrees does not match number of variables");
  for (const auto& d : var_degrees)
    if (d <= Rational(0)) throw InvalidArgument("variable degrees must be positive");
  ctx->var_degrees_ = std::move(var_degrees);
  ctx->standard_ = std::all_of(ctx->var_degrees_.begin(), ctx->var_degrees_.end(),
                               [](const Rational& r) { return r == Rational(1); });
  if (elimination_block < 0 || elimination_block > ctx->nvars_)
    throw InvalidArgument("bad elimination block size");
  ctx->elim_ = elimination_block;

  std::int64_t den = 1;
  for (const auto& d : ctx->var_degrees_) den = std::lcm(den, d.denominator());
  std::int64_t num = 0;
  for (const auto& d : ctx->var_degrees_) num = std::gcd(num, d.numerator() * (den / d.denominator()));
  ctx->step_ = Rational(num, den);
  return ctx;
}

int Context::compare_range(const Exp* a, const Exp* b, int lo, int hi) const {
  switch (order_) {
    case MonomialOrder::lex:
      for (int i = lo; i < hi; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case MonomialOrder::deglex: {
      std::int64_t da = 0, db = 0;
      for (int i = lo; i < hi; ++i) da += a[i], db += b[i];
      if (da != db) return da > db ? 1 : -1;
      for (int i = lo; i < hi; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    }
    case MonomialOrder::grevlex:
    default: {
      std::int64_t da = 0, db = 0;
      for (int i = lo; i < hi; ++i) da += a[i], db += b[i];
      if (da != db) return da > db ? 1 : -1;
      for (int i = hi - 1; i >= lo; --i)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      return 0;
    }
  }
}

int Context::compare(const Exp* a, const Exp* b) const {
  if (elim_ > 0) {
    // Block order: grevlex on the eliminated block, then the base order.
    std::int64_t da = 0, db = 0;
    for (int i = 0; i < elim_; ++i) da += a[i], db += b[i];
    if (da != db) return da > db ? 1 : -1;
    for (int i = elim_ - 1; i >= 0; --i)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return compare_range(a, b, elim_, nvars_);
  }
  return compare_range(a, b, 0, nvars_);
}

Rational Context::degree(const Exp* a) const {
  if (standard_) return Rational(total_degree(a));
  Rational d(0);
  for (int i = 0; i < nvars_; ++i)
    if (a[i]) d += var_degrees_[i] * a[i];
  return d;
}

std::int64_t Context::total_degree(const Exp* a) const {
  std::int64_t d = 0;
  for (int i = 0; i < nvars_; ++i) d += a[i];
  return d;
}

int Context::var_index(std::string_view name) const {
  for (int i = 0; i < nvars_; ++i)
    if (names_[i] == name) return i;
  return -1;
}

ContextPtr Context::with_elimination_variable(const std::string& name) const {
  std::vector<std::string> names{name};
  names.insert(names.end(), names_.begin(), names_.end());
  std::vector<Rational> degs{Rational(1)};
  degs.insert(degs.end(), var_degrees_.begin(), var_degrees_.end());
  return make(field_.p(), names, order_, degs, 1 + elim_);
}

ContextPtr Context::with_order(MonomialOrder order) const {
  return make(field_.p(), names_, order, var_degrees_, elim_);
}

// ---------------------------------------------------------------------------
// monomial helpers

bool divides(const Exp* a, const Exp* b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Exp* a, const Exp* b, int n) {
  Monomial m(n);
  for (int i = 0; i < n; ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

bool coprime(const Exp* a, const Exp* b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

namespace {

Exp add_exp(Exp a, Exp b) {
  std::int64_t s = static_cast<std::int64_t>(a) + b;
  if (s > std::numeric_limits<Exp>::max())
    throw InvalidArgument("exponent overflow (exponents are limited to 2^31-1)");
  return static_cast<Exp>(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

void Poly::push(const Exp* e, Coeff c) {
  exps_.insert(exps_.end(), e, e + nv());
  coeffs_.push_back(c);
}

void Poly::append_term(const Exp* e, Coeff c) { push(e, c); }

Poly Poly::constant(ContextPtr ctx, long long value) {
  Poly p(ctx);
  Coeff c = ctx->field().from_int(value);
  if (c) {
    Monomial zero(ctx->nvars(), 0);
    p.push(zero.data(), c);
  }
  return p;
}

Poly Poly::variable(ContextPtr ctx, int index) {
  Monomial m(ctx->nvars(), 0);
  m.at(index) = 1;
  return monomial(std::move(ctx), m, 1);
}

Poly Poly::monomial(ContextPtr ctx, std::span<const Exp> exps, Coeff c) {
  Poly p(ctx);
  c %= ctx->characteristic();
  if (c) p.push(exps.data(), c);
  return p;
}

Poly Poly::from_terms(ContextPtr ctx, std::vector<std::pair<Monomial, Coeff>> terms) {
  const Context& C = *ctx;
  std::sort(terms.begin(), terms.end(), [&C](const auto& a, const auto& b) {
    return C.compare(a.first.data(), b.first.data()) > 0;
  });
  Poly p(ctx);
  const PrimeField& F = C.field();
  for (std::size_t i = 0; i < terms.size();) {
    Coeff c = 0;
    std::size_t j = i;
    while (j < terms.size() && terms[j].first == terms[i].first) {
      c = F.add(c, terms[j].second % F.p());
      ++j;
    }
    if (c) p.push(terms[i].first.data(), c);
    i = j;
  }
  return p;
}

bool Poly::is_constant() const {
  if (is_zero()) return true;
  if (size() > 1) return false;
  for (Exp e : exponents(0))
    if (e) return false;
  return true;
}

Coeff Poly::constant_term() const {
  if (is_zero()) return 0;
  std::size_t last = size() - 1;
  for (Exp e : exponents(last))
    if (e) return 0;
  return coeffs_[last];
}

std::int64_t Poly::total_degree() const {
  std::int64_t d = -1;
  for (std::size_t i = 0; i < size(); ++i) d = std::max(d, ctx_->total_degree(exp_ptr(i)));
  return d;
}

Rational Poly::degree() const {
  if (is_zero()) return Rational(0);
  return ctx_->degree(lead_exp());
}

bool Poly::is_homogeneous() const {
  if (size() <= 1) return true;
  Rational d = ctx_->degree(exp_ptr(0));
  for (std::size_t i = 1; i < size(); ++i)
    if (ctx_->degree(exp_ptr(i)) != d) return false;
  return true;
}

Poly Poly::operator-() const {
  Poly r(*this);
  const PrimeField& F = ctx_->field();
  for (auto& c : r.coeffs_) c = F.neg(c);
  return r;
}

Poly Poly::scaled(Coeff c) const {
  if (!ctx_) return *this;
  c %= ctx_->characteristic();
  if (c == 0) return Poly(ctx_);
  Poly r(*this);
  const PrimeField& F = ctx_->field();
  for (auto& x : r.coeffs_) x = F.mul(x, c);
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || lead_coeff() == 1) return *this;
  return scaled(ctx_->field().inv(lead_coeff()));
}

Poly Poly::operator+(const Poly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  Monomial zero(nv(), 0);
  Poly r(*this);
  r.sub_mul_term(0, ctx_->field().neg(1 % ctx_->characteristic()), zero.data(), o);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return -o;
  Monomial zero(nv(), 0);
  Poly r(*this);
  r.sub_mul_term(0, 1, zero.data(), o);
  return r;
}

void Poly::sub_mul_term(std::size_t from, Coeff c, const Exp* shift, const Poly& g) {
  const int n = nv();
  const Context& C = *ctx_;
  const PrimeField& F = C.field();
  Coeff negc = F.neg(c % F.p());
  std::vector<Exp> out_exps;
  std::vector<Coeff> out_coeffs;
  const std::size_t na = size();
  out_exps.reserve((na - from + g.size()) * n);
  out_coeffs.reserve(na - from + g.size());
  Monomial tmp(n);
  std::size_t i = from, j = 0;
  bool have_tmp = false;
  auto load = [&](std::size_t idx) {
    const Exp* ge = g.exp_ptr(idx);
    for (int k = 0; k < n; ++k) tmp[k] = add_exp(ge[k], shift[k]);
  };
  if (negc != 0 && j < g.size()) {
    load(j);
    have_tmp = true;
  }
  while (i < na || have_tmp) {
    int cmp;
    if (i >= na) cmp = -1;
    else if (!have_tmp) cmp = 1;
    else cmp = C.compare(exp_ptr(i), tmp.data());
    if (cmp > 0) {
      out_exps.insert(out_exps.end(), exp_ptr(i), exp_ptr(i) + n);
      out_coeffs.push_back(coeffs_[i]);
      ++i;
    } else {
      Coeff gc = F.mul(g.coeffs_[j], negc);
      if (cmp == 0) {
        gc = F.add(gc, coeffs_[i]);
        ++i;
      }
      if (gc) {
        out_exps.insert(out_exps.end(), tmp.begin(), tmp.end());
        out_coeffs.push_back(gc);
      }
      ++j;
      if (j < g.size()) load(j);
      else have_tmp = false;
    }
  }
  exps_ = std::move(out_exps);
  coeffs_ = std::move(out_coeffs);
}

Poly Poly::mul_term(Coeff c, const Exp* shift) const {
  Poly r(ctx_);
  c %= ctx_->characteristic();
  if (c == 0 || is_zero()) return r;
  const int n = nv();
  const PrimeField& F = ctx_->field();
  r.exps_.resize(exps_.size());
  r.coeffs_.resize(coeffs_.size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (int k = 0; k < n; ++k) r.exps_[i * n + k] = add_exp(exps_[i * n + k], shift[k]);
    r.coeffs_[i] = F.mul(coeffs_[i], c);
  }
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(ctx_ ? ctx_ : o.ctx_);
  const Poly& small = size() <= o.size() ? *this : o;
  const Poly& big = size() <= o.size() ? o : *this;
  if (small.size() == 1) return big.mul_term(small.coeffs_[0], small.exp_ptr(0));
  // Accumulate one shifted copy of `big` per term of `small`.
  Poly acc(ctx_);
  const PrimeField& F = ctx_->field();
  for (std::size_t i = 0; i < small.size(); ++i)
    acc.sub_mul_term(0, F.neg(small.coeffs_[i]), small.exp_ptr(i), big);
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  return coeffs_ == o.coeffs_ && exps_ == o.exps_;
}

Poly Poly::pow(std::uint64_t k) const {
  if (k == 0) return constant(ctx_, 1);
  if (k == 1 || is_zero()) return *this;
  const std::uint64_t p = ctx_->characteristic();
  // Split k in base p so that p-power factors use the Frobenius shortcut.
  Poly result = constant(ctx_, 1);
  Poly frob = *this;
  while (k) {
    std::uint64_t digit = k % p;
    if (digit) {
      Poly base = frob;
      Poly part = constant(ctx_, 1);
      std::uint64_t d = digit;
      while (d) {
        if (d & 1) part = part * base;
        d >>= 1;
        if (d) base = base * base;
      }
      result = result * part;
    }
    k /= p;
    if (k) frob = frob.frobenius_power(p);
  }
  return result;
}

Poly Poly::frobenius_power(std::uint64_t q) const {
  Poly r(*this);
  for (auto& e : r.exps_) {
    std::int64_t v = static_cast<std::int64_t>(e) * static_cast<std::int64_t>(q);
    if (v > std::numeric_limits<Exp>::max())
      throw InvalidArgument("exponent overflow (exponents are limited to 2^31-1)");
    e = static_cast<Exp>(v);
  }
  // Coefficients in F_p are fixed by Frobenius; order is preserved because
  // all supported orders are invariant under scaling exponent vectors.
  return r;
}

Poly Poly::divide_monomial(const Exp* m) const {
  Poly r(*this);
  const int n = nv();
  for (std::size_t i = 0; i < size(); ++i)
    for (int k = 0; k < n; ++k) {
      r.exps_[i * n + k] -= m[k];
      if (r.exps_[i * n + k] < 0) throw InternalError("monomial division with remainder");
    }
  return r;
}

Poly Poly::exact_divide(const Poly& g) const {
  if (g.is_zero()) throw InternalError("division by zero polynomial");
  const int n = nv();
  const PrimeField& F = ctx_->field();
  Coeff ginv = F.inv(g.lead_coeff());
  Poly rest = *this;
  std::vector<std::pair<Monomial, Coeff>> quotient;
  Monomial shift(n);
  while (!rest.is_zero()) {
    const Exp* lt = rest.lead_exp();
    if (!divides(g.lead_exp(), lt, n)) throw InternalError("exact division left a remainder");
    for (int k = 0; k < n; ++k) shift[k] = lt[k] - g.lead_exp()[k];
    Coeff c = F.mul(rest.lead_coeff(), ginv);
    quotient.emplace_back(shift, c);
    rest.sub_mul_term(0, c, shift.data(), g);
  }
  return from_terms(ctx_, std::move(quotient));
}

Monomial Poly::monomial_content() const {
  const int n = nv();
  Monomial m(n, 0);
  if (is_zero()) return m;
  for (int k = 0; k < n; ++k) m[k] = exps_[k];
  for (std::size_t i = 1; i < size(); ++i)
    for (int k = 0; k < n; ++k) m[k] = std::min(m[k], exps_[i * n + k]);
  return m;
}

Poly Poly::embed(const ContextPtr& target, std::span<const int> map) const {
  if (target->characteristic() != ctx_->characteristic())
    throw InvalidArgument("cannot embed across characteristics");
  std::vector<std::pair<Monomial, Coeff>> terms;
  terms.reserve(size());
  const int n = nv();
  for (std::size_t i = 0; i < size(); ++i) {
    Monomial m(target->nvars(), 0);
    for (int k = 0; k < n; ++k) m[map[k]] = exps_[i * n + k];
    terms.emplace_back(std::move(m), coeffs_[i]);
  }
  return from_terms(target, std::move(terms));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const int n = nv();
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << " + ";
    bool any_var = false;
    std::ostringstream mono;
    for (int k = 0; k < n; ++k) {
      Exp e = exps_[i * n + k];
      if (!e) continue;
      if (any_var) mono << '*';
      mono << ctx_->names()[k];
      if (e > 1) mono << '^' << e;
      any_var = true;
    }
    if (!any_var) os << coeffs_[i];
    else if (coeffs_[i] == 1) os << mono.str();
    else os << coeffs_[i] << '*' << mono.str();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
 public:
  Parser(ContextPtr ctx, std::string_view text) : ctx_(std::move(ctx)), s_(text) {}

  Poly parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    Poly r = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly expr() {
    bool negate = false;
    if (at('-')) {
      negate = true;
      ++pos_;
    } else if (at('+')) {
      ++pos_;
    }
    Poly r = term();
    if (negate) r = -r;
    while (true) {
      if (at('+')) {
        ++pos_;
        r += term();
      } else if (at('-')) {
        ++pos_;
        r -= term();
      } else {
        break;
      }
    }
    return r;
  }

  Poly term() {
    Poly r = power();
    while (true) {
      if (at('*')) {
        ++pos_;
        r = r * power();
      } else if (starts_factor()) {
        r = r * power();
      } else {
        break;
      }
    }
    return r;
  }

  Poly power() {
    Poly base = atom();
    if (at('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      std::uint64_t k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
        if (k > 2147483647ull) throw ParseError("exponent too large", start);
        ++pos_;
      }
      if (pos_ == start) throw ParseError("expected exponent after '^'", pos_);
      base = base.pow(k);
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      if (!at(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t p = ctx_->characteristic();
      std::uint64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0')) % p;
        ++pos_;
      }
      return Poly::constant(ctx_, static_cast<long long>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      int idx = ctx_->var_index(name);
      if (idx < 0) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Poly::variable(ctx_, idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  ContextPtr ctx_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(ContextPtr ctx, std::string_view text) { return Parser(std::move(ctx), text).parse(); }

// ---------------------------------------------------------------------------
// Frobenius helpers

std::vector<Poly> bracket_power(std::span<const Poly> gens, int e) {
  if (e < 1) throw InvalidArgument("bracket power needs e >= 1");
  std::vector<Poly> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    const std::int64_t q = checked_pow(g.ctx().characteristic(), e);
    out.push_back(g.frobenius_power(static_cast<std::uint64_t>(q)));
  }
  return out;
}

std::int64_t digit_index(std::span<const Exp> digit, std::int64_t q) {
  std::int64_t idx = 0;
  for (Exp d : digit) idx = idx * q + d;
  return idx;
}

std::vector<DigitTerm> frobenius_decompose(const Poly& f, int e) {
  if (e < 1) throw InvalidArgument("Frobenius decomposition needs e >= 1");
  const ContextPtr& ctx = f.context();
  const int n = ctx->nvars();
  const std::int64_t q = checked_pow(ctx->characteristic(), e);
  std::map<std::int64_t, std::pair<Monomial, std::vector<std::pair<Monomial, Coeff>>>> groups;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Exp* a = f.exp_ptr(i);
    Monomial digit(n), quot(n);
    for (int k = 0; k < n; ++k) {
      digit[k] = static_cast<Exp>(a[k] % q);
      quot[k] = static_cast<Exp>(a[k] / q);
    }
    auto& g = groups[digit_index(digit, q)];
    if (g.first.empty()) g.first = digit;
    g.second.emplace_back(std::move(quot), f.coeff(i));
  }
  std::vector<DigitTerm> out;
  out.reserve(groups.size());
  for (auto& [idx, g] : groups)
    out.push_back({std::move(g.first), Poly::from_terms(ctx, std::move(g.second))});
  return out;
}

}  // namespace charp
