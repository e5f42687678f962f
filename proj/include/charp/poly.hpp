#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charp/common.hpp"

namespace charp {

using Coeff = std::uint32_t;
using Exp = std::int32_t;
using Monomial = std::vector<Exp>;

/// Arithmetic in F_p for 2 <= p <= 2^31 - 1.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Coeff inv(Coeff a) const;
  Coeff pow(Coeff a, std::uint64_t k) const;
  Coeff from_int(long long v) const;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

enum class MonomialOrder { grevlex, lex, deglex };

std::string to_string(MonomialOrder order);
MonomialOrder parse_monomial_order(std::string_view text);

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// Characteristic, variables, term order and grading weights of a polynomial
/// ring F_p[x_1..x_n]. Immutable once built.
///
/// Term orders compare standard total degree (all variables weight 1) before
/// breaking ties; the grading weights only drive homogeneity and generator
/// degree bookkeeping. When `elimination_block` is k > 0 the first k variables
/// are compared first (grevlex inside each block), which makes the order an
/// elimination order for them.
class Context {
 public:
  static ContextPtr make(std::uint32_t p, std::vector<std::string> names,
                         MonomialOrder order = MonomialOrder::grevlex,
                         std::vector<Rational> var_degrees = {}, int elimination_block = 0);

  const PrimeField& field() const { return field_; }
  std::uint32_t characteristic() const { return field_.p(); }
  int nvars() const { return nvars_; }
  const std::vector<std::string>& names() const { return names_; }
  MonomialOrder order() const { return order_; }
  const std::vector<Rational>& var_degrees() const { return var_degrees_; }
  int elimination_block() const { return elim_; }
  bool standard_grading() const { return standard_; }

  /// Three-way comparison of exponent vectors: positive when a > b.
  int compare(const Exp* a, const Exp* b) const;
  Rational degree(const Exp* a) const;
  std::int64_t total_degree(const Exp* a) const;
  /// Index of a variable by name, or -1.
  int var_index(std::string_view name) const;
  /// Positive generator of the subgroup of Q spanned by the variable degrees.
  Rational grading_step() const { return step_; }

  /// Same ring with one extra variable in front, forming an elimination block.
  ContextPtr with_elimination_variable(const std::string& name) const;
  /// Same variables and characteristic under another order.
  ContextPtr with_order(MonomialOrder order) const;

 private:
  Context(std::uint32_t p) : field_(p) {}
  int compare_range(const Exp* a, const Exp* b, int lo, int hi) const;

  PrimeField field_;
  int nvars_ = 0;
  std::vector<std::string> names_;
  MonomialOrder order_ = MonomialOrder::grevlex;
  std::vector<Rational> var_degrees_;
  int elim_ = 0;
  bool standard_ = true;
  Rational step_{1};
};

/// Exact multivariate polynomial over F_p. Terms are kept in a flat array
/// sorted by decreasing monomial order, without zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Poly constant(ContextPtr ctx, long long value);
  static Poly variable(ContextPtr ctx, int index);
  static Poly monomial(ContextPtr ctx, std::span<const Exp> exps, Coeff c = 1);
  /// Builds from unsorted terms; duplicate monomials are combined.
  static Poly from_terms(ContextPtr ctx, std::vector<std::pair<Monomial, Coeff>> terms);
  /// Grammar: sums of products of integers, variables, parenthesised
  /// expressions, each optionally raised to `^n`; `*` may be omitted.
  static Poly parse(ContextPtr ctx, std::string_view text);

  std::string to_string() const;

  const ContextPtr& context() const { return ctx_; }
  const Context& ctx() const { return *ctx_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  std::span<const Exp> exponents(std::size_t i) const {
    return {exps_.data() + i * nv(), static_cast<std::size_t>(nv())};
  }
  const Exp* exp_ptr(std::size_t i) const { return exps_.data() + i * nv(); }
  Coeff coeff(std::size_t i) const { return coeffs_[i]; }
  const Exp* lead_exp() const { return exps_.data(); }
  Coeff lead_coeff() const { return coeffs_.front(); }
  Coeff constant_term() const;

  std::int64_t total_degree() const;
  /// Weighted degree of the leading term.
  Rational degree() const;
  bool is_homogeneous() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(Coeff c) const;
  Poly monic() const;
  Poly mul_term(Coeff c, const Exp* shift) const;
  /// Replaces *this by (terms from index `from` on) - c * x^shift * g.
  void sub_mul_term(std::size_t from, Coeff c, const Exp* shift, const Poly& g);
  /// Moves the leading term to the end of `head`, which must stay sorted.
  void append_term(const Exp* exps, Coeff c);
  Poly pow(std::uint64_t k) const;
  /// f(x)^q for q a power of the characteristic: exponents scale by q.
  Poly frobenius_power(std::uint64_t q) const;
  /// Divides every term by x^m; every term must be divisible.
  Poly divide_monomial(const Exp* m) const;
  /// Exact quotient by g; throws InternalError if g does not divide *this.
  Poly exact_divide(const Poly& g) const;
  /// Componentwise minimum of exponents over all terms (monomial content).
  Monomial monomial_content() const;

  /// Re-expresses the polynomial in another context with the same
  /// characteristic, placing variable i at position map[i].
  Poly embed(const ContextPtr& target, std::span<const int> map) const;

 private:
  int nv() const { return ctx_ ? ctx_->nvars() : 0; }
  void push(const Exp* e, Coeff c);

  ContextPtr ctx_;
  std::vector<Exp> exps_;
  std::vector<Coeff> coeffs_;
};

bool divides(const Exp* a, const Exp* b, int n);
Monomial lcm(const Exp* a, const Exp* b, int n);
bool coprime(const Exp* a, const Exp* b, int n);

/// Generators {g^q : g in gens}, q = p^e.
std::vector<Poly> bracket_power(std::span<const Poly> gens, int e);

struct DigitTerm {
  Monomial digit;  // basis exponent b with 0 <= b_j < q
  Poly coefficient;  // c_b
};

/// Unique expansion f = sum_b c_b^q x^b with digit exponents b < q, sorted by
/// digit index (first variable most significant). Zero coefficients omitted.
std::vector<DigitTerm> frobenius_decompose(const Poly& f, int e);

/// Position of a digit monomial in the lexicographic digit enumeration.
std::int64_t digit_index(std::span<const Exp> digit, std::int64_t q);

std::int64_t checked_pow(std::int64_t base, int exp);

}  // namespace charp
