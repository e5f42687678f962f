#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Element of a free module S^n, component 0 first.
using Vec = std::vector<Poly>;

Vec zero_vec(const ContextPtr& ctx, int n);
bool is_zero(const Vec& v);
/// Index of the first nonzero component, or -1.
int lead_component(const Vec& v);

/// Matrix with polynomial entries, stored as a list of columns.
struct PolyMatrix {
  ContextPtr ctx;
  int rows = 0;
  std::vector<Vec> columns;

  int cols() const { return static_cast<int>(columns.size()); }
  const Poly& at(int r, int c) const { return columns[c][r]; }
  static PolyMatrix zero(ContextPtr ctx, int rows, int cols);
  PolyMatrix transpose() const;
  /// this * other (other.rows must equal this->cols()).
  PolyMatrix operator*(const PolyMatrix& other) const;
  bool is_zero() const;
};

/// Full normal form of f with respect to `basis`, which is assumed to be a
/// Groebner basis in f's context.
Poly reduce_poly(const Poly& f, std::span<const Poly> basis);

/// Makes a Groebner basis reduced: minimal leading terms, fully tail-reduced,
/// monic, sorted by decreasing leading term.
std::vector<Poly> reduce_groebner_basis(std::vector<Poly> gb);

struct Syzygy {
  Vec coefficients;
  Rational degree;
};

/// Buchberger engine for submodules of S^n, optionally modulo an ideal of S
/// acting on every component, under position-over-term order (component 0
/// largest). Pairs are processed by increasing degree, ties broken by
/// element index, so results are reproducible.
///
/// With tracking enabled every basis element carries its coordinates with
/// respect to the added generators, and syzygies of the generators are
/// collected from the S-pairs that reduce to zero. Modulo an ideal, the
/// coordinates are only meaningful modulo that ideal.
class GroebnerEngine {
 public:
  struct Options {
    bool track = false;
    bool collect_syzygies = false;
    std::uint64_t budget = 0;  // 0: use limits().pair_budget
  };

  GroebnerEngine(ContextPtr ctx, int rank, std::vector<Rational> shifts, Options options);
  GroebnerEngine(ContextPtr ctx, int rank, std::vector<Rational> shifts)
      : GroebnerEngine(std::move(ctx), rank, std::move(shifts), Options{}) {}

  /// Adds g*e_k for every component k; `ideal_gb` must be a Groebner basis.
  void add_quotient_relations(std::span<const Poly> ideal_gb);
  /// Adds a generator of known homogeneous degree. Tracked generators must
  /// all be added before the first call to complete().
  void add_generator(const Vec& v, Rational degree);
  void complete();
  /// Processes only pairs of degree at most `max_degree`; the basis is then
  /// correct in degrees up to that bound.
  void complete_up_to(std::optional<Rational> max_degree);

  Vec normal_form(const Vec& v) const;
  std::vector<Vec> reduced_basis(bool include_quotient = true) const;
  const std::vector<Syzygy>& syzygies() const { return syzygies_; }
  std::size_t size() const { return elems_.size(); }
  std::uint64_t pairs_processed() const { return pairs_processed_; }
  int rank() const { return rank_; }
  /// Minimal generators of the leading-term module, one list per component.
  std::vector<std::vector<Monomial>> leading_monomials() const;

 private:
  struct Element {
    Vec v;
    int comp;
    Monomial lead;
    Rational degree;
    Vec rep;
    bool quotient;
  };
  struct Pair {
    Rational degree;
    std::int64_t tdeg;
    int j, i;
    bool operator<(const Pair& o) const {
      if (degree != o.degree) return degree < o.degree;
      if (tdeg != o.tdeg) return tdeg < o.tdeg;
      if (j != o.j) return j < o.j;
      return i < o.i;
    }
  };

  Vec reduce(Vec u, Vec* rep) const;
  int find_reducer(int comp, const Exp* m) const;
  void insert(Vec v, Vec rep, Rational degree, bool quotient);
  bool done(int a, int b) const;
  void mark_done(int a, int b);
  Vec reduce_rep(Vec rep) const;
  Rational term_degree(int comp, const Exp* m) const;

  ContextPtr ctx_;
  int rank_;
  std::vector<Rational> shifts_;
  Options opt_;
  std::uint64_t budget_;
  std::vector<Element> elems_;
  std::vector<std::vector<int>> by_comp_;
  std::set<Pair> pairs_;
  std::vector<std::vector<char>> done_;
  std::vector<Syzygy> syzygies_;
  std::vector<Poly> quotient_gb_;
  int tracked_ = 0;
  bool started_ = false;
  std::uint64_t pairs_processed_ = 0;
};

/// Ideal of F_p[x_1..x_n] with a lazily computed, cached reduced Groebner
/// basis. Copies share the cache; the basis is computed at most once even
/// under concurrent access.
class IdealHandle {
 public:
  IdealHandle() = default;
  IdealHandle(ContextPtr ctx, std::vector<Poly> gens);
  /// Trusts `gb` to be a Groebner basis; it is reduced before caching.
  static IdealHandle from_groebner_basis(ContextPtr ctx, std::vector<Poly> gb);
  /// Comma-separated generators; an empty string is the zero ideal.
  static IdealHandle parse(ContextPtr ctx, std::string_view text);
  static IdealHandle zero(ContextPtr ctx) { return IdealHandle(std::move(ctx), {}); }
  static IdealHandle unit(ContextPtr ctx);
  static IdealHandle variables(ContextPtr ctx);

  const ContextPtr& context() const;
  const std::vector<Poly>& generators() const;
  const std::vector<Poly>& groebner_basis() const;
  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const;
  bool contains(const IdealHandle& other) const;
  bool operator==(const IdealHandle& other) const;
  bool is_unit() const;
  bool is_zero() const;
  bool is_homogeneous() const;
  /// Minimal generators of the leading-term ideal.
  std::vector<Monomial> leading_monomials() const;

  IdealHandle operator+(const IdealHandle& other) const;
  IdealHandle operator*(const IdealHandle& other) const;
  IdealHandle power(int t) const;
  std::string to_string() const;

 private:
  struct State {
    ContextPtr ctx;
    std::vector<Poly> gens;
    std::once_flag once;
    std::vector<Poly> gb;
  };
  std::shared_ptr<State> s_;
};

/// Submodule of S^n (or of (S/I)^n when a quotient ideal is attached) with a
/// cached Groebner basis under position-over-term order.
class SubmoduleHandle {
 public:
  SubmoduleHandle(ContextPtr ctx, int rank, std::vector<Vec> gens,
                  std::vector<Rational> shifts = {}, std::optional<IdealHandle> quotient = {});

  int rank() const { return rank_; }
  const std::vector<Vec>& generators() const { return gens_; }
  const std::vector<Vec>& groebner_basis() const;
  Vec normal_form(const Vec& v) const;
  bool contains(const Vec& v) const;

 private:
  const GroebnerEngine& engine() const;

  ContextPtr ctx_;
  int rank_;
  std::vector<Vec> gens_;
  std::vector<Rational> shifts_;
  std::optional<IdealHandle> quotient_;
  std::shared_ptr<std::once_flag> once_;
  std::shared_ptr<std::unique_ptr<GroebnerEngine>> engine_;
  std::shared_ptr<std::vector<Vec>> gb_;
};

/// Ideal quotient I : J. Uses graded linear algebra on the standard monomials
/// of I when I has finite colength and everything is homogeneous, otherwise
/// elimination.
IdealHandle colon(const IdealHandle& I, const IdealHandle& J);
IdealHandle colon_by_elimination(const IdealHandle& I, const IdealHandle& J);
IdealHandle colon_by_linear_algebra(const IdealHandle& I, const IdealHandle& J);

/// I cap J via elimination of an auxiliary variable t from tI + (1-t)J.
IdealHandle intersect(const IdealHandle& I, const IdealHandle& J);

/// Number of standard monomials, or nullopt when the staircase is unbounded.
std::optional<std::uint64_t> colength(const IdealHandle& J);

/// Standard monomials of a finite-colength ideal, grouped by weighted degree.
std::vector<std::pair<Rational, std::vector<Monomial>>> standard_monomials_by_degree(
    const IdealHandle& J);

/// Hilbert series data of S/J for a monomial ideal J under the standard
/// grading: HS(t) = numerator(t) / (1-t)^n.
struct HilbertData {
  std::vector<std::int64_t> numerator;
  int dimension = 0;
  std::int64_t multiplicity = 0;
};
HilbertData hilbert_data(std::span<const Monomial> monomial_gens, int nvars);

/// Krull dimension of S/J from maximal independent sets of variables modulo
/// the leading-term ideal; -1 for the unit ideal.
int dimension(const IdealHandle& J);

/// Rank over the fraction field of S/P of a matrix whose entries are read
/// modulo P. P must be prime (asserted by the caller). Uses division-free
/// fraction-free elimination with zero tests by normal form modulo P.
int generic_rank(const PolyMatrix& m, const IdealHandle& P);

struct SyzygyResult {
  PolyMatrix matrix;              // columns are syzygies, rows index the input columns
  std::vector<Rational> degrees;  // homogeneous degree of each syzygy
};

/// Generators of the kernel of the map S^c -> S^r (or R^c -> R^r when a
/// quotient ideal is given) defined by the columns of m. Row degrees are the
/// shifts of the target, column degrees the degrees of the columns.
SyzygyResult syzygies(const PolyMatrix& m, std::span<const Rational> row_degrees,
                      std::span<const Rational> column_degrees,
                      const IdealHandle* quotient = nullptr);

/// Indices of a minimal generating subset of the graded submodule spanned by
/// the (homogeneous) columns, chosen by increasing degree: a column is kept
/// when it is not in the span of the columns kept before it.
std::vector<int> select_minimal_generators(const PolyMatrix& m, std::span<const Rational> row_degrees,
                                           std::span<const Rational> column_degrees,
                                           const IdealHandle* quotient = nullptr);

/// Weighted degree of a homogeneous column with respect to row shifts;
/// nullopt for the zero column.
std::optional<Rational> column_degree(const Vec& column, std::span<const Rational> row_degrees);

}  // namespace charp
