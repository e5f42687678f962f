#include "charp/commands.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <boost/algorithm/string.hpp>

namespace charp {

namespace {

using Checks = std::vector<TheoremCheck>;

Json rat(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Json rats(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rat(r));
  return a;
}

// Reduced Groebner basis: a canonical spelling of the ideal.
std::string ideal_text(const IdealHandle& I) {
  std::string s;
  for (const auto& g : I.groebner_basis()) s += (s.empty() ? "" : ", ") + g.to_string();
  return "(" + s + ")";
}

Json fit_json(const FitReport& f) {
  Json j{{"limit", f.limit}, {"coefficient", f.coefficient}, {"max_residual", f.max_residual}, {"points", f.points}};
  j["richardson"] = f.richardson ? Json(*f.richardson) : Json(nullptr);
  return j;
}

Json checks_json(const Checks& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"statement", c.statement}, {"passed", c.passed}});
  return a;
}

TheoremCheck check(std::string name, std::string statement, bool ok) {
  return {std::move(name), std::move(statement), ok};
}

void append(Checks& to, const Checks& from) { to.insert(to.end(), from.begin(), from.end()); }

Json table(std::vector<std::string> columns) { return {{"columns", columns}, {"rows", Json::array()}}; }

struct Options {
  const RingFile& rf;
  const Json& j;

  int emax() const { return j.contains("emax") ? j["emax"].get<int>() : rf.emax; }
  int i(int fallback = 1) const { return j.contains("i") ? j["i"].get<int>() : fallback; }
  std::vector<int> es() const {
    std::vector<int> out;
    if (!j.contains("e")) {
      for (int e = 1; e <= emax(); ++e) out.push_back(e);
    } else if (j["e"].is_string()) {
      out = parse_e_range(j["e"].get<std::string>());
    } else if (j["e"].is_number_integer()) {
      out.push_back(j["e"].get<int>());
    } else {
      out = j["e"].get<std::vector<int>>();
    }
    if (out.empty()) throw InvalidArgument("empty range of Frobenius exponents");
    for (int e : out)
      if (e < 1) throw InvalidArgument("Frobenius exponents must be positive");
    return out;
  }
  bool has_primes() const { return j.contains("primes"); }
  std::vector<PrimeSpec> primes() const {
    std::vector<PrimeSpec> out;
    if (!has_primes()) {
      for (const auto& p : rf.primes) out.push_back(p.spec);
      return out;
    }
    std::vector<std::string> names = j["primes"].is_string()
                                         ? std::vector<std::string>{j["primes"].get<std::string>()}
                                         : j["primes"].get<std::vector<std::string>>();
    for (const auto& n : names) out.push_back(rf.resolve_prime(n));
    return out;
  }
  std::string module_name() const { return j.contains("module") ? j["module"].get<std::string>() : "R"; }
  GradedModule module() const { return rf.module(module_name()); }
};

const RingPtr& need_ring(const RingFile& rf) {
  if (!rf.has_ring()) throw InvalidArgument("'" + rf.name + "' describes no ring");
  return rf.ring;
}

PrimeSpec m_of(const RingFile& rf) { return rf.prime("m"); }

// ---------------------------------------------------------------- reports

Json hk_json(const HkReport& h, Json& tab) {
  Json j{{"kind", "HK"},       {"e", h.es},           {"raw", h.raw},
         {"dimension", h.dimension}, {"gamma", h.dimension}, {"normalized", rats(h.normalized)},
         {"fit", fit_json(h.fit)}};
  j["estimate"] = h.fit.points >= 2 ? Json(h.fit.limit) : Json(nullptr);
  tab = table({"e", "raw", "normalized"});
  for (std::size_t k = 0; k < h.es.size(); ++k) tab["rows"].push_back({h.es[k], h.raw[k], rat(h.normalized[k])});
  return j;
}

Json betti_json(const BettiSequenceReport& b, Json& tab) {
  Json j{{"kind", "BETTI"},
         {"e", b.es},
         {"i", b.i},
         {"gamma", b.gamma},
         {"gamma_module", b.gamma_module},
         {"over_normalized", b.over_normalized},
         {"beta", b.beta},
         {"chi", b.chi}};
  Json nb = Json::array(), nc = Json::array(), fits = Json::array();
  for (const auto& r : b.normalized_beta) nb.push_back(rats(r));
  for (const auto& r : b.normalized_chi) nc.push_back(rats(r));
  for (const auto& f : b.beta_fits) fits.push_back(fit_json(f));
  j["normalized_beta"] = nb;
  j["normalized_chi"] = nc;
  j["beta_fits"] = fits;
  std::vector<std::string> cols{"e"};
  for (int k = 0; k <= b.i; ++k) cols.push_back("beta_" + std::to_string(k));
  for (int k = 0; k <= b.i; ++k) cols.push_back("chi_" + std::to_string(k));
  for (int k = 0; k <= b.i; ++k) cols.push_back("normalized_beta_" + std::to_string(k));
  tab = table(cols);
  for (std::size_t r = 0; r < b.es.size(); ++r) {
    Json row{b.es[r]};
    for (auto v : b.beta[r]) row.push_back(v);
    for (auto v : b.chi[r]) row.push_back(v);
    for (const auto& v : b.normalized_beta[r]) row.push_back(rat(v));
    tab["rows"].push_back(row);
  }
  return j;
}

Json chi_json(const ChiComparison& c) {
  Json per = Json::array();
  for (const auto& p : c.per_prime)
    per.push_back({{"prime", p.prime}, {"beta", p.beta}, {"chi", p.chi}, {"mu_local", p.mu_local}});
  return {{"e", c.e},         {"i", c.i},           {"global", c.global},           {"mu_global", c.mu_global},
          {"ranks", c.ranks}, {"per_prime", per}, {"max_local", c.max_local}, {"dimension", c.dimension}};
}

Json prime_split_json(const PrimeSplit& p) {
  return {{"prime", p.prime}, {"alpha", p.alpha}, {"localization_zero", p.localization_zero},
          {"a", p.a},         {"sr", p.sr},       {"r_F", rat(p.r_F)}};
}

Json split_json(const SplitRatioReport& s, Json& tab) {
  Json per = Json::array();
  for (const auto& p : s.per_prime) per.push_back(prime_split_json(p));
  Json j{{"kind", "SPLIT"}, {"e", s.es},          {"a", s.a},     {"sr", s.sr},
         {"r_F", rat(s.r_F)}, {"normalized", rats(s.normalized)}, {"heuristic", s.heuristic},
         {"per_prime", per}};
  j["richardson"] = s.richardson ? Json(*s.richardson) : Json(nullptr);
  tab = table({"e", "a_e", "normalized"});
  for (std::size_t k = 0; k < s.es.size(); ++k)
    tab["rows"].push_back({s.es[k], s.a[k], k < s.normalized.size() ? rat(s.normalized[k]) : Json("")});
  return j;
}

Json strata_json(const StrataReport& s, Json& tab) {
  Json strata = Json::object(), minr = Json::object(), per = Json::array();
  for (const auto& [l, names] : s.strata) strata[std::to_string(l)] = names;
  for (const auto& [l, r] : s.min_r_F) minr[std::to_string(l)] = rat(r);
  for (const auto& p : s.per_prime) per.push_back(prime_split_json(p));
  tab = table({"prime", "alpha", "localization_zero", "sr", "r_F"});
  for (const auto& p : s.per_prime)
    tab["rows"].push_back({p.prime, p.alpha, p.localization_zero, p.sr, rat(p.r_F)});
  return {{"strata", strata}, {"localization_zero", s.localization_zero}, {"min_r_F", minr}, {"per_prime", per}};
}

Json field_model_json(const FieldModelReport& f, Json& tab) {
  Json norm = Json::array();
  for (const auto& r : f.normalized) norm.push_back(rats(r));
  tab = table({"e", "factor", "chi_1", "normalized"});
  for (std::size_t k = 0; k < f.es.size(); ++k)
    for (std::size_t c = 0; c < f.chi1[k].size(); ++c)
      tab["rows"].push_back({f.es[k], c, f.chi1[k][c], rat(f.normalized[k][c])});
  return {{"kind", "CHI"},
          {"e", f.es},
          {"gamma", f.gamma},
          {"chi1", f.chi1},
          {"normalized", norm},
          {"limits", rats(f.limits)},
          {"max_over_spec", rat(f.max_over_spec)},
          {"max_over_top_locus", rat(f.max_over_top_locus)},
          {"argmax_by_e", f.argmax_by_e},
          {"limit_along_argmax", rat(f.limit_along_argmax)}};
}

Checks field_model_checks(const FieldModel& model, const FieldModelReport& f) {
  Checks out;
  bool below_top = false;
  for (int a : model.alphas) below_top = below_top || a < f.gamma;
  for (std::size_t k = 0; k < f.es.size(); ++k)
    for (std::size_t c = 0; c < model.alphas.size(); ++c) {
      const std::int64_t want = -checked_pow(model.p, f.es[k] * model.alphas[c]);
      out.push_back(check("field factor Euler characteristic",
                          "chi_1(" + std::to_string(f.es[k]) + ", factor " + std::to_string(c) +
                              ") = " + std::to_string(f.chi1[k][c]) + " = -p^(e alpha) = " + std::to_string(want),
                          f.chi1[k][c] == want));
    }
  const Rational spec_max = below_top ? Rational(0) : Rational(-1);
  out.push_back(check("normalized chi_1 maximum over Spec",
                      "max_P lim chi_1(e,P)/p^(e gamma) = " + rat(f.max_over_spec).get<std::string>() + " = " +
                          rat(spec_max).get<std::string>(),
                      f.max_over_spec == spec_max));
  out.push_back(check("normalized chi_1 maximum over the top-dimensional locus",
                      "max over gamma(R_P) = gamma of lim chi_1(e,P)/p^(e gamma) = " +
                          rat(f.max_over_top_locus).get<std::string>() + " = -1",
                      f.max_over_top_locus == Rational(-1)));
  return out;
}

// ---------------------------------------------------------------- commands

Json cmd_hk(const Options& o, Checks&, Json& tab) {
  return hk_json(hk_function(need_ring(o.rf), o.es()), tab);
}

Json cmd_betti(const Options& o, Checks& checks, Json& tab) {
  need_ring(o.rf);
  std::optional<int> gamma;
  if (o.j.contains("gamma")) gamma = o.j["gamma"].get<int>();
  auto rep = frobenius_betti_sequence(o.module(), o.i(), o.es(), gamma);
  append(checks, rep.checks);
  Json j = betti_json(rep, tab);
  j["module"] = o.module_name();
  if (o.has_primes()) {
    Json local = Json::array();
    for (const auto& P : o.primes())
      for (int e : o.es()) {
        auto b = betti_numbers(o.module(), e, o.i(), &P);
        local.push_back({{"prime", P.name}, {"e", e}, {"beta", b.beta}, {"chi", b.chi}});
      }
    j["per_prime"] = local;
  }
  return j;
}

Json cmd_chi(const Options& o, Checks& checks, Json& tab) {
  if (!o.rf.has_ring() && o.rf.field_model) {
    std::vector<int> es = o.j.contains("e") ? o.es() : std::vector<int>{1, 2, 3, 4, 5};
    auto rep = field_model_report(*o.rf.field_model, es);
    append(checks, field_model_checks(*o.rf.field_model, rep));
    return field_model_json(rep, tab);
  }
  need_ring(o.rf);
  auto primes = o.primes();
  Json comps = Json::array();
  tab = table({"e", "i", "prime", "chi", "global"});
  for (int e : o.es()) {
    auto c = chi_local_global(o.module(), o.i(), e, primes);
    append(checks, c.checks);
    for (const auto& p : c.per_prime) tab["rows"].push_back({e, c.i, p.prime, p.chi, c.global});
    comps.push_back(chi_json(c));
  }
  return {{"kind", "CHI"}, {"module", o.module_name()}, {"comparisons", comps}};
}

Json cmd_split(const Options& o, Checks& checks, Json& tab) {
  need_ring(o.rf);
  std::vector<PrimeSpec> primes;
  if (o.has_primes()) primes = o.primes();
  auto rep = splitting_ratio_report(o.module(), o.es(), primes);
  append(checks, rep.checks);
  Json j = split_json(rep, tab);
  j["module"] = o.module_name();
  return j;
}

Json cmd_splitprime(const Options& o, Checks&, Json&) {
  need_ring(o.rf);
  auto sp = splitting_prime(m_of(o.rf), o.emax());
  Json inter = Json::array(), cand = Json::array();
  for (const auto& I : sp.intersections) inter.push_back(ideal_text(I));
  for (const auto& I : sp.candidates) cand.push_back(ideal_text(I));
  Json j{{"f_pure", sp.f_pure}, {"emax", o.emax()}, {"intersections", inter}, {"candidates", cand}};
  j["stabilized_at"] = sp.stabilized_at ? Json(*sp.stabilized_at) : Json(nullptr);
  j["prime"] = sp.prime ? Json(ideal_text(*sp.prime)) : Json(nullptr);
  return j;
}

Json cmd_fpure(const Options& o, Checks&, Json& tab) {
  need_ring(o.rf);
  bool f = fedder_is_fpure(m_of(o.rf));
  tab = table({"ring", "f_pure"});
  tab["rows"].push_back({o.rf.name, f});
  return {{"f_pure", f}};
}

Json cmd_sfr(const Options& o, Checks&, Json&) {
  need_ring(o.rf);
  std::string c;
  if (o.j.contains("c"))
    c = o.j["c"].get<std::string>();
  else if (!o.rf.test_elements.empty())
    c = o.rf.test_elements.front().name;
  else
    throw InvalidArgument("sfr needs a test element");
  auto cert = sfr_certificate(o.rf.ring, o.rf.element(c), o.emax());
  Json j{{"c", c}, {"outcome", to_string(cert.outcome)}, {"membership", cert.membership}, {"emax", o.emax()}};
  j["e"] = cert.outcome == SfrOutcome::certified ? Json(cert.e) : Json(nullptr);
  j["ideal"] = cert.ideal ? Json(ideal_text(*cert.ideal)) : Json(nullptr);
  return j;
}

Json cmd_stratify(const Options& o, Checks& checks, Json& tab) {
  need_ring(o.rf);
  auto rep = stratify_W(o.module(), o.primes(), o.es());
  append(checks, rep.checks);
  Json j = strata_json(rep, tab);
  j["module"] = o.module_name();
  j["e"] = o.es();
  return j;
}

// ---------------------------------------------------------------- check-all

GradedModule reversed(const GradedModule& M) {
  GradedModule N = M;
  std::reverse(N.degrees.begin(), N.degrees.end());
  for (auto& col : N.relations.columns) std::reverse(col.begin(), col.end());
  return N;
}

// Runs one piece of the suite; exponents beyond the size guard are skipped.
void section(Json& out, const std::string& name, const std::function<Json()>& f) {
  try {
    out[name] = f();
  } catch (const SizeGuardExceeded& e) {
    out[name] = {{"skipped", e.what()}};
  }
}

Json cmd_check_all(const Options& o, Checks& checks, Json&) {
  Json s = Json::object();
  if (!o.rf.has_ring()) {
    if (!o.rf.field_model) throw InvalidArgument("nothing to check");
    auto rep = field_model_report(*o.rf.field_model, {1, 2, 3, 4, 5});
    append(checks, field_model_checks(*o.rf.field_model, rep));
    Json tab;
    s["field_model"] = field_model_json(rep, tab);
    return {{"sections", s}};
  }
  const RingPtr& R = o.rf.ring;
  const int E = o.emax();
  const int d = R->dimension();
  const PrimeSpec m = m_of(o.rf);
  const GradedModule Rm = GradedModule::free(R, {Rational(0)});
  const auto& primes = o.rf.primes;
  std::vector<PrimeSpec> specs;
  for (const auto& p : primes) specs.push_back(p.spec);
  const bool regular = R->ideal().is_zero();

  if (R->homogeneous())
    section(s, "hk", [&] {
      std::vector<int> es;
      for (int e = 1; e <= E; ++e) es.push_back(e);
      auto h = hk_function(R, es);
      for (std::size_t k = 0; k < es.size(); ++k) {
        // The layer count needed at m grows like q times the number of variables.
        if (checked_pow(R->characteristic(), es[k]) * R->nvars() > limits().layer_bound) continue;
        IdealHandle K = IdealHandle(R->context(), bracket_power(m.ideal.generators(), es[k])) + R->ideal();
        std::int64_t local = length_at_prime(K, m.ideal);
        checks.push_back(check("Hilbert-Kunz length is local at m",
                               "lambda(R/m^[q]) = " + std::to_string(h.raw[k]) + " = lambda(R_m/m^[q]R_m) = " +
                                   std::to_string(local) + " at e=" + std::to_string(es[k]),
                               h.raw[k] == local));
      }
      Json tab;
      return hk_json(h, tab);
    });

  const bool fpure = fedder_is_fpure(m);
  s["fpure"] = {{"f_pure", fpure}};

  for (int e = 1; e <= E; ++e)
    section(s, "betti_e" + std::to_string(e), [&] {
      auto b = frobenius_betti_sequence(Rm, 2, {e});
      append(checks, b.checks);
      if (regular) {
        const std::int64_t qn = checked_pow(checked_pow(R->characteristic(), e), R->nvars());
        bool ok = b.beta[0][0] == qn && b.beta[0][1] == 0 && b.beta[0][2] == 0;
        checks.push_back(check("regular rings have free Frobenius pushforwards",
                               "beta(" + std::to_string(e) + ") = (" + std::to_string(b.beta[0][0]) + ", " +
                                   std::to_string(b.beta[0][1]) + ", " + std::to_string(b.beta[0][2]) + ") = (" +
                                   std::to_string(qn) + ", 0, 0)",
                               ok));
      }
      Json tab;
      return betti_json(b, tab);
    });

  for (int e = 1; e <= E; ++e)
    section(s, "schanuel_e" + std::to_string(e), [&] {
      GradedModule F = pushforward_ring(R, e);
      auto a = free_resolution(F, 2);
      auto padded = free_resolution(F, 2, false);
      auto other = free_resolution(reversed(F), 2);
      Json rows = Json::array();
      for (int i = 0; i <= 2; ++i) {
        SchanuelReport cp, cm;
        try {
          cp = schanuel_compare(a, padded, i);
        } catch (const TheoremViolation& v) {
          checks.push_back(check("Schanuel bound", v.what(), false));
          continue;
        }
        checks.push_back(check("Schanuel bound",
                               "|chi_" + std::to_string(i) + " difference| = " + std::to_string(cp.chi_difference) +
                                   " <= dim R = " + std::to_string(d) + " at e=" + std::to_string(e),
                               cp.chi_difference <= d));
        try {
          cm = schanuel_compare(a, other, i);
        } catch (const TheoremViolation& v) {
          checks.push_back(check("minimal resolutions agree", v.what(), false));
          continue;
        }
        bool same = std::all_of(cm.rank_differences.begin(), cm.rank_differences.end(),
                                [](std::int64_t x) { return x == 0; });
        checks.push_back(check("minimal resolutions agree",
                               "b_j differences up to j=" + std::to_string(i) + " are all 0 at e=" + std::to_string(e),
                               same));
        rows.push_back({{"i", i}, {"chi_difference_padded", cp.chi_difference}, {"minimal_rank_differences",
                                                                                   cm.rank_differences}});
      }
      return Json{{"minimal_ranks", a.ranks()}, {"padded_ranks", padded.ranks()}, {"comparisons", rows}};
    });

  for (int e = 1; e <= E; ++e)
    section(s, "chi_e" + std::to_string(e), [&] {
      Json a = Json::array();
      for (int i = 0; i <= 1; ++i) {
        auto c = chi_local_global(Rm, i, e, specs);
        append(checks, c.checks);
        a.push_back(chi_json(c));
      }
      return a;
    });

  if (!o.rf.chains.empty())
    section(s, "chains", [&] {
      Json out = Json::array();
      for (const auto& chain : o.rf.chains)
        for (int e = 1; e <= E; ++e) {
          std::vector<BettiReport> reps;
          for (const auto& n : chain) {
            const PrimeSpec& P = o.rf.prime(n);
            reps.push_back(betti_numbers(Rm, e, 1, &P));
            out.push_back({{"prime", n}, {"e", e}, {"beta", reps.back().beta}, {"chi", reps.back().chi}});
          }
          for (std::size_t k = 1; k < reps.size(); ++k)
            for (int i = 0; i <= 1; ++i) {
              const std::string where = " for " + chain[k - 1] + " in " + chain[k] + ", e=" + std::to_string(e);
              checks.push_back(check("Betti numbers grow under specialization",
                                     "beta_" + std::to_string(i) + ": " + std::to_string(reps[k - 1].beta[i]) +
                                         " <= " + std::to_string(reps[k].beta[i]) + where,
                                     reps[k - 1].beta[i] <= reps[k].beta[i]));
              checks.push_back(check("Euler characteristics grow under specialization",
                                     "chi_" + std::to_string(i) + ": " + std::to_string(reps[k - 1].chi[i]) +
                                         " <= " + std::to_string(reps[k].chi[i]) + where,
                                     reps[k - 1].chi[i] <= reps[k].chi[i]));
            }
        }
      return out;
    });

  section(s, "splitting", [&] {
    std::vector<std::int64_t> a{1};
    Json out{{"f_pure", fpure}};
    const int top = std::max(E, 3);
    for (int e = 1; e <= top; ++e) {
      try {
        a.push_back(module_splitting_number(Rm, e));
      } catch (const SizeGuardExceeded&) {
        break;
      }
      const std::int64_t q = checked_pow(R->characteristic(), e);
      if (o.rf.domain)
        checks.push_back(check("splitting numbers are bounded by the generic rank",
                               "a_" + std::to_string(e) + " = " + std::to_string(a[e]) + " <= q^gamma = " +
                                   std::to_string(checked_pow(q, R->gamma())),
                               a[e] <= checked_pow(q, R->gamma())));
      if (fpure && e <= E) {
        std::int64_t fed = splitting_number(m, e);
        checks.push_back(check("free rank equals the Fedder colength",
                               "frk F^" + std::to_string(e) + "_*R = " + std::to_string(a[e]) +
                                   " = lambda(R/I_e) = " + std::to_string(fed),
                               a[e] == fed));
      }
    }
    for (std::size_t e = 1; e < a.size(); ++e)
      for (std::size_t f = e; e + f < a.size(); ++f)
        checks.push_back(check("splitting numbers are supermultiplicative",
                               "a_" + std::to_string(e + f) + " = " + std::to_string(a[e + f]) + " >= a_" +
                                   std::to_string(e) + " a_" + std::to_string(f) + " = " +
                                   std::to_string(a[e] * a[f]),
                               a[e + f] >= a[e] * a[f]));
    a.erase(a.begin());
    out["a"] = a;
    return out;
  });

  std::vector<int> es;
  for (int e = 1; e <= E; ++e) es.push_back(e);
  std::vector<std::string> module_names{"R"};
  for (const auto& nm : o.rf.modules) module_names.push_back(nm.name);
  for (const auto& name : module_names)
    section(s, "split_" + name, [&] {
      auto rep = splitting_ratio_report(o.rf.module(name), es, specs);
      append(checks, rep.checks);
      Json tab;
      return split_json(rep, tab);
    });

  section(s, "strata", [&] {
    auto rep = stratify_W(Rm, specs, es);
    append(checks, rep.checks);
    Json tab;
    return strata_json(rep, tab);
  });

  section(s, "splitprime", [&] {
    Checks none;
    Json tab;
    Json opts{{"emax", E}};
    return cmd_splitprime(Options{o.rf, opts}, none, tab);
  });

  if (!o.rf.test_elements.empty())
    section(s, "sfr", [&] {
      Json out = Json::array();
      for (const auto& t : o.rf.test_elements) {
        auto cert = sfr_certificate(R, t.element, E);
        out.push_back({{"c", t.name}, {"note", t.note}, {"outcome", to_string(cert.outcome)}, {"membership",
                                                                                               cert.membership}});
      }
      return out;
    });

  return {{"sections", s}, {"emax", E}};
}

using Handler = Json (*)(const Options&, Checks&, Json&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"hk", cmd_hk},         {"betti", cmd_betti}, {"chi", cmd_chi},           {"split", cmd_split},
      {"splitprime", cmd_splitprime}, {"fpure", cmd_fpure}, {"sfr", cmd_sfr}, {"stratify", cmd_stratify},
      {"check-all", cmd_check_all}};
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : handlers()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<int> parse_e_range(const std::string& text) {
  std::string t = boost::trim_copy(text);
  std::vector<int> out;
  try {
    auto dots = t.find("..");
    if (dots != std::string::npos) {
      int a = std::stoi(t.substr(0, dots)), b = std::stoi(t.substr(dots + 2));
      for (int e = a; e <= b; ++e) out.push_back(e);
    } else {
      std::vector<std::string> parts;
      boost::split(parts, t, boost::is_any_of(","));
      for (const auto& p : parts) out.push_back(std::stoi(p));
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad exponent range '" + text + "'");
  }
  if (out.empty()) throw InvalidArgument("empty exponent range '" + text + "'");
  return out;
}

Json run_command(const RingFile& rf, const std::string& command, const Json& options) {
  Handler h = nullptr;
  for (const auto& [k, f] : handlers())
    if (k == command) h = f;
  if (!h) throw InvalidArgument("unknown command '" + command + "'");
  if (!options.is_null() && !options.is_object()) throw InvalidArgument("options must be a JSON object");
  const Json opts = options.is_null() ? Json::object() : options;
  Checks checks;
  Json tab;
  Json body;
  try {
    body = h(Options{rf, opts}, checks, tab);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad option: ") + e.what());
  }
  body["schema"] = kReportSchema;
  body["command"] = command;
  body["ring"] = rf.name;
  body["checks"] = checks_json(checks);
  body["passed"] = std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.passed; });
  if (!tab.is_null()) body["table"] = tab;
  return body;
}

std::string report_to_csv(const Json& report) {
  if (!report.contains("table")) throw InvalidArgument("this report has no table");
  auto cell = [](const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
      boost::replace_all(s, "\"", "\"\"");
      s = "\"" + s + "\"";
    }
    return s;
  };
  std::ostringstream out;
  const auto& t = report["table"];
  bool first = true;
  for (const auto& c : t["columns"]) {
    out << (first ? "" : ",") << cell(c);
    first = false;
  }
  out << "\n";
  for (const auto& row : t["rows"]) {
    first = true;
    for (const auto& v : row) {
      out << (first ? "" : ",") << cell(v);
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace charp
