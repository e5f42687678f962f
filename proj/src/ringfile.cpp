#include "charp/ringfile.hpp"

#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>

namespace charp {

namespace {

struct Line {
  int number;
  std::string key;
  std::string label;  // second word of keys such as "prime P"
  std::string value;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw InvalidArgument("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_trimmed(const std::string& s, const char* sep) {
  std::vector<std::string> out;
  boost::split(out, s, boost::is_any_of(sep));
  for (auto& t : out) boost::trim(t);
  out.erase(std::remove_if(out.begin(), out.end(), [](const std::string& t) { return t.empty(); }), out.end());
  return out;
}

Rational parse_rational(const std::string& s, int line) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(line, "bad number '" + s + "'");
  }
}

int parse_int(const std::string& s, int line) {
  Rational r = parse_rational(s, line);
  if (r.denominator() != 1) fail(line, "expected an integer, got '" + s + "'");
  return static_cast<int>(r.numerator());
}

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    boost::trim(raw);
    if (raw.empty()) continue;
    auto colon = raw.find(':');
    if (colon == std::string::npos) fail(number, "expected 'key: value'");
    Line l{number, raw.substr(0, colon), {}, raw.substr(colon + 1)};
    boost::trim(l.key);
    boost::trim(l.value);
    auto space = l.key.find_first_of(" \t");
    if (space != std::string::npos) {
      l.label = l.key.substr(space + 1);
      boost::trim(l.label);
      l.key.resize(space);
    }
    lines.push_back(std::move(l));
  }
  return lines;
}

GradedModule parse_module(const RingPtr& R, const std::string& value, int line) {
  const ContextPtr& ctx = R->context();
  if (boost::starts_with(value, "cyclic")) {
    return GradedModule::cyclic(R, R->preimage(IdealHandle::parse(ctx, value.substr(6)).generators()));
  }
  auto semi = value.find(';');
  std::string gens = value.substr(0, semi);
  std::string rels = semi == std::string::npos ? "" : value.substr(semi + 1);
  boost::trim(gens);
  boost::trim(rels);
  if (!boost::starts_with(gens, "gens")) fail(line, "module needs 'gens <degrees>' or 'cyclic <ideal>'");
  std::vector<Rational> degrees;
  for (const auto& t : split_trimmed(gens.substr(4), " ,\t")) degrees.push_back(parse_rational(t, line));
  if (degrees.empty()) fail(line, "module without generators");
  GradedModule M = GradedModule::free(R, degrees);
  if (!rels.empty()) {
    if (!boost::starts_with(rels, "rels")) fail(line, "expected 'rels [..] [..]'");
    std::size_t pos = 4;
    while ((pos = rels.find('[', pos)) != std::string::npos) {
      auto close = rels.find(']', pos);
      if (close == std::string::npos) fail(line, "unterminated relation");
      std::vector<std::string> entries;
      boost::split(entries, rels.substr(pos + 1, close - pos - 1), boost::is_any_of(","));
      if (entries.size() != degrees.size())
        fail(line, "relation has " + std::to_string(entries.size()) + " entries for " +
                       std::to_string(degrees.size()) + " generators");
      Vec col;
      for (const auto& e : entries) col.push_back(R->reduce(Poly::parse(ctx, e)));
      M.relations.columns.push_back(std::move(col));
      pos = close + 1;
    }
  }
  M.provenance = "file";
  M.validate();
  return M;
}

}  // namespace

const PrimeSpec& RingFile::prime(const std::string& name) const {
  for (const auto& p : primes)
    if (p.name == name) return p.spec;
  throw InvalidArgument("unknown prime '" + name + "'");
}

PrimeSpec RingFile::resolve_prime(const std::string& text) const {
  if (!ring) throw InvalidArgument("this file has no ring");
  for (const auto& p : primes)
    if (p.name == text) return p.spec;
  return PrimeSpec::make(ring, ring->preimage(IdealHandle::parse(ring->context(), text).generators()),
                         "(" + text + ")");
}

GradedModule RingFile::module(const std::string& name) const {
  if (!ring) throw InvalidArgument("this file has no ring");
  if (name.empty() || name == "R") return GradedModule::free(ring, {Rational(0)});
  for (const auto& m : modules)
    if (m.name == name) return m.module;
  throw InvalidArgument("unknown module '" + name + "'");
}

Poly RingFile::element(const std::string& text) const {
  if (!ring) throw InvalidArgument("this file has no ring");
  for (const auto& t : test_elements)
    if (t.name == text) return t.element;
  return Poly::parse(ring->context(), text);
}

RingFile parse_ring_file(const std::string& text, const std::string& fallback_name) {
  const auto lines = tokenize(text);
  RingFile rf;
  rf.name = fallback_name;
  std::vector<std::string> vars;
  std::vector<Rational> degrees;
  MonomialOrder order = MonomialOrder::grevlex;
  std::string ideal;
  bool have_char = false;

  for (const auto& l : lines) {
    if (l.key == "name") {
      rf.name = l.value;
    } else if (l.key == "char") {
      int p = parse_int(l.value, l.number);
      if (p < 2) fail(l.number, "characteristic must be a prime");
      rf.p = static_cast<std::uint32_t>(p);
      have_char = true;
    } else if (l.key == "vars") {
      vars = split_trimmed(l.value, ",");
    } else if (l.key == "degrees") {
      for (const auto& t : split_trimmed(l.value, ", ")) degrees.push_back(parse_rational(t, l.number));
    } else if (l.key == "order") {
      order = parse_monomial_order(l.value);
    } else if (l.key == "ideal") {
      if (!l.value.empty()) ideal += (ideal.empty() ? "" : ", ") + l.value;
    } else if (l.key == "domain") {
      rf.domain = l.value == "yes" || l.value == "true";
    } else if (l.key == "emax") {
      rf.emax = parse_int(l.value, l.number);
    } else if (l.key == "field_model") {
      FieldModel fm;
      for (const auto& t : split_trimmed(l.value, ", ")) {
        int a = parse_int(t, l.number);
        if (a < 0) fail(l.number, "field degrees are nonnegative");
        fm.alphas.push_back(a);
      }
      if (fm.alphas.empty()) fail(l.number, "empty field model");
      rf.field_model = fm;
    } else if (l.key != "prime" && l.key != "chain" && l.key != "components" && l.key != "module" &&
               l.key != "test_element") {
      fail(l.number, "unknown key '" + l.key + "'");
    }
  }
  if (!have_char) throw InvalidArgument("ring file needs 'char'");
  if (rf.field_model) rf.field_model->p = rf.p;

  if (!vars.empty()) {
    if (!degrees.empty() && degrees.size() != vars.size())
      throw InvalidArgument("'degrees' must list one weight per variable");
    auto ctx = Context::make(rf.p, vars, order, degrees);
    rf.ring = QuotientRing::make(IdealHandle::parse(ctx, ideal));
  } else if (!rf.field_model) {
    throw InvalidArgument("ring file needs 'vars'");
  }

  for (const auto& l : lines) {
    if (l.key == "name" || l.key == "char" || l.key == "vars" || l.key == "degrees" || l.key == "order" ||
        l.key == "ideal" || l.key == "domain" || l.key == "emax" || l.key == "field_model")
      continue;
    if (!rf.ring) fail(l.number, "'" + l.key + "' needs a ring");
    const ContextPtr& ctx = rf.ring->context();
    if (l.key == "prime") {
      if (l.label.empty()) fail(l.number, "prime needs a name");
      for (const auto& p : rf.primes)
        if (p.name == l.label) fail(l.number, "duplicate prime '" + l.label + "'");
      auto P = rf.ring->preimage(IdealHandle::parse(ctx, l.value).generators());
      rf.primes.push_back({l.label, PrimeSpec::make(rf.ring, P, l.label)});
    } else if (l.key == "module") {
      if (l.label.empty() || l.label == "R") fail(l.number, "module needs a name other than R");
      rf.modules.push_back({l.label, parse_module(rf.ring, l.value, l.number)});
    } else if (l.key == "test_element") {
      auto bar = l.value.find('|');
      std::string poly = l.value.substr(0, bar);
      std::string note = bar == std::string::npos ? "" : l.value.substr(bar + 1);
      boost::trim(note);
      rf.test_elements.push_back({l.label.empty() ? poly : l.label, Poly::parse(ctx, poly), note});
    } else if (l.key == "components") {
      for (const auto& c : split_trimmed(l.value, ";"))
        rf.components.push_back(rf.ring->preimage(IdealHandle::parse(ctx, c).generators()));
    }
  }
  if (rf.ring) {
    bool has_m = false;
    for (const auto& p : rf.primes) has_m = has_m || p.name == "m";
    if (!has_m) rf.primes.insert(rf.primes.begin(), {"m", PrimeSpec::homogeneous_maximal(rf.ring)});
  }
  // Chains last, so they may name the implicit m.
  for (const auto& l : lines) {
    if (l.key != "chain") continue;
    auto names = split_trimmed(l.value, "<");
    if (names.size() < 2) fail(l.number, "a chain needs at least two primes");
    for (std::size_t k = 0; k < names.size(); ++k) {
      const PrimeSpec& P = rf.prime(names[k]);
      if (k > 0 && !P.ideal.contains(rf.prime(names[k - 1]).ideal))
        fail(l.number, names[k - 1] + " is not contained in " + names[k]);
    }
    rf.chains.push_back(names);
  }
  return rf;
}

RingFile load_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parse_ring_file(ss.str(), stem);
}

}  // namespace charp
