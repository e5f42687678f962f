#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charp/frob.hpp"
#include "charp/invariants.hpp"
#include "charp/ring.hpp"

namespace charp {

struct NamedPrime {
  std::string name;
  PrimeSpec spec;
};

struct NamedModule {
  std::string name;
  GradedModule module;
};

struct TestElement {
  std::string name;
  Poly element;
  std::string note;  // e.g. "R_c regular"
};

/// A parsed corpus file. Line-oriented `key: value`; `#` starts a comment.
///
///   name: quadric_p3
///   char: 3
///   vars: x, y, z
///   degrees: 1, 1, 1
///   order: grevlex
///   ideal: x^2 - y*z
///   domain: yes
///   prime P: x, y
///   chain: zero < P < m
///   components: x ; y
///   module M: gens 0 0; rels [0, x] [y, 0]
///   test_element c: y    # R_c regular
///   field_model: 0 1
///   emax: 2
///
/// A prime named `m` is always available and means the homogeneous maximal
/// ideal; `R` names the ring as a module over itself. Files carrying only
/// `char` and `field_model` describe a product of fields and have no ring.
struct RingFile {
  std::string name;
  std::uint32_t p = 0;
  RingPtr ring;
  bool domain = false;
  int emax = 2;
  std::vector<NamedPrime> primes;
  std::vector<std::vector<std::string>> chains;
  std::vector<IdealHandle> components;
  std::vector<NamedModule> modules;
  std::vector<TestElement> test_elements;
  std::optional<FieldModel> field_model;

  bool has_ring() const { return static_cast<bool>(ring); }
  const PrimeSpec& prime(const std::string& name) const;
  /// Named prime, or a prime parsed from generator text.
  PrimeSpec resolve_prime(const std::string& name_or_ideal) const;
  GradedModule module(const std::string& name) const;
  /// Named test element, or a polynomial parsed from text.
  Poly element(const std::string& name_or_poly) const;
};

RingFile parse_ring_file(const std::string& text, const std::string& fallback_name = {});
RingFile load_ring_file(const std::string& path);

}  // namespace charp
