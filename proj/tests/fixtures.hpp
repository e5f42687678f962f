#pragma once

#include <string>
#include <vector>

#include "charp/frob.hpp"
#include "charp/ring.hpp"

namespace fixtures {

using namespace charp;

inline RingPtr make_ring(std::uint32_t p, std::vector<std::string> vars, const std::string& ideal,
                         std::vector<Rational> degrees = {}) {
  auto ctx = Context::make(p, std::move(vars), MonomialOrder::grevlex, std::move(degrees));
  return QuotientRing::make(IdealHandle::parse(ctx, ideal));
}

inline RingPtr polynomial(std::uint32_t p, int n) {
  std::vector<std::string> v{"x", "y", "z", "w"};
  v.resize(n);
  return make_ring(p, v, "");
}
inline RingPtr xy(std::uint32_t p) { return make_ring(p, {"x", "y"}, "x*y"); }
inline RingPtr quadric(std::uint32_t p) { return make_ring(p, {"x", "y", "z"}, "x^2 - y*z"); }
inline RingPtr fermat(std::uint32_t p) { return make_ring(p, {"x", "y", "z"}, "x^3 + y^3 + z^3"); }
// Homogeneous once y and z carry degree 2.
inline RingPtr umbrella(std::uint32_t p) {
  return make_ring(p, {"x", "y", "z"}, "x^2*y - z^2", {Rational(1), Rational(2), Rational(2)});
}
// The prime field itself, as F_p[x]/(x).
inline RingPtr point(std::uint32_t p) { return make_ring(p, {"x"}, "x"); }

inline IdealHandle ideal(const RingPtr& R, const std::string& text) {
  return R->preimage(IdealHandle::parse(R->context(), text).generators());
}

inline Poly poly(const RingPtr& R, const std::string& text) { return Poly::parse(R->context(), text); }

}  // namespace fixtures
