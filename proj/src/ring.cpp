#include "thhkit/ring.hpp"

#include "thhkit/errors.hpp"

namespace thhkit {

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

Ring Ring::fp(unsigned long p) {
  if (!is_prime(mpz_class(p))) throw MathError("InvalidRing", "F_p needs p prime, got " + std::to_string(p));
  return Ring(RingKind::Fp, mpz_class(p));
}

Ring Ring::integers() { return Ring(RingKind::Integers, mpz_class(0)); }

Ring Ring::integers_mod(const mpz_class& m) {
  if (m < 2) throw MathError("InvalidRing", "Z/m needs m >= 2, got " + m.get_str());
  return Ring(RingKind::IntegersMod, m);
}

bool Ring::is_field() const { return kind_ != RingKind::Integers && is_prime(modulus_); }

mpz_class Ring::reduce(const mpz_class& v) const {
  if (kind_ == RingKind::Integers) return v;
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

bool Ring::is_unit(const mpz_class& a) const {
  if (kind_ == RingKind::Integers) return a == 1 || a == -1;
  mpz_class g;
  mpz_class r = reduce(a);
  mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), modulus_.get_mpz_t());
  return r != 0 && g == 1;
}

mpz_class Ring::inverse(const mpz_class& a) const {
  if (!is_unit(a)) throw MathError("NotInvertible", a.get_str() + " is not a unit in " + name());
  if (kind_ == RingKind::Integers) return a;
  mpz_class inv;
  mpz_class r = reduce(a);
  mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), modulus_.get_mpz_t());
  return inv;
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Fp: return "F" + modulus_.get_str();
    case RingKind::Integers: return "Z";
    case RingKind::IntegersMod: return "Z/" + modulus_.get_str();
  }
  return "?";
}

Ring parse_ring(const std::string& text) {
  auto number = [&](const std::string& digits) {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw MathError("InvalidRing", "cannot parse ring '" + text + "'");
    return mpz_class(digits);
  };
  if (text == "Z") return Ring::integers();
  if (text.size() > 1 && text[0] == 'F') {
    mpz_class p = number(text.substr(1));
    if (!p.fits_ulong_p()) throw MathError("InvalidRing", "prime too large: " + text);
    return Ring::fp(p.get_ui());
  }
  if (text.rfind("Z/", 0) == 0) return Ring::integers_mod(number(text.substr(2)));
  throw MathError("InvalidRing", "cannot parse ring '" + text + "'");
}

}  // namespace thhkit
