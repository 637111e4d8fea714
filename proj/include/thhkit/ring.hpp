#pragma once

#include <gmpxx.h>

#include <string>

namespace thhkit {

enum class RingKind { Fp, Integers, IntegersMod };

/// Ground ring of coefficients: F_p, Z or Z/m. Values are mpz_class and are
/// kept in canonical form (0..n-1 for the finite rings).
class Ring {
 public:
  static Ring fp(unsigned long p);
  static Ring integers();
  static Ring integers_mod(const mpz_class& m);

  RingKind kind() const { return kind_; }
  const mpz_class& modulus() const { return modulus_; }
  /// 0 for Z, otherwise the modulus.
  const mpz_class& characteristic() const { return modulus_; }
  bool is_field() const;
  bool is_integers() const { return kind_ == RingKind::Integers; }
  bool char_two() const { return kind_ != RingKind::Integers && modulus_ == 2; }

  mpz_class reduce(const mpz_class& v) const;
  mpz_class add(const mpz_class& a, const mpz_class& b) const { return reduce(a + b); }
  mpz_class sub(const mpz_class& a, const mpz_class& b) const { return reduce(a - b); }
  mpz_class mul(const mpz_class& a, const mpz_class& b) const { return reduce(a * b); }
  mpz_class neg(const mpz_class& a) const { return reduce(-a); }
  bool is_unit(const mpz_class& a) const;
  /// Throws MathError("NotInvertible") unless `a` is a unit.
  mpz_class inverse(const mpz_class& a) const;

  /// "F2", "Z", "Z/4".
  std::string name() const;

  bool operator==(const Ring& other) const {
    return kind_ == other.kind_ && modulus_ == other.modulus_;
  }
  bool operator!=(const Ring& other) const { return !(*this == other); }

 private:
  Ring(RingKind kind, mpz_class modulus) : kind_(kind), modulus_(std::move(modulus)) {}

  RingKind kind_;
  mpz_class modulus_;
};

/// A single ring element in canonical form.
class Coefficient {
 public:
  Coefficient(Ring ring, const mpz_class& value) : ring_(std::move(ring)), value_(ring_.reduce(value)) {}

  const Ring& ring() const { return ring_; }
  const mpz_class& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Coefficient operator+(const Coefficient& o) const { return {ring_, value_ + o.value_}; }
  Coefficient operator-(const Coefficient& o) const { return {ring_, value_ - o.value_}; }
  Coefficient operator*(const Coefficient& o) const { return {ring_, value_ * o.value_}; }
  Coefficient operator-() const { return {ring_, -value_}; }
  bool operator==(const Coefficient& o) const { return ring_ == o.ring_ && value_ == o.value_; }

 private:
  Ring ring_;
  mpz_class value_;
};

bool is_prime(const mpz_class& n);

/// Parses "F2", "F3", "Z", "Z/6". Throws MathError on bad names.
Ring parse_ring(const std::string& text);

}  // namespace thhkit
