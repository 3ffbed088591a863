#pragma once

// Exact coefficient fields: arbitrary-precision rationals (GMP-backed) and
// prime fields F_p with p < 2^31.  Everything is a value type; there is no
// global state, so computations over different fields can run concurrently.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "residua/errors.hpp"

namespace residua {

struct field_error : domain_error {
  explicit field_error(const std::string& msg) : domain_error("field-error", msg) {}
};

// Runtime description of a coefficient field, used at parse/dispatch
// boundaries.  kind 'Q' = rationals, 'P' = prime field of characteristic p.
struct FieldDesc {
  char kind = 'Q';
  std::uint32_t p = 0;

  static FieldDesc rationals() { return {'Q', 0}; }
  static FieldDesc prime(std::uint32_t p) { return {'P', p}; }
  bool operator==(const FieldDesc&) const = default;

  std::string name() const {
    return kind == 'Q' ? std::string("Q") : "F" + std::to_string(p);
  }
};

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rat: exact rational numbers.

class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw field_error("division by zero");
    v_.canonicalize();
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw field_error("division by zero");
    return Rat(mpq_class(v_ / o.v_));
  }
  Rat inv() const { return Rat(1) / *this; }
  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }

  // Total order (used only for deterministic tie-breaking, e.g. pivoting).
  bool operator<(const Rat& o) const { return v_ < o.v_; }

  static FieldDesc desc() { return FieldDesc::rationals(); }
  static std::uint32_t characteristic() { return 0; }

  const mpq_class& value() const { return v_; }

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

// ---------------------------------------------------------------------------
// Fp: prime field element.  The modulus travels with the value; elements with
// p == 0 are plain integer literals not yet attached to a modulus (they arise
// from generic code writing K(2) and unify with attached elements on first
// contact).  Attached values are kept reduced to 0..p-1.

class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(long n) : v_(0), p_(0), lit_(n) {}
  Fp(std::uint32_t v, std::uint32_t p) : p_(p) {
    if (!is_prime_u32(p) || p >= (1u << 31))
      throw field_error("modulus must be a prime < 2^31");
    v_ = v % p;
  }
  static Fp from_long(long n, std::uint32_t p) {
    long r = n % static_cast<long>(p);
    if (r < 0) r += p;
    return Fp(static_cast<std::uint32_t>(r), p);
  }

  bool attached() const { return p_ != 0; }
  std::uint32_t modulus() const { return p_; }

  bool is_zero() const { return attached() ? v_ == 0 : lit_ == 0; }
  bool is_one() const { return attached() ? v_ == 1 : lit_ == 1; }

  Fp operator-() const {
    if (!attached()) return Fp(-lit_);
    return Fp(v_ == 0 ? 0 : p_ - v_, p_);
  }
  Fp operator+(const Fp& o) const {
    auto [a, b, p] = unify(o);
    if (p == 0) return Fp(lit_ + o.lit_);
    return Fp(static_cast<std::uint32_t>((a + b) % p), static_cast<std::uint32_t>(p));
  }
  Fp operator-(const Fp& o) const { return *this + (-o); }
  Fp operator*(const Fp& o) const {
    auto [a, b, p] = unify(o);
    if (p == 0) return Fp(lit_ * o.lit_);
    return Fp(static_cast<std::uint32_t>((a * b) % p), static_cast<std::uint32_t>(p));
  }
  Fp inv() const {
    if (!attached()) {
      if (lit_ == 1 || lit_ == -1) return *this;
      throw field_error("cannot invert an unattached prime-field literal");
    }
    if (v_ == 0) throw field_error("division by zero");
    // Extended Euclid on (v, p).
    std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
    while (m != 0) {
      std::int64_t q = a / m;
      a -= q * m;
      std::swap(a, m);
      x0 -= q * x1;
      std::swap(x0, x1);
    }
    x0 %= p_;
    if (x0 < 0) x0 += p_;
    return Fp(static_cast<std::uint32_t>(x0), p_);
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }

  bool operator==(const Fp& o) const {
    auto [a, b, p] = unify(o);
    return p == 0 ? lit_ == o.lit_ : a == b;
  }
  bool operator!=(const Fp& o) const { return !(*this == o); }
  bool operator<(const Fp& o) const {
    auto [a, b, p] = unify(o);
    return p == 0 ? lit_ < o.lit_ : a < b;
  }

  std::uint32_t characteristic() const { return p_; }

  std::string str() const {
    if (!attached()) return std::to_string(lit_);
    return std::to_string(v_);
  }

  long literal() const { return attached() ? static_cast<long>(v_) : lit_; }

 private:
  std::uint32_t v_;
  std::uint32_t p_;
  long lit_ = 0;  // value when p_ == 0

  // Returns both operands as residues under the common modulus (0 = both
  // literals).  Mixing two different moduli is a bug in the caller.
  struct U {
    std::uint64_t a, b, p;
  };
  U unify(const Fp& o) const {
    std::uint32_t p = p_ ? p_ : o.p_;
    if (p_ && o.p_ && p_ != o.p_)
      throw field_error("mixed prime-field moduli");
    if (p == 0) return {0, 0, 0};
    auto red = [p](const Fp& x) -> std::uint64_t {
      if (x.p_) return x.v_;
      long r = x.lit_ % static_cast<long>(p);
      if (r < 0) r += p;
      return static_cast<std::uint64_t>(r);
    };
    return {red(*this), red(o), p};
  }
};

// Pin a possibly-unattached coefficient to the ring's field.  Rings attach
// every coefficient they store so that literals like K(7) cannot survive as
// modulus-free integers inside prime-field polynomials.
inline Rat attach_to(const Rat& c, const FieldDesc&) { return c; }
inline Fp attach_to(const Fp& c, const FieldDesc& f) {
  if (c.attached() || f.kind != 'P') return c;
  return Fp::from_long(c.literal(), f.p);
}

}  // namespace residua
