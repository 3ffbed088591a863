#pragma once

// The fraction field of a polynomial ring, as a coefficient type.  Used for
// computations over k(x): trace forms, inverses modulo a monic polynomial,
// and the generic-component side of finite traces.  RatFunc<K> satisfies the
// same operational interface as Rat/Fp, so the univariate helpers (eea,
// uv_divmod, ...) work over it unchanged.

#include <string>
#include <utility>
#include <vector>

#include "residua/errors.hpp"
#include "residua/polynomial.hpp"
#include "residua/univar.hpp"

namespace residua {

template <class K>
class RatFunc {
 public:
  RatFunc() : lit_(0) {}
  RatFunc(long n) : lit_(n) {}
  explicit RatFunc(Polynomial<K> num)
      : attached_(true),
        num_(std::move(num)),
        den_(Polynomial<K>::one(num_.ring())) {}
  RatFunc(Polynomial<K> num, Polynomial<K> den)
      : attached_(true), num_(std::move(num)), den_(std::move(den)) {
    require_same_ring(num_.ring(), den_.ring());
    if (den_.is_zero()) throw domain_error("division-by-zero", "zero denominator");
    reduce();
  }

  bool attached() const { return attached_; }
  const RingPtr& ring() const { return num_.ring(); }
  const Polynomial<K>& num() const { return num_; }
  const Polynomial<K>& den() const { return den_; }

  bool is_zero() const { return attached_ ? num_.is_zero() : lit_ == 0; }
  bool is_one() const {
    if (!attached_) return lit_ == 1;
    return num_ == den_;
  }
  bool is_polynomial() const {
    return !attached_ || den_.is_constant();
  }
  // The underlying polynomial when the denominator is a unit.
  Polynomial<K> as_polynomial() const {
    if (!attached_)
      throw domain_error("unattached-ratfunc", "literal has no ring");
    if (!den_.is_constant())
      throw domain_error("not-polynomial",
                         "rational function has a nontrivial denominator");
    return num_ * den_.constant_value().inv();
  }

  RatFunc operator-() const {
    if (!attached_) return RatFunc(-lit_);
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc operator+(const RatFunc& o) const {
    auto [a, b] = unify(o);
    if (!a.attached_) return RatFunc(a.lit_ + b.lit_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    auto [a, b] = unify(o);
    if (!a.attached_) return RatFunc(a.lit_ * b.lit_);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw domain_error("division-by-zero", "division by zero");
    auto [a, b] = unify(o);
    if (!a.attached_) {
      if (a.lit_ % b.lit_ != 0)
        throw domain_error("unattached-ratfunc",
                           "cannot divide unattached literals inexactly");
      return RatFunc(a.lit_ / b.lit_);
    }
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc inv() const { return RatFunc(1) / *this; }

  bool operator==(const RatFunc& o) const {
    auto [a, b] = unify(o);
    if (!a.attached_) return a.lit_ == b.lit_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  std::string str() const {
    if (!attached_) return std::to_string(lit_);
    if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  bool attached_ = false;
  Polynomial<K> num_, den_;
  long lit_ = 0;

  void reduce() {
    if (num_.is_zero()) {
      den_ = Polynomial<K>::one(num_.ring());
      return;
    }
    // Full gcd reduction over a univariate base; otherwise only unit
    // normalization (sound, just not minimal).
    if (num_.ring()->vars.size() == 1) {
      auto a = univar_coeffs(num_, 0), b = univar_coeffs(den_, 0);
      auto g = univar_gcd(a, b);
      if (detail::uv_deg(g) > 0) {
        auto [qa, ra] = detail::uv_divmod(a, g);
        auto [qb, rb] = detail::uv_divmod(b, g);
        if (!ra.empty() || !rb.empty())
          throw domain_error("gcd-inconsistency", "fraction reduction failed");
        num_ = univar_assemble(num_.ring(), qa, 0);
        den_ = univar_assemble(num_.ring(), qb, 0);
      }
    } else if (!den_.is_constant()) {
      if (auto q = num_.exact_divide(den_)) {
        num_ = *q;
        den_ = Polynomial<K>::one(num_.ring());
      }
    }
    K lc = den_.lead(Order::lex).second;
    if (!lc.is_one()) {
      K inv = K(1) / lc;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  std::pair<RatFunc, RatFunc> unify(const RatFunc& o) const {
    if (attached_ == o.attached_) {
      if (attached_) require_same_ring(num_.ring(), o.num_.ring());
      return {*this, o};
    }
    if (attached_) {
      RatFunc lifted(Polynomial<K>::constant(num_.ring(), K(o.lit_)));
      return {*this, lifted};
    }
    RatFunc lifted(Polynomial<K>::constant(o.num_.ring(), K(lit_)));
    return {lifted, o};
  }
};

// ---------------------------------------------------------------------------
// Tower views: a polynomial in k[x_1..x_m, t] seen as a univariate polynomial
// in t over k(x_1..x_m).

template <class K>
struct TowerView {
  RingPtr base;                    // the x-variables only
  RingPtr fiber;                   // one-variable ring over the same field
  std::vector<int> base_vars;      // indices of base vars in the full ring
  int fiber_var;                   // index of t in the full ring
};

template <class K>
TowerView<K> make_tower_view(const RingPtr& full, int fiber_var) {
  TowerView<K> tv;
  std::vector<std::string> base_names;
  for (std::size_t i = 0; i < full->vars.size(); ++i)
    if (static_cast<int>(i) != fiber_var) {
      base_names.push_back(full->vars[i]);
      tv.base_vars.push_back(static_cast<int>(i));
    }
  tv.base = make_ring(base_names, full->field);
  tv.fiber = make_ring({full->vars[fiber_var]}, full->field);
  tv.fiber_var = fiber_var;
  return tv;
}

// Coefficients of f in the fiber variable, as base-ring polynomials.
template <class K>
std::vector<Polynomial<K>> tower_coeffs(const TowerView<K>& tv,
                                        const Polynomial<K>& f) {
  auto cs = f.coeffs_in(tv.fiber_var);
  std::vector<Polynomial<K>> out;
  out.reserve(cs.size());
  for (auto& c : cs) {
    Polynomial<K> b = Polynomial<K>::zero(tv.base);
    for (auto& [m, coef] : c.terms()) {
      Mono bm(tv.base->vars.size(), 0);
      for (std::size_t i = 0; i < tv.base_vars.size(); ++i)
        bm[i] = m[tv.base_vars[i]];
      b.add_term(bm, coef);
    }
    out.push_back(std::move(b));
  }
  return out;
}

// Dense coefficient vector over k(x): f as element of k(x)[t].
template <class K>
std::vector<RatFunc<K>> tower_ratfunc_coeffs(const TowerView<K>& tv,
                                             const Polynomial<K>& f) {
  std::vector<RatFunc<K>> out;
  for (auto& c : tower_coeffs(tv, f)) out.push_back(RatFunc<K>(c));
  detail::uv_trim(out);
  return out;
}

// Lifts a base-ring polynomial into the full ring.
template <class K>
Polynomial<K> lift_to(const RingPtr& full, const TowerView<K>& tv,
                      const Polynomial<K>& base_poly) {
  Polynomial<K> lift = Polynomial<K>::zero(full);
  for (auto& [m, coef] : base_poly.terms()) {
    Mono fm(full->vars.size(), 0);
    for (std::size_t i = 0; i < tv.base_vars.size(); ++i)
      fm[tv.base_vars[i]] = m[i];
    lift.add_term(fm, coef);
  }
  return lift;
}

// Reassembles a k(x)[t] element into (numerator in the full ring, common
// denominator in the base ring).
template <class K>
std::pair<Polynomial<K>, Polynomial<K>> tower_clear_denominators(
    const TowerView<K>& tv, const RingPtr& full,
    const std::vector<RatFunc<K>>& cs) {
  Polynomial<K> common = Polynomial<K>::one(tv.base);
  for (auto& c : cs) {
    if (!c.attached() || c.den().is_constant()) continue;
    // lcm via gcd in the univariate case, plain product otherwise.
    if (tv.base->vars.size() == 1) {
      auto a = univar_coeffs(common, 0), b = univar_coeffs(c.den(), 0);
      auto g = univar_gcd(a, b);
      auto [q, r] = detail::uv_divmod(b, g);
      common = common * univar_assemble(tv.base, q, 0);
    } else {
      common = common * c.den();
    }
  }
  Polynomial<K> num = Polynomial<K>::zero(full);
  Polynomial<K> tpow = Polynomial<K>::one(full);
  Polynomial<K> tvar = Polynomial<K>::var(full, tv.fiber_var);
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (!cs[j].is_zero()) {
      RatFunc<K> scaled = cs[j] * RatFunc<K>(common);
      Polynomial<K> cb = scaled.as_polynomial();
      // Lift base polynomial into the full ring.
      Polynomial<K> lift = Polynomial<K>::zero(full);
      for (auto& [m, coef] : cb.terms()) {
        Mono fm(full->vars.size(), 0);
        for (std::size_t i = 0; i < tv.base_vars.size(); ++i)
          fm[tv.base_vars[i]] = m[i];
        lift.add_term(fm, coef);
      }
      num += lift * tpow;
    }
    tpow = tpow * tvar;
  }
  return {num, lift_to(full, tv, common)};
}

// Function-field coefficients carry their own ring; nothing to pin.
template <class K>
RatFunc<K> attach_to(const RatFunc<K>& c, const FieldDesc&) {
  return c;
}

}  // namespace residua
