#pragma once

// Multivariate polynomials over an exact coefficient field K (Rat or Fp, or
// any value type with field operations).  Terms are stored in a fixed
// canonical order (lex descending on exponent vectors) independent of the
// monomial order chosen for Groebner computations, so printing and iteration
// are deterministic.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "residua/errors.hpp"
#include "residua/field.hpp"

namespace residua {

// Degree guard for all iterative algebra (env RESIDUA_MAX_DEGREE, default 64).
inline std::uint32_t max_degree_cap() {
  static const std::uint32_t cap = [] {
    if (const char* s = std::getenv("RESIDUA_MAX_DEGREE")) {
      long v = std::atol(s);
      if (v > 0) return static_cast<std::uint32_t>(v);
    }
    return 64u;
  }();
  return cap;
}

inline void check_degree_cap(std::int64_t deg, const char* where) {
  if (deg > static_cast<std::int64_t>(max_degree_cap()))
    throw domain_error("degree-cap-exceeded",
                       std::string(where) + ": degree " + std::to_string(deg) +
                           " exceeds RESIDUA_MAX_DEGREE=" +
                           std::to_string(max_degree_cap()));
}

// ---------------------------------------------------------------------------
// Ring descriptor: ordered variable names plus the coefficient field.

struct Ring {
  std::vector<std::string> vars;
  FieldDesc field;

  int index_of(const std::string& v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return static_cast<int>(i);
    return -1;
  }
  bool operator==(const Ring& o) const {
    return vars == o.vars && field == o.field;
  }
  std::string name() const {
    std::string s = field.name() + "[";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) s += ",";
      s += vars[i];
    }
    return s + "]";
  }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars, FieldDesc f) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw parse_error("duplicate variable '" + vars[i] + "' in ring");
  return std::make_shared<Ring>(Ring{std::move(vars), f});
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b))
    throw domain_error("ring-mismatch",
                       "operands live in different rings: " + a->name() +
                           " vs " + b->name());
}

// ---------------------------------------------------------------------------
// Monomials: exponent vectors of length nvars.

using Mono = std::vector<std::uint32_t>;

inline std::uint64_t mono_degree(const Mono& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline bool mono_divides(const Mono& a, const Mono& b) {  // a | b
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Mono mono_quot(const Mono& b, const Mono& a) {  // b / a
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

// Monomial orders.  lex: first differing exponent decides.  grevlex: total
// degree first, ties by the *last* differing exponent with the *smaller*
// entry winning.
enum class Order { lex, grevlex };

inline int mono_cmp(const Mono& a, const Mono& b, Order o) {
  if (o == Order::lex) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  std::uint64_t da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

inline Order order_from_name(const std::string& s) {
  if (s == "lex") return Order::lex;
  if (s == "grevlex" || s.empty()) return Order::grevlex;
  throw parse_error("unknown monomial order '" + s + "'");
}

// Canonical storage order: lex descending.
struct MonoLexDesc {
  bool operator()(const Mono& a, const Mono& b) const {
    return mono_cmp(a, b, Order::lex) > 0;
  }
};

// Coefficient construction from parsed rational literals.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
  static Rat from_mpq(const mpq_class& q, const FieldDesc&) { return Rat(q); }
};

template <>
struct FieldOps<Fp> {
  static Fp from_mpq(const mpq_class& q, const FieldDesc& f) {
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class p(static_cast<unsigned long>(f.p));
    mpz_class nr = num % p, dr = den % p;
    if (nr < 0) nr += p;
    if (dr < 0) dr += p;
    Fp n(static_cast<std::uint32_t>(nr.get_ui()), f.p);
    Fp d(static_cast<std::uint32_t>(dr.get_ui()), f.p);
    return n / d;
  }
};

// ---------------------------------------------------------------------------

template <class K>
class Polynomial {
 public:
  using TermMap = std::map<Mono, K, MonoLexDesc>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, K c) {
    Polynomial p(std::move(ring));
    c = attach_to(c, p.ring_->field);
    if (!c.is_zero()) p.terms_[Mono(p.ring_->vars.size(), 0)] = std::move(c);
    return p;
  }
  static Polynomial one(RingPtr ring) { return constant(std::move(ring), K(1)); }
  static Polynomial var(RingPtr ring, int i) {
    Polynomial p(std::move(ring));
    Mono m(p.ring_->vars.size(), 0);
    m.at(i) = 1;
    p.terms_[m] = attach_to(K(1), p.ring_->field);
    return p;
  }
  static Polynomial var(RingPtr ring, const std::string& name) {
    int i = ring->index_of(name);
    if (i < 0)
      throw domain_error("unknown-variable",
                         "variable '" + name + "' not in ring " + ring->name());
    return var(std::move(ring), i);
  }
  static Polynomial term(RingPtr ring, Mono m, K c) {
    Polynomial p(std::move(ring));
    c = attach_to(c, p.ring_->field);
    if (!c.is_zero()) p.terms_[std::move(m)] = std::move(c);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_->vars.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
  }
  K constant_value() const {
    if (terms_.empty()) return K(0);
    if (!is_constant())
      throw domain_error("not-constant", "polynomial is not constant");
    return terms_.begin()->second;
  }

  K coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K(0) : it->second;
  }

  std::uint32_t degree_in(int var) const {
    std::uint32_t d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }
  std::int64_t total_degree() const {  // -1 for the zero polynomial
    std::int64_t d = -1;
    for (auto& [m, c] : terms_)
      d = std::max<std::int64_t>(d, static_cast<std::int64_t>(mono_degree(m)));
    return d;
  }
  bool involves(int var) const { return degree_in(var) > 0; }

  // Leading term with respect to a monomial order.
  std::pair<Mono, K> lead(Order o) const {
    if (terms_.empty())
      throw domain_error("zero-polynomial", "zero polynomial has no lead term");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (mono_cmp(it->first, best->first, o) > 0) best = it;
    return {best->first, best->second};
  }

  Polynomial operator-() const {
    Polynomial r(ring_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  Polynomial operator+(const Polynomial& o) const {
    require_same_ring(ring_, o.ring_);
    Polynomial r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  Polynomial operator-(const Polynomial& o) const {
    require_same_ring(ring_, o.ring_);
    Polynomial r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }
  Polynomial operator*(const Polynomial& o) const {
    require_same_ring(ring_, o.ring_);
    Polynomial r(ring_);
    for (auto& [ma, ca] : terms_)
      for (auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  Polynomial operator*(const K& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    for (auto& [m, cc] : terms_) {
      K v = cc * c;
      if (!v.is_zero()) r.terms_[m] = v;
    }
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(std::uint64_t e) const {
    if (e > 0 && total_degree() > 0)
      check_degree_cap(static_cast<std::int64_t>(total_degree()) *
                           static_cast<std::int64_t>(e),
                       "pow");
    Polynomial r = one(ring_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = (e >>= 1) ? b * b : b;
    }
    return r;
  }

  bool operator==(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
      if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // d/d(var).
  Polynomial derivative(int var) const {
    Polynomial r(ring_);
    for (auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      K nc = c * K(static_cast<long>(m[var]));
      if (nc.is_zero()) continue;  // positive characteristic
      Mono nm = m;
      nm[var] -= 1;
      r.add_term(nm, nc);
    }
    return r;
  }

  // Substitute images[i] for the i-th variable; images live in a common
  // target ring.  Used for embeddings, translations, and pullbacks.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != nvars())
      throw domain_error("substitution-arity",
                         "expected one image per variable");
    RingPtr target = images.empty() ? ring_ : images.front().ring();
    for (auto& im : images) require_same_ring(target, im.ring());
    Polynomial r = zero(target);
    for (auto& [m, c] : terms_) {
      Polynomial t = constant(target, c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) t = t * images[i].pow(m[i]);
      r += t;
    }
    return r;
  }

  // Exact division: returns f/g if g divides f exactly, nullopt otherwise.
  std::optional<Polynomial> exact_divide(const Polynomial& g) const {
    require_same_ring(ring_, g.ring_);
    if (g.is_zero()) throw domain_error("division-by-zero", "division by zero polynomial");
    Polynomial rem = *this, quot(ring_);
    auto [gm, gc] = g.lead(Order::lex);
    while (!rem.is_zero()) {
      auto [rm, rc] = rem.lead(Order::lex);
      if (!mono_divides(gm, rm)) return std::nullopt;
      Mono qm = mono_quot(rm, gm);
      K qc = rc / gc;
      Polynomial t = term(ring_, qm, qc);
      quot += t;
      rem -= t * g;
    }
    return quot;
  }
  bool divisible_by(const Polynomial& g) const {
    return exact_divide(g).has_value();
  }

  // Dense list of coefficients of var^j; entries do not involve var.
  std::vector<Polynomial> coeffs_in(int var) const {
    std::vector<Polynomial> out(degree_in(var) + 1, zero(ring_));
    for (auto& [m, c] : terms_) {
      Mono mm = m;
      std::uint32_t j = mm[var];
      mm[var] = 0;
      out[j].add_term(mm, c);
    }
    return out;
  }

  // Reassemble from coeffs_in output.
  static Polynomial from_coeffs(const std::vector<Polynomial>& cs, int var) {
    if (cs.empty()) throw domain_error("empty-coefficients", "no coefficients");
    RingPtr ring = cs.front().ring();
    Polynomial r = zero(ring);
    Polynomial v = Polynomial::var(ring, var);
    for (std::size_t j = cs.size(); j-- > 0;) r = r * v + cs[j];
    return r;
  }

  // Leading coefficient (a polynomial in the remaining variables) in var.
  Polynomial lead_coeff_in(int var) const {
    auto cs = coeffs_in(var);
    return cs.back();
  }
  // Monic in var: degree >= 1 and the top coefficient is a nonzero constant.
  bool is_monic_in(int var, bool allow_unit_lead = true) const {
    if (is_zero() || degree_in(var) == 0) return false;
    Polynomial lc = lead_coeff_in(var);
    if (!lc.is_constant()) return false;
    return allow_unit_lead ? !lc.is_zero() : lc.constant_value().is_one();
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : terms_) {
      std::string cs = c.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (first) {
        if (neg) s += "-", cs = cs.substr(1);
      } else {
        s += neg ? " - " : " + ";
        if (neg) cs = cs.substr(1);
      }
      first = false;
      std::string ms;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!ms.empty()) ms += "*";
        ms += ring_->vars[i];
        if (m[i] > 1) ms += "^" + std::to_string(m[i]);
      }
      if (ms.empty()) {
        s += cs;
      } else if (cs == "1") {
        s += ms;
      } else {
        s += cs + "*" + ms;
      }
    }
    return s;
  }

  void add_term(const Mono& m, const K& c0) {
    K c = attach_to(c0, ring_->field);
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  RingPtr ring_;
  TermMap terms_;
};

template <class K>
Polynomial<K> operator*(const K& c, const Polynomial<K>& p) {
  return p * c;
}

}  // namespace residua
