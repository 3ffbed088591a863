#pragma once

// Polynomial-coefficient differential forms.  A Form is a finite sum of
// components c_S * dx_{s1} ∧ ... ∧ dx_{sp} indexed by strictly increasing
// variable index lists S; wedge products of arbitrary orderings are
// canonicalized into this shape with the usual sign.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "residua/errors.hpp"
#include "residua/polynomial.hpp"

namespace residua {

using WedgeIdx = std::vector<int>;  // strictly increasing variable indices

// Sorts a wedge index list, returning the permutation sign, or 0 if an index
// repeats (in which case the component vanishes).
inline int wedge_normalize(WedgeIdx& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

template <class K>
class Form {
 public:
  using Comp = std::map<WedgeIdx, Polynomial<K>>;

  Form() = default;
  explicit Form(RingPtr ring) : ring_(std::move(ring)) {}

  static Form zero(RingPtr ring) { return Form(std::move(ring)); }
  static Form scalar(RingPtr ring, Polynomial<K> p) {
    Form f(ring);
    if (!p.is_zero()) f.comps_[{}] = std::move(p);
    return f;
  }
  static Form scalar(RingPtr ring, K c) {
    return scalar(ring, Polynomial<K>::constant(ring, std::move(c)));
  }
  static Form differential(RingPtr ring, int var) {
    Form f(ring);
    f.comps_[{var}] = Polynomial<K>::one(ring);
    return f;
  }
  static Form component(RingPtr ring, WedgeIdx idx, Polynomial<K> coeff) {
    Form f(ring);
    int sign = wedge_normalize(idx);
    if (sign != 0 && !coeff.is_zero())
      f.comps_[idx] = sign > 0 ? std::move(coeff) : -coeff;
    return f;
  }

  const RingPtr& ring() const { return ring_; }
  const Comp& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  // Degree bookkeeping: a form is homogeneous if all components have the same
  // wedge length.
  bool is_homogeneous() const {
    if (comps_.empty()) return true;
    std::size_t d = comps_.begin()->first.size();
    for (auto& [s, c] : comps_)
      if (s.size() != d) return false;
    return true;
  }
  int degree() const {  // of a homogeneous form; 0 for the zero form
    if (comps_.empty()) return 0;
    if (!is_homogeneous())
      throw domain_error("inhomogeneous-form", "form has mixed degrees");
    return static_cast<int>(comps_.begin()->first.size());
  }

  bool is_scalar() const {
    return comps_.empty() || (comps_.size() == 1 && comps_.begin()->first.empty());
  }
  Polynomial<K> scalar_part() const {
    auto it = comps_.find({});
    return it == comps_.end() ? Polynomial<K>::zero(ring_) : it->second;
  }
  Polynomial<K> coeff_of(const WedgeIdx& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? Polynomial<K>::zero(ring_) : it->second;
  }

  Form operator+(const Form& o) const {
    require_same_ring(ring_, o.ring_);
    Form r = *this;
    for (auto& [s, c] : o.comps_) r.add(s, c);
    return r;
  }
  Form operator-(const Form& o) const { return *this + o.negate(); }
  Form negate() const {
    Form r(ring_);
    for (auto& [s, c] : comps_) r.comps_[s] = -c;
    return r;
  }
  Form scale(const K& c) const {
    Form r(ring_);
    for (auto& [s, p] : comps_) {
      auto q = p * c;
      if (!q.is_zero()) r.comps_[s] = q;
    }
    return r;
  }
  Form scale(const Polynomial<K>& g) const {
    Form r(ring_);
    for (auto& [s, p] : comps_) {
      auto q = p * g;
      if (!q.is_zero()) r.comps_[s] = q;
    }
    return r;
  }

  Form wedge(const Form& o) const {
    require_same_ring(ring_, o.ring_);
    Form r(ring_);
    for (auto& [sa, ca] : comps_)
      for (auto& [sb, cb] : o.comps_) {
        WedgeIdx s = sa;
        s.insert(s.end(), sb.begin(), sb.end());
        int sign = wedge_normalize(s);
        if (sign == 0) continue;
        Polynomial<K> c = ca * cb;
        if (sign < 0) c = -c;
        r.add(s, c);
      }
    return r;
  }

  // Exterior derivative.
  Form d() const {
    Form r(ring_);
    for (auto& [s, c] : comps_)
      for (std::size_t v = 0; v < ring_->vars.size(); ++v) {
        Polynomial<K> dc = c.derivative(static_cast<int>(v));
        if (dc.is_zero()) continue;
        WedgeIdx t = s;
        t.push_back(static_cast<int>(v));
        int sign = wedge_normalize(t);
        if (sign == 0) continue;
        r.add(t, sign > 0 ? dc : -dc);
      }
    return r;
  }

  bool operator==(const Form& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    return comps_ == o.comps_;
  }
  bool operator!=(const Form& o) const { return !(*this == o); }

  std::string str() const {
    if (comps_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [s, c] : comps_) {
      if (!first) out += " + ";
      first = false;
      std::string w;
      for (int v : s) {
        if (!w.empty()) w += "∧";
        w += "d" + ring_->vars[v];
      }
      if (s.empty()) {
        out += "(" + c.str() + ")";
      } else if (c.is_constant() && c.constant_value().is_one()) {
        out += w;
      } else {
        out += "(" + c.str() + ")*" + w;
      }
    }
    return out;
  }

  void add(const WedgeIdx& s, const Polynomial<K>& c) {
    if (c.is_zero()) return;
    auto it = comps_.find(s);
    if (it == comps_.end()) {
      comps_[s] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

 private:
  RingPtr ring_;
  Comp comps_;
};

}  // namespace residua
