#pragma once

// Local cohomology classes presented as generalized fractions
//   [ num / (a_1^{i_1}, ..., a_n^{i_n}) ] * b^{-k}
// with a form-valued numerator, ordered denominator generators, exponents
// >= 1, and an optional localization away from b carried on the numerator.
// The calculus implemented here: rescaling a_k * [m/(..a_k^{i+1}..)] =
// [m/(..a_k^i..)] read backwards as exact-division normalization, addition
// after lifting to a common exponent vector, and the zero test "numerator
// lies in (a_1^{i_1},...,a_n^{i_n}), coefficientwise" which is valid when the
// generators are declared a regular sequence.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "residua/errors.hpp"
#include "residua/forms.hpp"
#include "residua/groebner.hpp"
#include "residua/polynomial.hpp"

namespace residua {

enum class Regularity { assumed_regular_sequence, unchecked };

inline std::string regularity_name(Regularity r) {
  return r == Regularity::assumed_regular_sequence ? "assumed-regular-sequence"
                                                   : "unchecked";
}

// Sufficient syntactic criteria for regularity:
//  (a) monomial generators with pairwise disjoint variable supports;
//  (b) some ordering g_1,...,g_r where each g_i is monic (constant unit lead)
//      in a variable that does not appear in g_1,...,g_{i-1}
//      (coordinate-plus-monic-tower systems).
// Everything else stays unchecked unless the caller asserts regularity.
template <class K>
bool certify_regular_sequence(const std::vector<Polynomial<K>>& gens) {
  if (gens.empty()) return true;
  const std::size_t n = gens.size();
  for (auto& g : gens)
    if (g.is_zero() || g.is_constant()) return false;
  const std::size_t nv = gens.front().ring()->vars.size();

  auto support = [&](const Polynomial<K>& g) {
    std::vector<bool> s(nv, false);
    for (auto& [m, c] : g.terms())
      for (std::size_t v = 0; v < nv; ++v)
        if (m[v]) s[v] = true;
    return s;
  };

  // (a) pairwise support-disjoint monomials
  bool all_monomial = true;
  for (auto& g : gens) all_monomial = all_monomial && g.term_count() == 1;
  if (all_monomial) {
    std::vector<bool> used(nv, false);
    bool ok = true;
    for (auto& g : gens) {
      auto s = support(g);
      for (std::size_t v = 0; v < nv; ++v)
        if (s[v]) {
          if (used[v]) ok = false;
          used[v] = true;
        }
    }
    if (ok) return true;
  }

  // (b) fresh monic pivots, over all orderings (n is tiny).
  if (n > 6) return false;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::vector<bool>> sup;
  for (auto& g : gens) sup.push_back(support(g));
  do {
    std::vector<bool> seen(nv, false);  // vars appearing in processed gens
    bool ok = true;
    for (std::size_t idx : perm) {
      const auto& g = gens[idx];
      bool found = false;
      for (std::size_t v = 0; v < nv && !found; ++v)
        if (sup[idx][v] && !seen[v] && g.is_monic_in(static_cast<int>(v)))
          found = true;
      if (!found) {
        ok = false;
        break;
      }
      for (std::size_t v = 0; v < nv; ++v) seen[v] = seen[v] || sup[idx][v];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

template <class K>
struct DenominatorSystem {
  std::vector<Polynomial<K>> gens;
  Regularity regularity = Regularity::unchecked;

  static DenominatorSystem make(std::vector<Polynomial<K>> gens,
                                bool user_asserted = false) {
    DenominatorSystem d;
    d.regularity = (user_asserted || certify_regular_sequence(gens))
                       ? Regularity::assumed_regular_sequence
                       : Regularity::unchecked;
    d.gens = std::move(gens);
    return d;
  }
  bool same_gens(const DenominatorSystem& o) const {
    if (gens.size() != o.gens.size()) return false;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i] != o.gens[i]) return false;
    return true;
  }
};

// Localization of the numerator away from b: the stored class is num * b^{-k}.
template <class K>
struct Localization {
  Polynomial<K> b;
  std::uint32_t k = 1;
};

template <class K>
class GenFraction {
 public:
  GenFraction() = default;
  GenFraction(Form<K> num, DenominatorSystem<K> denom,
              std::vector<std::uint32_t> exps,
              std::optional<Localization<K>> loc = std::nullopt)
      : num_(std::move(num)),
        denom_(std::move(denom)),
        exps_(std::move(exps)),
        loc_(std::move(loc)) {
    if (exps_.size() != denom_.gens.size())
      throw domain_error("exponent-arity",
                         "need one exponent per denominator generator");
    for (auto e : exps_)
      if (e == 0)
        throw domain_error("bad-exponent", "denominator exponents must be >= 1");
    for (auto& g : denom_.gens) require_same_ring(ring(), g.ring());
    if (loc_) require_same_ring(ring(), loc_->b.ring());
  }

  const RingPtr& ring() const { return num_.ring(); }
  const Form<K>& num() const { return num_; }
  const DenominatorSystem<K>& denom() const { return denom_; }
  const std::vector<std::uint32_t>& exps() const { return exps_; }
  const std::optional<Localization<K>>& loc() const { return loc_; }
  std::size_t depth() const { return denom_.gens.size(); }

  std::string str() const {
    std::string s = "[" + num_.str() + " / (";
    for (std::size_t i = 0; i < denom_.gens.size(); ++i) {
      if (i) s += ", ";
      s += denom_.gens[i].str();
      if (exps_[i] != 1) s += "^" + std::to_string(exps_[i]);
    }
    s += ")]";
    if (loc_) s += " * (" + loc_->b.str() + ")^-" + std::to_string(loc_->k);
    return s;
  }

  Form<K> num_;
  DenominatorSystem<K> denom_;
  std::vector<std::uint32_t> exps_;
  std::optional<Localization<K>> loc_;
};

// ---------------------------------------------------------------------------

template <class K>
GenFraction<K> gf_scale(const Polynomial<K>& g, const GenFraction<K>& f) {
  GenFraction<K> r = f;
  r.num_ = r.num_.scale(g);
  return r;
}

// Canonical form: fold trivial localizations into the numerator, then walk
// the exponents down with exact-division witnesses; a vanished numerator
// resets every exponent to 1.
template <class K>
GenFraction<K> gf_normalize(const GenFraction<K>& f) {
  GenFraction<K> r = f;
  if (r.loc_) {
    if (r.loc_->k == 0) {
      r.loc_.reset();
    } else if (r.loc_->b.is_constant()) {
      K c = r.loc_->b.constant_value();
      if (c.is_zero())
        throw domain_error("zero-localization", "localization at zero");
      K inv = (K(1) / c);
      K scale = K(1);
      for (std::uint32_t i = 0; i < r.loc_->k; ++i) scale = scale * inv;
      r.num_ = r.num_.scale(scale);
      r.loc_.reset();
    }
  }
  if (r.num_.is_zero()) {
    for (auto& e : r.exps_) e = 1;
    r.loc_.reset();
    return r;
  }
  for (std::size_t k = 0; k < r.denom_.gens.size(); ++k) {
    while (r.exps_[k] > 1) {
      Form<K> reduced(r.ring());
      bool all = true;
      for (auto& [s, c] : r.num_.components()) {
        auto q = c.exact_divide(r.denom_.gens[k]);
        if (!q) {
          all = false;
          break;
        }
        reduced.add(s, *q);
      }
      if (!all) break;
      r.num_ = reduced;
      r.exps_[k] -= 1;
    }
  }
  return r;
}

template <class K>
GenFraction<K> gf_add(const GenFraction<K>& f, const GenFraction<K>& g) {
  require_same_ring(f.ring(), g.ring());
  if (!f.denom_.same_gens(g.denom_))
    throw domain_error("denominator-mismatch",
                       "gf_add requires identical denominator generators");
  std::vector<std::uint32_t> exps(f.exps_.size());
  Form<K> fn = f.num_, gn = g.num_;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    exps[k] = std::max(f.exps_[k], g.exps_[k]);
    if (f.exps_[k] < exps[k])
      fn = fn.scale(f.denom_.gens[k].pow(exps[k] - f.exps_[k]));
    if (g.exps_[k] < exps[k])
      gn = gn.scale(g.denom_.gens[k].pow(exps[k] - g.exps_[k]));
  }
  // Merge localizations by cross-multiplying.
  std::optional<Localization<K>> loc;
  auto loc_poly = [](const std::optional<Localization<K>>& l,
                     const RingPtr& ring) {
    return l ? l->b.pow(l->k) : Polynomial<K>::one(ring);
  };
  if (f.loc_ || g.loc_) {
    bool same = f.loc_ && g.loc_ && f.loc_->b == g.loc_->b &&
                f.loc_->k == g.loc_->k;
    if (same) {
      loc = f.loc_;
    } else {
      Polynomial<K> bf = loc_poly(f.loc_, f.ring());
      Polynomial<K> bg = loc_poly(g.loc_, f.ring());
      fn = fn.scale(bg);
      gn = gn.scale(bf);
      loc = Localization<K>{bf * bg, 1};
    }
  }
  DenominatorSystem<K> d = f.denom_;
  if (g.denom_.regularity == Regularity::unchecked)
    d.regularity = Regularity::unchecked;
  return gf_normalize(GenFraction<K>(fn + gn, d, exps, loc));
}

template <class K>
GenFraction<K> gf_negate(const GenFraction<K>& f) {
  GenFraction<K> r = f;
  r.num_ = r.num_.negate();
  return r;
}

// Zero test.  Unit denominator ideals are zero outright (the support is
// empty); otherwise regularity must have been certified or asserted, and the
// test is coefficientwise ideal membership, through a saturation at the
// localization element when one is present.
template <class K>
struct GfZeroComponent {
  WedgeIdx wedge;
  Polynomial<K> value;                   // normalized numerator component
  std::vector<Polynomial<K>> cofactors;  // over `powers`
  std::uint32_t sat_power = 0;           // extra power of b multiplied in
};

template <class K>
struct GfZeroResult {
  bool zero = false;
  bool unit_ideal = false;
  std::vector<Polynomial<K>> powers;  // generator powers of the normalized class
  std::vector<GfZeroComponent<K>> components;  // witness when zero
  std::string reason;                          // non-membership witness text
};

template <class K>
GfZeroResult<K> gf_is_zero_witnessed(const GenFraction<K>& f) {
  GfZeroResult<K> out;
  GenFraction<K> g = gf_normalize(f);
  if (g.num_.is_zero()) {
    out.zero = true;
    return out;
  }
  if (g.denom_.gens.empty()) {
    // Depth zero: the class is just the numerator.
    out.zero = false;
    out.reason = "nonzero numerator at depth zero";
    return out;
  }
  std::vector<Polynomial<K>> powers;
  powers.reserve(g.denom_.gens.size());
  for (std::size_t k = 0; k < g.denom_.gens.size(); ++k)
    powers.push_back(g.denom_.gens[k].pow(g.exps_[k]));
  out.powers = powers;
  auto gb = groebner_basis(powers, Order::grevlex);
  bool unit = gb.polys.size() == 1 && gb.polys.front().is_constant();
  out.unit_ideal = unit;
  if (!unit && g.denom_.regularity != Regularity::assumed_regular_sequence)
    throw domain_error(
        "unchecked-regularity",
        "zero test requires a declared regular sequence (regularity is 'unchecked')");
  for (auto& [s, c] : g.num_.components()) {
    GfZeroComponent<K> comp;
    comp.wedge = s;
    comp.value = c;
    if (g.loc_) {
      auto sat = saturation_member(c, g.loc_->b, powers);
      if (!sat.member) {
        out.zero = false;
        out.reason = "component is not in the saturated denominator ideal";
        out.components.clear();
        return out;
      }
      comp.cofactors = std::move(sat.cofactors);
      comp.sat_power = sat.power;
    } else {
      auto m = ideal_member(c, gb);
      if (!m.member) {
        out.zero = false;
        out.reason = "component is not in the denominator ideal";
        out.components.clear();
        return out;
      }
      comp.cofactors = std::move(m.cofactors);
    }
    out.components.push_back(std::move(comp));
  }
  out.zero = true;
  return out;
}

template <class K>
bool gf_is_zero(const GenFraction<K>& f) {
  return gf_is_zero_witnessed(f).zero;
}

template <class K>
bool gf_equal(const GenFraction<K>& f, const GenFraction<K>& g) {
  return gf_is_zero(gf_add(f, gf_negate(g)));
}

// Explicit reorder of the denominator generators: permuting the blocks of a
// top Koszul cohomology class multiplies it by the permutation sign.  Nothing
// else in the library permutes blocks implicitly.
template <class K>
GenFraction<K> gf_reorder(const GenFraction<K>& f,
                          const std::vector<std::size_t>& perm) {
  if (perm.size() != f.denom_.gens.size())
    throw domain_error("bad-permutation", "permutation arity mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p])
      throw domain_error("bad-permutation", "not a permutation");
    seen[p] = true;
  }
  // Parity by counting inversions.
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  DenominatorSystem<K> d;
  d.regularity = f.denom_.regularity;
  std::vector<std::uint32_t> exps(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    d.gens.push_back(f.denom_.gens[perm[i]]);
    exps[i] = f.exps_[perm[i]];
  }
  Form<K> num = sign > 0 ? f.num_ : f.num_.negate();
  return GenFraction<K>(num, d, exps, f.loc_);
}

}  // namespace residua
