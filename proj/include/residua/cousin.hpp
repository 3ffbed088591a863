#pragma once

// Cousin cells and the residue-complex calculus over polynomial ambients.
//
// A cell is the ordered list of denominator generators of a GenFraction; the
// order is part of the identity and nothing here permutes it implicitly.  The
// coboundary `delta` consumes the localization suffix of a class and deposits
// one component per declared factor of the localization denominator, each at
// the cell extended by that factor.  A finite step B = A[t]/(p) carries its
// classes on cells whose final block is the monic presentation polynomial p;
// `trace_finite` eliminates that block (and the fiber variable) to land in
// classes over A, and `delta_on_curve` inserts new blocks immediately before
// it so that trace and delta commute without correction signs.
//
// Sign conventions, fixed once:
//  * contracting the fiber block against the final wedge slot is sign-free
//    when that block is last, and alternates by one sign per position it
//    stands before the end;
//  * rewriting a block by subtracting multiples of another block's power is
//    sign-free; rescaling a block by a unit scales the numerator inversely;
//  * adjacent block transpositions negate (see gf_reorder).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "residua/errors.hpp"
#include "residua/forms.hpp"
#include "residua/groebner.hpp"
#include "residua/localcoh.hpp"
#include "residua/polynomial.hpp"
#include "residua/ratfunc.hpp"
#include "residua/residue.hpp"
#include "residua/univar.hpp"

namespace residua {

// One monogenic finite step B = A[t]/(p): the ambient ring keeps the base
// variables as a prefix and the fiber variable last, and p is monic in the
// fiber variable with leading coefficient 1.
template <class K>
struct FiniteStep {
  RingPtr full;
  RingPtr base;
  int tvar = 0;
  Polynomial<K> p;
  std::uint32_t e = 0;

  static FiniteStep make(const RingPtr& full, const Polynomial<K>& p) {
    if (!full || full->vars.empty())
      throw domain_error("empty-ring", "a finite step needs a fiber variable");
    FiniteStep st;
    st.tvar = static_cast<int>(full->vars.size()) - 1;
    auto mp = MonicPresentation<K>::make(full, st.tvar, p);
    st.full = full;
    st.p = mp.p;
    st.e = mp.e;
    std::vector<std::string> base_vars(full->vars.begin(),
                                       full->vars.end() - 1);
    st.base = make_ring(std::move(base_vars), full->field);
    return st;
  }
};

template <class K>
Polynomial<K> lift_poly(const FiniteStep<K>& st, const Polynomial<K>& a) {
  require_same_ring(a.ring(), st.base);
  Polynomial<K> out = Polynomial<K>::zero(st.full);
  for (auto& [m, c] : a.terms()) {
    Mono fm = m;
    fm.push_back(0);
    out.add_term(fm, c);
  }
  return out;
}

template <class K>
Polynomial<K> project_poly(const FiniteStep<K>& st, const Polynomial<K>& f) {
  require_same_ring(f.ring(), st.full);
  if (f.degree_in(st.tvar) != 0)
    throw domain_error("fiber-entangled",
                       "cannot project a polynomial involving the fiber "
                       "variable to the base ring");
  Polynomial<K> out = Polynomial<K>::zero(st.base);
  for (auto& [m, c] : f.terms()) {
    Mono bm(m.begin(), m.end() - 1);
    out.add_term(bm, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factoring a block generator: user hints first (each extracted to full
// multiplicity), then square-free reduction and root splitting for
// single-variable polynomials over the coefficient field.  Multivariate
// leftovers are kept whole.  All returned factors are normalized to leading
// coefficient 1 and are pairwise non-proportional.

template <class K>
std::vector<Polynomial<K>> split_block(
    const Polynomial<K>& b, const std::vector<Polynomial<K>>& hints = {}) {
  if (b.is_zero() || b.is_constant())
    throw domain_error("constant-block",
                       "cannot split a constant block generator");
  const RingPtr& R = b.ring();
  auto monic = [&](const Polynomial<K>& f) {
    K lc = f.lead(Order::grevlex).second;
    return f * (K(1) / lc);
  };
  std::vector<Polynomial<K>> factors;
  auto push_unique = [&](const Polynomial<K>& f) {
    for (auto& g : factors) {
      auto q = g.exact_divide(f);
      if (q && q->is_constant()) return;
    }
    factors.push_back(f);
  };

  std::vector<Polynomial<K>> work{b};
  for (auto& h0 : hints) {
    if (h0.is_zero() || h0.is_constant())
      throw domain_error("constant-block", "constant factor hint");
    Polynomial<K> h = monic(h0);
    std::vector<Polynomial<K>> next;
    bool took = false;
    for (auto& w : work) {
      Polynomial<K> cur = w;
      while (true) {
        auto q = cur.exact_divide(h);
        if (!q) break;
        cur = *q;
        took = true;
      }
      if (!cur.is_constant()) next.push_back(cur);
    }
    if (took) push_unique(h);
    work = std::move(next);
  }

  const std::uint32_t char_p = R->field.kind == 'P' ? R->field.p : 0;
  for (auto& w : work) {
    if (w.term_count() == 1) {
      // A monomial splits into its variables.
      for (std::size_t v = 0; v < R->vars.size(); ++v)
        if (w.involves(static_cast<int>(v)))
          push_unique(Polynomial<K>::var(R, static_cast<int>(v)));
      continue;
    }
    int var = -1;
    bool single = true;
    for (std::size_t v = 0; v < R->vars.size(); ++v)
      if (w.involves(static_cast<int>(v))) {
        if (var >= 0) single = false;
        var = static_cast<int>(v);
      }
    if (!single) {
      push_unique(monic(w));
      continue;
    }
    auto cs = univar_coeffs(w, var);
    auto sqf = squarefree_part(cs, char_p);
    Polynomial<K> rest = monic(univar_assemble(R, sqf, var));
    for (auto& r : field_roots(sqf)) {
      Polynomial<K> lin = Polynomial<K>::var(R, var) - Polynomial<K>::constant(R, r);
      push_unique(lin);
      rest = *rest.exact_divide(lin);
    }
    if (!rest.is_constant()) push_unique(monic(rest));
  }
  return factors;
}

// ---------------------------------------------------------------------------
// Order of vanishing of u along g modulo the chain ideal, with the cofactor
// witnessing u = cofactor * g^v (mod chain).  Chain generators monic in a
// variable that appears nowhere else in the data cannot affect membership
// (divide by that variable's degrees) and are pruned first, which keeps the
// cofactors inside the base data.

template <class K>
struct BlockValuation {
  std::uint32_t v = 0;
  Polynomial<K> cofactor;
};

template <class K>
BlockValuation<K> valuation_along(const Polynomial<K>& u,
                                  const Polynomial<K>& g,
                                  std::vector<Polynomial<K>> chain) {
  require_same_ring(u.ring(), g.ring());
  if (g.is_zero() || g.is_constant())
    throw domain_error("constant-block", "valuation along a constant");
  const std::size_t nv = u.ring()->vars.size();
  auto involves_any = [&](const Polynomial<K>& f, int v) {
    return f.involves(v);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < chain.size() && !changed; ++i) {
      for (std::size_t v = 0; v < nv; ++v) {
        if (!chain[i].is_monic_in(static_cast<int>(v))) continue;
        bool elsewhere = involves_any(u, static_cast<int>(v)) ||
                         involves_any(g, static_cast<int>(v));
        for (std::size_t j = 0; j < chain.size() && !elsewhere; ++j)
          if (j != i) elsewhere = involves_any(chain[j], static_cast<int>(v));
        if (!elsewhere) {
          chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }

  BlockValuation<K> out;
  out.cofactor = u;
  constexpr std::uint32_t kMaxSteps = 512;
  if (chain.empty()) {
    while (out.v < kMaxSteps) {
      auto q = out.cofactor.exact_divide(g);
      if (!q) return out;
      out.cofactor = *q;
      ++out.v;
    }
  } else {
    std::vector<Polynomial<K>> gens = chain;
    gens.push_back(g);
    auto gb = groebner_basis(gens, Order::grevlex);
    // Comaximal block: the extended cell has empty support, so nothing
    // vanishes along it (and membership would hold at every order).
    if (gb.polys.size() == 1 && gb.polys.front().is_constant()) return out;
    while (out.v < kMaxSteps) {
      auto m = ideal_member(out.cofactor, gb);
      if (!m.member) return out;
      out.cofactor = m.cofactors.back();
      if (out.cofactor.is_zero())
        throw domain_error("degenerate-localization",
                           "localization denominator lies in the chain ideal");
      ++out.v;
    }
  }
  throw domain_error("valuation-divergence",
                     "no finite order of vanishing along the block");
}

// ---------------------------------------------------------------------------

namespace detail {

template <class K>
Form<K> reduce_form_mod(const Form<K>& w, const Polynomial<K>& modulus,
                        int v) {
  Form<K> out(w.ring());
  for (auto& [s, c] : w.components()) {
    auto rem = univar_divide(c, modulus, v).second;
    if (!rem.is_zero()) out.add(s, rem);
  }
  return out;
}

// Reduce every numerator component modulo each powered generator that is
// monic in some variable.  Class-preserving: the powered generators span the
// ideal the class is taken modulo.
template <class K>
Form<K> reduce_form_by_powers(Form<K> num,
                              const std::vector<Polynomial<K>>& gens,
                              const std::vector<std::uint32_t>& exps) {
  const std::size_t nv = num.ring()->vars.size();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t v = 0; v < nv; ++v)
      if (gens[j].is_monic_in(static_cast<int>(v))) {
        num = reduce_form_mod(num, gens[j].pow(exps[j]), static_cast<int>(v));
        break;
      }
  }
  return num;
}

}  // namespace detail

template <class K>
struct DeltaComponent {
  Polynomial<K> factor;       // the new block generator
  std::uint32_t exponent = 0; // its exponent in the extended cell
  GenFraction<K> cls;
};

namespace detail {

// Shared coboundary engine.  The class must carry a localization u^{-k}; for
// each declared factor g of b with u = c * g^v (mod chain), one component
//   [ num * c^{-k} / (chain..., g^{vk}) ]
// is produced with the new block spliced in at `insert_pos`.  The residual
// cofactor inverse is cleared exactly when that is class-preserving (constant
// c, or c and g in the same single variable with c invertible mod g^{vk});
// otherwise it stays as the component's localization for later steps.
template <class K>
std::vector<DeltaComponent<K>> delta_engine(
    const GenFraction<K>& f0, const Polynomial<K>& b,
    const std::vector<Polynomial<K>>& hints, bool assert_regular,
    std::size_t insert_pos) {
  GenFraction<K> f = gf_normalize(f0);
  std::vector<DeltaComponent<K>> out;
  if (!f.loc_ || f.num_.is_zero()) return out;
  const RingPtr& R = f.ring();
  require_same_ring(R, b.ring());
  const Polynomial<K> u = f.loc_->b;
  const std::uint32_t k = f.loc_->k;
  if (insert_pos > f.depth())
    throw domain_error("bad-insert", "block insertion point out of range");

  auto single_var = [&](const Polynomial<K>& f1) {
    int var = -1;
    for (std::size_t v = 0; v < R->vars.size(); ++v)
      if (f1.involves(static_cast<int>(v))) {
        if (var >= 0) return -1;
        var = static_cast<int>(v);
      }
    return var;
  };

  for (auto& g : split_block(b, hints)) {
    // A factor proportional to an existing block extends the cell by a
    // repeated generator; the support ideal stays where it was, one step
    // below the new cohomological degree, so the component group is zero.
    bool repeated = false;
    for (auto& h : f.denom_.gens) {
      auto q1 = h.exact_divide(g);
      auto q2 = g.exact_divide(h);
      if ((q1 && q1->is_constant()) || (q2 && q2->is_constant())) {
        repeated = true;
        break;
      }
    }
    if (repeated) continue;
    auto val = valuation_along(u, g, f.denom_.gens);
    if (val.v == 0) continue;
    const std::uint32_t e = val.v * k;
    std::vector<Polynomial<K>> gens = f.denom_.gens;
    std::vector<std::uint32_t> exps = f.exps_;
    gens.insert(gens.begin() + static_cast<std::ptrdiff_t>(insert_pos), g);
    exps.insert(exps.begin() + static_cast<std::ptrdiff_t>(insert_pos), e);
    auto ds = DenominatorSystem<K>::make(gens, assert_regular);
    if (ds.regularity != Regularity::assumed_regular_sequence)
      throw domain_error(
          "unverified-regularity",
          "the extended chain is not a certified regular sequence; pass the "
          "assertion flag to accept it");

    Form<K> num = f.num_;
    std::optional<Localization<K>> loc;
    const Polynomial<K>& c = val.cofactor;
    if (c.is_constant()) {
      K inv = K(1) / c.constant_value();
      K scale = K(1);
      for (std::uint32_t i = 0; i < k; ++i) scale = scale * inv;
      num = num.scale(scale);
    } else {
      int cv = single_var(c), gv = single_var(g);
      bool cleared = false;
      if (cv >= 0 && cv == gv) {
        Polynomial<K> ge = g.pow(e);
        auto ee = eea(univar_coeffs(c, cv), univar_coeffs(ge, cv));
        if (ee.g.size() == 1) {
          Polynomial<K> inv = univar_assemble(R, ee.s, cv);
          Polynomial<K> invk = Polynomial<K>::one(R);
          for (std::uint32_t i = 0; i < k; ++i)
            invk = univar_divide(invk * inv, ge, cv).second;
          num = num.scale(invk);
          cleared = true;
        }
      }
      if (!cleared) loc = Localization<K>{c, k};
    }
    num = detail::reduce_form_by_powers(num, gens, exps);
    auto cls = gf_normalize(GenFraction<K>(num, ds, exps, loc));
    out.push_back({g, e, std::move(cls)});
  }
  return out;
}

}  // namespace detail

// Coboundary on plain ambient cells: new blocks go at the end of the chain.
template <class K>
std::vector<DeltaComponent<K>> delta(
    const GenFraction<K>& f, const Polynomial<K>& b,
    const std::vector<Polynomial<K>>& hints = {}, bool assert_regular = false) {
  return detail::delta_engine(f, b, hints, assert_regular,
                              gf_normalize(f).depth());
}

// ---------------------------------------------------------------------------
// Embedding dictionary for a finite step: a class given by an ambient form
// numerator at the X-cell (cell..., p) — the presentation block always last.
// Passing the intrinsic form's ambient lift as omega_hat, the stored
// numerator is omega_hat ∧ dp (wedge order canonicalized, signs absorbed).

template <class K>
GenFraction<K> clear_fiber_denominator(const FiniteStep<K>& st,
                                       const GenFraction<K>& f0);

template <class K>
GenFraction<K> cousin_at_cell(
    const FiniteStep<K>& st, const Form<K>& omega_hat,
    std::vector<Polynomial<K>> cell, std::vector<std::uint32_t> exps,
    std::uint32_t pexp = 1,
    std::optional<Localization<std::type_identity_t<K>>> loc = std::nullopt) {
  require_same_ring(omega_hat.ring(), st.full);
  Form<K> dp = Form<K>::scalar(st.full, st.p).d();
  Form<K> num = omega_hat.wedge(dp);
  cell.push_back(st.p);
  exps.push_back(pexp);
  auto ds = DenominatorSystem<K>::make(std::move(cell));
  GenFraction<K> out(std::move(num), std::move(ds), std::move(exps),
                     std::move(loc));
  if (out.loc_ && out.loc_->b.degree_in(st.tvar) > 0)
    out = clear_fiber_denominator(st, out);
  return gf_normalize(out);
}

// Rewrites a localization denominator involving the fiber variable into an
// equivalent base-variable one: u is inverted modulo the powered fiber block
// by the extended Euclidean algorithm over the rational-function base, giving
// u * V ≡ N (mod q^i) with N free of the fiber variable; the numerator takes
// V^k and the class keeps N^{-k}.
template <class K>
GenFraction<K> clear_fiber_denominator(const FiniteStep<K>& st,
                                       const GenFraction<K>& f0) {
  GenFraction<K> f = gf_normalize(f0);
  if (!f.loc_ || f.loc_->b.degree_in(st.tvar) == 0) return f;
  const Polynomial<K> u = f.loc_->b;
  const std::uint32_t k = f.loc_->k;
  std::size_t a = f.depth();
  for (std::size_t j = 0; j < f.depth(); ++j)
    if (f.denom_.gens[j].degree_in(st.tvar) > 0 &&
        f.denom_.gens[j].is_monic_in(st.tvar, /*allow_unit_lead=*/false)) {
      a = j;
      break;
    }
  if (a == f.depth())
    throw domain_error("no-fiber-block",
                       "clearing a fiber denominator needs a monic fiber "
                       "block in the chain");
  Polynomial<K> A = f.denom_.gens[a].pow(f.exps_[a]);
  auto tv = make_tower_view<K>(st.full, st.tvar);
  auto ee = eea(tower_ratfunc_coeffs(tv, u), tower_ratfunc_coeffs(tv, A));
  if (ee.g.size() != 1)
    throw domain_error("fiber-denominator-not-invertible",
                       "localization denominator shares a factor with the "
                       "fiber block");
  auto [vnum, nden] = tower_clear_denominators(tv, st.full, ee.s);
  Form<K> num = f.num_;
  for (std::uint32_t i = 0; i < k; ++i) {
    num = num.scale(vnum);
    num = detail::reduce_form_mod(num, A, st.tvar);
  }
  std::optional<Localization<K>> loc;
  if (!nden.is_constant()) loc = Localization<K>{nden, k};
  else {
    K c = nden.constant_value();
    if (!(c == K(1))) {
      K inv = K(1) / c;
      K scale = K(1);
      for (std::uint32_t i = 0; i < k; ++i) scale = scale * inv;
      num = num.scale(scale);
    }
  }
  return gf_normalize(GenFraction<K>(num, f.denom_, f.exps_, loc));
}

// Coboundary on classes of a finite step: the new block is inserted
// immediately before the trailing fiber block, which keeps the presentation
// block last (the embedding of the intrinsic coboundary — appending after it
// instead would differ by one transposition sign).
template <class K>
std::vector<DeltaComponent<K>> delta_on_curve(
    const FiniteStep<K>& st, const GenFraction<K>& f0, const Polynomial<K>& b,
    const std::vector<Polynomial<K>>& hints = {}, bool assert_regular = false) {
  GenFraction<K> f = gf_normalize(f0);
  if (f.loc_ && f.loc_->b.degree_in(st.tvar) > 0)
    f = clear_fiber_denominator(st, f);
  if (f.depth() == 0 ||
      !f.denom_.gens.back().is_monic_in(st.tvar, /*allow_unit_lead=*/false))
    throw domain_error("no-fiber-block",
                       "curve classes carry the monic fiber block last");
  return detail::delta_engine(f, b, hints, assert_regular, f.depth() - 1);
}

// ---------------------------------------------------------------------------
// Trace along a finite step.  The class must live on a cell with exactly one
// block involving the fiber variable (after rewriting other blocks modulo its
// power — the subtraction rule on powered generators); that block's power is
// expanded against the numerator and the dt-slot is contracted away:
//   [ m dx ∧ dt / (..., q^i, ...) ]  ->  [ E(m) dx / (...) ]
// with E the coefficient of t^{deg q - 1} q^{i-1} in the expansion of m, and
// the alternating position sign described at the top of the file.  Classes
// with no fiber block trace to zero (their points are not closed in the
// fiber).

template <class K>
GenFraction<K> trace_finite(const FiniteStep<K>& st, const GenFraction<K>& f0) {
  require_same_ring(f0.ring(), st.full);
  GenFraction<K> f = gf_normalize(f0);
  const int tv = st.tvar;
  if (f.loc_ && f.loc_->b.degree_in(tv) > 0) f = clear_fiber_denominator(st, f);

  std::vector<Polynomial<K>> gens = f.denom_.gens;
  std::vector<std::uint32_t> exps = f.exps_;
  Form<K> num = f.num_;

  auto tblocks = [&]() {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (gens[j].degree_in(tv) > 0) idx.push_back(j);
    return idx;
  };

  auto project_cell = [&](const std::vector<std::size_t>& skip) {
    std::vector<Polynomial<K>> bg;
    std::vector<std::uint32_t> be;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
      bg.push_back(project_poly(st, gens[j]));
      be.push_back(exps[j]);
    }
    return std::pair(bg, be);
  };

  // Vanishing rule: no block involves the fiber variable.
  if (tblocks().empty()) {
    auto [bg, be] = project_cell({});
    return gf_normalize(
        GenFraction<K>(Form<K>(st.base), DenominatorSystem<K>::make(bg), be));
  }

  // Rewrite extra fiber blocks modulo the power of the smallest one.
  while (tblocks().size() > 1) {
    auto idx = tblocks();
    std::size_t a = gens.size();
    std::uint32_t best = 0;
    for (auto j : idx) {
      if (!gens[j].is_monic_in(tv)) continue;
      std::uint32_t d = gens[j].degree_in(tv) * exps[j];
      if (a == gens.size() || d < best) {
        a = j;
        best = d;
      }
    }
    if (a == gens.size())
      throw domain_error("non-monic-fiber",
                         "no fiber block is monic in the fiber variable");
    Polynomial<K> A = gens[a].pow(exps[a]);
    bool progress = false;
    for (auto j : idx) {
      if (j == a) continue;
      Polynomial<K> W = gens[j].pow(exps[j]);
      Polynomial<K> rem = univar_divide(W, A, tv).second;
      if (rem.is_zero())
        throw domain_error("degenerate-chain",
                           "one powered block divides another");
      if (rem != W) progress = true;
      if (rem.is_constant()) {
        // A unit block: the whole class is zero over the base.
        return GenFraction<K>(Form<K>(st.base),
                              DenominatorSystem<K>::make({}), {});
      }
      K lc = rem.lead(Order::grevlex).second;
      if (!(lc == K(1))) {
        rem = rem * (K(1) / lc);
        num = num.scale(K(1) / lc);
      }
      gens[j] = rem;
      exps[j] = 1;
    }
    if (!progress)
      throw domain_error("fiber-reduction-stuck",
                         "cannot isolate a single fiber block on this cell");
  }

  const std::size_t a = tblocks().front();
  Polynomial<K> q = gens[a];
  std::uint32_t i = exps[a];
  auto lead = q.lead_coeff_in(tv);
  if (!lead.is_constant())
    throw domain_error("non-monic-fiber",
                       "fiber block is not monic in the fiber variable");
  K lc = lead.constant_value();
  if (!(lc == K(1))) {
    q = q * (K(1) / lc);
    K inv = K(1) / lc, scale = K(1);
    for (std::uint32_t l = 0; l < i; ++l) scale = scale * inv;
    num = num.scale(scale);
  }
  const std::uint32_t d = q.degree_in(tv);
  const bool flip = ((gens.size() - 1 - a) % 2) != 0;

  Form<K> traced(st.base);
  for (auto& [s, c] : num.components()) {
    if (s.empty() || s.back() != tv)
      throw domain_error("missing-fiber-differential",
                         "every numerator component must end in the fiber "
                         "differential");
    Polynomial<K> E = basis_expand(c, q, tv, i).c[d - 1][i - 1];
    if (E.is_zero()) continue;
    WedgeIdx rest(s.begin(), s.end() - 1);
    traced.add(rest, project_poly(st, flip ? -E : E));
  }

  auto [bg, be] = project_cell({a});
  std::optional<Localization<K>> loc;
  if (f.loc_) loc = Localization<K>{project_poly(st, f.loc_->b), f.loc_->k};
  return gf_normalize(
      GenFraction<K>(traced, DenominatorSystem<K>::make(bg), be, loc));
}

// ---------------------------------------------------------------------------
// Diagnostics.

// Composing the coboundary twice along declared blocks b1, b2 must vanish:
// components of the two orders land on the same cells up to one transposition
// of the final two blocks, and each matched bucket must sum to zero.
template <class K>
bool delta_squared_check(const GenFraction<K>& f, const Polynomial<K>& b1,
                         const Polynomial<K>& b2,
                         const std::vector<Polynomial<K>>& hints = {},
                         bool assert_regular = false) {
  auto key = [](const GenFraction<K>& g) {
    std::string s;
    for (auto& gen : g.denom_.gens) s += gen.str() + "|";
    return s;
  };
  std::map<std::string, std::vector<GenFraction<K>>> buckets;
  for (auto& c1 : delta(f, b1, hints, assert_regular))
    for (auto& z : delta(c1.cls, b2, hints, assert_regular))
      buckets[key(z.cls)].push_back(z.cls);
  for (auto& c2 : delta(f, b2, hints, assert_regular))
    for (auto& z : delta(c2.cls, b1, hints, assert_regular)) {
      std::vector<std::size_t> perm(z.cls.depth());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      std::swap(perm[perm.size() - 2], perm[perm.size() - 1]);
      auto r = gf_reorder(z.cls, perm);
      buckets[key(r)].push_back(r);
    }
  for (auto& [k, classes] : buckets) {
    GenFraction<K> sum = classes.front();
    for (std::size_t i = 1; i < classes.size(); ++i)
      sum = gf_add(sum, classes[i]);
    if (!gf_is_zero(sum)) return false;
  }
  return true;
}

// Membership of a class in the subcomplex of a closed subscheme V(I): every
// Groebner generator of I must annihilate it.
template <class K>
bool annihilator_check(const GenFraction<K>& f,
                       const std::vector<Polynomial<K>>& ideal_gens) {
  if (ideal_gens.empty()) return true;
  auto gb = groebner_basis(ideal_gens, Order::grevlex);
  for (auto& g : gb.polys)
    if (!gf_is_zero(gf_scale(g, f))) return false;
  return true;
}

// Trace is a map of complexes: tracing then extending by b over the base
// agrees with extending by the pullback of b then tracing, factor by factor.
template <class K>
bool trace_chainmap_check(const FiniteStep<K>& st, const GenFraction<K>& f,
                          const Polynomial<K>& b_base,
                          const std::vector<Polynomial<K>>& hints_base = {},
                          bool assert_regular = false) {
  std::vector<Polynomial<K>> hints_full;
  hints_full.reserve(hints_base.size());
  for (auto& h : hints_base) hints_full.push_back(lift_poly(st, h));

  std::map<std::string, std::vector<GenFraction<K>>> buckets;
  auto tf = trace_finite(st, f);
  for (auto& c : delta(tf, b_base, hints_base, assert_regular))
    buckets[c.factor.str()].push_back(c.cls);
  for (auto& c : delta_on_curve(st, f, lift_poly(st, b_base), hints_full,
                                assert_regular))
    buckets[project_poly(st, c.factor).str()].push_back(
        gf_negate(trace_finite(st, c.cls)));
  for (auto& [g, classes] : buckets) {
    GenFraction<K> sum = classes.front();
    for (std::size_t i = 1; i < classes.size(); ++i)
      sum = gf_add(sum, classes[i]);
    if (!gf_is_zero(sum)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// A graded slice of the residue complex restricted to a closed subscheme:
// stored classes are validated against the subscheme ideal on insertion and
// grouped by codimension (the chain length).

template <class K>
struct ResidueComplexSlice {
  RingPtr ambient;
  std::vector<Polynomial<K>> subscheme;
  std::map<std::size_t, std::vector<GenFraction<K>>> graded;

  void insert(const GenFraction<K>& cls) {
    require_same_ring(cls.ring(), ambient);
    if (!subscheme.empty() && !annihilator_check(cls, subscheme))
      throw domain_error("not-annihilated",
                         "class is not annihilated by the subscheme ideal");
    graded[cls.depth()].push_back(cls);
  }
};

}  // namespace residua
