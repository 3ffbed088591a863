#pragma once

// Tate residues on one-variable completions B = A[t]^ along (m, p), p monic:
// the residue of [f dt / q^i] is the basis-expansion coefficient c[d-1][i-1]
// of f against q, extended to iterated residues over triangular systems, plus
// Hensel lifting of fiber factorizations and the local/global decomposition
// of residues over a split fiber.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "residua/errors.hpp"
#include "residua/polynomial.hpp"
#include "residua/univar.hpp"

namespace residua {

// B = completion of A[t] along (m, p); A is the full ring minus the fiber
// variable, m its maximal ideal at the (translated-to-origin) base point.
template <class K>
struct MonicPresentation {
  RingPtr full;      // A[t]
  int tvar = 0;      // index of t within full
  Polynomial<K> p;   // monic in t, leading coefficient 1
  std::uint32_t e = 0;

  static MonicPresentation make(RingPtr full, int tvar, Polynomial<K> p) {
    require_same_ring(full, p.ring());
    if (!p.is_monic_in(tvar, /*allow_unit_lead=*/false))
      throw domain_error("non-monic",
                         "presentation polynomial must be monic with leading "
                         "coefficient 1 in " +
                             full->vars[tvar]);
    MonicPresentation out;
    out.e = static_cast<std::uint32_t>(p.degree_in(tvar));
    if (out.e < 1)
      throw domain_error("non-monic", "presentation degree must be >= 1");
    out.full = std::move(full);
    out.tvar = tvar;
    out.p = std::move(p);
    return out;
  }
};

// Residue of the class [f dt / q^i], q monic in t: the coefficient of
// t^{d-1} q^{i-1} in the basis expansion of f.  Coefficients of the
// expansion never involve t, so the result lives over the t-free subring.
template <class K>
Polynomial<K> tate_residue_local(const Polynomial<K>& f, const Polynomial<K>& q,
                                 std::uint32_t i, int tvar) {
  auto e = basis_expand(f, q, tvar, i);
  return e.c[e.d - 1][i - 1];
}

template <class K>
Polynomial<K> global_residue(const MonicPresentation<K>& pres,
                             const Polynomial<K>& f, std::uint32_t i) {
  require_same_ring(pres.full, f.ring());
  return tate_residue_local(f, pres.p, i, pres.tvar);
}

// Iterated residue over a triangular monic system: q_j monic in t_j with
// coefficients in A[t_1..t_{j-1}].  Residues are taken innermost-variable
// first (t_n down to t_1).
template <class K>
Polynomial<K> tate_residue_iterated(const Polynomial<K>& f,
                                    const std::vector<Polynomial<K>>& qs,
                                    const std::vector<std::uint32_t>& exps,
                                    const std::vector<int>& tvars) {
  if (qs.size() != exps.size() || qs.size() != tvars.size())
    throw domain_error("arity-mismatch",
                       "need one exponent and one variable per denominator");
  if (qs.empty())
    throw domain_error("arity-mismatch", "empty residue system");
  for (auto& q : qs) require_same_ring(f.ring(), q.ring());
  // triangularity: q_j must not involve t_k for k > j
  for (std::size_t j = 0; j < qs.size(); ++j)
    for (std::size_t k = j + 1; k < qs.size(); ++k)
      if (qs[j].involves(tvars[k]))
        throw domain_error(
            "non-triangular",
            "denominator " + std::to_string(j) + " involves the later fiber variable " +
                f.ring()->vars[tvars[k]]);
  Polynomial<K> cur = f;
  for (std::size_t j = qs.size(); j-- > 0;)
    cur = tate_residue_local(cur, qs[j], exps[j], tvars[j]);
  return cur;
}

// Lemma-style rescaling check: the residue of [f dt/q1^i] equals the residue
// of the same class rewritten with denominator q2 = q1*r, numerator f*r^i.
template <class K>
bool residue_independence_check(const Polynomial<K>& f, const Polynomial<K>& q1,
                                const Polynomial<K>& q2, std::uint32_t i,
                                int tvar) {
  auto r = q2.exact_divide(q1);
  if (!r || !r->is_monic_in(tvar, /*allow_unit_lead=*/false))
    throw domain_error("non-monic",
                       "second denominator must be a monic multiple of the first");
  return tate_residue_local(f, q1, i, tvar) ==
         tate_residue_local(f * r->pow(i), q2, i, tvar);
}

// ---------------------------------------------------------------------------
// m-adic truncation at the base point (m = the ideal of all base variables;
// callers translate their rational point to the origin first).

// Drops every monomial of total base-variable degree >= N ("mod m^N").
template <class K>
Polynomial<K> truncate_base(const Polynomial<K>& f, int tvar, std::uint32_t N) {
  Polynomial<K> out = Polynomial<K>::zero(f.ring());
  for (auto& [m, c] : f.terms()) {
    std::uint32_t bd = 0;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (static_cast<int>(v) != tvar) bd += m[v];
    if (bd < N) out.add_term(m, c);
  }
  return out;
}

namespace detail {

// Reduce f mod m (base variables -> 0), leaving a polynomial in t alone.
template <class K>
Polynomial<K> mod_base(const Polynomial<K>& f, int tvar) {
  return truncate_base(f, tvar, 1);
}

// One quadratic Hensel step: given p ≡ g·h and s·g + t·h ≡ 1 at the current
// precision, improve both congruences to the doubled precision (all results
// truncated at base order N).  g, h stay monic in t.
template <class K>
struct HenselPair {
  Polynomial<K> g, h, s, t;
};

template <class K>
HenselPair<K> hensel_step(const Polynomial<K>& p, const HenselPair<K>& cur,
                          int tvar, std::uint32_t N) {
  auto trunc = [&](const Polynomial<K>& f) { return truncate_base(f, tvar, N); };
  const auto& [g, h, s, t] = cur;
  Polynomial<K> e = trunc(p - g * h);
  auto [q, r] = univar_divide(trunc(s * e), h, tvar);
  Polynomial<K> g1 = trunc(g + t * e + q * g);
  Polynomial<K> h1 = trunc(h + r);
  Polynomial<K> b = trunc(s * g1 + t * h1 - Polynomial<K>::one(p.ring()));
  auto [c, d] = univar_divide(trunc(s * b), h1, tvar);
  Polynomial<K> s1 = trunc(s - d);
  Polynomial<K> t1 = trunc(t - t * b - c * g1);
  return {g1, h1, s1, t1};
}

// Lift the two-way split p ≡ g0*h0 mod m (g0, h0 coprime mod m, monic in t)
// to p ≡ g*h mod m^N.
template <class K>
HenselPair<K> hensel_lift_pair(const Polynomial<K>& p, const Polynomial<K>& g0,
                               const Polynomial<K>& h0, int tvar,
                               std::uint32_t N) {
  // initial Bezout pair over the residue field
  auto gv = univar_coeffs(mod_base(g0, tvar), tvar);
  auto hv = univar_coeffs(mod_base(h0, tvar), tvar);
  auto bez = eea(gv, hv);
  if (uv_deg(bez.g) != 0)
    throw domain_error("hensel-precondition",
                       "modular factors are not coprime over the residue field");
  K lead = bez.g[0];
  HenselPair<K> cur{
      g0, h0,
      univar_assemble(p.ring(), uv_scale(bez.s, K(1) / lead), tvar),
      univar_assemble(p.ring(), uv_scale(bez.t, K(1) / lead), tvar)};
  // Precision doubles per step; each step computes in R/m^{2*prec} exactly so
  // the factor degrees in t stay put.
  for (std::uint32_t prec = 1; prec < N; prec *= 2)
    cur = hensel_step(p, cur, tvar, std::min(2 * prec, N));
  return cur;
}

}  // namespace detail

// Lift a pairwise-coprime monic factorization of p mod m to base order N.
// Returns monic factors f_j with prod f_j ≡ p mod m^N and f_j ≡ seed_j mod m.
// A zero-dimensional base (no base variables, A = k) is the exact case: the
// seeds must multiply to p on the nose and are returned unchanged.
template <class K>
std::vector<Polynomial<K>> hensel_factor(const MonicPresentation<K>& pres,
                                         const std::vector<Polynomial<K>>& split,
                                         std::uint32_t N) {
  if (N == 0) throw domain_error("bad-precision", "adic order must be >= 1");
  if (split.empty())
    throw domain_error("hensel-precondition", "empty factor list");
  const int tvar = pres.tvar;
  std::uint32_t degsum = 0;
  for (auto& f : split) {
    require_same_ring(pres.full, f.ring());
    if (!f.is_monic_in(tvar, /*allow_unit_lead=*/false))
      throw domain_error("hensel-precondition",
                         "modular factors must be monic with leading coefficient 1");
    degsum += static_cast<std::uint32_t>(f.degree_in(tvar));
  }
  if (degsum != pres.e)
    throw domain_error("hensel-precondition",
                       "factor degrees do not sum to deg p");
  // seeds must recover p modulo m
  Polynomial<K> prod = Polynomial<K>::one(pres.full);
  for (auto& f : split) prod *= detail::mod_base(f, tvar);
  if (detail::mod_base(prod, tvar) != detail::mod_base(pres.p, tvar))
    throw domain_error("hensel-precondition",
                       "factors do not multiply to p over the residue field");
  // pairwise coprimality over the residue field
  for (std::size_t i = 0; i < split.size(); ++i)
    for (std::size_t j = i + 1; j < split.size(); ++j) {
      auto g = univar_gcd(univar_coeffs(detail::mod_base(split[i], tvar), tvar),
                          univar_coeffs(detail::mod_base(split[j], tvar), tvar));
      if (detail::uv_deg(g) != 0)
        throw domain_error("hensel-precondition",
                           "modular factors are not pairwise coprime");
    }

  // recursive binary split
  std::vector<Polynomial<K>> out;
  auto lift = [&](auto&& self, const Polynomial<K>& target,
                  std::size_t lo, std::size_t hi) -> void {
    if (hi - lo == 1) {
      out.push_back(truncate_base(target, tvar, N));
      return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    Polynomial<K> g0 = Polynomial<K>::one(pres.full);
    for (std::size_t j = lo; j < mid; ++j)
      g0 *= detail::mod_base(split[j], tvar);
    Polynomial<K> h0 = Polynomial<K>::one(pres.full);
    for (std::size_t j = mid; j < hi; ++j)
      h0 *= detail::mod_base(split[j], tvar);
    auto pair = detail::hensel_lift_pair(target, g0, h0, tvar, N);
    self(self, pair.g, lo, mid);
    self(self, pair.h, mid, hi);
  };
  lift(lift, truncate_base(pres.p, tvar, N), 0, split.size());
  // single-factor case: nothing to lift, p itself is the factor
  if (split.size() == 1) {
    out.clear();
    out.push_back(pres.p);
  }
  // restore the mod-m seeds' order; assert the defining congruences
  Polynomial<K> check = Polynomial<K>::one(pres.full);
  for (std::size_t j = 0; j < out.size(); ++j) {
    check *= out[j];
    if (detail::mod_base(out[j], tvar) != detail::mod_base(split[j], tvar))
      throw domain_error("hensel-postcondition",
                         "lifted factor drifted from its modular seed");
  }
  if (truncate_base(check, tvar, N) != truncate_base(pres.p, tvar, N))
    throw domain_error("hensel-postcondition",
                       "lifted factors do not multiply back to p");
  return out;
}

// ---------------------------------------------------------------------------
// Fiber decomposition of residues (split fibers at a rational base point).

template <class K>
struct LocalResidue {
  Polynomial<K> factor;   // monic local denominator p_q mod m^N
  Polynomial<K> value;    // local residue mod m^N
  Polynomial<K> inverse;  // certificate: w_q^{-1} mod (p_q^i, m^N)
};

template <class K>
struct FiberDecomposition {
  std::vector<LocalResidue<K>> locals;
  Polynomial<K> global;  // global residue truncated mod m^N
  std::uint32_t N = 0;
};

// Splits [f dt / p^i] along the fiber factorization p ≡ prod p_q mod m^N and
// takes each local residue.  The fiber polynomial must factor into linear
// powers over the base field.
template <class K>
FiberDecomposition<K> residue_fiber_decompose(const MonicPresentation<K>& pres,
                                              const Polynomial<K>& f,
                                              std::uint32_t i, std::uint32_t N) {
  const int tvar = pres.tvar;
  require_same_ring(pres.full, f.ring());
  // factor p mod m into linear powers via the square-free part's roots
  auto pbar = univar_coeffs(detail::mod_base(pres.p, tvar), tvar);
  auto sqf = squarefree_part(pbar, f.ring()->field.kind == 'P' ? f.ring()->field.p : 0);
  auto roots = field_roots(sqf);
  if (roots.size() != static_cast<std::size_t>(detail::uv_deg(sqf)))
    throw domain_error("unsupported-splitting",
                       "fiber polynomial does not split over the base field");
  std::vector<Polynomial<K>> seeds;
  auto rest = pbar;
  for (auto& r : roots) {
    auto [mult, quot] = root_multiplicity(rest, r);
    rest = quot;
    Polynomial<K> lin =
        Polynomial<K>::var(pres.full, tvar) -
        Polynomial<K>::constant(pres.full, r);
    seeds.push_back(lin.pow(mult));
  }
  auto factors = hensel_factor(pres, seeds, N);

  FiberDecomposition<K> out;
  out.N = N;
  out.global = truncate_base(global_residue(pres, f, i), tvar, N);
  for (std::size_t qi = 0; qi < factors.size(); ++qi) {
    const Polynomial<K>& pq = factors[qi];
    Polynomial<K> pqi = truncate_base(pq.pow(i), tvar, N);
    // w = product of the other factors^i; invert it mod (p_q^i, m^N)
    Polynomial<K> w = Polynomial<K>::one(pres.full);
    for (std::size_t qj = 0; qj < factors.size(); ++qj)
      if (qj != qi) w = truncate_base(w * factors[qj].pow(i), tvar, N);
    auto reduce = [&](const Polynomial<K>& a) {
      return truncate_base(univar_divide(a, pqi, tvar).second, tvar, N);
    };
    // initial inverse over the residue field
    auto wbar = univar_coeffs(detail::mod_base(reduce(w), tvar), tvar);
    auto pbarq = univar_coeffs(detail::mod_base(pqi, tvar), tvar);
    auto bez = eea(wbar, pbarq);
    if (detail::uv_deg(bez.g) != 0)
      throw domain_error("hensel-precondition",
                         "local factor shares a root with its complement");
    Polynomial<K> v = univar_assemble(
        pres.full, detail::uv_scale(bez.s, K(1) / bez.g[0]), tvar);
    for (std::uint32_t prec = 1; prec < N; prec *= 2) {
      // Newton: v <- v(2 - w v)
      Polynomial<K> two = Polynomial<K>::constant(pres.full, K(2));
      v = reduce(v * (two - reduce(w * v)));
    }
    LocalResidue<K> lr;
    lr.factor = pq;
    lr.inverse = v;
    lr.value = truncate_base(
        tate_residue_local(reduce(reduce(f) * v), pq, i, tvar), tvar, N);
    out.locals.push_back(std::move(lr));
  }
  return out;
}

}  // namespace residua
