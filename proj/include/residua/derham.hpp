#pragma once

// Truncated completed De Rham complexes of affine embeddings.
//
// For X = V(I) inside affine n-space over Q, the completed De Rham complex
// along X is the limit over N of the De Rham complexes of the infinitesimal
// neighbourhoods A/I^N.  `build_complex(vars, I, N, D)` realizes the stage
// belonging to adic order N (level N-1 of the tower A/I^{i+1}) in two layers.
//
//  * Presentation layer (`pieces`): for each p, the monomial basis of the
//    graded piece Omega^p(A/I^N) truncated at total degree D — forms m dx_S
//    where m runs over a monomial basis of the degree-<=D slice of A/I^N
//    (non-pivot monomials of the Macaulay matrix of I^N in that slice).
//
//  * Computation layer (`window`, `dimages`): duality pairs functions on the
//    level-N neighbourhood with fractions supported on X of pole order <= N,
//    so the stage is realized concretely as the span of canonical partial
//    fractions
//
//        r / f^k dx_S,     1 <= k <= N,  deg r <= D,
//
//    with r a Groebner-standard monomial mod f (for the codimension-2 graph
//    presentation I = (f, z - q): r z-free standard mod f, with a pair of
//    pole exponents on f and z - q).  Every class of the ambient module of
//    such fractions has a unique canonical form — repeated division by f
//    pushes quotients down one pole level and discards the pole-0 tail — and
//    the differential of a window element is computed exactly in canonical
//    form, with no truncation applied to d.  Hence d.d = 0 holds on the nose,
//    and the part of cohomology visible in a window embeds honestly into the
//    cohomology of the full completed complex: enlarging N or D can only
//    reveal more classes, never destroy reported ones.
//
// Rank extraction.  The kernel rank in avatar degree q is read off the exact
// d-matrix of the window.  The image rank is the dimension of
// (d of a saturation window) ∩ (this window), computed by exact rank
// arithmetic; the saturation window enlarges both the pole budget and the
// degree budget, the latter by strictly more than deg(f) per pole step so
// that the effective degree allowance grows at every pole level (growing
// them in lockstep with deg(f) would keep every fixed pole level starved at
// a constant budget).  Two saturation depths are compared and a third is
// consulted if they disagree.  Intrinsic cohomology of X appears with the
// support shift: for codimension c, h^p(X) is reported from avatar degree
// p + c.
//
// Supported presentations: hypersurfaces I = (f); the unit ideal (the zero
// complex); and two-generator graph presentations I = (f, z - q) with the
// variable z absent from both f and q.  Everything is exact rational linear
// algebra; per-degree rank computations run concurrently with read-only
// access to the assembled complex.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "residua/errors.hpp"
#include "residua/forms.hpp"
#include "residua/groebner.hpp"
#include "residua/linalg.hpp"
#include "residua/polynomial.hpp"

namespace residua {

// ---------------------------------------------------------------------------
// Elements of the completed-tube module: finite sums of canonical fractions
// num / (den_0^{pole_0} * den_1^{pole_1} ...)  dx_S with all pole exponents
// >= 1 and Groebner-reduced numerators.

template <class K>
struct TubeFraction {
  // (pole exponents, wedge) -> numerator polynomial
  std::map<std::pair<std::vector<std::int32_t>, WedgeIdx>, Polynomial<K>> parts;

  bool is_zero() const { return parts.empty(); }
};

// ---------------------------------------------------------------------------
// The assembled truncation stage.

template <class K>
struct TruncatedDeRham {
  enum class Kind {
    zero,          // unit ideal: empty X, zero complex
    hypersurface,  // I = (f), codimension 1
    graph,         // I = (f, z - q), z absent from f and q, codimension 2
  };

  struct TubeKey {
    std::vector<std::int32_t> pole;  // one exponent per denominator
    Mono num;                        // standard-monomial numerator
    WedgeIdx wedge;

    bool operator<(const TubeKey& o) const {
      return std::tie(pole, num, wedge) < std::tie(o.pole, o.num, o.wedge);
    }
    bool operator==(const TubeKey& o) const {
      return pole == o.pole && num == o.num && wedge == o.wedge;
    }
  };

  RingPtr ring;
  std::vector<Polynomial<K>> ideal;  // generators as given
  std::uint32_t N = 0, D = 0;
  Kind kind = Kind::zero;
  std::size_t codim = 0;  // 1 or 2; 0 for the zero complex
  int zvar = -1;          // graph presentations: index of the graph variable

  // Normalized denominators: {f} or {f, z - q}; empty for the zero complex.
  std::vector<Polynomial<K>> dens;
  // Singleton Groebner basis {f} used for canonical numerator reduction.
  std::vector<Polynomial<K>> fgb;

  // Presentation layer: graded pieces of Omega^p(A/I^N), degree-truncated.
  std::vector<std::vector<std::pair<WedgeIdx, Mono>>> pieces;  // p = 0..n

  // Computation layer: canonical window basis and its exact differentials.
  std::vector<std::vector<TubeKey>> window;            // p = 0..n
  std::vector<std::vector<TubeFraction<K>>> dimages;   // d of window[p][i]

  std::size_t piece_dim(std::size_t p) const { return pieces[p].size(); }
  std::size_t window_dim(std::size_t p) const { return window[p].size(); }
};

struct DeRhamDims {
  std::vector<std::size_t> dims;  // h^p of X for p = 0 .. n - codim
  std::vector<bool> stabilized;   // per p: rank unchanged at (N+1, D+2)
  std::uint32_t N = 0, D = 0;
};

namespace detail {

// All monomials in n variables of total degree <= cap.
inline void enumerate_monomials(std::size_t nvars, std::uint32_t cap,
                                Mono& work, std::size_t at,
                                std::vector<Mono>& out) {
  if (at == nvars) {
    out.push_back(work);
    return;
  }
  std::uint32_t used = 0;
  for (std::size_t i = 0; i < at; ++i) used += work[i];
  for (std::uint32_t e = 0; e + used <= cap; ++e) {
    work[at] = e;
    enumerate_monomials(nvars, cap, work, at + 1, out);
  }
  work[at] = 0;
}

inline std::vector<Mono> monomials_up_to(std::size_t nvars, std::int64_t cap) {
  std::vector<Mono> out;
  if (cap < 0) return out;
  Mono work(nvars, 0);
  enumerate_monomials(nvars, static_cast<std::uint32_t>(cap), work, 0, out);
  return out;
}

// Strictly increasing index subsets of size p (the wedge basis).
inline void enumerate_wedges(std::size_t nvars, std::size_t p, int from,
                             WedgeIdx& work, std::vector<WedgeIdx>& out) {
  if (work.size() == p) {
    out.push_back(work);
    return;
  }
  for (int i = from; i < static_cast<int>(nvars); ++i) {
    work.push_back(i);
    enumerate_wedges(nvars, p, i + 1, work, out);
    work.pop_back();
  }
}

inline std::vector<WedgeIdx> wedges_of_size(std::size_t nvars, std::size_t p) {
  std::vector<WedgeIdx> out;
  WedgeIdx work;
  enumerate_wedges(nvars, p, 0, work, out);
  return out;
}

// Products of exactly e ideal generators (with repetition).
template <class K>
void power_products(const std::vector<Polynomial<K>>& gens, std::uint32_t e,
                    std::size_t from, const Polynomial<K>& acc,
                    std::vector<Polynomial<K>>& out) {
  if (e == 0) {
    if (!acc.is_zero()) out.push_back(acc);
    return;
  }
  for (std::size_t i = from; i < gens.size(); ++i)
    power_products(gens, e - 1, i, acc * gens[i], out);
}

// Add num / den^pole dx_S to `out` in canonical form: divide the numerator
// by the singleton basis {f}, keep the remainder at this pole level, push
// the quotient one f-pole down, and drop the pole-0 tail (it belongs to the
// polynomial part, which the tube module quotients away).
template <class K>
void tube_add(const std::vector<Polynomial<K>>& fgb, TubeFraction<K>& out,
              std::vector<std::int32_t> pole, Polynomial<K> num,
              const WedgeIdx& S) {
  for (std::size_t t = 1; t < pole.size(); ++t)
    if (pole[t] < 1) return;
  while (pole[0] >= 1 && !num.is_zero()) {
    auto dv = divide(num, fgb, Order::grevlex);
    if (!dv.remainder.is_zero()) {
      auto key = std::make_pair(pole, S);
      auto it = out.parts.find(key);
      if (it == out.parts.end()) {
        out.parts.emplace(std::move(key), std::move(dv.remainder));
      } else {
        it->second = it->second + dv.remainder;
        if (it->second.is_zero()) out.parts.erase(it);
      }
    }
    num = std::move(dv.cofactors.at(0));
    --pole[0];
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The exact differential on tube fractions:
//   d(num / den^pole dx_S) = d(num) / den^pole ^ dx_S
//                          - sum_t pole_t * num * d(den_t) / den^{pole+e_t} ^ dx_S,
// each term re-canonicalized.  No truncation is applied, so composing twice
// gives exactly zero.

template <class K>
TubeFraction<K> tube_d(const TruncatedDeRham<K>& C, const TubeFraction<K>& w) {
  TubeFraction<K> out;
  const std::size_t nv = C.ring->vars.size();
  for (const auto& [key, num] : w.parts) {
    const auto& [pole, S] = key;
    for (std::size_t v = 0; v < nv; ++v) {
      WedgeIdx merged;
      merged.reserve(S.size() + 1);
      merged.push_back(static_cast<int>(v));
      merged.insert(merged.end(), S.begin(), S.end());
      WedgeIdx canon = merged;
      const int sgn = wedge_normalize(canon);
      if (sgn == 0) continue;
      Polynomial<K> a = num.derivative(static_cast<int>(v));
      if (!a.is_zero())
        detail::tube_add(C.fgb, out, pole, sgn > 0 ? a : -a, canon);
      for (std::size_t t = 0; t < C.dens.size(); ++t) {
        Polynomial<K> dd = C.dens[t].derivative(static_cast<int>(v));
        if (dd.is_zero()) continue;
        Polynomial<K> b = num * dd * K(-static_cast<long>(pole[t]));
        if (b.is_zero()) continue;
        auto up = pole;
        ++up[t];
        detail::tube_add(C.fgb, out, std::move(up), sgn > 0 ? b : -b, canon);
      }
    }
  }
  return out;
}

namespace detail {

// A window-only realization (no presentation layer): used for the saturation
// windows and for the finer stage backing the stabilization flags.
template <class K>
struct TubeStage {
  std::vector<std::vector<typename TruncatedDeRham<K>::TubeKey>> window;
  std::vector<std::vector<TubeFraction<K>>> dimages;
};

// Pole vectors with every exponent in 1..N (one per denominator).
inline std::vector<std::vector<std::int32_t>> pole_boxes(std::size_t arity,
                                                         std::uint32_t N) {
  std::vector<std::vector<std::int32_t>> out;
  if (arity == 0) return out;
  std::vector<std::int32_t> cur(arity, 1);
  while (true) {
    out.push_back(cur);
    std::size_t t = 0;
    while (t < arity) {
      if (cur[t] < static_cast<std::int32_t>(N)) {
        ++cur[t];
        for (std::size_t s = 0; s < t; ++s) cur[s] = 1;
        break;
      }
      ++t;
    }
    if (t == arity) break;
  }
  return out;
}

// Standard-monomial numerators for the window: degree <= D, not divisible by
// the lead of f, and z-free in graph presentations.
template <class K>
std::vector<Mono> window_numerators(const TruncatedDeRham<K>& shape,
                                    std::uint32_t D) {
  const std::size_t n = shape.ring->vars.size();
  const Mono ltf = shape.dens.front().lead(Order::grevlex).first;
  std::vector<Mono> out;
  for (auto& m : monomials_up_to(n, D)) {
    if (mono_divides(ltf, m)) continue;
    if (shape.zvar >= 0 && m[static_cast<std::size_t>(shape.zvar)] != 0)
      continue;
    out.push_back(m);
  }
  return out;
}

// d-images of the degree-p window at truncation (N, D).
template <class K>
std::vector<TubeFraction<K>> stage_degree_dimages(
    const TruncatedDeRham<K>& shape, std::uint32_t N, std::uint32_t D,
    std::size_t p) {
  std::vector<TubeFraction<K>> out;
  if (shape.kind == TruncatedDeRham<K>::Kind::zero) return out;
  const std::size_t n = shape.ring->vars.size();
  const auto monos = window_numerators(shape, D);
  const auto poles = pole_boxes(shape.dens.size(), N);
  for (const auto& S : wedges_of_size(n, p))
    for (const auto& m : monos)
      for (const auto& pl : poles) {
        TubeFraction<K> w;
        w.parts.emplace(std::make_pair(pl, S),
                        Polynomial<K>::term(shape.ring, m, K(1)));
        TubeFraction<K> dw = tube_d(shape, w);
        if (!dw.is_zero()) out.push_back(std::move(dw));
      }
  return out;
}

template <class K>
TubeStage<K> build_stage(const TruncatedDeRham<K>& shape, std::uint32_t N,
                         std::uint32_t D) {
  const std::size_t n = shape.ring->vars.size();
  TubeStage<K> st;
  st.window.resize(n + 1);
  st.dimages.resize(n + 1);
  if (shape.kind == TruncatedDeRham<K>::Kind::zero) return st;
  const auto monos = window_numerators(shape, D);
  const auto poles = pole_boxes(shape.dens.size(), N);
  for (std::size_t p = 0; p <= n; ++p) {
    for (const auto& S : wedges_of_size(n, p))
      for (const auto& m : monos)
        for (const auto& pl : poles) {
          st.window[p].push_back({pl, m, S});
          TubeFraction<K> w;
          w.parts.emplace(std::make_pair(pl, S),
                          Polynomial<K>::term(shape.ring, m, K(1)));
          st.dimages[p].push_back(tube_d(shape, w));
        }
  }
  return st;
}

// Expand tube fractions into sparse rows over a shared column map.
template <class K>
class TubeColumns {
 public:
  SparseRow<K> row(const TubeFraction<K>& w) {
    SparseRow<K> r;
    for (const auto& [key, poly] : w.parts)
      for (const auto& [m, c] : poly.terms())
        r[id(key.first, m, key.second)] = c;
    return r;
  }

  std::size_t id(const std::vector<std::int32_t>& pole, const Mono& m,
                 const WedgeIdx& S) {
    auto key = std::make_tuple(pole, m, S);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    const std::size_t fresh = ids_.size();
    ids_.emplace(std::move(key), fresh);
    return fresh;
  }

 private:
  std::map<std::tuple<std::vector<std::int32_t>, Mono, WedgeIdx>, std::size_t>
      ids_;
};

// Degree budget per saturation pole step: strictly more than the total
// denominator degree, so the effective numerator allowance grows at every
// fixed pole level of the saturation window.
template <class K>
std::uint32_t saturation_degree_step(const TruncatedDeRham<K>& shape) {
  std::uint32_t total = 0;
  for (const auto& f : shape.dens)
    total += static_cast<std::uint32_t>(f.total_degree());
  return total + 2;
}

// Intrinsic cohomology ranks h^0 .. h^{n-codim} of the stage (window W,
// d-images dW) at truncation (N, D): in avatar degree q,
//   ker = dim W^q - rank d(W^q),
//   im  = dim( d(saturation window^{q-1}) ∩ span W^q ),
// the intersection via rank(dbig) - rank(dbig with W^q-columns removed),
// which is exact because the window basis consists of canonical coordinate
// vectors.  Per-degree eliminations run concurrently; all shared state is
// read-only.
template <class K>
std::vector<std::size_t> stage_dims(
    const TruncatedDeRham<K>& shape,
    const std::vector<std::vector<typename TruncatedDeRham<K>::TubeKey>>& W,
    const std::vector<std::vector<TubeFraction<K>>>& dW, std::uint32_t N,
    std::uint32_t D) {
  const std::size_t n = shape.ring->vars.size();
  const std::size_t c = shape.codim;
  const std::uint32_t step = saturation_degree_step(shape);

  auto rank_of = [](TubeColumns<K>& cols,
                    const std::vector<TubeFraction<K>>& fracs) {
    std::vector<SparseRow<K>> rows;
    rows.reserve(fracs.size());
    for (const auto& w : fracs)
      if (!w.is_zero()) rows.push_back(cols.row(w));
    return sparse_rank(std::move(rows));
  };

  auto dims_at_degree = [&](std::size_t q) -> std::size_t {
    TubeColumns<K> cols;
    const std::size_t dimV = W[q].size();
    const std::size_t rkd = rank_of(cols, dW[q]);
    const std::size_t ker = dimV - rkd;

    std::set<std::size_t> vcols;
    for (const auto& k : W[q]) vcols.insert(cols.id(k.pole, k.num, k.wedge));

    auto sat_im = [&](std::uint32_t j) -> std::size_t {
      auto dbig = stage_degree_dimages(shape, N + j, D + step * j, q - 1);
      std::vector<SparseRow<K>> rows, off;
      rows.reserve(dbig.size());
      off.reserve(dbig.size());
      for (const auto& w : dbig) {
        if (w.is_zero()) continue;
        SparseRow<K> r = cols.row(w);
        SparseRow<K> ro;
        for (const auto& [col, coef] : r)
          if (!vcols.count(col)) ro[col] = coef;
        rows.push_back(std::move(r));
        if (!ro.empty()) off.push_back(std::move(ro));
      }
      return sparse_rank(rows) - sparse_rank(off);
    };

    std::size_t im = 0;
    if (q >= 1) {
      const std::size_t im1 = sat_im(1);
      const std::size_t im2 = sat_im(2);
      im = (im1 == im2) ? im2 : sat_im(3);
    }
    return ker - std::min(ker, im);
  };

  std::vector<std::future<std::size_t>> tasks;
  for (std::size_t q = c; q <= n; ++q)
    tasks.push_back(
        std::async(std::launch::async, [&, q] { return dims_at_degree(q); }));
  std::vector<std::size_t> dims;
  dims.reserve(tasks.size());
  for (auto& t : tasks) dims.push_back(t.get());
  return dims;
}

// Monomial basis of the degree-<=D slice of A/I^N: eliminate the Macaulay
// rows of I^N (degree-<=D multiples of the N-fold generator products) with
// the grevlex-largest monomial of each row as pivot; the slice basis is the
// non-pivot monomials.
template <class K>
std::vector<Mono> quotient_slice_basis(RingPtr ring,
                                       const std::vector<Polynomial<K>>& gens,
                                       std::uint32_t N, std::uint32_t D) {
  const std::size_t n = ring->vars.size();
  std::vector<Mono> all = monomials_up_to(n, D);
  std::sort(all.begin(), all.end(), [](const Mono& a, const Mono& b) {
    return mono_cmp(a, b, Order::grevlex) > 0;  // largest first
  });
  std::map<Mono, std::size_t> col;
  for (std::size_t i = 0; i < all.size(); ++i) col.emplace(all[i], i);

  std::vector<Polynomial<K>> products;
  power_products(gens, N, 0, Polynomial<K>::one(ring), products);

  std::map<std::size_t, SparseRow<K>> pivots;
  for (const auto& F : products) {
    const std::int64_t room =
        static_cast<std::int64_t>(D) - F.total_degree();
    for (const auto& m : monomials_up_to(n, room)) {
      Polynomial<K> g = Polynomial<K>::term(ring, m, K(1)) * F;
      SparseRow<K> row;
      for (const auto& [mm, cc] : g.terms()) row[col.at(mm)] = cc;
      while (!row.empty()) {
        const std::size_t lead = row.begin()->first;
        auto it = pivots.find(lead);
        if (it == pivots.end()) {
          const K inv = K(1) / row.begin()->second;
          for (auto& [cidx, coef] : row) coef = coef * inv;
          pivots.emplace(lead, std::move(row));
          break;
        }
        const K factor = row.begin()->second;
        for (const auto& [cidx, coef] : it->second) {
          auto slot = row.find(cidx);
          const K next =
              (slot == row.end() ? K(0) : slot->second) - factor * coef;
          if (next.is_zero()) {
            if (slot != row.end()) row.erase(slot);
          } else if (slot == row.end()) {
            row.emplace(cidx, next);
          } else {
            slot->second = next;
          }
        }
      }
    }
  }

  std::vector<Mono> basis;
  for (std::size_t i = all.size(); i-- > 0;)  // ascending grevlex
    if (!pivots.count(i)) basis.push_back(all[i]);
  return basis;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Assembly.

template <class K>
TruncatedDeRham<K> build_complex(RingPtr ring, std::vector<Polynomial<K>> ideal,
                                 std::uint32_t N, std::uint32_t D) {
  using Kind = typename TruncatedDeRham<K>::Kind;
  if (ring->field.kind != 'Q')
    throw domain_error("unsupported-characteristic",
                       "the completed De Rham complex is only built over Q "
                       "(termwise integration needs invertible integers); got " +
                           ring->field.name());
  if (N == 0)
    throw domain_error("invalid-truncation", "adic order must be at least 1");
  for (const auto& g : ideal) require_same_ring(ring, g.ring());

  std::vector<Polynomial<K>> gens;
  for (const auto& g : ideal)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty())
    throw domain_error("unsupported-ideal",
                       "need at least one nonzero ideal generator");

  TruncatedDeRham<K> C;
  C.ring = ring;
  C.ideal = std::move(ideal);
  C.N = N;
  C.D = D;

  const std::size_t n = ring->vars.size();

  // Classify the presentation.
  bool classified = false;
  for (const auto& g : gens)
    if (g.total_degree() == 0) {  // unit ideal
      C.kind = Kind::zero;
      classified = true;
      break;
    }
  if (!classified && gens.size() == 2) {
    // Graph shape: one generator c*z + (z-free), the other z-free.
    for (int pick = 0; pick < 2 && !classified; ++pick) {
      const Polynomial<K>& cand = gens[static_cast<std::size_t>(pick)];
      const Polynomial<K>& other = gens[static_cast<std::size_t>(1 - pick)];
      for (std::size_t z = 0; z < n && !classified; ++z) {
        Polynomial<K> dz = cand.derivative(static_cast<int>(z));
        if (dz.is_zero() || dz.total_degree() != 0) continue;
        if (!other.derivative(static_cast<int>(z)).is_zero()) continue;
        const K c = dz.terms().begin()->second;
        Polynomial<K> monic = cand * (K(1) / c);  // z - q, q z-free
        Polynomial<K> zpoly =
            Polynomial<K>::term(ring, [&] {
              Mono m(n, 0);
              m[z] = 1;
              return m;
            }(), K(1));
        if (!(monic - zpoly).derivative(static_cast<int>(z)).is_zero())
          continue;  // z occurs beyond the linear term
        C.kind = Kind::graph;
        C.codim = 2;
        C.zvar = static_cast<int>(z);
        C.dens = {other, std::move(monic)};
        classified = true;
      }
    }
  }
  if (!classified) {
    auto gb = groebner_basis(gens, Order::grevlex);
    for (const auto& g : gb.polys)
      if (g.total_degree() == 0) {
        C.kind = Kind::zero;
        classified = true;
        break;
      }
    if (!classified && gb.polys.size() == 1) {
      C.kind = Kind::hypersurface;
      C.codim = 1;
      C.dens = {gb.polys.front()};
      classified = true;
    }
  }
  if (!classified)
    throw domain_error(
        "unsupported-ideal",
        "the realized corpus covers hypersurfaces I = (f), the unit ideal, "
        "and graph presentations I = (f, z - q) with z absent from f and q");

  if (C.kind != Kind::zero) C.fgb = {C.dens.front()};

  // Computation layer.
  auto st = detail::build_stage(C, N, D);
  C.window = std::move(st.window);
  C.dimages = std::move(st.dimages);

  // Presentation layer.
  C.pieces.resize(n + 1);
  if (C.kind != Kind::zero) {
    const auto slice =
        detail::quotient_slice_basis<K>(ring, C.dens, N, D);
    for (std::size_t p = 0; p <= n; ++p)
      for (const auto& S : detail::wedges_of_size(n, p))
        for (const auto& m : slice) C.pieces[p].push_back({S, m});
  }
  return C;
}

// ---------------------------------------------------------------------------
// Cohomology ranks with stabilization flags.

template <class K>
DeRhamDims cohomology_dims(const TruncatedDeRham<K>& C) {
  DeRhamDims out;
  out.N = C.N;
  out.D = C.D;
  if (C.kind == TruncatedDeRham<K>::Kind::zero) return out;  // zero complex
  out.dims = detail::stage_dims(C, C.window, C.dimages, C.N, C.D);
  auto finer = detail::build_stage(C, C.N + 1, C.D + 2);
  auto fdims =
      detail::stage_dims(C, finer.window, finer.dimages, C.N + 1, C.D + 2);
  out.stabilized.resize(out.dims.size());
  for (std::size_t p = 0; p < out.dims.size(); ++p)
    out.stabilized[p] = (out.dims[p] == fdims[p]);
  return out;
}

// ---------------------------------------------------------------------------
// Formal Poincare integration in one chosen direction.
//
// Splitting w = dt ^ alpha + beta (beta free of dt), the primitive returned
// is the termwise t-integral of alpha.  For w the order-`order` truncation of
// a closed form, d(result) agrees with w in every component containing dt,
// up to t-order >= order; the dt-free discrepancy is the usual homotopy
// remainder concentrated at t = 0.

template <class K>
Form<K> formal_integrate(const Form<K>& w, int tvar, std::uint32_t order) {
  const RingPtr& ring = w.ring();
  if (tvar < 0 || tvar >= static_cast<int>(ring->vars.size()))
    throw domain_error("invalid-variable", "no such variable index");
  for (const auto& [s, c] : w.components())
    if (s.empty())
      throw domain_error("expected-positive-degree",
                         "formal integration needs form degree >= 1; found a "
                         "0-form component (" + c.str() + ")");

  // Closedness up to truncation: a tail of t-order >= `order` contributes to
  // dw only terms that either carry dt with coefficient t-order >= order-1,
  // or are dt-free with coefficient t-order >= order.  Anything below that
  // threshold witnesses a genuinely non-closed input.
  Form<K> dw = w.d();
  for (const auto& [s, c] : dw.components()) {
    const bool has_dt =
        std::find(s.begin(), s.end(), tvar) != s.end();
    const std::uint32_t tol = has_dt ? (order == 0 ? 0 : order - 1) : order;
    for (const auto& [m, cc] : c.terms()) {
      if (m[static_cast<std::size_t>(tvar)] < tol) {
        Polynomial<K> one_term(ring);
        one_term.add_term(m, cc);
        throw domain_error("not-closed",
                           "dω has the low-order term " +
                               Form<K>::component(ring, s, one_term).str());
      }
    }
  }

  Form<K> out(ring);
  for (const auto& [s, c] : w.components()) {
    auto it = std::find(s.begin(), s.end(), tvar);
    if (it == s.end()) continue;  // beta part: no dt, nothing to integrate
    const int pos = static_cast<int>(it - s.begin());
    WedgeIdx rest;
    for (int v : s)
      if (v != tvar) rest.push_back(v);
    Polynomial<K> integ(ring);
    for (const auto& [m, cc] : c.terms()) {
      Mono mm = m;
      const std::uint32_t k = mm[static_cast<std::size_t>(tvar)];
      mm[static_cast<std::size_t>(tvar)] = k + 1;
      integ.add_term(mm, cc / K(static_cast<long>(k) + 1));
    }
    // The exterior derivative appends the new index before sorting, so
    // re-creating dt inside this component costs one transposition per index
    // behind dt; the primitive carries the matching sign.
    const int behind = static_cast<int>(s.size()) - 1 - pos;
    if (behind % 2 != 0) integ = -integ;
    out.add(rest, integ);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Embedding independence at the rank level.
//
// `images` gives, for each variable of `from_ring`, its image in `to_ring`;
// the induced algebra map must carry `from_ideal` into `to_ideal` (checked by
// Groebner membership), i.e. it descends to the embedded scheme.  The check
// then compares cohomology ranks of the two truncated complexes.

template <class K>
bool compare_embeddings(RingPtr from_ring, std::vector<Polynomial<K>> from_ideal,
                        RingPtr to_ring, std::vector<Polynomial<K>> to_ideal,
                        const std::vector<Polynomial<K>>& images,
                        std::uint32_t N, std::uint32_t D) {
  if (images.size() != from_ring->vars.size())
    throw domain_error("invalid-embedding-map",
                       "need one image polynomial per ambient variable");
  for (const auto& im : images) require_same_ring(to_ring, im.ring());

  auto gb = groebner_basis(to_ideal, Order::grevlex);
  for (const auto& g : from_ideal) {
    auto phi = g.substitute(images);
    if (!ideal_member(phi, gb).member)
      throw domain_error("embedding-mismatch",
                         "the ambient map does not carry the ideal generator " +
                             g.str() + " into the target ideal");
  }

  auto d1 = cohomology_dims(build_complex<K>(from_ring, std::move(from_ideal), N, D));
  auto d2 = cohomology_dims(build_complex<K>(to_ring, std::move(to_ideal), N, D));
  const std::size_t len = std::max(d1.dims.size(), d2.dims.size());
  for (std::size_t p = 0; p < len; ++p) {
    const std::size_t a = p < d1.dims.size() ? d1.dims[p] : 0;
    const std::size_t b = p < d2.dims.size() ? d2.dims[p] : 0;
    if (a != b) return false;
  }
  return true;
}

}  // namespace residua
