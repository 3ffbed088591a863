#pragma once

// Groebner bases via Buchberger's algorithm with the sugar selection
// strategy and the two classical pair-skipping criteria (coprime leading
// terms; chain criterion).  Cofactors over the *input* generators are
// tracked through every reduction, so membership answers come with
// re-verifiable certificates and no second pass is needed.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "residua/errors.hpp"
#include "residua/polynomial.hpp"

namespace residua {

template <class K>
struct DivisionResult {
  std::vector<Polynomial<K>> cofactors;  // f = sum cofactors[i]*G[i] + remainder
  Polynomial<K> remainder;
};

// Multivariate division of f by the list G under order o.  Deterministic:
// always reduces the current lead term by the first eligible divisor.
template <class K>
DivisionResult<K> divide(const Polynomial<K>& f,
                         const std::vector<Polynomial<K>>& G, Order o) {
  DivisionResult<K> out;
  out.cofactors.assign(G.size(), Polynomial<K>::zero(f.ring()));
  out.remainder = Polynomial<K>::zero(f.ring());
  std::vector<std::pair<Mono, K>> leads;
  leads.reserve(G.size());
  for (auto& g : G) {
    require_same_ring(f.ring(), g.ring());
    if (g.is_zero())
      throw domain_error("zero-generator", "division by a zero generator");
    leads.push_back(g.lead(o));
  }
  Polynomial<K> p = f;
  while (!p.is_zero()) {
    auto [pm, pc] = p.lead(o);
    bool reduced = false;
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (!mono_divides(leads[i].first, pm)) continue;
      Mono qm = mono_quot(pm, leads[i].first);
      K qc = pc / leads[i].second;
      Polynomial<K> t = Polynomial<K>::term(f.ring(), qm, qc);
      out.cofactors[i] += t;
      p -= t * G[i];
      reduced = true;
      break;
    }
    if (!reduced) {
      Polynomial<K> t = Polynomial<K>::term(f.ring(), pm, pc);
      out.remainder += t;
      p -= t;
    }
  }
  return out;
}

template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f,
                          const std::vector<Polynomial<K>>& G, Order o) {
  return divide(f, G, o).remainder;
}

template <class K>
struct GroebnerBasis {
  std::vector<Polynomial<K>> polys;  // reduced basis, monic, sorted by lead
  // cofactors[i] expresses polys[i] over the input generators.
  std::vector<std::vector<Polynomial<K>>> cofactors;
  std::vector<Polynomial<K>> input;
  Order order = Order::grevlex;
};

// Buchberger with sugar.  Tracks representations over the input generators.
template <class K>
GroebnerBasis<K> groebner_basis(const std::vector<Polynomial<K>>& gens,
                                Order o) {
  if (gens.empty())
    throw domain_error("empty-ideal", "need at least one generator");
  RingPtr ring = gens.front().ring();
  for (auto& g : gens) require_same_ring(ring, g.ring());

  struct Elt {
    Polynomial<K> p;
    std::vector<Polynomial<K>> rep;  // over input gens
    Mono lead;
    std::int64_t sugar;
  };
  std::vector<Elt> B;
  auto unit_rep = [&](std::size_t i) {
    std::vector<Polynomial<K>> r(gens.size(), Polynomial<K>::zero(ring));
    r[i] = Polynomial<K>::one(ring);
    return r;
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    B.push_back({gens[i], unit_rep(i), gens[i].lead(o).first,
                 gens[i].total_degree()});
  }
  if (B.empty())
    throw domain_error("zero-ideal", "all generators are zero");

  // Pair queue keyed by (sugar, lcm degree, i, j); done-set for the chain
  // criterion.
  using Key = std::tuple<std::int64_t, std::uint64_t, std::size_t, std::size_t>;
  std::set<Key> queue;
  std::set<std::pair<std::size_t, std::size_t>> done;
  auto pair_sugar = [&](std::size_t i, std::size_t j, const Mono& lcm) {
    std::int64_t si =
        B[i].sugar + static_cast<std::int64_t>(mono_degree(mono_quot(lcm, B[i].lead)));
    std::int64_t sj =
        B[j].sugar + static_cast<std::int64_t>(mono_degree(mono_quot(lcm, B[j].lead)));
    return std::max(si, sj);
  };
  auto push_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      Mono lcm = mono_lcm(B[i].lead, B[j].lead);
      queue.insert({pair_sugar(i, j, lcm), mono_degree(lcm), i, j});
    }
  };
  for (std::size_t j = 1; j < B.size(); ++j) push_pairs_for(j);

  auto divides_lcm = [&](const Mono& a, const Mono& lcm) {
    return mono_divides(a, lcm);
  };

  while (!queue.empty()) {
    auto [sug, lcmdeg, i, j] = *queue.begin();
    queue.erase(queue.begin());
    done.insert({i, j});
    Mono lcm = mono_lcm(B[i].lead, B[j].lead);

    // Criterion 1: coprime leading monomials.
    if (mono_degree(lcm) == mono_degree(B[i].lead) + mono_degree(B[j].lead))
      continue;
    // Criterion 2 (chain): some k with lead(k) | lcm and both (i,k), (j,k)
    // already handled.
    bool skip = false;
    for (std::size_t k = 0; k < B.size() && !skip; ++k) {
      if (k == i || k == j) continue;
      if (!divides_lcm(B[k].lead, lcm)) continue;
      auto mk = [&](std::size_t a, std::size_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (done.count(mk(i, k)) && done.count(mk(j, k))) skip = true;
    }
    if (skip) continue;

    // S-polynomial, with representation tracking.
    Mono mi = mono_quot(lcm, B[i].lead), mj = mono_quot(lcm, B[j].lead);
    Polynomial<K> ti = Polynomial<K>::term(ring, mi, K(1) / B[i].p.lead(o).second);
    Polynomial<K> tj = Polynomial<K>::term(ring, mj, K(1) / B[j].p.lead(o).second);
    Polynomial<K> s = ti * B[i].p - tj * B[j].p;
    if (s.is_zero()) continue;
    check_degree_cap(s.total_degree(), "groebner");

    std::vector<Polynomial<K>> basis_polys;
    basis_polys.reserve(B.size());
    for (auto& e : B) basis_polys.push_back(e.p);
    auto dv = divide(s, basis_polys, o);
    if (dv.remainder.is_zero()) continue;

    std::vector<Polynomial<K>> rep(gens.size(), Polynomial<K>::zero(ring));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      rep[g] = ti * B[i].rep[g] - tj * B[j].rep[g];
      for (std::size_t k = 0; k < B.size(); ++k)
        if (!dv.cofactors[k].is_zero()) rep[g] -= dv.cofactors[k] * B[k].rep[g];
    }
    std::int64_t new_sugar = std::max<std::int64_t>(sug, dv.remainder.total_degree());
    B.push_back({dv.remainder, std::move(rep), dv.remainder.lead(o).first,
                 new_sugar});
    check_degree_cap(static_cast<std::int64_t>(mono_degree(B.back().lead)),
                     "groebner");
    push_pairs_for(B.size() - 1);
  }

  // Minimalize: drop elements whose lead is divisible by another's.
  std::vector<bool> keep(B.size(), true);
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < B.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      if (mono_divides(B[j].lead, B[i].lead) &&
          (B[i].lead != B[j].lead || j < i))
        keep[i] = false;
    }

  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (keep[i]) sel.push_back(i);
  // Deterministic output order: by lead monomial ascending in o.
  std::sort(sel.begin(), sel.end(), [&](std::size_t a, std::size_t b) {
    return mono_cmp(B[a].lead, B[b].lead, o) < 0;
  });

  // Tail-reduce each kept element against the others and normalize monic.
  GroebnerBasis<K> out;
  out.input = gens;
  out.order = o;
  for (std::size_t round = 0; round < sel.size(); ++round) {
    std::size_t idx = sel[round];
    std::vector<Polynomial<K>> others;
    std::vector<std::size_t> omap;
    for (std::size_t k : sel)
      if (k != idx) {
        others.push_back(B[k].p);
        omap.push_back(k);
      }
    Polynomial<K> r = B[idx].p;
    std::vector<Polynomial<K>> rep = B[idx].rep;
    if (!others.empty()) {
      auto dv = divide(B[idx].p, others, o);
      r = dv.remainder;
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t k = 0; k < others.size(); ++k)
          if (!dv.cofactors[k].is_zero())
            rep[g] -= dv.cofactors[k] * B[omap[k]].rep[g];
    }
    K lc = r.lead(o).second;
    K inv = K(1) / lc;
    r = r * inv;
    for (auto& c : rep) c = c * inv;
    B[idx].p = r;
    B[idx].rep = rep;
    B[idx].lead = r.lead(o).first;
  }
  for (std::size_t k : sel) {
    out.polys.push_back(B[k].p);
    out.cofactors.push_back(B[k].rep);
  }
  return out;
}

// Ideal membership with certificate: on success, f = sum cof[i]*gens[i].
template <class K>
struct MembershipResult {
  bool member = false;
  std::vector<Polynomial<K>> cofactors;  // over the original generators
  Polynomial<K> remainder;               // normal form (zero iff member)
};

template <class K>
MembershipResult<K> ideal_member(const Polynomial<K>& f,
                                 const GroebnerBasis<K>& gb) {
  auto dv = divide(f, gb.polys, gb.order);
  MembershipResult<K> out;
  out.member = dv.remainder.is_zero();
  out.remainder = dv.remainder;
  out.cofactors.assign(gb.input.size(), Polynomial<K>::zero(f.ring()));
  if (out.member) {
    for (std::size_t k = 0; k < gb.polys.size(); ++k)
      if (!dv.cofactors[k].is_zero())
        for (std::size_t g = 0; g < gb.input.size(); ++g)
          out.cofactors[g] += dv.cofactors[k] * gb.cofactors[k][g];
  }
  return out;
}

template <class K>
MembershipResult<K> ideal_member(const Polynomial<K>& f,
                                 const std::vector<Polynomial<K>>& gens,
                                 Order o = Order::grevlex) {
  return ideal_member(f, groebner_basis(gens, o));
}

// Saturation membership: is f in (gens) : w^inf?  Answered by testing
// w^N * f for increasing N (certificate: the successful power and its
// cofactors).  Bounded by the degree cap.
template <class K>
struct SaturationResult {
  bool member = false;
  std::uint32_t power = 0;
  std::vector<Polynomial<K>> cofactors;  // for w^power * f
};

template <class K>
SaturationResult<K> saturation_member(const Polynomial<K>& f,
                                      const Polynomial<K>& w,
                                      const std::vector<Polynomial<K>>& gens,
                                      Order o = Order::grevlex) {
  auto gb = groebner_basis(gens, o);
  Polynomial<K> g = f;
  for (std::uint32_t n = 0;; ++n) {
    auto m = ideal_member(g, gb);
    if (m.member) return {true, n, std::move(m.cofactors)};
    if (n >= max_degree_cap()) return {false, 0, {}};
    g = g * w;
  }
}

}  // namespace residua
