#pragma once

// Univariate views of multivariate polynomials: long division by a monic
// polynomial in a chosen variable, basis expansion along powers of a monic
// divisor, extended Euclid / gcd / square-free machinery for genuinely
// univariate inputs, root searches, and resultants.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "residua/errors.hpp"
#include "residua/groebner.hpp"
#include "residua/polynomial.hpp"

namespace residua {

// f = quot * q + rem with deg_v(rem) < deg_v(q); q must have a constant unit
// leading coefficient in v.
template <class K>
std::pair<Polynomial<K>, Polynomial<K>> univar_divide(const Polynomial<K>& f,
                                                      const Polynomial<K>& q,
                                                      int v) {
  require_same_ring(f.ring(), q.ring());
  if (!q.is_monic_in(v))
    throw domain_error("non-monic",
                       "divisor is not monic in " + f.ring()->vars[v]);
  const std::uint32_t d = q.degree_in(v);
  K lead_inv = K(1) / q.lead_coeff_in(v).constant_value();
  auto qc = q.coeffs_in(v);
  auto fc = f.coeffs_in(v);
  std::vector<Polynomial<K>> quot(
      fc.size() > d ? fc.size() - d : 0, Polynomial<K>::zero(f.ring()));
  for (std::size_t j = fc.size(); j-- > d;) {
    Polynomial<K> c = fc[j] * lead_inv;
    if (c.is_zero()) continue;
    quot[j - d] = c;
    for (std::uint32_t k = 0; k <= d; ++k)
      if (!qc[k].is_zero()) fc[j - d + k] -= c * qc[k];
  }
  fc.resize(d == 0 ? 1 : d, Polynomial<K>::zero(f.ring()));
  Polynomial<K> rem = Polynomial<K>::from_coeffs(fc, v);
  Polynomial<K> qq = quot.empty() ? Polynomial<K>::zero(f.ring())
                                  : Polynomial<K>::from_coeffs(quot, v);
  return {qq, rem};
}

// Expansion of f modulo q^i in the basis { v^j q^l : j < deg q, l < i }:
//   f = sum_{j<d, l<i} c[j][l] v^j q^l  +  q^i * tail.
// The coefficients c[j][l] do not involve v.  Strictly monic q (leading
// coefficient 1) is required so that downstream residue normalizations match.
template <class K>
struct BasisExpansion {
  std::vector<std::vector<Polynomial<K>>> c;  // c[j][l], j < d, l < i
  Polynomial<K> tail;                         // quotient after i divisions
  std::uint32_t d = 0, i = 0;
};

template <class K>
BasisExpansion<K> basis_expand(const Polynomial<K>& f, const Polynomial<K>& q,
                               int v, std::uint32_t i) {
  if (i == 0) throw domain_error("bad-exponent", "expansion order must be >= 1");
  if (!q.is_monic_in(v, /*allow_unit_lead=*/false))
    throw domain_error("non-monic", "expansion divisor must be monic with leading coefficient 1 in " +
                                        f.ring()->vars[v]);
  const std::uint32_t d = q.degree_in(v);
  BasisExpansion<K> out;
  out.d = d;
  out.i = i;
  out.c.assign(d, std::vector<Polynomial<K>>(i, Polynomial<K>::zero(f.ring())));
  Polynomial<K> cur = f;
  for (std::uint32_t l = 0; l < i; ++l) {
    auto [quot, rem] = univar_divide(cur, q, v);
    auto rc = rem.coeffs_in(v);
    for (std::uint32_t j = 0; j < d && j < rc.size(); ++j) out.c[j][l] = rc[j];
    cur = quot;
  }
  out.tail = cur;
  return out;
}

// ---------------------------------------------------------------------------
// Genuinely univariate helpers (all coefficients constant in the other
// variables).  Dense coefficient vectors over K.

template <class K>
std::vector<K> univar_coeffs(const Polynomial<K>& f, int v) {
  auto cs = f.coeffs_in(v);
  std::vector<K> out;
  out.reserve(cs.size());
  for (auto& c : cs) {
    if (!c.is_constant())
      throw domain_error("not-univariate",
                         "polynomial is not univariate in " + f.ring()->vars[v]);
    out.push_back(c.constant_value());
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

template <class K>
Polynomial<K> univar_assemble(const RingPtr& ring, const std::vector<K>& cs,
                              int v) {
  Polynomial<K> r = Polynomial<K>::zero(ring);
  Mono m(ring->vars.size(), 0);
  for (std::size_t j = 0; j < cs.size(); ++j) {
    m[v] = static_cast<std::uint32_t>(j);
    r.add_term(m, cs[j]);
  }
  return r;
}

namespace detail {

template <class K>
int uv_deg(const std::vector<K>& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (!a[i].is_zero()) return static_cast<int>(i);
  return -1;
}

template <class K>
void uv_trim(std::vector<K>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class K>
std::vector<K> uv_scale(std::vector<K> a, const K& c) {
  for (auto& x : a) x = x * c;
  uv_trim(a);
  return a;
}

template <class K>
std::vector<K> uv_sub(std::vector<K> a, const std::vector<K>& b) {
  if (a.size() < b.size()) a.resize(b.size(), K(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  uv_trim(a);
  return a;
}

template <class K>
std::vector<K> uv_mul(const std::vector<K>& a, const std::vector<K>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<K> r(a.size() + b.size() - 1, K(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  uv_trim(r);
  return r;
}

// a = q*b + r over the field K.
template <class K>
std::pair<std::vector<K>, std::vector<K>> uv_divmod(std::vector<K> a,
                                                    const std::vector<K>& b) {
  int db = uv_deg(b);
  if (db < 0) throw domain_error("division-by-zero", "univariate division by zero");
  std::vector<K> q;
  int da = uv_deg(a);
  if (da >= db) q.assign(da - db + 1, K(0));
  K inv = K(1) / b[db];
  while ((da = uv_deg(a)) >= db) {
    K c = a[da] * inv;
    q[da - db] = c;
    for (int k = 0; k <= db; ++k) a[da - db + k] = a[da - db + k] - c * b[k];
  }
  uv_trim(a);
  return {q, a};
}

}  // namespace detail

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic (or empty
// when both inputs are zero).
template <class K>
struct Eea {
  std::vector<K> g, s, t;
};

template <class K>
Eea<K> eea(const std::vector<K>& a, const std::vector<K>& b) {
  using namespace detail;
  std::vector<K> r0 = a, r1 = b, s0 = {K(1)}, s1 = {}, t0 = {}, t1 = {K(1)};
  uv_trim(r0);
  uv_trim(r1);
  while (!r1.empty()) {
    auto [q, r] = uv_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = uv_sub(s0, uv_mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    auto t2 = uv_sub(t0, uv_mul(q, t1));
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Eea<K> out;
  out.g = r0;
  out.s = s0;
  out.t = t0;
  int d = detail::uv_deg(out.g);
  if (d >= 0 && !out.g[d].is_one()) {
    K inv = K(1) / out.g[d];
    out.g = detail::uv_scale(out.g, inv);
    out.s = detail::uv_scale(out.s, inv);
    out.t = detail::uv_scale(out.t, inv);
  }
  return out;
}

template <class K>
std::vector<K> univar_gcd(const std::vector<K>& a, const std::vector<K>& b) {
  return eea(a, b).g;
}

// Square-free part of a univariate polynomial over K (handles positive
// characteristic by descending through p-th powers).
template <class K>
std::vector<K> squarefree_part(std::vector<K> f, std::uint32_t char_p) {
  using namespace detail;
  uv_trim(f);
  if (uv_deg(f) <= 0) return f;
  std::vector<K> df(f.size() - 1, K(0));
  for (std::size_t j = 1; j < f.size(); ++j) {
    long mult = char_p ? static_cast<long>(j % char_p) : static_cast<long>(j);
    df[j - 1] = f[j] * K(mult);
  }
  uv_trim(df);
  if (df.empty()) {
    // characteristic p and f = g(v^p) = (coeff-preserved g)(v)^p over F_p
    if (char_p == 0)
      throw domain_error("degenerate-derivative", "nonconstant polynomial with zero derivative in characteristic 0");
    std::vector<K> g;
    for (std::size_t j = 0; j < f.size(); j += char_p) g.push_back(f[j]);
    return squarefree_part(std::move(g), char_p);
  }
  auto g = univar_gcd(f, df);
  if (uv_deg(g) <= 0) return f;
  auto [q, r] = uv_divmod(f, g);
  if (!r.empty())
    throw domain_error("gcd-inconsistency", "square-free reduction failed");
  return squarefree_part(std::move(q), char_p);
}

// Field root search.  Over Q: rational root theorem.  Over F_p: exhaustive
// scan (moduli above 2^20 are refused).
inline std::vector<Rat> field_roots(const std::vector<Rat>& f) {
  using detail::uv_deg;
  std::vector<Rat> roots;
  int d = uv_deg(f);
  if (d <= 0) return roots;
  // Clear denominators to an integer polynomial.
  mpz_class lcm = 1;
  for (auto& c : f) lcm = lcm / gcd(lcm, c.value().get_den()) * c.value().get_den();
  std::vector<mpz_class> zc(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpq_class prod = f[i].value() * lcm;
    prod.canonicalize();
    zc[i] = prod.get_num();
  }
  int low = 0;
  while (low <= d && zc[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  mpz_class a0 = abs(zc[low]), an = abs(zc[d]);
  auto divisors = [](const mpz_class& n) {
    std::vector<mpz_class> ds;
    for (mpz_class t = 1; t * t <= n; ++t)
      if (n % t == 0) {
        ds.push_back(t);
        if (t * t != n) ds.push_back(n / t);
      }
    return ds;
  };
  auto eval_zero = [&](const Rat& r) {
    Rat acc(0);
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * r + f[i];
    return acc.is_zero();
  };
  if (a0 == 0) return roots;
  if (a0 > mpz_class("1000000000000") || an > mpz_class("1000000000000"))
    throw domain_error("unsupported-splitting",
                       "rational root search refused: coefficients too large");
  for (auto& p : divisors(a0))
    for (auto& q : divisors(an)) {
      Rat cand(p, q);
      for (int s = 0; s < 2; ++s, cand = -cand)
        if (eval_zero(cand)) {
          bool seen = false;
          for (auto& r : roots) seen = seen || r == cand;
          if (!seen) roots.push_back(cand);
        }
    }
  return roots;
}

inline std::vector<Fp> field_roots(const std::vector<Fp>& f) {
  std::uint32_t p = 0;
  for (auto& c : f)
    if (c.attached()) p = c.modulus();
  if (p == 0) throw domain_error("unattached-field", "cannot enumerate roots without a modulus");
  if (p > (1u << 20))
    throw domain_error("unsupported-splitting",
                       "root scan refused for modulus > 2^20");
  std::vector<Fp> roots;
  for (std::uint32_t v = 0; v < p; ++v) {
    Fp x(v, p), acc(0, p);
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    if (acc.is_zero()) roots.push_back(x);
  }
  return roots;
}

// Multiplicity of root r in f; divides out (v - r) repeatedly.
template <class K>
std::pair<std::uint32_t, std::vector<K>> root_multiplicity(std::vector<K> f,
                                                           const K& r) {
  using namespace detail;
  std::vector<K> lin = {K(0) - r, K(1)};
  std::uint32_t m = 0;
  while (true) {
    auto [q, rem] = uv_divmod(f, lin);
    if (!rem.empty()) return {m, f};
    ++m;
    f = q;
    if (uv_deg(f) < 1) return {m, f};
  }
}

// Resultant of f and g with respect to variable v, computed as the
// determinant of the Sylvester matrix by fraction-free Bareiss elimination
// (entries are polynomials in the remaining variables).
template <class K>
Polynomial<K> resultant(const Polynomial<K>& f, const Polynomial<K>& g, int v) {
  require_same_ring(f.ring(), g.ring());
  RingPtr ring = f.ring();
  auto fc = f.coeffs_in(v);
  auto gc = g.coeffs_in(v);
  int m = static_cast<int>(fc.size()) - 1, n = static_cast<int>(gc.size()) - 1;
  if (m < 0 || n < 0) return Polynomial<K>::zero(ring);
  if (m == 0 && n == 0) return Polynomial<K>::one(ring);
  int N = m + n;
  std::vector<std::vector<Polynomial<K>>> M(
      N, std::vector<Polynomial<K>>(N, Polynomial<K>::zero(ring)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) M[r][r + (m - j)] = fc[j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) M[n + r][r + (n - j)] = gc[j];
  // Bareiss with row swaps (each swap flips the sign).
  Polynomial<K> prev = Polynomial<K>::one(ring);
  bool neg = false;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int s = -1;
      for (int r = k + 1; r < N; ++r)
        if (!M[r][k].is_zero()) {
          s = r;
          break;
        }
      if (s < 0) return Polynomial<K>::zero(ring);
      std::swap(M[k], M[s]);
      neg = !neg;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j) {
        Polynomial<K> num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        auto q = num.exact_divide(prev);
        if (!q)
          throw domain_error("bareiss-division", "fraction-free elimination failed");
        M[i][j] = *q;
      }
    prev = M[k][k];
  }
  Polynomial<K> det = M[N - 1][N - 1];
  return neg ? -det : det;
}

}  // namespace residua
