#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "residua/derham.hpp"
#include "residua/parse.hpp"

using namespace residua;

namespace {
using PQ = Polynomial<Rat>;

RingPtr plane() { return make_ring({"x", "y"}, FieldDesc::rationals()); }
RingPtr space() { return make_ring({"x", "y", "z"}, FieldDesc::rationals()); }

DeRhamDims dims_of(const RingPtr& R, const std::vector<std::string>& gens,
                   std::uint32_t N, std::uint32_t D) {
  std::vector<PQ> ideal;
  for (const auto& g : gens) ideal.push_back(parse_poly<Rat>(R, g));
  return cohomology_dims(build_complex<Rat>(R, std::move(ideal), N, D));
}

// Random polynomial in the first `nv` variables with small coefficients.
PQ random_poly(const RingPtr& R, std::mt19937& rng, std::uint32_t maxdeg) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::uint32_t> deg(0, maxdeg);
  PQ out(R);
  const std::size_t n = R->vars.size();
  for (int t = 0; t < 4; ++t) {
    Mono m(n, 0);
    std::uint32_t left = deg(rng);
    for (std::size_t v = 0; v < n && left > 0; ++v) {
      std::uniform_int_distribution<std::uint32_t> pick(0, left);
      m[v] = pick(rng);
      left -= m[v];
    }
    const int c = coef(rng);
    if (c != 0) out.add_term(m, Rat(c));
  }
  return out;
}
}  // namespace

TEST_CASE("smooth plane curve has ranks one and zero at every window") {
  auto R = plane();
  for (auto [N, D] : {std::pair<std::uint32_t, std::uint32_t>{2, 6},
                      {3, 8},
                      {4, 10},
                      {5, 12}}) {
    auto dd = dims_of(R, {"y"}, N, D);
    REQUIRE(dd.dims == std::vector<std::size_t>{1, 0});
    REQUIRE(dd.stabilized == std::vector<bool>{true, true});
  }
}

TEST_CASE("cuspidal cubic stabilizes to ranks one and zero") {
  auto R = plane();
  auto dd = dims_of(R, {"y^2 - x^3"}, 4, 10);
  REQUIRE(dd.dims == std::vector<std::size_t>{1, 0});
  REQUIRE(dd.stabilized == std::vector<bool>{true, true});
}

TEST_CASE("nodal cubic stabilizes to ranks one and one") {
  auto R = plane();
  auto dd = dims_of(R, {"y^2 - x^2*(x + 1)"}, 4, 10);
  REQUIRE(dd.dims == std::vector<std::size_t>{1, 1});
  REQUIRE(dd.stabilized == std::vector<bool>{true, true});
}

TEST_CASE("stabilized ranks never drop when the window grows") {
  auto R = plane();
  for (const char* f : {"y", "y^2 - x^3", "y^2 - x^2*(x + 1)"}) {
    auto base = dims_of(R, {f}, 2, 6);
    REQUIRE(base.stabilized == std::vector<bool>{true, true});
    for (auto [N, D] : {std::pair<std::uint32_t, std::uint32_t>{3, 8},
                        {4, 10},
                        {5, 12}}) {
      auto grown = dims_of(R, {f}, N, D);
      REQUIRE(grown.dims.size() == base.dims.size());
      for (std::size_t p = 0; p < base.dims.size(); ++p)
        REQUIRE(grown.dims[p] >= base.dims[p]);
      REQUIRE(grown.dims == base.dims);  // stable on this corpus
    }
  }
}

TEST_CASE("unit ideal gives the zero complex") {
  auto R = plane();
  auto C = build_complex<Rat>(R, {parse_poly<Rat>(R, "1")}, 3, 6);
  REQUIRE(C.kind == TruncatedDeRham<Rat>::Kind::zero);
  for (std::size_t p = 0; p <= 2; ++p) {
    REQUIRE(C.window_dim(p) == 0);
    REQUIRE(C.piece_dim(p) == 0);
  }
  auto dd = cohomology_dims(C);
  REQUIRE(dd.dims.empty());
  REQUIRE(dd.stabilized.empty());
  // A unit hiding behind nonconstant generators is still detected.
  auto C2 = build_complex<Rat>(
      R, {parse_poly<Rat>(R, "y"), parse_poly<Rat>(R, "y + 1")}, 3, 6);
  REQUIRE(C2.kind == TruncatedDeRham<Rat>::Kind::zero);
}

TEST_CASE("degree slice of the order-four cusp neighbourhood counts 45 monomials") {
  auto R = plane();
  auto C = build_complex<Rat>(R, {parse_poly<Rat>(R, "y^2 - x^3")}, 4, 8);
  // (y^2 - x^3)^4 has degree 12 > 8, so the degree-<=8 slice of the quotient
  // keeps all C(10, 2) = 45 monomials.
  REQUIRE(C.piece_dim(0) == 45);
  // One copy per wedge monomial in higher form degrees.
  REQUIRE(C.piece_dim(1) == 2 * 45);
  REQUIRE(C.piece_dim(2) == 45);
}

TEST_CASE("coordinate-axis ideal splits as a product window") {
  auto R = plane();
  const std::uint32_t N = 3, D = 5;
  auto C = build_complex<Rat>(R, {parse_poly<Rat>(R, "y")}, N, D);
  REQUIRE(C.kind == TruncatedDeRham<Rat>::Kind::hypersurface);
  // Window basis = (powers of x up to D) x (pole orders 1..N) per wedge slot:
  // polynomials in x tensor truncated principal parts in y.
  REQUIRE(C.window_dim(0) == (D + 1) * N);
  REQUIRE(C.window_dim(1) == 2 * (D + 1) * N);
  REQUIRE(C.window_dim(2) == (D + 1) * N);
  for (std::size_t p = 0; p <= 2; ++p)
    for (const auto& key : C.window[p]) {
      REQUIRE(key.num[1] == 0);  // numerators are y-free
      REQUIRE(key.num[0] <= D);
      REQUIRE(key.pole.size() == 1);
      REQUIRE(key.pole[0] >= 1);
      REQUIRE(key.pole[0] <= static_cast<std::int32_t>(N));
    }
  // The degree-truncated quotient slice is spanned by x^a y^b with b < N.
  std::size_t expect = 0;
  for (std::uint32_t b = 0; b < N && b <= D; ++b) expect += D - b + 1;
  REQUIRE(C.piece_dim(0) == expect);
}

TEST_CASE("window numerators are reduced and differentials compose to zero") {
  auto R = plane();
  auto R3 = space();
  std::vector<TruncatedDeRham<Rat>> cases;
  cases.push_back(
      build_complex<Rat>(R, {parse_poly<Rat>(R, "y^2 - x^3")}, 3, 8));
  cases.push_back(
      build_complex<Rat>(R, {parse_poly<Rat>(R, "y^2 - x^2*(x + 1)")}, 2, 6));
  cases.push_back(build_complex<Rat>(
      R3, {parse_poly<Rat>(R3, "y^2 - x^3"), parse_poly<Rat>(R3, "z - x*y")},
      2, 6));
  for (const auto& C : cases) {
    const Mono ltf = C.dens.front().lead(Order::grevlex).first;
    std::size_t checked = 0;
    for (std::size_t p = 0; p < C.window.size(); ++p) {
      REQUIRE(C.window[p].size() == C.dimages[p].size());
      for (const auto& key : C.window[p])
        REQUIRE_FALSE(mono_divides(ltf, key.num));
      for (const auto& dw : C.dimages[p]) {
        REQUIRE(tube_d(C, dw).is_zero());
        ++checked;
      }
    }
    REQUIRE(checked > 0);
  }
}

TEST_CASE("graph presentations are classified and match the plane ranks") {
  auto R3 = space();
  auto C = build_complex<Rat>(
      R3, {parse_poly<Rat>(R3, "y^2 - x^3"), parse_poly<Rat>(R3, "z - x*y")},
      3, 8);
  REQUIRE(C.kind == TruncatedDeRham<Rat>::Kind::graph);
  REQUIRE(C.codim == 2);
  REQUIRE(C.zvar == 2);
  auto dd = cohomology_dims(C);
  REQUIRE(dd.dims == std::vector<std::size_t>{1, 0});
  REQUIRE(dd.stabilized == std::vector<bool>{true, true});
}

TEST_CASE("embedding comparison agrees across ambients for the cusp") {
  auto R2 = plane();
  auto R3 = space();
  std::vector<PQ> images = {parse_poly<Rat>(R2, "x"), parse_poly<Rat>(R2, "y"),
                            parse_poly<Rat>(R2, "x*y")};
  REQUIRE(compare_embeddings<Rat>(
      R3,
      {parse_poly<Rat>(R3, "y^2 - x^3"), parse_poly<Rat>(R3, "z - x*y")},
      R2, {parse_poly<Rat>(R2, "y^2 - x^3")}, images, 2, 6));
}

TEST_CASE("embedding comparison agrees across ambients for the node") {
  auto R2 = plane();
  auto R3 = space();
  std::vector<PQ> images = {parse_poly<Rat>(R2, "x"), parse_poly<Rat>(R2, "y"),
                            parse_poly<Rat>(R2, "x*y")};
  REQUIRE(compare_embeddings<Rat>(
      R3,
      {parse_poly<Rat>(R3, "y^2 - x^2*(x + 1)"),
       parse_poly<Rat>(R3, "z - x*y")},
      R2, {parse_poly<Rat>(R2, "y^2 - x^2*(x + 1)")}, images, 2, 6));
}

TEST_CASE("identical embeddings compare equal") {
  auto R = plane();
  std::vector<PQ> identity = {parse_poly<Rat>(R, "x"), parse_poly<Rat>(R, "y")};
  REQUIRE(compare_embeddings<Rat>(R, {parse_poly<Rat>(R, "y^2 - x^3")}, R,
                                  {parse_poly<Rat>(R, "y^2 - x^3")}, identity,
                                  2, 6));
}

TEST_CASE("a map that misses the target ideal is rejected") {
  auto R2 = plane();
  auto R3 = space();
  // z mapped to x does not send z - x*y into (y^2 - x^3).
  std::vector<PQ> bad = {parse_poly<Rat>(R2, "x"), parse_poly<Rat>(R2, "y"),
                         parse_poly<Rat>(R2, "x")};
  REQUIRE_THROWS_MATCHES(
      compare_embeddings<Rat>(
          R3,
          {parse_poly<Rat>(R3, "y^2 - x^3"), parse_poly<Rat>(R3, "z - x*y")},
          R2, {parse_poly<Rat>(R2, "y^2 - x^3")}, bad, 2, 6),
      domain_error,
      Catch::Matchers::Predicate<domain_error>(
          [](const domain_error& e) { return e.code() == "embedding-mismatch"; }));
}

TEST_CASE("prime-field coefficients are rejected") {
  auto Rp = make_ring({"x", "y"}, FieldDesc::prime(7));
  REQUIRE_THROWS_MATCHES(
      build_complex<Fp>(Rp, {parse_poly<Fp>(Rp, "y^2 - x^3")}, 2, 4),
      domain_error,
      Catch::Matchers::Predicate<domain_error>([](const domain_error& e) {
        return e.code() == "unsupported-characteristic";
      }));
}

TEST_CASE("degenerate truncations and unsupported ideals are rejected") {
  auto R = plane();
  REQUIRE_THROWS_MATCHES(
      build_complex<Rat>(R, {parse_poly<Rat>(R, "y")}, 0, 4), domain_error,
      Catch::Matchers::Predicate<domain_error>([](const domain_error& e) {
        return e.code() == "invalid-truncation";
      }));
  REQUIRE_THROWS_MATCHES(
      build_complex<Rat>(R, {}, 2, 4), domain_error,
      Catch::Matchers::Predicate<domain_error>([](const domain_error& e) {
        return e.code() == "unsupported-ideal";
      }));
  REQUIRE_THROWS_MATCHES(
      build_complex<Rat>(
          R, {parse_poly<Rat>(R, "x^2"), parse_poly<Rat>(R, "y^2")}, 2, 4),
      domain_error,
      Catch::Matchers::Predicate<domain_error>([](const domain_error& e) {
        return e.code() == "unsupported-ideal";
      }));
}

TEST_CASE("one-direction integration of t dt") {
  auto R = make_ring({"t"}, FieldDesc::rationals());
  Form<Rat> w = Form<Rat>::component(R, {0}, parse_poly<Rat>(R, "t"));
  Form<Rat> p = formal_integrate(w, 0, 8);
  Form<Rat> expect(R);
  expect.add({}, parse_poly<Rat>(R, "t^2") * Rat(1, 2));
  REQUIRE(p == expect);
}

TEST_CASE("one-direction integration of a closed mixed form") {
  auto R = make_ring({"t", "y"}, FieldDesc::rationals());
  // y dt + t dy is d(t y); its t-primitive is t y.
  Form<Rat> w = Form<Rat>::component(R, {0}, parse_poly<Rat>(R, "y"));
  w.add({1}, parse_poly<Rat>(R, "t"));
  Form<Rat> p = formal_integrate(w, 0, 8);
  Form<Rat> expect(R);
  expect.add({}, parse_poly<Rat>(R, "t*y"));
  REQUIRE(p == expect);
}

TEST_CASE("termwise integration of a truncated series coefficient") {
  auto R = make_ring({"t"}, FieldDesc::rationals());
  // (3 + 2 t + 5 t^3) dt, truncated at t-order 4.
  Form<Rat> w =
      Form<Rat>::component(R, {0}, parse_poly<Rat>(R, "3 + 2*t + 5*t^3"));
  Form<Rat> p = formal_integrate(w, 0, 4);
  Form<Rat> expect(R);
  expect.add({}, parse_poly<Rat>(R, "3*t + t^2") +
                     parse_poly<Rat>(R, "t^4") * Rat(5, 4));
  REQUIRE(p == expect);
}

TEST_CASE("non-closed inputs are rejected with a witness term") {
  auto R = make_ring({"t", "y"}, FieldDesc::rationals());
  Form<Rat> w = Form<Rat>::component(R, {0}, parse_poly<Rat>(R, "y"));
  try {
    formal_integrate(w, 0, 8);
    FAIL("expected not-closed");
  } catch (const domain_error& e) {
    REQUIRE(e.code() == "not-closed");
    REQUIRE(std::string(e.what()).find("d") != std::string::npos);
  }
}

TEST_CASE("round trip on manufactured closed forms") {
  auto R = make_ring({"t", "x", "y"}, FieldDesc::rationals());
  std::mt19937 rng(2026);
  PQ tpoly = parse_poly<Rat>(R, "t");
  for (int trial = 0; trial < 25; ++trial) {
    // eta = t * (random 1-form): vanishes at t = 0, so d(eta) integrates back
    // exactly.  A t-free exact pullback may ride along; integration drops it.
    Form<Rat> eta(R);
    for (int v = 0; v < 3; ++v)
      eta.add({v}, tpoly * random_poly(R, rng, 3));
    Form<Rat> omega = eta.d();
    // pullback part: d of a t-free 1-form in (x, y) only contributes dt-free
    // closed terms.
    Form<Rat> beta(R);
    for (int v = 1; v < 3; ++v) {
      PQ c = random_poly(R, rng, 3);
      PQ tfree(R);
      for (const auto& [m, cc] : c.terms())
        if (m[0] == 0) tfree.add_term(m, cc);
      beta.add({v}, tfree);
    }
    Form<Rat> full = omega;
    const Form<Rat> pullback = beta.d();
    for (const auto& [s, c] : pullback.components()) full.add(s, c);
    Form<Rat> prim = formal_integrate(full, 0, 64);
    REQUIRE(prim.d() == omega);
  }
}
