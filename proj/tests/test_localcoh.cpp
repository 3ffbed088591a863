#include <catch2/catch_amalgamated.hpp>

#include "residua/localcoh.hpp"
#include "residua/parse.hpp"

using namespace residua;

namespace {
using PQ = Polynomial<Rat>;

GenFraction<Rat> frac(const RingPtr& R, const std::string& num,
                      const std::vector<std::string>& gens,
                      std::vector<std::uint32_t> exps) {
  std::vector<PQ> gs;
  for (auto& g : gens) gs.push_back(parse_poly<Rat>(R, g));
  return GenFraction<Rat>(parse_form<Rat>(R, num),
                          DenominatorSystem<Rat>::make(gs), std::move(exps));
}
}  // namespace

TEST_CASE("regularity certification") {
  auto R = parse_ring("Q[x,y,z]");
  auto P = [&](const std::string& s) { return parse_poly<Rat>(R, s); };
  auto cert = [&](std::vector<std::string> ss) {
    std::vector<PQ> gs;
    for (auto& s : ss) gs.push_back(parse_poly<Rat>(R, s));
    return certify_regular_sequence(gs);
  };
  // coordinates and monic towers
  REQUIRE(cert({"x", "y"}));
  REQUIRE(cert({"y^2 - x^3", "x"}));          // reorder to (x, y^2-x^3)
  REQUIRE(cert({"x - 1", "y^2 - x^3 - x"}));  // shifted point under a curve
  REQUIRE(cert({"x*y", "z"}));                // disjoint monomials
  REQUIRE(cert({"x^2*y"}));
  // not certifiable
  REQUIRE(!cert({"x*y", "y*z"}));      // shared support, not a tower
  REQUIRE(!cert({"x - 1", "x + 2"}));  // two gens, one variable
  REQUIRE(!cert({"x", "x"}));
  REQUIRE(!cert({"x", "0"}));
  REQUIRE(!cert({"x", "3"}));
  // make() records the verdict
  REQUIRE(DenominatorSystem<Rat>::make({P("x"), P("y")}).regularity ==
          Regularity::assumed_regular_sequence);
  REQUIRE(DenominatorSystem<Rat>::make({P("x*y"), P("y*z")}).regularity ==
          Regularity::unchecked);
  REQUIRE(DenominatorSystem<Rat>::make({P("x*y"), P("y*z")}, true).regularity ==
          Regularity::assumed_regular_sequence);
}

TEST_CASE("normalization walks exponents down with exact divisions") {
  auto R = parse_ring("Q[x,y]");
  auto f = frac(R, "x*y", {"x", "y"}, {2, 2});
  auto n = gf_normalize(f);
  REQUIRE(n.exps() == std::vector<std::uint32_t>{1, 1});
  REQUIRE(n.num() == parse_form<Rat>(R, "1"));
  // partial reduction only
  auto g = gf_normalize(frac(R, "x", {"x", "y"}, {2, 2}));
  REQUIRE(g.exps() == std::vector<std::uint32_t>{1, 2});
  // already minimal: unchanged
  auto h = gf_normalize(frac(R, "x + y", {"x", "y"}, {1, 1}));
  REQUIRE(h.exps() == std::vector<std::uint32_t>{1, 1});
  REQUIRE(h.num() == parse_form<Rat>(R, "x + y"));
  // zero numerator resets
  auto z = gf_normalize(frac(R, "0", {"x", "y"}, {3, 2}));
  REQUIRE(z.num().is_zero());
  REQUIRE(z.exps() == std::vector<std::uint32_t>{1, 1});
  // idempotent
  REQUIRE(gf_normalize(n).str() == n.str());
  // constant localizations fold into the numerator
  GenFraction<Rat> l(parse_form<Rat>(R, "x"),
                     DenominatorSystem<Rat>::make({parse_poly<Rat>(R, "x")}),
                     {1}, Localization<Rat>{parse_poly<Rat>(R, "2"), 2});
  auto lf = gf_normalize(l);
  REQUIRE(!lf.loc());
  REQUIRE(lf.num() == parse_form<Rat>(R, "1/4 x"));
}

TEST_CASE("addition lifts exponents and merges localizations") {
  auto R = parse_ring("Q[x,y]");
  auto a = frac(R, "1", {"x", "y"}, {1, 1});
  auto b = frac(R, "1", {"x", "y"}, {2, 1});
  auto s = gf_add(a, b);
  // [1/(x,y)] + [1/(x^2,y)] = [(x+1)/(x^2,y)]
  REQUIRE(s.exps() == std::vector<std::uint32_t>{2, 1});
  REQUIRE(s.num() == parse_form<Rat>(R, "x + 1"));
  // doubling
  auto d = gf_add(a, a);
  REQUIRE(d.num() == parse_form<Rat>(R, "2"));
  // mismatched generators refused
  auto c = frac(R, "1", {"x^2", "y"}, {1, 1});
  REQUIRE_THROWS_AS(gf_add(a, c), domain_error);
  // cancel to zero
  REQUIRE(gf_add(a, gf_negate(a)).num().is_zero());

  SECTION("localization merge") {
    GenFraction<Rat> f(
        parse_form<Rat>(R, "1"),
        DenominatorSystem<Rat>::make(
            {parse_poly<Rat>(R, "x"), parse_poly<Rat>(R, "y")}),
        {1, 1}, Localization<Rat>{parse_poly<Rat>(R, "x + 1"), 1});
    auto m = gf_add(f, a);  // x+1 appears on a's numerator
    REQUIRE(m.loc());
    REQUIRE(m.loc()->b == parse_poly<Rat>(R, "x + 1"));
    REQUIRE(m.num() == parse_form<Rat>(R, "x + 2"));
    // identical localizations stay put
    auto m2 = gf_add(f, f);
    REQUIRE(m2.loc()->b == parse_poly<Rat>(R, "x + 1"));
    REQUIRE(m2.loc()->k == 1);
    REQUIRE(m2.num() == parse_form<Rat>(R, "2"));
  }
}

TEST_CASE("zero test with membership witnesses") {
  auto R = parse_ring("Q[x,y]");
  REQUIRE(gf_is_zero(frac(R, "x", {"x", "y"}, {1, 1})));
  REQUIRE(gf_is_zero(frac(R, "x^2 + x*y", {"x", "y"}, {1, 1})));
  REQUIRE(!gf_is_zero(frac(R, "1", {"x", "y"}, {1, 1})));
  REQUIRE(!gf_is_zero(frac(R, "x", {"x^2", "y"}, {1, 1})));
  REQUIRE(gf_is_zero(frac(R, "x", {"x^2", "y"}, {1, 2})) ==
          false);  // x not in (x^2, y^2)
  REQUIRE(gf_is_zero(frac(R, "x^2*y + x^3", {"x^2", "y"}, {1, 1})));
  // the witness reconstructs the numerator component
  auto w = gf_is_zero_witnessed(frac(R, "x^3 + y^2*x", {"x", "y"}, {2, 2}));
  REQUIRE(w.zero);
  REQUIRE(w.components.size() == 1);
  PQ acc = PQ::zero(R);
  for (std::size_t j = 0; j < w.powers.size(); ++j)
    acc += w.components[0].cofactors[j] * w.powers[j];
  REQUIRE(acc == w.components[0].value);
  // normalization pulled one x out of the numerator first
  REQUIRE(w.powers[0] == parse_poly<Rat>(R, "x"));
  REQUIRE(w.components[0].value == parse_poly<Rat>(R, "x^2 + y^2"));

  SECTION("unchecked regularity refuses; unit ideals answer anyway") {
    auto bad = frac(R, "1", {"x*y", "y*x + x"}, {1, 1});
    REQUIRE(bad.denom().regularity == Regularity::unchecked);
    REQUIRE_THROWS_AS(gf_is_zero(bad), domain_error);
    // comaximal same-variable pair: 1 in (x-1, x+2), class is zero even
    // though the pair is not a regular sequence on all of Q[x,y]
    auto comax = frac(R, "y^5 + 1", {"x - 1", "x + 2"}, {2, 3});
    REQUIRE(comax.denom().regularity == Regularity::unchecked);
    auto res = gf_is_zero_witnessed(comax);
    REQUIRE(res.zero);
    REQUIRE(res.unit_ideal);
  }

  SECTION("localization saturates the membership test") {
    // [1/(x,y)] * (1+x)^{-1} is nonzero: (1+x)^N never lands in (x,y)
    GenFraction<Rat> f(
        parse_form<Rat>(R, "1"),
        DenominatorSystem<Rat>::make(
            {parse_poly<Rat>(R, "x"), parse_poly<Rat>(R, "y")}),
        {1, 1}, Localization<Rat>{parse_poly<Rat>(R, "1 + x"), 1});
    REQUIRE(!gf_is_zero(f));
    // [1/(x,y)] * (x+y)^{-1} dies: x+y is inside the support ideal
    GenFraction<Rat> g(
        parse_form<Rat>(R, "1"),
        DenominatorSystem<Rat>::make(
            {parse_poly<Rat>(R, "x"), parse_poly<Rat>(R, "y")}),
        {1, 1}, Localization<Rat>{parse_poly<Rat>(R, "x + y"), 1});
    auto res = gf_is_zero_witnessed(g);
    REQUIRE(res.zero);
    REQUIRE(res.components[0].sat_power == 1);
  }
}

TEST_CASE("equality through rescaling") {
  auto R = parse_ring("Q[x,y]");
  REQUIRE(gf_equal(frac(R, "x*y", {"x", "y"}, {2, 2}),
                   frac(R, "1", {"x", "y"}, {1, 1})));
  REQUIRE(gf_equal(frac(R, "x + y", {"x", "y"}, {2, 2}),
                   frac(R, "x + y", {"x", "y"}, {2, 2})));
  REQUIRE(!gf_equal(frac(R, "1", {"x", "y"}, {1, 1}),
                    frac(R, "2", {"x", "y"}, {1, 1})));
  // [x^2*y + 1 / (x^2, y)] = [1/(x^2, y)]
  REQUIRE(gf_equal(frac(R, "x^2*y + 1", {"x", "y"}, {2, 1}),
                   frac(R, "1", {"x", "y"}, {2, 1})));
}

TEST_CASE("prime-field numerators attach") {
  auto R = parse_ring("F2[x,y]");
  // the class [2/(x,y)] over F_2 is zero because 2 = 0 there
  GenFraction<Fp> f(Form<Fp>::scalar(R, Fp(2)),
                    DenominatorSystem<Fp>::make({parse_poly<Fp>(R, "x"),
                                                 parse_poly<Fp>(R, "y")}),
                    {1, 1});
  REQUIRE(f.num().is_zero());
  REQUIRE(gf_is_zero(f));
  REQUIRE(!gf_is_zero(GenFraction<Fp>(
      Form<Fp>::scalar(R, Fp(3)),
      DenominatorSystem<Fp>::make(
          {parse_poly<Fp>(R, "x"), parse_poly<Fp>(R, "y")}),
      {1, 1})));
}

TEST_CASE("reordering blocks flips the sign") {
  auto R = parse_ring("Q[x,y]");
  auto f = frac(R, "1", {"x", "y"}, {1, 2});
  auto g = gf_reorder(f, {1, 0});
  REQUIRE(g.denom().gens[0] == parse_poly<Rat>(R, "y"));
  REQUIRE(g.exps() == std::vector<std::uint32_t>{2, 1});
  REQUIRE(g.num() == parse_form<Rat>(R, "-1"));
  // double swap restores
  auto h = gf_reorder(g, {1, 0});
  REQUIRE(h.num() == f.num());
  REQUIRE(h.exps() == f.exps());
  // identity permutation
  auto id = gf_reorder(f, {0, 1});
  REQUIRE(id.num() == f.num());
  REQUIRE_THROWS_AS(gf_reorder(f, {0, 0}), domain_error);
  // 3-cycles are even
  auto R3 = parse_ring("Q[x,y,z]");
  auto f3 = frac(R3, "1", {"x", "y", "z"}, {1, 1, 1});
  REQUIRE(gf_reorder(f3, {1, 2, 0}).num() == parse_form<Rat>(R3, "1"));
  REQUIRE(gf_reorder(f3, {1, 0, 2}).num() == parse_form<Rat>(R3, "-1"));
}

TEST_CASE("one-variable vignette: powers of t are independent") {
  auto R = parse_ring("Q[t]");
  auto P = [&](const std::string& s) { return parse_poly<Rat>(R, s); };
  auto cls = [&](const std::string& num, std::uint32_t i) {
    return GenFraction<Rat>(parse_form<Rat>(R, num),
                            DenominatorSystem<Rat>::make({P("t")}), {i});
  };
  // t * [1/t] = 0
  REQUIRE(gf_is_zero(gf_scale(P("t"), cls("1", 1))));
  // t * [1/t^{i+1}] = [1/t^i]
  for (std::uint32_t i = 1; i <= 4; ++i)
    REQUIRE(gf_equal(gf_scale(P("t"), cls("1", i + 1)), cls("1", i)));
  // [1/t^i] are pairwise distinct
  for (std::uint32_t i = 1; i <= 5; ++i)
    for (std::uint32_t j = i + 1; j <= 5; ++j)
      REQUIRE(!gf_equal(cls("1", i), cls("1", j)));
}
