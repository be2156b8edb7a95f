#include <gtest/gtest.h>

#include <numeric>

#include "h10ff/templates.hpp"
#include "h10ff/witness.hpp"

using namespace h10ff;

namespace {

MultiPoly V(const Field* f, const std::string& n) { return MultiPoly::var(f, n); }

/// Finds a top-level leaf by label.
const Equation* find_label(const EquationSystem& sys, const std::string& label) {
  for (auto& e : sys.equations)
    if (e.label() == label) return &e;
  return nullptr;
}

int count_labels(const Equation& e, const std::string& label) {
  int n = e.label() == label ? 1 : 0;
  for (auto& c : e.children()) n += count_labels(c, label);
  return n;
}

}  // namespace

TEST(Constants, Examples) {
  ConstantsRecord c = compute_constants(3, 1);
  EXPECT_EQ(c.a, 1);
  EXPECT_EQ(c.C1, Rational(6));
  EXPECT_EQ(c.C2, Rational(7, 2));
  EXPECT_EQ(c.C3, Rational(64));
  EXPECT_EQ(c.C4, Rational(0));
  EXPECT_EQ(c.C5, Rational(8));
  c = compute_constants(2, 1);
  EXPECT_EQ(c.a, 2);
  EXPECT_EQ(c.C1, Rational(8));
  EXPECT_EQ(c.C2, Rational(3));
  EXPECT_EQ(c.C3, Rational(97));
  EXPECT_EQ(c.C4, Rational(0));
  EXPECT_EQ(c.C5, Rational(8));
  EXPECT_EQ(compute_constants(5, 1).a, 1);
  EXPECT_EQ(constants_to_json(compute_constants(3, 1))["C2"], "7/2");
  EXPECT_THROW(compute_constants(4, 1), std::invalid_argument);
}

TEST(Constants, FormulasForSmallPrimes) {
  for (int p : {2, 3, 5, 7, 11, 13})
    for (long long C : {1, 2, 5}) {
      ConstantsRecord r = compute_constants(p, C);
      long long pa = p == 2 ? 4 : p;
      // Numerator/denominator pairs recomputed by hand with g = 0, k = 1.
      long long c1 = -2 + (pa + 1) * (C + 1);
      long long c2n = -1 + (pa + 1) * (C + 1), c2d = pa - 1;
      long long g = std::gcd(c2n, c2d);
      EXPECT_EQ(r.C1, Rational(c1));
      EXPECT_EQ(r.C2.numerator(), c2n / g);
      EXPECT_EQ(r.C2.denominator(), c2d / g);
      EXPECT_EQ(r.C3, Rational(C * c2d + pa * c1 * c2n, c2d));
      EXPECT_EQ(r.C4, Rational(0));
      EXPECT_EQ(r.C5, Rational(8));
    }
}

TEST(ConstantSet, SmallFieldAsksForLargerK) {
  try {
    build_constant_set(Field::get(2, 2), 2, 1);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("enlarge k"), std::string::npos);
    // 2^4 - 1 = 3 * 5 is the first group order with two coprime parts.
    EXPECT_NE(msg.find("smallest sufficient k is 4"), std::string::npos);
  }
}

TEST(ConstantSet, F81TwoConstants) {
  const Field* f = Field::get(3, 4);
  ConstantSet cs = build_constant_set(f, 2, 4);
  ASSERT_EQ(cs.size(), 2u);
  std::uint64_t o0 = f->order(cs.elements[0]), o1 = f->order(cs.elements[1]);
  EXPECT_EQ(80 % o0, 0u);
  EXPECT_EQ(80 % o1, 0u);
  EXPECT_EQ(std::gcd(o0, o1), 1u);
  EXPECT_GT(o0, 4u);
  EXPECT_GT(o1, 4u);
  EXPECT_TRUE(constant_set_independent(cs));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    EXPECT_EQ(cs.r(i), f->degree_over_prime(cs.elements[i]));
    for (int j = 0; j < 2 * cs.r(i); ++j) EXPECT_EQ(cs.d(i, j), f->pow(cs.elements[i], static_cast<long long>(std::pow(3, j))));
  }
}

TEST(ConstantSet, SingletonAndIndependenceOracle) {
  const Field* f = Field::get(5, 2);
  ConstantSet one = build_constant_set(f, 1, 3);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(constant_set_independent(one));
  // An element and its inverse share powers.
  Fe g = f->primitive();
  ConstantSet bad = make_constant_set(f, {g, f->inv(g)}, 3);
  EXPECT_FALSE(constant_set_independent(bad));
}

TEST(ConstantSet, AdmissibleExamples) {
  const Field* f9 = Field::get(3, 2);
  RatFunc t = RatFunc::t(f9);
  std::vector<Place> excl = {Place::parse(f9, "t"), Place::infinity()};
  Fe c8 = 0;
  for (Fe c = 1; c < 9; ++c)
    if (f9->order(c) == 8) {
      c8 = c;
      break;
    }
  ConstantSet cs = make_constant_set(f9, {c8, 1}, 1);
  ConstantSet kept = admissible_constants(t + RatFunc::from_int(f9, 1), cs, excl);
  // c8 has no orbit member equal to 1; the element 1 does.
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept.elements[0], c8);

  std::vector<Fe> all;
  for (Fe c = 1; c < 9; ++c) all.push_back(c);
  ConstantSet every = make_constant_set(f9, all, 1);
  EXPECT_EQ(admissible_constants(t, every, {Place::parse(f9, "t")}).size(), 8u);

  for (Fe c = 1; c < 9; ++c) {
    ConstantSet single = make_constant_set(f9, {c}, 1);
    Place P = Place::finite(Poly(f9, {f9->neg(c), 1}));
    bool drop = false;
    for (Fe d : single.orbits[0])
      if (f9->mul(c, c) == d) drop = true;
    EXPECT_EQ(admissible_constants(t * t, single, {P}).size(), drop ? 0u : 1u) << c;
  }
}

TEST(PkTemplate, ShapeAndBaseEquations) {
  const Field* f = Field::get(3, 4);
  ConstantSet cs = build_constant_set(f, 2, 4);
  ConstantsRecord consts = compute_constants(3, 1);
  EXPECT_THROW(gen_pk_power_of_t_system(3, cs, consts), std::invalid_argument);
  EquationSystem sys = gen_pk_power_of_t_system(3, cs, consts, true);
  ASSERT_EQ(sys.equations.size(), 4u);
  EXPECT_EQ(sys.equations[2].kind(), Equation::Kind::Product);
  EXPECT_EQ(sys.equations[3].kind(), Equation::Kind::Product);
  EXPECT_EQ(sys.unknowns.size(), static_cast<std::size_t>(3 + 2 * 2 * cs.r(0) * cs.r(1)));
  MultiPoly w = V(f, "w"), u = V(f, "u"), v = V(f, "v"), t = MultiPoly::t(f);
  EXPECT_EQ(sys.equations[0].poly(), t - w - w * t * (u.pow(3) - u));
  EXPECT_EQ(sys.equations[1].poly(), w - t - v.pow(3) + v);
  EXPECT_EQ(sys.meta["params"]["C5_nominal"], "8");
  EXPECT_EQ(sys.meta["params"]["constants_used"], 2);
  EXPECT_THROW(gen_pk_power_of_t_system(3, make_constant_set(f, {}, 1), consts, true), std::invalid_argument);
}

TEST(PkTemplate, ProductVanishesIffSomeFactorDoes) {
  const Field* f = Field::get(3, 4);
  ConstantSet cs = build_constant_set(f, 2, 4);
  EquationSystem sys = gen_pk_power_of_t_system(3, cs, compute_constants(3, 1), true);
  Assignment a = build_pk_power_witness(3, 1, cs, sys);
  const Equation& prod = sys.equations[2];
  int vanishing = 0;
  for (auto& c : prod.children())
    if (c.evaluate(a).is_zero()) ++vanishing;
  EXPECT_EQ(vanishing, 1);
  EXPECT_TRUE(prod.evaluate(a).is_zero());
  // Move the chosen branch off its solution: no factor vanishes.
  for (auto& [name, val] : a)
    if (name.rfind("u_0_1_", 0) == 0 && !val.is_zero()) val += RatFunc::t(f);
  vanishing = 0;
  for (auto& c : prod.children())
    if (c.evaluate(a).is_zero()) ++vanishing;
  EXPECT_EQ(vanishing, 0);
  EXPECT_FALSE(prod.evaluate(a).is_zero());
}

TEST(Getdown, Examples) {
  const Field* f3 = Field::get(3, 1);
  RatFunc t = RatFunc::t(f3);
  MultiPoly e = gen_getdown_equation(f3, 0, 1, 0, 1, 3, 1);
  Assignment a{{"w", t}, {"u_b", RatFunc(f3)}};
  EXPECT_TRUE(e.evaluate(a).is_zero());
  a["w"] = t.pow(3);
  a["u_b"] = artin_schreier_witness((t - RatFunc::from_int(f3, 1)) / t, 3, 1);
  EXPECT_TRUE(e.evaluate(a).is_zero());
  EXPECT_THROW(gen_getdown_equation(f3, 1, 1, 0, 1, 3, 1), std::invalid_argument);
}

TEST(DTemplate, CountsAndVerbatimEquations) {
  const Field* f7 = Field::get(7, 1);
  ConstantSet cs = build_constant_set(f7, 2, 1);
  ASSERT_EQ(cs.r(0), 1);
  ASSERT_EQ(cs.r(1), 1);
  EquationSystem sys = gen_d_system(7, 1, 1, cs);
  int leaves21 = 0;
  for (auto& e : sys.equations)
    if (e.label().rfind("2.1", 0) == 0) ++leaves21;
  EXPECT_EQ(leaves21, 2);
  for (auto& e : sys.equations)
    if (e.label().rfind("choice", 0) == 0) EXPECT_EQ(count_labels(e, "2.3"), 4);
  const Equation* e25 = find_label(sys, "2.5");
  ASSERT_NE(e25, nullptr);
  MultiPoly u = V(f7, "u"), v = V(f7, "v"), lp = V(f7, "lambda_p");
  EXPECT_EQ(e25->poly(), v - u - lp.pow(7) + lp);
}

TEST(ETemplate, Examples) {
  const Field* f3 = Field::get(3, 1);
  RatFunc t = RatFunc::t(f3);
  EquationSystem sys = gen_e_system(f3, 1);
  EXPECT_EQ(sys.unknowns, (std::vector<std::string>{"u", "ut", "v", "vt", "x", "y"}));
  // v from final5 at y = x^(p^s) equals u^(p^s).
  RatFunc x = t + RatFunc::from_int(f3, 1), y = x.pow(3);
  RatFunc u = (x.pow(3) + t) / (x.pow(3) - t);
  RatFunc v = (y.pow(3) + t.pow(3)) / (y.pow(3) - t.pow(3));
  EXPECT_EQ(v, u.pow(3));
  // x = 0 in final3.
  const Equation* e3 = find_label(sys, "final3");
  ASSERT_NE(e3, nullptr);
  MultiPoly at0 = e3->poly().partial_eval({{"x", RatFunc(f3)}});
  EXPECT_EQ(at0, -(V(f3, "u") * MultiPoly::t(f3)) - MultiPoly::t(f3));
  EXPECT_THROW(gen_e_system(Field::get(2, 1), 1), std::invalid_argument);
  EXPECT_THROW(gen_e2_system(f3, 1), std::invalid_argument);
}

TEST(ETemplate, E2AtSZeroForcesVEqualU) {
  const Field* f2 = Field::get(2, 1);
  EquationSystem sys = gen_e2_system(f2, 0);
  const Equation* e3 = find_label(sys, "final32");
  const Equation* e5 = find_label(sys, "final52");
  ASSERT_TRUE(e3 && e5);
  auto swap_uv = [](const std::string& n) { return n == "u" ? std::string("v") : n == "x" ? std::string("y") : n; };
  EXPECT_EQ(e3->poly().rename(swap_uv), e5->poly());
}

// For constant x = c != 0 the values u = (c^p + t)/(c^p - t) have height 1
// and v = (c^(p^(s+1)) + t^(p^s))/(...) height p^s; for c = 0 all collapse
// to constants.
TEST(FullPair, ConstantWitness) {
  const Field* f = Field::get(3, 2);
  for (int s = 0; s <= 2; ++s)
    for (Fe c = 0; c < f->q(); ++c) {
      Assignment a = build_full_pk_pair_witness(RatFunc::constant(f, c), s);
      for (auto& [n, val] : a) {
        // The second E instance is built on x + 1.
        Fe base = n.back() == '1' ? f->add(c, 1) : c;
        int want = n[0] == 'v' ? static_cast<int>(std::pow(3, s)) : 1;
        if (n == "x" || n == "y" || base == 0) want = 0;
        EXPECT_EQ(val.height(), want) << n << " " << c;
      }
      EXPECT_TRUE(verify_assignment(gen_full_pk_pair_system(f, s), a).ok());
    }
}

TEST(Combine, Examples) {
  const Field* f = Field::get(3, 1);
  MultiPoly X = V(f, "X"), Y = V(f, "Y"), one = MultiPoly::constant(f, 1), t = MultiPoly::t(f);
  EquationSystem sys;
  sys.field = f;
  sys.unknowns = {"X", "Y"};
  sys.equations = {Equation::leaf(X - one)};
  EXPECT_EQ(combine_to_single(sys), X - one);
  sys.equations.push_back(Equation::leaf(Y - one));
  MultiPoly c = combine_to_single(sys);
  EXPECT_EQ(c, (X - one) * (X - one) - t * (Y - one) * (Y - one));
  RatFunc r1 = RatFunc::from_int(f, 1);
  EXPECT_TRUE(c.evaluate({{"X", r1}, {"Y", r1}}).is_zero());
  for (long long a = 0; a < 3; ++a)
    for (long long b = 0; b < 3; ++b) {
      Assignment asg{{"X", RatFunc::from_int(f, a)}, {"Y", RatFunc::from_int(f, b)}};
      EXPECT_EQ(c.evaluate(asg).is_zero(), a == 1 && b == 1);
    }
  sys.equations = {Equation::leaf(X - one), Equation::leaf(X - one)};
  c = combine_to_single(sys);
  EXPECT_EQ(c, (X - one) * (X - one) * (one - t));
}

TEST(Serialize, RoundTripAndValidation) {
  const Field* f = Field::get(3, 1);
  EquationSystem sys = gen_e_system(f, 1);
  std::string bytes = system_to_json(sys).dump();
  EquationSystem back = system_from_json(Json::parse(bytes));
  EXPECT_EQ(system_to_json(back).dump(), bytes);
  EXPECT_EQ(back.equations, sys.equations);

  ConstantSet cs = build_constant_set(Field::get(3, 4), 2, 4);
  EquationSystem pk = gen_pk_power_of_t_system(3, cs, compute_constants(3, 1), true);
  std::string pk_bytes = system_to_json(pk).dump();
  EXPECT_EQ(system_to_json(system_from_json(Json::parse(pk_bytes))).dump(), pk_bytes);

  Json bad = Json::parse(R"J({"field":{"p":3,"k":1},"unknowns":["w"],
      "equations":[{"terms":[{"c":"(1)/(1)","m":{"z9":1}}]}]})J");
  EXPECT_THROW(system_from_json(bad), std::invalid_argument);
  Json coef = Json::parse(R"J({"field":{"p":3,"k":1},"unknowns":["w"],
      "equations":[{"terms":[{"c":"(t^2+1)/(t)","m":{"w":1}}]}]})J");
  EquationSystem parsed = system_from_json(coef);
  EXPECT_EQ(parsed.equations[0].poly().terms().begin()->second.to_string(), "(t^2 + 1)/(t)");
  Json badc = Json::parse(R"J({"field":{"p":3,"k":1},"unknowns":["w"],
      "equations":[{"terms":[{"c":"(t^2+1)/(","m":{"w":1}}]}]})J");
  EXPECT_THROW(system_from_json(badc), std::invalid_argument);
  EXPECT_THROW(system_from_json(Json::parse("[1,2]")), std::invalid_argument);
}
