#include <gtest/gtest.h>

#include <random>

#include "h10ff/witness.hpp"
#include "test_util.hpp"

using namespace h10ff;

namespace {

struct FieldSetup {
  const Field* f;
  ConstantSet cs;
};

/// p = 3 over F_81 and p = 2 over F_16, as in the acceptance run.
FieldSetup setup_for(int p) {
  if (p == 3) {
    const Field* f = Field::get(3, 4);
    return {f, build_constant_set(f, 2, 4)};
  }
  const Field* f = Field::get(2, 4);
  return {f, build_constant_set(f, 2, 2)};
}

}  // namespace

TEST(ArtinSchreier, Examples) {
  const Field* f3 = Field::get(3, 1);
  RatFunc t = RatFunc::t(f3);
  EXPECT_TRUE(artin_schreier_witness(t, 3, 0).is_zero());
  EXPECT_EQ(artin_schreier_witness(t, 3, 1), t);
  RatFunc v = artin_schreier_witness(t, 3, 2);
  EXPECT_EQ(v, t.pow(3) + t);
  EXPECT_EQ(v.pow(3) - v, t.pow(9) - t);
}

TEST(ArtinSchreier, IdentityOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (int p : {2, 3, 5}) {
    const Field* f = Field::get(p, 1);
    long long pa = p == 2 ? 4 : p;
    for (int s = 0; s <= 3; ++s)
      for (int i = 0; i < 10; ++i) {
        RatFunc x = test::random_ratfunc(f, rng, 3);
        RatFunc v = artin_schreier_witness(x, pa, s);
        long long P = 1;
        for (int k = 0; k < s; ++k) P *= pa;
        EXPECT_EQ(v.pow(pa) - v, x.pow(P) - x);
      }
  }
}

TEST(PkWitness, Examples) {
  FieldSetup st = setup_for(3);
  EquationSystem sys = gen_pk_power_of_t_system(3, st.cs, compute_constants(3, 1), true);
  RatFunc t = RatFunc::t(st.f);
  Assignment a0 = build_pk_power_witness(3, 0, st.cs, sys);
  EXPECT_EQ(a0["w"], t);
  for (auto& [n, v] : a0)
    if (n != "w") EXPECT_TRUE(v.is_zero()) << n;
  EXPECT_TRUE(verify_assignment(sys, a0).ok());
  Assignment a1 = build_pk_power_witness(3, 1, st.cs, sys);
  EXPECT_EQ(a1["w"], t.pow(3));
  EXPECT_EQ(a1["v"], t);
  EXPECT_EQ(a1["u"], t.inv());
  EXPECT_TRUE(verify_assignment(sys, a1).ok());

  FieldSetup st2 = setup_for(2);
  EquationSystem sys2 = gen_pk_power_of_t_system(2, st2.cs, compute_constants(2, 1), true);
  Assignment b = build_pk_power_witness(2, 1, st2.cs, sys2);
  RatFunc t2 = RatFunc::t(st2.f);
  EXPECT_EQ(b["w"], t2.pow(4));
  EXPECT_EQ(b["v"].pow(4) - b["v"], t2.pow(4) - t2);
  EXPECT_TRUE(verify_assignment(sys2, b).ok());
}

TEST(PkWitness, CoefficientsLieInConstantSubfield) {
  for (int p : {2, 3}) {
    FieldSetup st = setup_for(p);
    EquationSystem sys = gen_pk_power_of_t_system(p, st.cs, compute_constants(p, 1), true);
    int d = constant_subfield_degree(st.cs);
    for (int s = 0; s <= 2; ++s) {
      Assignment a = build_pk_power_witness(p, s, st.cs, sys);
      EXPECT_TRUE(coefficients_in_subfield(a, d));
    }
  }
  // A value with a coefficient outside F_9 inside F_81.
  const Field* f = Field::get(3, 4);
  Fe g = f->gen();
  EXPECT_FALSE(coefficients_in_subfield({{"x", RatFunc::constant(f, g)}}, 2));
  EXPECT_TRUE(coefficients_in_subfield({{"x", RatFunc::constant(f, g)}}, 4));
}

TEST(DWitness, Examples) {
  FieldSetup st = setup_for(3);
  RatFunc t = RatFunc::t(st.f);
  EquationSystem s0 = gen_d_system(3, 1, 0, st.cs);
  RatFunc u = t + RatFunc::from_int(st.f, 2);
  Assignment a = build_d_system_witness(u, 3, 1, 0, st.cs, s0);
  EXPECT_EQ(a["v"], u);
  for (auto& [n, v] : a)
    if (n.rfind("mu_", 0) == 0 || n.rfind("sigma_", 0) == 0 || n.rfind("lambda", 0) == 0)
      EXPECT_TRUE(v.is_zero()) << n;
  EXPECT_TRUE(verify_assignment(s0, a).ok());

  EquationSystem s1 = gen_d_system(3, 1, 1, st.cs);
  Assignment b = build_d_system_witness(t, 3, 1, 1, st.cs, s1);
  EXPECT_EQ(b["v"], t.pow(3));
  EXPECT_TRUE(verify_assignment(s1, b).ok());

  RatFunc bad = -RatFunc::constant(st.f, st.cs.elements[0]);
  try {
    build_d_system_witness(bad, 3, 1, 1, st.cs, s1);
    FAIL() << "expected a collision error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find(st.f->to_string(st.cs.elements[0])), std::string::npos);
  }
}

TEST(EWitness, Examples) {
  const Field* f3 = Field::get(3, 1);
  RatFunc t = RatFunc::t(f3);
  RatFunc x = t + RatFunc::from_int(f3, 1);
  Assignment a = build_e_witness(x, 1);
  EXPECT_EQ(a["v"], a["u"].pow(3));
  EXPECT_EQ(a["vt"], a["ut"].pow(3));
  EXPECT_TRUE(verify_assignment(gen_e_system(f3, 1), a).ok());
  EXPECT_TRUE(verify_assignment(gen_full_pk_pair_system(f3, 1), build_full_pk_pair_witness(x, 1)).ok());

  const Field* f2 = Field::get(2, 1);
  RatFunc x2 = RatFunc::t(f2) + RatFunc::from_int(f2, 1);
  Assignment b = build_e2_witness(x2, 1);
  EXPECT_EQ(b["v"], b["u"].pow(2));
  EXPECT_TRUE(verify_assignment(gen_e2_system(f2, 1), b).ok());
  EXPECT_THROW(build_e_witness(x2, 1), std::invalid_argument);
}

TEST(Verify, PerturbationAndSpuriousDenominator) {
  const Field* f3 = Field::get(3, 1);
  RatFunc t = RatFunc::t(f3);
  EquationSystem sys = gen_base_pair_system(f3);
  Assignment a = build_base_pair_witness(f3, 1);
  EXPECT_TRUE(verify_assignment(sys, a).ok());
  Assignment bumped = a;
  bumped["v"] += RatFunc::from_int(f3, 1);
  // Shifting v by an element of F_3 leaves v^3 - v unchanged.
  EXPECT_TRUE(verify_assignment(sys, bumped).ok());
  bumped = a;
  bumped["v"] += t;
  VerifyResult r = verify_assignment(sys, bumped);
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(r.equation, 1);
  bumped = a;
  bumped["w"] += RatFunc::from_int(f3, 1);
  r = verify_assignment(sys, bumped);
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(r.equation, 0);
  Assignment zero = a;
  zero["w"] = RatFunc(f3);
  r = verify_assignment(sys, zero);
  EXPECT_EQ(r.verdict, Verdict::SpuriousDenominator);
  EXPECT_EQ(r.equation, 0);
  EXPECT_EQ(r.to_json()["verdict"], "spurious_denominator");
  EXPECT_EQ(r.to_json()["denominator"], "w");
  Assignment missing = a;
  missing.erase("u");
  EXPECT_THROW(verify_assignment(sys, missing), std::invalid_argument);
}

TEST(Witness, AllBuildersVerifyOnTheirSystems) {
  for (int p : {2, 3}) {
    FieldSetup st = setup_for(p);
    int a = p == 2 ? 2 : 1;
    EquationSystem pk = gen_pk_power_of_t_system(p, st.cs, compute_constants(p, 1), true);
    for (int s = 0; s <= 2; ++s) {
      EXPECT_TRUE(verify_assignment(pk, build_pk_power_witness(p, s, st.cs, pk)).ok()) << p << " " << s;
      EquationSystem d = gen_d_system(p, a, s, st.cs);
      RatFunc t = RatFunc::t(st.f);
      for (const RatFunc& u : {t, t + RatFunc::from_int(st.f, 1)})
        EXPECT_TRUE(verify_assignment(d, build_d_system_witness(u, p, a, s, st.cs, d)).ok()) << p << " " << s;
      const Field* fp = Field::get(p, 1);
      RatFunc x = RatFunc::parse(fp, "(t^2+1)/(t+1)");
      EXPECT_TRUE(verify_assignment(gen_full_pk_pair_system(fp, s), build_full_pk_pair_witness(x, s)).ok());
    }
  }
}
