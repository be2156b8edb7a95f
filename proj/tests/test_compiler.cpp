#include <gtest/gtest.h>

#include <set>

#include "h10ff/compiler.hpp"
#include "h10ff/witness.hpp"

using namespace h10ff;

namespace {

/// Independent |p check: walk n, n p, n p^2, ... up to m.
bool divides_p(long long n, long long m, int p) {
  for (long long x = n; x <= m; x *= p)
    if (x == m) return true;
  return false;
}

std::set<ZTuple> as_set(const std::vector<ZTuple>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Parse, SingleSum) {
  PheidasAST ast = parse_formula("x1 + x2 = x3");
  ASSERT_EQ(ast.atoms.size(), 1u);
  EXPECT_EQ(std::get<SumEq>(ast.atoms[0]), (SumEq{"x1", "x2", "x3"}));
  EXPECT_EQ(ast.variables, (std::vector<std::string>{"x1", "x2", "x3"}));
}

TEST(Parse, TwoAtomsSnapshot) {
  PheidasAST ast = parse_formula("x1 |p x2 & x1 + x1 = x2");
  EXPECT_EQ(ast.to_json().dump(),
            R"({"variables":["x1","x2"],"atoms":[{"kind":"PDiv","x":"x1","y":"x2"},)"
            R"({"kind":"SumEq","x":"x1","y":"x1","z":"x2"}]})");
  EXPECT_EQ(ast.to_string(), "x1 |p x2 & x1 + x1 = x2");
  EXPECT_EQ(parse_formula("x1|px2&x1+x1=x2").to_json(), ast.to_json());
}

TEST(Parse, Errors) {
  try {
    parse_formula("x1 * x2 = x3");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("multiplication not in language"), std::string::npos);
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(parse_formula("x1 + x2 * x3"), ParseError);
  EXPECT_THROW(parse_formula("x1 = 0"), ParseError);
  EXPECT_THROW(parse_formula("x1 = x2"), ParseError);
  EXPECT_THROW(parse_formula("x1 |q x2"), ParseError);
  EXPECT_THROW(parse_formula("x1 + x2 = x3 &"), ParseError);
  EXPECT_THROW(parse_formula("a__b = 1"), ParseError);
  EXPECT_TRUE(parse_formula("   ").atoms.empty());
  EXPECT_EQ(std::get<ConstEq>(parse_formula("y=12").atoms[0]).n, 12);
}

TEST(Oracle, Examples) {
  EXPECT_EQ(oracle_solve_z(parse_formula("x1+x2=x3"), 2, 3),
            (std::vector<ZTuple>{{1, 1, 2}, {1, 2, 3}, {2, 1, 3}}));
  EXPECT_EQ(oracle_solve_z(parse_formula("x1 |p x2"), 2, 4),
            (std::vector<ZTuple>{{1, 1}, {1, 2}, {1, 4}, {2, 2}, {2, 4}, {3, 3}, {4, 4}}));
  EXPECT_TRUE(oracle_solve_z(parse_formula("x1 = 5"), 2, 4).empty());
}

TEST(Oracle, PDivAgainstPowers) {
  for (int p : {2, 3, 5}) {
    auto got = as_set(oracle_solve_z(parse_formula("a |p b"), p, 30));
    std::set<ZTuple> want;
    for (long long n = 1; n <= 30; ++n)
      for (long long m = 1; m <= 30; ++m)
        if (divides_p(n, m, p)) want.insert({n, m});
    EXPECT_EQ(got, want) << p;
  }
}

TEST(Oracle, AtomLocality) {
  for (std::string text : {"x1 |p x2 & x1 + x1 = x2", "a + b = c & c = 4 & a |p c", "x + y = z & y |p z & x = 1"}) {
    PheidasAST ast = parse_formula(text);
    auto full = as_set(oracle_solve_z(ast, 2, 6));
    for (std::size_t drop = 0; drop < ast.atoms.size(); ++drop) {
      PheidasAST smaller = ast;
      smaller.atoms.erase(smaller.atoms.begin() + static_cast<long>(drop));
      auto bigger = as_set(oracle_solve_z(smaller, 2, 6));
      for (auto& t : full) EXPECT_TRUE(bigger.count(t)) << text << " drop " << drop;
    }
  }
}

TEST(Compile, SumSplice) {
  const Field* f = Field::get(3, 1);
  EquationSystem sys = compile(parse_formula("x1 + x1 = x2"), f);
  MultiPoly z1 = MultiPoly::var(f, "z_x1"), z2 = MultiPoly::var(f, "z_x2");
  ASSERT_FALSE(sys.equations.empty());
  EXPECT_EQ(sys.equations[0].poly(), z2 - z1 * z1);
  EXPECT_EQ(sys.meta["atoms"].size(), 1u);
  EXPECT_EQ(sys.meta["positivity"].size(), 2u);
}

TEST(Compile, EmptyFormula) {
  EquationSystem sys = compile(parse_formula(""), Field::get(3, 1));
  EXPECT_TRUE(sys.equations.empty());
  EXPECT_TRUE(sys.unknowns.empty());
}

TEST(Compile, PDivBlocks) {
  const Field* f = Field::get(3, 1);
  PheidasAST ast = parse_formula("x1 |p x2 & x2 = 3");
  EquationSystem sys = compile(ast, f);
  ASSERT_EQ(sys.meta["atoms"].size(), ast.atoms.size());
  const Json& blocks = sys.meta["atoms"][0]["blocks"];
  int pk = 0, in = 0;
  for (auto& b : blocks) {
    pk += b["kind"] == "P(K)";
    in += b["kind"] == "INT";
  }
  EXPECT_EQ(pk, 1);
  EXPECT_EQ(in, 2);
  // Every unknown is declared once and every block owns its prefix.
  std::set<std::string> seen(sys.unknowns.begin(), sys.unknowns.end());
  EXPECT_EQ(seen.size(), sys.unknowns.size());
  for (auto& u : sys.unknowns)
    EXPECT_TRUE(u.rfind("z_", 0) == 0 || u.rfind("atom0__", 0) == 0 || u.rfind("pos_", 0) == 0) << u;
  // Equation ranges of all blocks partition the system.
  std::set<std::size_t> covered;
  for (auto& a : sys.meta["atoms"])
    for (auto& i : a["equations"]) EXPECT_TRUE(covered.insert(i.get<std::size_t>()).second);
  for (auto& b : sys.meta["positivity"])
    for (auto& i : b["equations"]) EXPECT_TRUE(covered.insert(i.get<std::size_t>()).second);
  EXPECT_EQ(covered.size(), sys.equations.size());
  EXPECT_NO_THROW(system_from_json(system_to_json(sys)));
}

TEST(ModelCheck, SumExample) {
  ModelCheckReport r = restricted_model_check(parse_formula("x1+x2=x3"), 3, 3, 2);
  EXPECT_EQ(r.matched, (std::vector<ZTuple>{{1, 1, 2}, {1, 2, 3}, {2, 1, 3}}));
  EXPECT_TRUE(r.mismatched.empty());
  EXPECT_TRUE(r.bounded_only.empty());
}

TEST(ModelCheck, DiagonalPDiv) {
  ModelCheckReport r = restricted_model_check(parse_formula("x1 |p x1"), 2, 4, 2);
  EXPECT_EQ(r.matched, (std::vector<ZTuple>{{1}, {2}, {3}, {4}}));
  EXPECT_TRUE(r.ok());
}

TEST(ModelCheck, UnsatisfiableBothSides) {
  ModelCheckReport r = restricted_model_check(parse_formula("x1 |p x2 & x2 = 3 & x1 = 2"), 2, 6, 2);
  EXPECT_EQ(r.oracle_count, 0u);
  EXPECT_EQ(r.compiled_count, 0u);
  EXPECT_TRUE(r.matched.empty());
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.bounded_only.size(), 1u);
  EXPECT_EQ(r.bounded_only[0].first, (ZTuple{2, 3}));
}

TEST(ModelCheck, PDivBijection) {
  for (int p : {2, 3}) {
    PheidasAST ast = parse_formula("x1 |p x2");
    ModelCheckReport r = restricted_model_check(ast, p, 4, 2);
    EXPECT_TRUE(r.ok()) << r.to_json().dump();
    EXPECT_EQ(r.matched, oracle_solve_z(ast, p, 4));
    EXPECT_EQ(r.matched.size() + r.bounded_only.size(), 16u);
    EXPECT_EQ(r.to_json()["boundedOnly"][0]["status"], "not found <= 2");
  }
}
