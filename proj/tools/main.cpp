#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "checks.hpp"
#include "h10ff/compiler.hpp"
#include "h10ff/integrality.hpp"
#include "h10ff/solver.hpp"
#include "h10ff/templates.hpp"
#include "h10ff/witness.hpp"

using namespace h10ff;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

/// Thrown for malformed inputs detected by the dispatcher.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  int p = 3;
  int k = 1;
  std::string modulus;
  bool pretty = false;
  std::string in, out;
  std::uint64_t seed = 0;

  // eval
  std::string expr, op = "all", place;
  // constants / cset / templates
  long long C = 1;
  int count = 2;
  long long exp_bound = 4;
  int s = 1;
  int q = 0;
  bool desk_clamp = true;
  std::string x = "t", u = "t", w = "t";
  std::string name;
  // verify / solve
  std::string assignment, bounds = "*:1";
  std::size_t max_solutions = 0;
  int threads = 0;
  // compiler
  std::string formula;
  int bound = 4;
  int boundH = 2;
  int s_max = 2;
};

const Field* field_of(const CliConfig& c) {
  if (c.modulus.empty()) return Field::get(c.p, c.k);
  std::vector<int> m;
  std::stringstream ss(c.modulus);
  for (std::string part; std::getline(ss, part, ',');) m.push_back(std::stoi(part));
  return Field::get(c.p, m);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return Json::parse(in);
}

void emit(const CliConfig& c, const Json& j) {
  std::string text = c.pretty ? j.dump(2) : j.dump();
  if (c.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw UsageError("cannot write '" + c.out + "'");
  out << text << "\n";
}

ConstantSet constant_set(const CliConfig& c) { return build_constant_set(field_of(c), c.count, c.exp_bound); }

int aux_prime(const CliConfig& c, const Field* f) { return c.q > 0 ? c.q : default_aux_prime(f); }

int run_eval(const CliConfig& c) {
  if (c.expr.empty()) throw UsageError("eval needs --expr");
  const Field* f = field_of(c);
  RatFunc x = RatFunc::parse(f, c.expr);
  auto ord = [&] {
    if (c.place.empty()) throw UsageError("--op ord needs --place");
    if (x.is_zero()) throw UsageError("ord of zero");
    return ord_at(x, Place::parse(f, c.place));
  };
  Json j;
  if (c.op == "height") {
    j = x.height();
  } else if (c.op == "ord") {
    j = ord();
  } else if (c.op == "derivative") {
    j = x.derivative().to_string();
  } else if (c.op == "divisor") {
    if (x.is_zero()) throw UsageError("divisor of zero");
    j = divisor_to_json(divisor_of(x));
  } else if (c.op == "all") {
    j["value"] = x.to_string();
    j["height"] = x.height();
    j["derivative"] = x.derivative().to_string();
    if (!x.is_zero()) j["divisor"] = divisor_to_json(divisor_of(x));
    if (!c.place.empty() && !x.is_zero()) j["ord"] = ord();
  } else {
    throw UsageError("unknown --op '" + c.op + "'");
  }
  emit(c, j);
  return kOk;
}

EquationSystem make_template(const CliConfig& c, const std::string& name) {
  const Field* f = field_of(c);
  if (name == "base_pair") return gen_base_pair_system(f);
  if (name == "pk_power_of_t") return gen_pk_power_of_t_system(c.p, constant_set(c), compute_constants(c.p, c.C), c.desk_clamp);
  if (name == "d_system") return gen_d_system(c.p, compute_constants(c.p, c.C).a, c.s, constant_set(c));
  if (name == "e_system") return gen_e_system(f, c.s);
  if (name == "e2_system") return gen_e2_system(f, c.s);
  if (name == "full_pk_pair") return gen_full_pk_pair_system(f, c.s);
  if (name == "int_definition") return gen_int_definition(make_tower(f, aux_prime(c, f)));
  throw UsageError("unknown template '" + name + "'");
}

const char* kTemplates = "base_pair, pk_power_of_t, d_system, e_system, e2_system, full_pk_pair, int_definition";

int run_template(const CliConfig& c) {
  const Field* f = field_of(c);
  if (c.name == "tower") {
    emit(c, make_tower(f, aux_prime(c, f)).to_json());
  } else if (c.name == "norm_form") {
    emit(c, gen_norm_form(make_tower(f, aux_prime(c, f))).to_json());
  } else {
    emit(c, system_to_json(make_template(c, c.name)));
  }
  return kOk;
}

int run_witness(const CliConfig& c) {
  const Field* f = field_of(c);
  EquationSystem sys;
  std::optional<Assignment> asg;
  if (c.name == "base_pair") {
    sys = gen_base_pair_system(f);
    asg = build_base_pair_witness(f, c.s);
  } else if (c.name == "pk_power") {
    ConstantSet cs = constant_set(c);
    sys = gen_pk_power_of_t_system(c.p, cs, compute_constants(c.p, c.C), c.desk_clamp);
    asg = build_pk_power_witness(c.p, c.s, cs, sys);
  } else if (c.name == "d_system") {
    ConstantSet cs = constant_set(c);
    int a = compute_constants(c.p, c.C).a;
    sys = gen_d_system(c.p, a, c.s, cs);
    asg = build_d_system_witness(RatFunc::parse(f, c.u), c.p, a, c.s, cs, sys);
  } else if (c.name == "e") {
    sys = gen_e_system(f, c.s);
    asg = build_e_witness(RatFunc::parse(f, c.x), c.s);
  } else if (c.name == "e2") {
    sys = gen_e2_system(f, c.s);
    asg = build_e2_witness(RatFunc::parse(f, c.x), c.s);
  } else if (c.name == "full_pk_pair") {
    sys = gen_full_pk_pair_system(f, c.s);
    asg = build_full_pk_pair_witness(RatFunc::parse(f, c.x), c.s);
  } else if (c.name == "int") {
    TowerSpec ts = make_tower(f, aux_prime(c, f));
    sys = gen_int_definition(ts);
    asg = construct_int_witness(RatFunc::parse(f, c.w), ts);
  } else {
    throw UsageError("unknown witness '" + c.name + "'");
  }
  Json j;
  j["witness"] = c.name;
  if (!asg) {
    j["found"] = false;
    emit(c, j);
    return kViolation;
  }
  VerifyResult vr = verify_assignment(sys, *asg);
  j["found"] = true;
  j["assignment"] = assignment_to_json(*asg);
  j["verify"] = vr.to_json();
  emit(c, j);
  return vr.ok() ? kOk : kViolation;
}

EquationSystem read_system(const CliConfig& c) {
  if (c.in.empty()) throw UsageError("needs --in <system.json>");
  return system_from_json(read_json(c.in));
}

int run_verify(const CliConfig& c) {
  EquationSystem sys = read_system(c);
  if (c.assignment.empty()) throw UsageError("verify needs --assignment <file>");
  Assignment a = assignment_from_json(sys.field, read_json(c.assignment));
  VerifyResult vr = verify_assignment(sys, a);
  emit(c, vr.to_json());
  return vr.ok() ? kOk : kViolation;
}

int run_solve(const CliConfig& c) {
  EquationSystem sys = read_system(c);
  SolveOptions opts;
  opts.max_solutions = c.max_solutions;
  opts.threads = c.threads;
  emit(c, solve_bounded(sys, SearchBounds::parse(sys.field, c.bounds), opts).to_json());
  return kOk;
}

int run_compile(const CliConfig& c) {
  CompileOptions opts;
  opts.s_max = c.s_max;
  emit(c, system_to_json(compile(parse_formula(c.formula), field_of(c), opts)));
  return kOk;
}

int run_oracle(const CliConfig& c) {
  if (c.bound < 1) throw UsageError("--bound must be >= 1");
  PheidasAST ast = parse_formula(c.formula);
  auto tuples = oracle_solve_z(ast, c.p, c.bound);
  Json j;
  j["variables"] = ast.variables;
  j["tuples"] = tuples;
  j["count"] = tuples.size();
  emit(c, j);
  return kOk;
}

int run_roundtrip(const CliConfig& c) {
  if (c.bound < 1) throw UsageError("--bound must be >= 1");
  ModelCheckReport r = restricted_model_check(parse_formula(c.formula), c.p, c.bound, c.boundH);
  emit(c, r.to_json());
  return r.ok() ? kOk : kViolation;
}

int run_check(const CliConfig& c) {
  bool ok = true;
  Json j = cli::run_suite(c.name, c.seed, ok);
  j["ok"] = ok;
  emit(c, j);
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for Diophantine definitions over F_q(t)"};
  app.require_subcommand(1);
  app.fallthrough();
  CliConfig c;
  app.add_option("--p", c.p, "characteristic")->check(CLI::PositiveNumber);
  app.add_option("--k", c.k, "degree of the constant field over F_p")->check(CLI::PositiveNumber);
  app.add_option("--modulus", c.modulus, "defining polynomial coefficients, low degree first, comma separated");
  app.add_flag("--pretty", c.pretty, "indented output");
  app.add_option("--in", c.in, "input system JSON");
  app.add_option("--out", c.out, "write output here instead of stdout");
  app.add_option("--seed", c.seed, "seed for randomized suites");

  auto* eval = app.add_subcommand("eval", "ord, height, derivative or divisor of an expression");
  eval->add_option("--expr", c.expr)->required();
  eval->add_option("--op", c.op)->check(CLI::IsMember({"all", "ord", "height", "derivative", "divisor"}));
  eval->add_option("--place", c.place, "monic irreducible polynomial or inf");

  auto* constants = app.add_subcommand("constants", "constants record for p and C");
  constants->add_option("--C", c.C)->check(CLI::PositiveNumber);

  auto* cset = app.add_subcommand("cset", "constant set with pairwise coprime orders");
  cset->add_option("--count", c.count);
  cset->add_option("--exp-bound", c.exp_bound);

  auto* tmpl = app.add_subcommand("template", std::string("emit a system: ") + kTemplates + ", tower, norm_form");
  tmpl->add_option("name", c.name)->required();

  auto* wit = app.add_subcommand("witness", "build and verify: base_pair, pk_power, d_system, e, e2, full_pk_pair, int");
  wit->add_option("name", c.name)->required();

  for (auto* sub : {tmpl, wit}) {
    sub->add_option("--s", c.s)->check(CLI::NonNegativeNumber);
    sub->add_option("--C", c.C);
    sub->add_option("--count", c.count);
    sub->add_option("--exp-bound", c.exp_bound);
    sub->add_option("--q", c.q, "auxiliary prime (default chosen from the field)");
    sub->add_option("--desk-clamp", c.desk_clamp, "allow fewer constants than C5");
  }
  wit->add_option("--x", c.x);
  wit->add_option("--u", c.u);
  wit->add_option("--w", c.w);

  auto* verify = app.add_subcommand("verify", "check an assignment against a system");
  verify->add_option("--assignment", c.assignment)->required();

  auto* solve = app.add_subcommand("solve", "bounded-height search");
  solve->add_option("--bounds", c.bounds, "e.g. w:2,u:4,*:1 or w:@tpowers(5)");
  solve->add_option("--max-solutions", c.max_solutions);
  solve->add_option("--threads", c.threads);

  auto* comp = app.add_subcommand("compile", "formula over (Z+, +, |p) to a system");
  comp->add_option("--formula", c.formula)->required();
  comp->add_option("--s-max", c.s_max);

  auto* oracle = app.add_subcommand("oracle", "brute-force solutions over Z+");
  oracle->add_option("--formula", c.formula)->required();
  oracle->add_option("--bound", c.bound);

  auto* rt = app.add_subcommand("roundtrip", "oracle against the compiled system on powers of t");
  rt->add_option("--formula", c.formula)->required();
  rt->add_option("--bound,--boundZ", c.bound);
  rt->add_option("--boundH", c.boundH);

  auto* check = app.add_subcommand("check", "invariant suites");
  check->add_option("suite", c.name)->required()->check(CLI::IsMember(cli::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return run_eval(c);
    if (*constants) {
      emit(c, constants_to_json(compute_constants(c.p, c.C)));
      return kOk;
    }
    if (*cset) {
      emit(c, constant_set_to_json(constant_set(c)));
      return kOk;
    }
    if (*tmpl) return run_template(c);
    if (*wit) return run_witness(c);
    if (*verify) return run_verify(c);
    if (*solve) return run_solve(c);
    if (*comp) return run_compile(c);
    if (*oracle) return run_oracle(c);
    if (*rt) return run_roundtrip(c);
    if (*check) return run_check(c);
  } catch (const std::logic_error& e) {
    // Internal consistency failures raised by the library.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e) ||
        dynamic_cast<const std::domain_error*>(&e)) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
