#include "h10ff/compiler.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "h10ff/solver.hpp"
#include "h10ff/templates.hpp"
#include "h10ff/witness.hpp"

namespace h10ff {

std::string atom_to_string(const Atom& a) {
  if (auto* s = std::get_if<SumEq>(&a)) return s->x + " + " + s->y + " = " + s->z;
  if (auto* d = std::get_if<PDiv>(&a)) return d->x + " |p " + d->y;
  const auto& c = std::get<ConstEq>(a);
  return c.x + " = " + std::to_string(c.n);
}

std::string PheidasAST::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? " & " : "") + atom_to_string(atoms[i]);
  return out;
}

Json PheidasAST::to_json() const {
  Json j;
  j["variables"] = variables;
  Json as = Json::array();
  for (auto& a : atoms) {
    Json e;
    if (auto* s = std::get_if<SumEq>(&a)) {
      e = {{"kind", "SumEq"}, {"x", s->x}, {"y", s->y}, {"z", s->z}};
    } else if (auto* d = std::get_if<PDiv>(&a)) {
      e = {{"kind", "PDiv"}, {"x", d->x}, {"y", d->y}};
    } else {
      const auto& c = std::get<ConstEq>(a);
      e = {{"kind", "ConstEq"}, {"x", c.x}, {"n", c.n}};
    }
    as.push_back(e);
  }
  j["atoms"] = as;
  return j;
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& s) : s_(s) {}

  PheidasAST parse() {
    skip();
    if (pos_ == s_.size()) return ast_;
    ast_.atoms.push_back(atom());
    skip();
    while (pos_ < s_.size()) {
      expect('&', "expected '&'");
      ast_.atoms.push_back(atom());
      skip();
    }
    return ast_;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    if (pos_ < s_.size() && s_[pos_] == '*') throw ParseError("multiplication not in language", pos_);
    throw ParseError(msg, pos_);
  }

  void expect(char c, const std::string& msg) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(msg);
    ++pos_;
  }

  std::string variable() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      fail("expected variable");
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name.find("__") != std::string::npos) throw ParseError("variable names may not contain \"__\"", start);
    if (std::find(ast_.variables.begin(), ast_.variables.end(), name) == ast_.variables.end())
      ast_.variables.push_back(name);
    return name;
  }

  Atom atom() {
    std::string x = variable();
    skip();
    if (pos_ >= s_.size()) fail("expected operator");
    char c = s_[pos_];
    if (c == '+') {
      ++pos_;
      std::string y = variable();
      expect('=', "expected '='");
      return SumEq{x, y, variable()};
    }
    if (c == '|') {
      ++pos_;
      if (pos_ >= s_.size() || s_[pos_] != 'p') fail("expected 'p' after '|'");
      ++pos_;
      return PDiv{x, variable()};
    }
    if (c == '=') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected natural number");
      std::string digits = s_.substr(start, pos_ - start);
      if (digits.size() > 15) throw ParseError("constant too large", start);
      long long n = std::stoll(digits);
      if (n < 1) throw ParseError("constant must be positive", start);
      return ConstEq{x, n};
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  PheidasAST ast_;
};

bool pdiv_holds(long long n, long long m, int p) {
  while (m > n && m % p == 0) m /= p;
  return m == n;
}

std::size_t var_index(const PheidasAST& ast, const std::string& v) {
  return static_cast<std::size_t>(std::find(ast.variables.begin(), ast.variables.end(), v) - ast.variables.begin());
}

bool atom_holds(const PheidasAST& ast, const Atom& a, const ZTuple& z, int p) {
  auto val = [&](const std::string& v) { return z[var_index(ast, v)]; };
  if (auto* s = std::get_if<SumEq>(&a)) return val(s->x) + val(s->y) == val(s->z);
  if (auto* d = std::get_if<PDiv>(&a)) return pdiv_holds(val(d->x), val(d->y), p);
  const auto& c = std::get<ConstEq>(a);
  return val(c.x) == c.n;
}

Json index_range(std::size_t first, std::size_t last) {
  Json j = Json::array();
  for (std::size_t i = first; i < last; ++i) j.push_back(i);
  return j;
}

std::string atom_prefix(std::size_t k) { return "atom" + std::to_string(k) + "__"; }
std::string pk_prefix(std::size_t k, int s) { return atom_prefix(k) + "s" + std::to_string(s) + "__"; }
std::string int_prefix(std::size_t k, int which) { return atom_prefix(k) + "int" + std::to_string(which) + "__"; }
std::string pos_prefix(const std::string& v) { return "pos_" + v + "__"; }

/// Appends "prefix w * den - num = 0" and the INT definition under prefix.
Json add_int_block(EquationSystem& sys, const EquationSystem& intsys, const std::string& prefix,
                   const MultiPoly& num, const MultiPoly& den, const std::string& element) {
  std::size_t first = sys.equations.size();
  EquationSystem inst = prefixed(intsys, prefix);
  for (auto& u : inst.unknowns) sys.add_unknown(u);
  MultiPoly iw = MultiPoly::var(sys.field, prefix + "w");
  sys.equations.push_back(Equation::leaf(iw * den - num, {}, prefix + "w = " + element));
  for (auto& e : inst.equations) sys.equations.push_back(e);
  return {{"kind", "INT"}, {"prefix", prefix}, {"element", element}, {"equations", index_range(first, sys.equations.size())}};
}

}  // namespace

PheidasAST parse_formula(const std::string& text) { return FormulaParser(text).parse(); }

std::vector<ZTuple> oracle_solve_z(const PheidasAST& ast, int p, int bound) {
  std::vector<ZTuple> out;
  std::size_t n = ast.variables.size();
  if (bound < 1) return out;
  ZTuple z(n, 1);
  for (;;) {
    bool ok = true;
    for (auto& a : ast.atoms)
      if (!atom_holds(ast, a, z, p)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(z);
    // Odometer with the last variable fastest gives lexicographic order.
    std::size_t i = n;
    while (i > 0 && z[i - 1] == bound) z[--i] = 1;
    if (i == 0) break;
    ++z[i - 1];
  }
  return out;
}

std::string z_unknown(const std::string& v) { return "z_" + v; }

EquationSystem compile(const PheidasAST& ast, const Field* f, const CompileOptions& opts) {
  if (opts.s_max < 0) throw std::invalid_argument("s_max must be >= 0");
  TowerSpec ts = make_tower(f, default_aux_prime(f));
  EquationSystem intsys = gen_int_definition(ts);
  EquationSystem sys;
  sys.field = f;
  auto Z = [&](const std::string& v) { return MultiPoly::var(f, z_unknown(v)); };
  Json vars = Json::object();
  for (auto& v : ast.variables) {
    sys.add_unknown(z_unknown(v));
    vars[v] = z_unknown(v);
  }
  Json atoms = Json::array();
  for (std::size_t k = 0; k < ast.atoms.size(); ++k) {
    const Atom& a = ast.atoms[k];
    std::size_t first = sys.equations.size();
    std::string label = "atom" + std::to_string(k) + ": " + atom_to_string(a);
    Json entry = {{"index", k}, {"atom", atom_to_string(a)}};
    Json blocks = Json::array();
    if (auto* s = std::get_if<SumEq>(&a)) {
      entry["kind"] = "SumEq";
      sys.equations.push_back(Equation::leaf(Z(s->z) - Z(s->x) * Z(s->y), {}, label));
      blocks.push_back({{"kind", "sum"}, {"equations", index_range(first, first + 1)}});
    } else if (auto* c = std::get_if<ConstEq>(&a)) {
      entry["kind"] = "ConstEq";
      MultiPoly tn = MultiPoly(RatFunc::t_pow(f, static_cast<int>(c->n)));
      sys.equations.push_back(Equation::leaf(Z(c->x) - tn, {}, label));
      blocks.push_back({{"kind", "const"}, {"equations", index_range(first, first + 1)}});
    } else {
      const auto& d = std::get<PDiv>(a);
      entry["kind"] = "PDiv";
      std::string w = atom_prefix(k) + "w";
      sys.add_unknown(w);
      std::vector<Equation> disjuncts;
      for (int s = 0; s <= opts.s_max; ++s) {
        EquationSystem pk = gen_full_pk_pair_system(f, s);
        std::string pre = pk_prefix(k, s);
        auto rn = [&](const std::string& n) {
          if (n == "x") return z_unknown(d.x);
          if (n == "y") return w;
          return pre + n;
        };
        for (auto& u : pk.unknowns)
          if (u != "x" && u != "y") sys.add_unknown(pre + u);
        std::vector<Equation> conj;
        for (auto& e : pk.equations) conj.push_back(e.rename(rn));
        disjuncts.push_back(Equation::combine(conj, "s = " + std::to_string(s)));
      }
      sys.equations.push_back(Equation::product(disjuncts, label + " P(K)"));
      blocks.push_back({{"kind", "P(K)"},
                        {"prefix", atom_prefix(k)},
                        {"s_max", opts.s_max},
                        {"equations", index_range(first, first + 1)}});
      MultiPoly W = MultiPoly::var(f, w);
      blocks.push_back(add_int_block(sys, intsys, int_prefix(k, 0), W, Z(d.y), w + "/" + z_unknown(d.y)));
      blocks.push_back(add_int_block(sys, intsys, int_prefix(k, 1), Z(d.y), W, z_unknown(d.y) + "/" + w));
    }
    entry["equations"] = index_range(first, sys.equations.size());
    entry["blocks"] = blocks;
    atoms.push_back(entry);
  }
  Json positivity = Json::array();
  for (auto& v : ast.variables) {
    Json b = add_int_block(sys, intsys, pos_prefix(v), Z(v), MultiPoly::t(f), z_unknown(v) + "/t");
    b["variable"] = v;
    positivity.push_back(b);
  }
  sys.meta["template"] = "compiled_formula";
  sys.meta["formula"] = ast.to_string();
  sys.meta["params"] = {{"p", f->p()}, {"k", f->k()}, {"s_max", opts.s_max}};
  sys.meta["tower"] = ts.to_json();
  sys.meta["variables"] = vars;
  sys.meta["atoms"] = atoms;
  sys.meta["positivity"] = positivity;
  return sys;
}

Json ModelCheckReport::to_json() const {
  Json j;
  j["p"] = p;
  j["boundZ"] = boundZ;
  j["boundH"] = boundH;
  j["variables"] = variables;
  j["matched"] = matched;
  Json mm = Json::array();
  for (auto& [t, why] : mismatched) mm.push_back({{"tuple", t}, {"reason", why}});
  j["mismatched"] = mm;
  Json bo = Json::array();
  for (auto& [t, blocks] : bounded_only)
    bo.push_back({{"tuple", t}, {"refuted", blocks}, {"status", "not found <= " + std::to_string(boundH)}});
  j["boundedOnly"] = bo;
  j["oracle_count"] = oracle_count;
  j["compiled_count"] = compiled_count;
  j["ok"] = ok();
  return j;
}

ModelCheckReport restricted_model_check(const PheidasAST& ast, int p, int boundZ, int boundH) {
  const Field* f = Field::get(p, 1);
  ModelCheckReport rep;
  rep.p = p;
  rep.boundZ = boundZ;
  rep.boundH = boundH;
  rep.variables = ast.variables;
  auto oracle = oracle_solve_z(ast, p, boundZ);
  rep.oracle_count = oracle.size();
  std::set<ZTuple> oracle_set(oracle.begin(), oracle.end());

  CompileOptions opts;
  opts.s_max = 0;
  while (true) {
    long long pw = 1;
    for (int i = 0; i <= opts.s_max; ++i) pw *= p;
    if (pw > boundZ) break;
    ++opts.s_max;
  }
  EquationSystem sys = compile(ast, f, opts);
  TowerSpec ts = tower_from_json(sys.meta["tower"]);

  // Equations among the z unknowns alone.
  EquationSystem core;
  core.field = f;
  for (auto& v : ast.variables) core.add_unknown(z_unknown(v));
  for (auto& a : sys.meta["atoms"])
    if (a["kind"] != "PDiv")
      for (auto& i : a["equations"]) core.equations.push_back(sys.equations[i.get<std::size_t>()]);
  SearchBounds bounds;
  std::vector<RatFunc> tpowers;
  for (int n = 1; n <= boundZ; ++n) tpowers.push_back(RatFunc::t_pow(f, n));
  for (auto& v : ast.variables) bounds.whitelist[z_unknown(v)] = tpowers;
  SolveReport core_rep = solve_bounded(core, bounds);

  std::map<std::string, std::optional<Assignment>> int_cache;
  auto int_witness = [&](const RatFunc& x) -> const std::optional<Assignment>& {
    auto key = x.to_string();
    auto it = int_cache.find(key);
    if (it == int_cache.end()) it = int_cache.emplace(key, construct_int_witness(x, ts)).first;
    return it->second;
  };

  std::set<ZTuple> accepted;
  std::set<ZTuple> core_set;
  for (auto& sol : core_rep.solutions) {
    ZTuple tuple;
    for (auto& v : ast.variables) tuple.push_back(sol.at(z_unknown(v)).num().degree());
    core_set.insert(tuple);
    Assignment full = sol;
    std::vector<std::string> refuted, undecided;
    // Membership fills the block; non-membership is refuted by the screen.
    auto int_block = [&](const std::string& prefix, const RatFunc& x, const std::string& name) {
      const auto& wit = int_witness(x);
      if (wit) {
        for (auto& [u, val] : *wit) full[prefix + u] = val;
        return true;
      }
      if (pole_obstruction_at_zero_of_t(x, ts.q) && norm_screen_refutes(x, ts, boundH))
        refuted.push_back(name);
      else
        undecided.push_back(name);
      return false;
    };
    for (std::size_t i = 0; i < ast.variables.size(); ++i) {
      const auto& v = ast.variables[i];
      int_block(pos_prefix(v), sol.at(z_unknown(v)) / RatFunc::t(f), "positivity of " + v);
    }
    for (std::size_t k = 0; k < ast.atoms.size(); ++k) {
      const auto* d = std::get_if<PDiv>(&ast.atoms[k]);
      if (!d) continue;
      const RatFunc& zx = sol.at(z_unknown(d->x));
      const RatFunc& zy = sol.at(z_unknown(d->y));
      std::string name = "atom" + std::to_string(k) + " (" + atom_to_string(ast.atoms[k]) + ")";
      int hit = -1;
      RatFunc power = zx;
      for (int s = 0; s <= opts.s_max && hit < 0; ++s) {
        if (power == zy) hit = s;
        power = power.pow(p);
      }
      if (hit >= 0) {
        full[atom_prefix(k) + "w"] = zy;
        for (int s = 0; s <= opts.s_max; ++s) {
          EquationSystem pk = gen_full_pk_pair_system(f, s);
          Assignment wit;
          if (s == hit) wit = build_full_pk_pair_witness(zx, s);
          for (auto& u : pk.unknowns)
            if (u != "x" && u != "y") full[pk_prefix(k, s) + u] = s == hit ? wit.at(u) : RatFunc(f);
        }
        RatFunc one = RatFunc::from_int(f, 1);
        int_block(int_prefix(k, 0), one, name + " w/y");
        int_block(int_prefix(k, 1), one, name + " y/w");
        continue;
      }
      // The P(K) block forces w = z_x^(p^s) for some s <= s_max; each choice
      // leaves one of w/y, y/w with a pole at t.
      bool all_refuted = true;
      power = zx;
      for (int s = 0; s <= opts.s_max; ++s) {
        RatFunc ratio = power / zy;
        RatFunc bad = pole_obstruction_at_zero_of_t(ratio, ts.q) ? ratio : ratio.inv();
        if (!(pole_obstruction_at_zero_of_t(bad, ts.q) && norm_screen_refutes(bad, ts, boundH))) all_refuted = false;
        power = power.pow(p);
      }
      (all_refuted ? refuted : undecided).push_back(name);
    }
    bool in_oracle = oracle_set.count(tuple) > 0;
    if (!refuted.empty()) {
      rep.bounded_only.emplace_back(tuple, refuted);
      if (in_oracle) rep.mismatched.emplace_back(tuple, "refuted on the compiled side: " + refuted.front());
      continue;
    }
    if (!undecided.empty()) {
      rep.mismatched.emplace_back(tuple, "undecided: " + undecided.front());
      continue;
    }
    VerifyResult vr = verify_assignment(sys, full);
    if (!vr.ok()) {
      rep.mismatched.emplace_back(tuple, "constructed witness fails equation " + std::to_string(vr.equation));
      continue;
    }
    accepted.insert(tuple);
    if (in_oracle)
      rep.matched.push_back(tuple);
    else
      rep.mismatched.emplace_back(tuple, "accepted by the compiled system only");
  }
  for (auto& t : oracle)
    if (!core_set.count(t)) rep.mismatched.emplace_back(t, "rejected by the z equations");
  rep.compiled_count = accepted.size();
  std::sort(rep.matched.begin(), rep.matched.end());
  std::sort(rep.mismatched.begin(), rep.mismatched.end());
  std::sort(rep.bounded_only.begin(), rep.bounded_only.end());
  return rep;
}

}  // namespace h10ff
