#include "h10ff/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "h10ff/templates.hpp"
#include "h10ff/witness.hpp"

namespace h10ff {

namespace {

std::vector<RatFunc> build_height(const Field* f, int h) {
  std::vector<RatFunc> out;
  if (h == 0) {
    for (Fe c = 0; c < f->q(); ++c) out.push_back(RatFunc::constant(f, c));
  } else {
    std::vector<Poly> nums;  // every polynomial of degree <= h, zero excluded
    for (int d = 0; d <= h; ++d)
      for (const Poly& m : monic_polys(f, d))
        for (Fe c = 1; c < f->q(); ++c) nums.push_back(m.scale(c));
    for (int dd = 0; dd <= h; ++dd)
      for (const Poly& den : monic_polys(f, dd))
        for (const Poly& num : nums) {
          if (std::max(num.degree(), den.degree()) != h) continue;
          if (!gcd(num, den).is_one()) continue;
          out.emplace_back(num, den);
        }
  }
  std::vector<std::pair<std::string, RatFunc>> keyed;
  keyed.reserve(out.size());
  for (auto& x : out) keyed.emplace_back(x.to_string(), x);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.clear();
  for (auto& [k, x] : keyed) out.push_back(x);
  return out;
}

}  // namespace

std::vector<RatFunc> ratfuncs_of_height(const Field* f, int h) {
  if (h < 0) throw std::invalid_argument("negative height");
  static std::mutex mu;
  static std::map<std::pair<const Field*, int>, std::vector<RatFunc>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(f, h);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_height(f, h)).first;
  return it->second;
}

std::vector<RatFunc> enumerate_ratfuncs(const Field* f, int H) {
  std::vector<RatFunc> out;
  for (int h = 0; h <= H; ++h) {
    auto part = ratfuncs_of_height(f, h);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

SearchBounds SearchBounds::parse(const Field* f, const std::string& text) {
  SearchBounds b;
  std::stringstream ss(text);
  std::string item;
  static const std::regex plain(R"(\s*([A-Za-z_*][A-Za-z0-9_]*)\s*:\s*([0-9]+)\s*)");
  static const std::regex tpow(R"(\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*@tpowers\(\s*([0-9]+)\s*\)\s*)");
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::smatch m;
    if (std::regex_match(item, m, tpow)) {
      int n = std::stoi(m[2]);
      std::vector<RatFunc> vals;
      for (int i = 1; i <= n; ++i) vals.push_back(RatFunc::t_pow(f, i));
      b.whitelist[m[1]] = vals;
    } else if (std::regex_match(item, m, plain)) {
      int h = std::stoi(m[2]);
      if (m[1] == "*")
        b.default_height = h;
      else
        b.height[m[1]] = h;
    } else {
      throw std::invalid_argument("malformed bound: '" + item + "'");
    }
  }
  return b;
}

std::vector<RatFunc> SearchBounds::candidates(const Field* f, const std::string& unknown) const {
  auto w = whitelist.find(unknown);
  if (w != whitelist.end()) return w->second;
  auto h = height.find(unknown);
  return enumerate_ratfuncs(f, h == height.end() ? default_height : h->second);
}

Json SearchBounds::to_json() const {
  Json j;
  j["default_height"] = default_height;
  Json hs = Json::object();
  for (auto& [k, v] : height) hs[k] = v;
  j["height"] = hs;
  Json wl = Json::object();
  for (auto& [k, vals] : whitelist) {
    Json arr = Json::array();
    for (auto& v : vals) arr.push_back(v.to_string());
    wl[k] = arr;
  }
  j["whitelist"] = wl;
  return j;
}

Json SolveReport::to_json() const {
  Json j;
  Json sols = Json::array();
  for (auto& s : solutions) sols.push_back(assignment_to_json(s));
  j["solutions"] = sols;
  j["examined"] = examined;
  j["failures"] = failures;
  j["bounds"] = bounds.to_json();
  j["truncated"] = truncated;
  return j;
}

int configured_threads() {
  const char* env = std::getenv("H10FF_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

namespace {

struct Plan {
  const EquationSystem* sys;
  std::vector<std::string> order;
  std::vector<std::vector<RatFunc>> cands;
  std::vector<std::vector<int>> checks;
  std::vector<int> initial;
};

struct WorkerResult {
  std::vector<Assignment> solutions;
  long long examined = 0;
  std::vector<long long> failures;
};

bool holds(const EquationSystem& sys, int e, const Assignment& a) {
  return equation_status(sys.equations[static_cast<std::size_t>(e)], a, nullptr) == EqStatus::Holds;
}

void search(const Plan& plan, std::size_t level, Assignment& a, WorkerResult& out, std::size_t max_solutions,
            const std::vector<RatFunc>* top) {
  if (level == plan.order.size()) {
    out.solutions.push_back(a);
    return;
  }
  const auto& cands = level == 0 && top ? *top : plan.cands[level];
  const std::string& name = plan.order[level];
  for (const RatFunc& v : cands) {
    if (max_solutions && out.solutions.size() >= max_solutions) return;
    a[name] = v;
    ++out.examined;
    bool ok = true;
    for (int e : plan.checks[level])
      if (!holds(*plan.sys, e, a)) {
        ++out.failures[static_cast<std::size_t>(e)];
        ok = false;
        break;
      }
    if (ok) search(plan, level + 1, a, out, max_solutions, top);
  }
  a.erase(name);
}

}  // namespace

SolveReport solve_bounded(const EquationSystem& sys, const SearchBounds& bounds, const SolveOptions& opts) {
  SolveReport rep;
  rep.bounds = bounds;
  rep.failures.assign(sys.equations.size(), 0);
  Plan plan;
  plan.sys = &sys;
  std::vector<std::set<std::string>> support;
  for (auto& e : sys.equations) support.push_back(e.variables());
  std::vector<int> eq_order(sys.equations.size());
  for (std::size_t i = 0; i < eq_order.size(); ++i) eq_order[i] = static_cast<int>(i);
  std::stable_sort(eq_order.begin(), eq_order.end(),
                   [&](int x, int y) { return support[static_cast<std::size_t>(x)].size() < support[static_cast<std::size_t>(y)].size(); });
  std::map<std::string, std::size_t> level_of;
  auto add_unknown = [&](const std::string& u) {
    if (level_of.count(u)) return;
    level_of[u] = plan.order.size();
    plan.order.push_back(u);
  };
  for (int e : eq_order)
    for (auto& u : sys.unknowns)
      if (support[static_cast<std::size_t>(e)].count(u)) add_unknown(u);
  for (auto& u : sys.unknowns) add_unknown(u);
  plan.checks.assign(plan.order.size(), {});
  for (int e : eq_order) {
    const auto& sup = support[static_cast<std::size_t>(e)];
    if (sup.empty()) {
      plan.initial.push_back(e);
      continue;
    }
    std::size_t last = 0;
    for (auto& u : sup) last = std::max(last, level_of.at(u));
    plan.checks[last].push_back(e);
  }
  for (auto& u : plan.order) plan.cands.push_back(bounds.candidates(sys.field, u));

  Assignment empty;
  for (int e : plan.initial)
    if (!holds(sys, e, empty)) {
      ++rep.failures[static_cast<std::size_t>(e)];
      return rep;
    }
  if (plan.order.empty()) {
    rep.solutions.push_back(empty);
    return rep;
  }

  int threads = opts.threads > 0 ? opts.threads : configured_threads();
  const auto& top = plan.cands[0];
  threads = std::max(1, std::min<int>(threads, static_cast<int>(top.size())));
  std::vector<std::vector<RatFunc>> blocks(static_cast<std::size_t>(threads));
  for (std::size_t i = 0; i < top.size(); ++i)
    blocks[i * static_cast<std::size_t>(threads) / top.size()].push_back(top[i]);
  std::vector<WorkerResult> results(blocks.size());
  auto run = [&](std::size_t b) {
    results[b].failures.assign(sys.equations.size(), 0);
    Assignment a;
    search(plan, 0, a, results[b], opts.max_solutions, &blocks[b]);
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t b = 0; b < blocks.size(); ++b) pool.emplace_back(run, b);
    for (auto& th : pool) th.join();
  }
  for (auto& r : results) {
    rep.examined += r.examined;
    for (std::size_t e = 0; e < r.failures.size(); ++e) rep.failures[e] += r.failures[e];
    for (auto& s : r.solutions) rep.solutions.push_back(s);
  }
  if (opts.max_solutions && rep.solutions.size() >= opts.max_solutions) {
    rep.truncated = true;
    rep.solutions.resize(opts.max_solutions);
  }
  for (auto& s : rep.solutions)
    if (!verify_assignment(sys, s).ok()) throw std::logic_error("solver produced an unverified solution");
  return rep;
}

Json PkSweepReport::to_json() const {
  Json j;
  j["p"] = p;
  j["Hw"] = Hw;
  j["Hwit"] = Hwit;
  j["swept"] = swept;
  j["constants_excluded"] = constants_excluded;
  Json wit = Json::array();
  for (auto& w : witnessed) wit.push_back(w.to_string());
  j["witnessed"] = wit;
  j["refuted"] = "refuted <= " + std::to_string(Hwit) + ": " + std::to_string(refuted);
  Json viol = Json::array();
  for (auto& w : violations) viol.push_back(w.to_string());
  j["violations"] = viol;
  j["ok"] = ok();
  return j;
}

PkSweepReport check_pk_power_theorem(int p, int Hw, int Hwit) {
  const Field* f = Field::get(p, 1);
  PkSweepReport rep;
  rep.p = p;
  rep.Hw = Hw;
  rep.Hwit = Hwit;
  EquationSystem sys = gen_base_pair_system(f);
  long long pa = p == 2 ? 4 : p;
  RatFunc t = RatFunc::t(f);
  for (const RatFunc& w : enumerate_ratfuncs(f, Hw)) {
    if (w.is_constant()) {
      ++rep.constants_excluded;
      continue;
    }
    ++rep.swept;
    int target_s = -1;
    long long P = 1;
    for (int s = 0; P <= w.height(); ++s, P *= pa)
      if (w == t.pow(P)) target_s = s;
    if (target_s >= 0) {
      Assignment wit = build_base_pair_witness(f, target_s);
      if (wit.at("w") == w && verify_assignment(sys, wit).ok())
        rep.witnessed.push_back(w);
      else
        rep.violations.push_back(w);
      continue;
    }
    SearchBounds b;
    b.whitelist["w"] = {w};
    b.height["u"] = Hwit;
    b.height["v"] = Hwit;
    SolveOptions opts;
    opts.max_solutions = 1;
    if (solve_bounded(sys, b, opts).solutions.empty())
      ++rep.refuted;
    else
      rep.violations.push_back(w);
  }
  return rep;
}

}  // namespace h10ff
