#pragma once

#include <map>
#include <string>
#include <vector>

#include "h10ff/system.hpp"

namespace h10ff {

/// Every canonical rational function of height exactly h, ordered by
/// canonical text.
std::vector<RatFunc> ratfuncs_of_height(const Field* f, int h);
/// Every canonical rational function of height <= H: by height, then by
/// canonical text.
std::vector<RatFunc> enumerate_ratfuncs(const Field* f, int H);

/// Per-unknown candidate ranges for solve_bounded.
struct SearchBounds {
  /// Height bound for unknowns without an entry.
  int default_height = 0;
  std::map<std::string, int> height;
  /// Explicit candidate lists; they override height bounds.
  std::map<std::string, std::vector<RatFunc>> whitelist;

  /// Parses "w:2,u:4", "*:1" for the default and "w:@tpowers(5)" for
  /// {t, ..., t^5}.
  static SearchBounds parse(const Field* f, const std::string& text);
  std::vector<RatFunc> candidates(const Field* f, const std::string& unknown) const;
  Json to_json() const;
};

struct SolveOptions {
  /// Stop after this many solutions (0 = no limit).
  std::size_t max_solutions = 0;
  /// Worker count; 0 reads H10FF_THREADS (default 1).
  int threads = 0;
};

struct SolveReport {
  /// Solutions in search order: unknowns in plan order, candidates in
  /// enumeration order.
  std::vector<Assignment> solutions;
  /// Partial and complete assignments tried.
  long long examined = 0;
  /// Rejections per top-level equation.
  std::vector<long long> failures;
  SearchBounds bounds;
  bool truncated = false;
  Json to_json() const;
};

/// Exhaustive backtracking search. Unknowns are assigned in the order in
/// which equations, sorted by ascending support size, first mention them;
/// each equation is checked as soon as its support is assigned.
SolveReport solve_bounded(const EquationSystem& sys, const SearchBounds& bounds, const SolveOptions& opts = {});

/// Sweep of the base pair system over nonconstant w with H(w) <= Hw:
/// w = t^(p^(as)) must carry a constructed witness, every other w must have
/// no auxiliary witness of height <= Hwit.
struct PkSweepReport {
  int p = 0;
  int Hw = 0;
  int Hwit = 0;
  std::size_t swept = 0;
  std::size_t constants_excluded = 0;
  std::vector<RatFunc> witnessed;
  std::size_t refuted = 0;
  std::vector<RatFunc> violations;
  bool ok() const { return violations.empty(); }
  Json to_json() const;
};
PkSweepReport check_pk_power_theorem(int p, int Hw, int Hwit);

/// Worker count from H10FF_THREADS (at least 1).
int configured_threads();

}  // namespace h10ff
