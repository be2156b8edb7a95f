#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "h10ff/system.hpp"

namespace h10ff::cli {

/// Names accepted by `check`, "all" included.
std::vector<std::string> suite_names();

/// Runs one invariant suite (or every suite for "all"). The report lists
/// each check with its outcome; `ok` is false when any check fails.
Json run_suite(const std::string& name, std::uint64_t seed, bool& ok);

}  // namespace h10ff::cli
