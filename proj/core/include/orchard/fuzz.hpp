#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "orchard/ast.hpp"

namespace orchard {

struct FuzzChecks {
  bool validate = true;
  bool round_trip = true;
  bool differential = true;
};

struct FuzzOptions {
  std::uint64_t n = 100000;
  std::uint64_t seed = 0;
  int min_depth = 2;
  int max_depth = 13;
  FuzzChecks checks;
};

struct FuzzViolation {
  std::string check;       // "validate" | "round-trip" | "differential"
  std::string reproducer;  // serialized pair, greedily shrunk
  std::string detail;
};

struct FuzzReport {
  std::uint64_t executed = 0;
  std::optional<FuzzViolation> violation;
};

using EvalFn = std::function<Answer(const SequencePair&)>;

// Draws pairs cycling through all six (family x difficulty) variants with
// depths uniform over [min_depth, max_depth], checking that validate finds
// no violations, that serialize/parse round-trips, and that eval_pair (or
// the injected override) agrees with oracle_eval_pair. Stops at the first
// violation and shrinks its reproducer. The override hook exists so tests
// can prove the harness catches a broken evaluator.
FuzzReport run_fuzz(const FuzzOptions& opts, EvalFn eval_override = {});

}  // namespace orchard
