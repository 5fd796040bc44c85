#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wupd/ast.hpp"
#include "wupd/interp.hpp"

namespace wupd {

struct UpdatePoint {
  Config oldConfig;          // crash flag clear, next redex is an output
  int64_t outputsEmitted = 0;
  int64_t inputsConsumed = 0;
};

struct StateMapping {
  Config newConfig;  // same consumed input prefix, same output count,
                     // next redex is an output
  int64_t replaySteps = 0;
};

struct HybridTrace {
  IOTrace prefix;    // old run up to the update point
  IOTrace suffix;    // new program continuation
  IOTrace combined;  // prefix ++ suffix
  Outcome suffixOutcome = Outcome::Terminated;
};

struct DsuError : std::runtime_error {
  enum class Kind { MappingNotFound, InvalidUpdatePoint };
  Kind kind;
  DsuError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

enum class CompatStatus { Compatible, Incompatible, Inconclusive };
std::string compat_status_name(CompatStatus s);

struct CompatResult {
  CompatStatus status = CompatStatus::Inconclusive;
  IOTrace oldTrace, newTrace;  // witness pair
  int64_t divergeIndex = -1;   // first differing event when Incompatible
  std::string reason;          // for Inconclusive
};

// Runs both programs on the same inputs and decides whether the new program
// reproduces every old I/O prefix up to each output event.
CompatResult empirical_backward_compat(const Program& oldP, const Program& newP,
                                       const std::vector<int64_t>& inputs,
                                       int64_t fuel);

// Pauses the old program at the earliest configuration before its j-th
// output (1-based). Empty when the run never reaches it.
std::optional<UpdatePoint> find_update_point(const Program& oldP,
                                             const std::vector<int64_t>& inputs,
                                             int64_t atOutput, int64_t fuel);

// Replays the new program on the consumed input prefix until it has emitted
// the same number of outputs and its next redex is an output statement.
// Throws DsuError on invalid points, starvation, or fuel exhaustion.
StateMapping map_state(const Program& oldP, const Program& newP,
                       const UpdatePoint& up, int64_t fuel);

// Old prefix trace concatenated with the mapped new continuation on the
// remaining inputs.
HybridTrace hybrid_execute(const Program& oldP, const Program& newP,
                           const UpdatePoint& up,
                           const std::vector<int64_t>& remainingInputs,
                           int64_t fuel);

}  // namespace wupd
