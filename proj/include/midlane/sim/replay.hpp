#pragma once

// Replay files: one JSON object per line. The first line names the heroes
// and the seed; each following line carries the orders both teams submitted
// at a tick and the world digest after stepping it.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "midlane/sim/world.hpp"

namespace midlane::sim {

std::string digest_hex(std::uint64_t digest);

class ReplayWriter {
 public:
  explicit ReplayWriter(std::ostream& out) : out_(&out) {}

  void header(const WorldState& initial);
  // `tick` is the tick at which the orders were submitted; `digestAfter`
  // is the digest once the world stepped past it.
  void record(std::int64_t tick, const BotCommand& radiant, const BotCommand& dire,
              std::uint64_t digestAfter);
  void outcome(const MatchOutcome& o);

 private:
  std::ostream* out_;
};

struct ReplayCheck {
  bool ok = false;
  std::int64_t ticks = 0;
  std::uint64_t finalDigest = 0;
  std::optional<MatchOutcome> outcome;
  std::string error;
};

// Re-simulates a replay and compares every recorded digest.
ReplayCheck verify_replay(std::istream& in, std::shared_ptr<const GameData> data);

}  // namespace midlane::sim
