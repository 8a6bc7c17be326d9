#pragma once

// Scripted in-process opponent. It reads the same EntitySnapshot an external
// bot would receive and answers with a BotCommand, without any HTTP.

#include <string>
#include <string_view>

#include "midlane/protocol.hpp"
#include "midlane/sim/game_data.hpp"

namespace midlane::ai {

enum class Personality { Passive, Laner, Aggressive };

std::string_view personality_name(Personality p);
Personality personality_from_name(std::string_view name);  // throws protocol::ConfigError

struct BuiltinPersonality {
  Personality kind = Personality::Laner;
  double aggressionRange = 0.0;  // hero chase radius, aggressive only
  double retreatThreshold = 0.3;  // fraction of max health, in (0, 1)
  std::string hero;

  static BuiltinPersonality preset(Personality kind, std::string hero);
};

struct BuiltinState {
  enum class Phase { Idle, Push, Fight, Retreat, Dead };
  Phase phase = Phase::Idle;
  std::int64_t decisions = 0;

  bool operator==(const BuiltinState&) const = default;
};

struct BuiltinDecision {
  protocol::BotCommand command;
  BuiltinState state;
};

BuiltinDecision builtin_decide(const protocol::EntitySnapshot& snapshot,
                               const BuiltinPersonality& personality, const BuiltinState& state,
                               const sim::GameData& data);

// Convenience wrapper that owns the state between ticks.
class BuiltinController {
 public:
  BuiltinController(BuiltinPersonality personality, std::shared_ptr<const sim::GameData> data)
      : personality_(std::move(personality)), data_(std::move(data)) {}

  protocol::BotCommand decide(const protocol::EntitySnapshot& snapshot) {
    auto d = builtin_decide(snapshot, personality_, state_, *data_);
    state_ = d.state;
    return d.command;
  }
  const BuiltinPersonality& personality() const { return personality_; }
  const BuiltinState& state() const { return state_; }

 private:
  BuiltinPersonality personality_;
  std::shared_ptr<const sim::GameData> data_;
  BuiltinState state_;
};

}  // namespace midlane::ai
