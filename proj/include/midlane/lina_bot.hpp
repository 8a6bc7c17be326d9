#pragma once

// Reference bot: a small state machine for Lina that walks to mid, fights
// creeps and heroes, casts at random, retreats when hurt and follows two
// team-chat commands.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "midlane/botkit.hpp"
#include "midlane/protocol.hpp"
#include "midlane/sim/game_data.hpp"

namespace midlane::botkit {

enum class LinaPhase { Selecting, WalkMid, Fight, Retreat, Shopping, Dead };

std::string_view phase_name(LinaPhase p);

struct LinaConfig {
  std::string hero = "npc_dota_hero_lina";
  double retreatThreshold = 0.35;
  double castProbability = 0.2;
  std::uint64_t seed = 1;
};

// `key=value` lines with `#` comments: retreat_threshold, cast_probability,
// seed, hero. Throws protocol::ConfigError.
LinaConfig load_lina_config(std::string_view text);
LinaConfig load_lina_config_file(const std::string& path);

struct LinaTransition {
  std::int64_t tick = 0;
  LinaPhase from = LinaPhase::Selecting;
  LinaPhase to = LinaPhase::Selecting;
  std::string cause;

  bool operator==(const LinaTransition&) const = default;
};

struct LinaState {
  LinaPhase phase = LinaPhase::Selecting;
  double retreatThreshold = 0.35;
  std::optional<protocol::BotCommand> pendingChatOrder;
  std::int64_t lastTick = 0;
  std::mt19937_64 rng;
  // Transitions since the caller last drained them.
  std::vector<LinaTransition> transitions;

  static LinaState fresh(const LinaConfig& config);
};

struct LinaStep {
  protocol::BotCommand command;
  LinaState state;
};

LinaStep lina_update(const protocol::EntitySnapshot& snapshot, LinaState state,
                     const LinaConfig& config, const sim::GameData& data);
LinaState lina_chat(const protocol::ChatEvent& event, LinaState state);

// Lowercased, whitespace-collapsed, trimmed.
std::string normalize_chat(std::string_view text);

class LinaBot : public BotHandler {
 public:
  // `transitionLog` receives one JSON object per line per phase change.
  LinaBot(LinaConfig config, std::shared_ptr<const sim::GameData> data,
          std::ostream* transitionLog = nullptr);

  protocol::HeroSelection on_select() override;
  protocol::BotCommand on_update(const protocol::EntitySnapshot& snapshot) override;
  void on_chat(const protocol::ChatEvent& event) override;

  const LinaState& state() const { return state_; }
  const std::vector<LinaTransition>& history() const { return history_; }

 private:
  void flush();

  LinaConfig config_;
  std::shared_ptr<const sim::GameData> data_;
  std::ostream* log_;
  LinaState state_;
  std::vector<LinaTransition> history_;
};

}  // namespace midlane::botkit
