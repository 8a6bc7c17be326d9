#pragma once

// Game-side proxy: runs the tick loop, posts snapshots to the external bot
// and feeds its replies into the simulator. The other team is played by the
// built-in AI in-process.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "midlane/builtin_ai.hpp"
#include "midlane/protocol.hpp"
#include "midlane/sim/world.hpp"

namespace midlane::gateway {

using protocol::Team;

enum class Mode { Realtime, Fast };

std::string_view mode_name(Mode m);
Mode mode_from_name(std::string_view name);  // throws protocol::ConfigError

struct GatewayOptions {
  std::chrono::milliseconds softTimeout{500};
  int forfeitAfterFailures = 150;  // consecutive transport failures
  std::chrono::milliseconds connectTimeout{2000};
};

enum class CallStatus { Ok, TransportError, BadStatus, ProtocolError };

struct CallResult {
  CallStatus status = CallStatus::Ok;
  int httpStatus = 0;
  std::string error;
  double latencyMs = 0.0;
  std::size_t sentBytes = 0;
  bool slow = false;  // over the soft timeout

  bool ok() const { return status == CallStatus::Ok; }
};

// HTTP client for one bot. Calls block until the bot replies; there is no
// hard timeout on the read, only a warning past the soft timeout.
class BotEndpoint {
 public:
  explicit BotEndpoint(protocol::EndpointConfig config, GatewayOptions options = {});
  ~BotEndpoint();
  BotEndpoint(BotEndpoint&&) noexcept;
  BotEndpoint& operator=(BotEndpoint&&) noexcept;

  struct Select {
    std::optional<protocol::HeroSelection> selection;
    CallResult call;
  };
  struct Update {
    protocol::BotCommand command = protocol::cmd::Noop{};
    CallResult call;
  };

  Select call_select(const std::set<std::string>& roster);
  Update call_update(const protocol::EntitySnapshot& snapshot);
  CallResult call_chat(const protocol::ChatEvent& event);
  CallResult call_test();

  const protocol::EndpointConfig& config() const;
  int consecutive_warnings() const;
  int consecutive_failures() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ScheduledChat {
  std::int64_t tick = 0;
  protocol::ChatEvent event;
};

struct MatchSetup {
  protocol::EndpointConfig endpoints;
  Team botTeam = Team::Radiant;
  ai::BuiltinPersonality opponent = ai::BuiltinPersonality::preset(ai::Personality::Laner,
                                                                   "npc_dota_hero_lina");
  std::uint64_t seed = 1;
  Mode mode = Mode::Fast;
  GatewayOptions gateway;
  // The match is declared a draw once the clock reaches this many ticks.
  std::int64_t maxTicks = 60 * 60 * 30;
  std::vector<ScheduledChat> scheduledChat;
};

struct MatchResult {
  std::optional<Team> winner;
  sim::OutcomeReason reason = sim::OutcomeReason::Draw;
  std::int64_t ticks = 0;
  int protocolErrorCount = 0;
  int transportErrorCount = 0;
  int warningCount = 0;
  int rejectedOrders = 0;
  std::string botHero;
  std::string opponentHero;
  std::uint64_t finalDigest = 0;
  std::string abortReason;  // set for forfeits
};

struct TickInfo {
  std::int64_t tick = 0;
  const sim::WorldState* world = nullptr;
  const protocol::EntitySnapshot* botSnapshot = nullptr;
  protocol::BotCommand botCommand;
  protocol::BotCommand builtinCommand;
};

class MatchDriver {
 public:
  MatchDriver(std::shared_ptr<const sim::GameData> data, MatchSetup setup);

  // JSONL, one record per tick.
  void set_log(std::ostream* log) { log_ = log; }
  void set_replay(std::ostream* replay) { replay_ = replay; }
  // Called every tick just before the world steps, with the snapshot the
  // bot saw and both submitted commands.
  void set_tick_observer(std::function<void(const TickInfo&)> f) { observer_ = std::move(f); }

  // Thread-safe. Delivered before the next /update. Throws
  // sim::IllegalState once the match is over.
  void inject_chat(const protocol::ChatEvent& event);
  bool finished() const;

  MatchResult run();

 private:
  std::shared_ptr<const sim::GameData> data_;
  MatchSetup setup_;
  std::ostream* log_ = nullptr;
  std::ostream* replay_ = nullptr;
  std::function<void(const TickInfo&)> observer_;
  mutable std::mutex chatMutex_;
  std::vector<protocol::ChatEvent> chatQueue_;
  bool finished_ = false;
};

// Whether a chat event from `event.player` reaches a bot on `botTeam`.
bool chat_reaches(const protocol::ChatEvent& event, Team botTeam);

MatchResult run_match(std::shared_ptr<const sim::GameData> data, MatchSetup setup,
                      std::ostream* log = nullptr, std::ostream* replay = nullptr);

}  // namespace midlane::gateway
