#pragma once

// Competition runner: plays one external bot against a schedule of built-in
// opponents and ranks it by matches won.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "midlane/builtin_ai.hpp"
#include "midlane/gateway.hpp"

namespace midlane::harness {

struct Opponent {
  std::string hero;
  ai::Personality personality = ai::Personality::Laner;

  bool operator==(const Opponent&) const = default;
};

// The default schedule: every roster hero as laner and aggressive.
std::vector<Opponent> default_opponents(const sim::GameData& data);

// "hero:personality,..." where hero may omit the npc_dota_hero_ prefix.
// Throws protocol::ConfigError.
std::vector<Opponent> parse_opponents(std::string_view list, const sim::GameData& data);

struct SeriesConfig {
  std::string botName = "bot";
  protocol::EndpointConfig endpoints;
  std::vector<Opponent> opponents;
  int matchesPerOpponent = 3;
  std::uint64_t seedBase = 1;
  gateway::Mode mode = gateway::Mode::Fast;
  gateway::GatewayOptions gateway;
  protocol::Team botTeam = protocol::Team::Radiant;
  std::int64_t maxTicks = 60 * 60 * 30;
  std::vector<gateway::ScheduledChat> scheduledChat;  // applied to every match
  std::optional<std::filesystem::path> logDir;        // match_NNN.jsonl, match_NNN.replay.jsonl
  std::optional<std::filesystem::path> reportPath;    // JSON report
  int jobs = 1;  // parallel matches, fast mode only

  // Throws protocol::ConfigError.
  void validate() const;
};

class SeriesAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatchRecord {
  int index = 0;
  Opponent opponent;
  std::uint64_t seed = 0;
  gateway::MatchResult result;
};

struct BotRecord {
  std::string name;
  int wins = 0;
  int losses = 0;
  int draws = 0;
  int forfeits = 0;
  int protocolErrors = 0;

  int total() const { return wins + losses + draws + forfeits; }
  bool operator==(const BotRecord&) const = default;
};

struct SeriesRanking {
  std::vector<BotRecord> bots;  // ordered by rank
  std::vector<MatchRecord> matches;
};

// Forfeits are kept apart from losses but rank the same (neither is a win).
BotRecord tally(std::string name, protocol::Team botTeam, const std::vector<MatchRecord>& matches);

// Wins descending, then fewer protocol errors, then name.
bool ranks_before(const BotRecord& a, const BotRecord& b);
void sort_ranking(std::vector<BotRecord>& bots);

SeriesRanking run_series(std::shared_ptr<const sim::GameData> data, const SeriesConfig& config);

struct Report {
  std::string text;
  protocol::Json json;
};

Report render_report(const SeriesRanking& ranking);
// Reads the "bots" table back out of a JSON report.
std::vector<BotRecord> parse_report(const protocol::Json& report);

// Parses `text@tick` as used by --inject-chat. The event is sent as all-chat
// from player 0.
gateway::ScheduledChat parse_chat_injection(std::string_view spec);

}  // namespace midlane::harness
