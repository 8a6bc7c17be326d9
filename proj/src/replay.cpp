#include "midlane/sim/replay.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>

namespace midlane::sim {

using protocol::Json;

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, digest);
  return buf;
}

void ReplayWriter::header(const WorldState& initial) {
  Json j = Json::object();
  j["replay"] = 1;
  j["radiantHero"] = initial.config.radiantHero;
  j["direHero"] = initial.config.direHero;
  j["seed"] = initial.seed;
  j["digest"] = digest_hex(digest(initial));
  *out_ << j.dump() << '\n';
}

void ReplayWriter::record(std::int64_t tick, const BotCommand& radiant, const BotCommand& dire,
                          std::uint64_t digestAfter) {
  Json j = Json::object();
  j["tick"] = tick;
  j["orders"] = {{"2", protocol::command_to_json(radiant)}, {"3", protocol::command_to_json(dire)}};
  j["digest"] = digest_hex(digestAfter);
  *out_ << j.dump() << '\n';
}

void ReplayWriter::outcome(const MatchOutcome& o) {
  Json j = Json::object();
  j["outcome"] = {{"winner", o.winner ? static_cast<int>(*o.winner) : 0},
                  {"reason", std::string(reason_name(o.reason))},
                  {"endTick", o.endTick}};
  *out_ << j.dump() << '\n';
  out_->flush();
}

ReplayCheck verify_replay(std::istream& in, std::shared_ptr<const GameData> data) {
  ReplayCheck check;
  std::string line;
  if (!std::getline(in, line)) {
    check.error = "empty replay";
    return check;
  }
  try {
    Json head = Json::parse(line);
    MatchConfig config{head.at("radiantHero").get<std::string>(),
                       head.at("direHero").get<std::string>()};
    WorldState world = init_world(std::move(data), config, head.at("seed").get<std::uint64_t>());
    if (head.at("digest").get<std::string>() != digest_hex(digest(world))) {
      check.error = "initial digest mismatch";
      return check;
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Json j = Json::parse(line);
      if (j.contains("outcome")) {
        const auto& o = j["outcome"];
        MatchOutcome recorded;
        int winner = o.at("winner").get<int>();
        if (winner != 0) recorded.winner = static_cast<protocol::Team>(winner);
        recorded.reason = reason_from_name(o.at("reason").get<std::string>());
        recorded.endTick = o.at("endTick").get<std::int64_t>();
        check.outcome = recorded;
        continue;
      }
      const auto tick = j.at("tick").get<std::int64_t>();
      if (tick != world.tick) {
        check.error = "tick " + std::to_string(tick) + " out of sequence";
        return check;
      }
      submit_order(world, Team::Radiant, protocol::command_from_json(j.at("orders").at("2")));
      submit_order(world, Team::Dire, protocol::command_from_json(j.at("orders").at("3")));
      step(world);
      ++check.ticks;
      if (j.at("digest").get<std::string>() != digest_hex(digest(world))) {
        check.error = "digest mismatch after tick " + std::to_string(tick);
        return check;
      }
    }
    check.finalDigest = digest(world);
    if (check.outcome && check.outcome->reason != OutcomeReason::Forfeit &&
        world.outcome != check.outcome && check.outcome->reason != OutcomeReason::Draw) {
      check.error = "recorded outcome differs from simulated outcome";
      return check;
    }
    check.ok = true;
  } catch (const std::exception& ex) {
    check.error = ex.what();
  }
  return check;
}

}  // namespace midlane::sim
