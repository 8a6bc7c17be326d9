#include "midlane/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace midlane::harness {

using protocol::ConfigError;
using protocol::Json;

namespace {

constexpr std::string_view kHeroPrefix = "npc_dota_hero_";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string short_hero(std::string_view hero) {
  if (hero.substr(0, kHeroPrefix.size()) == kHeroPrefix) hero.remove_prefix(kHeroPrefix.size());
  return std::string(hero);
}

std::string match_file(const std::filesystem::path& dir, int index, const char* suffix) {
  char name[64];
  std::snprintf(name, sizeof name, "match_%03d%s", index, suffix);
  return (dir / name).string();
}

}  // namespace

std::vector<Opponent> default_opponents(const sim::GameData& data) {
  std::vector<Opponent> out;
  for (const auto& h : data.heroes) {
    for (auto p : {ai::Personality::Laner, ai::Personality::Aggressive}) out.push_back({h.id, p});
  }
  return out;
}

std::vector<Opponent> parse_opponents(std::string_view list, const sim::GameData& data) {
  std::vector<Opponent> out;
  while (!list.empty()) {
    auto comma = list.find(',');
    auto item = trim(list.substr(0, comma));
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("opponent '" + std::string(item) + "' is not hero:personality");
    }
    std::string hero(trim(item.substr(0, colon)));
    if (!data.find_hero(hero)) hero = std::string(kHeroPrefix) + hero;
    data.hero(hero);
    out.push_back({hero, ai::personality_from_name(trim(item.substr(colon + 1)))});
  }
  return out;
}

void SeriesConfig::validate() const {
  if (opponents.empty()) throw ConfigError("series has no opponents");
  if (matchesPerOpponent < 1) throw ConfigError("matches per opponent must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (maxTicks < 1) throw ConfigError("max ticks must be positive");
  if (endpoints.endpoints.empty()) throw ConfigError("no bot endpoints configured");
}

BotRecord tally(std::string name, protocol::Team botTeam, const std::vector<MatchRecord>& matches) {
  BotRecord r;
  r.name = std::move(name);
  for (const auto& m : matches) {
    const auto& res = m.result;
    r.protocolErrors += res.protocolErrorCount;
    if (res.reason == sim::OutcomeReason::Forfeit && res.winner != botTeam) {
      ++r.forfeits;
    } else if (!res.winner) {
      ++r.draws;
    } else if (*res.winner == botTeam) {
      ++r.wins;
    } else {
      ++r.losses;
    }
  }
  return r;
}

bool ranks_before(const BotRecord& a, const BotRecord& b) {
  if (a.wins != b.wins) return a.wins > b.wins;
  if (a.protocolErrors != b.protocolErrors) return a.protocolErrors < b.protocolErrors;
  return a.name < b.name;
}

void sort_ranking(std::vector<BotRecord>& bots) {
  std::sort(bots.begin(), bots.end(), ranks_before);
}

SeriesRanking run_series(std::shared_ptr<const sim::GameData> data, const SeriesConfig& config) {
  config.validate();
  {
    gateway::BotEndpoint probe(config.endpoints, config.gateway);
    auto test = probe.call_test();
    if (!test.ok()) {
      throw SeriesAborted("bot did not answer /test at " + config.endpoints.url_for("test") +
                          ": " + test.error);
    }
  }
  if (config.logDir) std::filesystem::create_directories(*config.logDir);

  std::vector<MatchRecord> matches;
  for (const auto& opp : config.opponents) {
    for (int rep = 0; rep < config.matchesPerOpponent; ++rep) {
      MatchRecord m;
      m.index = static_cast<int>(matches.size());
      m.opponent = opp;
      m.seed = config.seedBase + static_cast<std::uint64_t>(m.index);
      matches.push_back(std::move(m));
    }
  }

  auto play = [&](MatchRecord& m) {
    gateway::MatchSetup setup;
    setup.endpoints = config.endpoints;
    setup.botTeam = config.botTeam;
    setup.opponent = ai::BuiltinPersonality::preset(m.opponent.personality, m.opponent.hero);
    setup.seed = m.seed;
    setup.mode = config.mode;
    setup.gateway = config.gateway;
    setup.maxTicks = config.maxTicks;
    setup.scheduledChat = config.scheduledChat;

    std::ofstream log, replay;
    if (config.logDir) {
      log.open(match_file(*config.logDir, m.index, ".jsonl"), std::ios::binary);
      replay.open(match_file(*config.logDir, m.index, ".replay.jsonl"), std::ios::binary);
    }
    m.result = gateway::run_match(data, std::move(setup), config.logDir ? &log : nullptr,
                                  config.logDir ? &replay : nullptr);
  };

  const int workers =
      config.mode == gateway::Mode::Fast ? std::min<int>(config.jobs, static_cast<int>(matches.size())) : 1;
  if (workers <= 1) {
    for (auto& m : matches) play(m);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::mutex errorMutex;
    std::exception_ptr error;
    for (int i = 0; i < workers; ++i) {
      pool.emplace_back([&] {
        for (std::size_t k; (k = next++) < matches.size();) {
          try {
            play(matches[k]);
          } catch (...) {
            std::lock_guard lock(errorMutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  SeriesRanking ranking;
  ranking.bots.push_back(tally(config.botName, config.botTeam, matches));
  sort_ranking(ranking.bots);
  ranking.matches = std::move(matches);

  if (config.reportPath) {
    std::ofstream out(*config.reportPath, std::ios::binary);
    if (!out) throw ConfigError("cannot write report '" + config.reportPath->string() + "'");
    out << render_report(ranking).json.dump(2) << '\n';
  }
  return ranking;
}

namespace {

Json bot_json(const BotRecord& b) {
  return {{"name", b.name},         {"wins", b.wins},
          {"losses", b.losses},     {"draws", b.draws},
          {"forfeits", b.forfeits}, {"protocolErrors", b.protocolErrors},
          {"matches", b.total()}};
}

}  // namespace

Report render_report(const SeriesRanking& ranking) {
  Report r;
  r.json = Json::object();
  r.json["report"] = 1;
  r.json["bots"] = Json::array();
  std::ostringstream text;
  text << "rank  bot\n";
  int rank = 0;
  for (const auto& b : ranking.bots) {
    r.json["bots"].push_back(bot_json(b));
    text << ++rank << "  " << b.name << "  wins=" << b.wins << " losses=" << b.losses
         << " draws=" << b.draws << " forfeits=" << b.forfeits
         << " protocolErrors=" << b.protocolErrors << "\n";
  }
  r.json["matches"] = Json::array();
  if (!ranking.matches.empty()) text << "\nmatch  opponent  seed  winner  reason  ticks\n";
  for (const auto& m : ranking.matches) {
    const auto& res = m.result;
    const int winner = res.winner ? static_cast<int>(*res.winner) : 0;
    r.json["matches"].push_back(
        {{"index", m.index},
         {"hero", m.opponent.hero},
         {"personality", std::string(ai::personality_name(m.opponent.personality))},
         {"seed", m.seed},
         {"winner", winner},
         {"reason", std::string(sim::reason_name(res.reason))},
         {"ticks", res.ticks},
         {"protocolErrors", res.protocolErrorCount},
         {"transportErrors", res.transportErrorCount},
         {"warnings", res.warningCount},
         {"digest", res.finalDigest}});
    text << m.index << "  " << short_hero(m.opponent.hero) << ":"
         << ai::personality_name(m.opponent.personality) << "  " << m.seed << "  "
         << (res.winner ? std::string(protocol::team_name(*res.winner)) : "-") << "  "
         << sim::reason_name(res.reason) << "  " << res.ticks << "\n";
  }
  r.text = text.str();
  return r;
}

std::vector<BotRecord> parse_report(const Json& report) {
  std::vector<BotRecord> out;
  try {
    for (const auto& b : report.at("bots")) {
      BotRecord r;
      r.name = b.at("name").get<std::string>();
      r.wins = b.at("wins").get<int>();
      r.losses = b.at("losses").get<int>();
      r.draws = b.at("draws").get<int>();
      r.forfeits = b.at("forfeits").get<int>();
      r.protocolErrors = b.at("protocolErrors").get<int>();
      out.push_back(std::move(r));
    }
  } catch (const Json::exception& ex) {
    throw ConfigError(std::string("bad report: ") + ex.what());
  }
  return out;
}

gateway::ScheduledChat parse_chat_injection(std::string_view spec) {
  auto at = spec.rfind('@');
  if (at == std::string_view::npos) throw ConfigError("chat injection must be text@tick");
  auto tickText = trim(spec.substr(at + 1));
  std::int64_t tick = -1;
  auto [ptr, ec] = std::from_chars(tickText.data(), tickText.data() + tickText.size(), tick);
  if (ec != std::errc() || ptr != tickText.data() + tickText.size() || tick < 0) {
    throw ConfigError("bad tick in chat injection '" + std::string(spec) + "'");
  }
  auto text = spec.substr(0, at);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  }
  return {tick, protocol::ChatEvent{false, std::string(text), 0}};
}

}  // namespace midlane::harness
