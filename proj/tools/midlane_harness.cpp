// Plays a ranked series between one external bot and the built-in AI.

#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "midlane/harness.hpp"
#include "midlane/sim/game_data.hpp"

int main(int argc, char** argv) {
  CLI::App app{"midlane competition harness"};
  std::string configPath;
  std::string botUrl;
  std::string mode = "fast";
  std::uint64_t seed = 1;
  int matches = 3;
  std::string opponents;
  std::string logDir;
  std::string report;
  std::vector<std::string> chats;
  int jobs = 1;
  std::string dataDir;
  std::string botName = "bot";
  std::string team = "radiant";
  double maxMinutes = 60.0;

  auto* cfg = app.add_option("--config", configPath, "endpoint config file");
  app.add_option("--bot-url", botUrl, "bot base URL, e.g. http://127.0.0.1:8080/Dota2AIService")
      ->excludes(cfg);
  app.add_option("--mode", mode, "realtime or fast")->check(CLI::IsMember({"realtime", "fast"}));
  app.add_option("--seed", seed, "seed of the first match");
  app.add_option("--matches", matches, "matches per opponent")->check(CLI::PositiveNumber);
  app.add_option("--opponents", opponents, "hero:personality list (default: every hero, laner and aggressive)");
  app.add_option("--log-dir", logDir, "directory for match logs and replays");
  app.add_option("--report", report, "JSON report path");
  app.add_option("--inject-chat", chats, "\"text\"@tick, sent to the bot as all-chat");
  app.add_option("--jobs", jobs, "parallel matches in fast mode")->check(CLI::PositiveNumber);
  app.add_option("--data-dir", dataDir, "game data directory");
  app.add_option("--name", botName, "bot name in the ranking");
  app.add_option("--team", team, "side the bot plays")->check(CLI::IsMember({"radiant", "dire"}));
  app.add_option("--max-minutes", maxMinutes, "game minutes before a match is drawn")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  using namespace midlane;
  try {
    auto data = dataDir.empty() ? sim::load_default_game_data()
                                : std::make_shared<const sim::GameData>(sim::load_game_data(dataDir));
    harness::SeriesConfig config;
    if (!configPath.empty()) {
      config.endpoints = protocol::load_endpoint_config_file(configPath);
    } else if (!botUrl.empty()) {
      config.endpoints = protocol::endpoint_config_for(botUrl);
    } else {
      std::cerr << "midlane_harness: one of --config or --bot-url is required\n";
      return 2;
    }
    config.botName = botName;
    config.opponents = opponents.empty() ? harness::default_opponents(*data)
                                         : harness::parse_opponents(opponents, *data);
    config.matchesPerOpponent = matches;
    config.seedBase = seed;
    config.mode = gateway::mode_from_name(mode);
    config.botTeam = team == "dire" ? protocol::Team::Dire : protocol::Team::Radiant;
    config.maxTicks = data->seconds_to_ticks(maxMinutes * 60.0);
    config.jobs = jobs;
    for (const auto& c : chats) config.scheduledChat.push_back(harness::parse_chat_injection(c));
    if (!logDir.empty()) config.logDir = logDir;
    if (!report.empty()) config.reportPath = report;

    auto ranking = harness::run_series(data, config);
    std::cout << harness::render_report(ranking).text;
  } catch (const harness::SeriesAborted& ex) {
    std::cerr << "series aborted: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "midlane_harness: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
