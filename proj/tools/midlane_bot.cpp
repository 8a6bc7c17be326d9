// Runs the reference Lina bot (or a NOOP bot) as an HTTP service.

#include <pthread.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "midlane/botkit.hpp"
#include "midlane/lina_bot.hpp"
#include "midlane/sim/game_data.hpp"

int main(int argc, char** argv) {
  CLI::App app{"midlane reference bot service"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string basePath = "/Dota2AIService";
  std::string configPath;
  std::string transitionLog;
  std::string bot = "lina";
  std::string dataDir;
  app.add_option("--host", host, "bind address");
  app.add_option("--port", port, "listen port (0 picks a free one)");
  app.add_option("--base-path", basePath, "URL prefix for the four endpoints");
  app.add_option("--config", configPath, "bot config file (key=value)");
  app.add_option("--transition-log", transitionLog, "JSONL file for state transitions");
  app.add_option("--bot", bot, "lina or noop")->check(CLI::IsMember({"lina", "noop"}));
  app.add_option("--data-dir", dataDir, "game data directory");
  CLI11_PARSE(app, argc, argv);

  // Block the stop signals in every thread; main picks them up with sigwait.
  sigset_t stopSignals;
  sigemptyset(&stopSignals);
  sigaddset(&stopSignals, SIGINT);
  sigaddset(&stopSignals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stopSignals, nullptr);

  try {
    auto data = dataDir.empty() ? midlane::sim::load_default_game_data()
                                : std::make_shared<const midlane::sim::GameData>(
                                      midlane::sim::load_game_data(dataDir));
    std::ofstream log;
    if (!transitionLog.empty()) {
      log.open(transitionLog, std::ios::app);
      if (!log) throw midlane::protocol::ConfigError("cannot open " + transitionLog);
    }

    std::shared_ptr<midlane::botkit::BotHandler> handler;
    if (bot == "noop") {
      handler = std::make_shared<midlane::botkit::NoopBot>();
    } else {
      midlane::botkit::LinaConfig cfg;
      if (!configPath.empty()) cfg = midlane::botkit::load_lina_config_file(configPath);
      handler = std::make_shared<midlane::botkit::LinaBot>(cfg, data, log.is_open() ? &log : nullptr);
    }

    auto service = midlane::botkit::serve(handler, {host, port, basePath, nullptr});
    std::cout << "listening on " << service.base_url() << std::endl;
    int sig = 0;
    sigwait(&stopSignals, &sig);
    service.stop();
  } catch (const std::exception& ex) {
    std::cerr << "midlane_bot: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
