// Re-simulates a replay file and checks every recorded digest.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "midlane/sim/replay.hpp"

int main(int argc, char** argv) {
  CLI::App app{"midlane replay verifier"};
  std::string path;
  std::string dataDir;
  app.add_option("replay", path, "replay file")->required()->check(CLI::ExistingFile);
  app.add_option("--data-dir", dataDir, "game data directory");
  CLI11_PARSE(app, argc, argv);

  using namespace midlane;
  try {
    auto data = dataDir.empty() ? sim::load_default_game_data()
                                : std::make_shared<const sim::GameData>(sim::load_game_data(dataDir));
    std::ifstream in(path, std::ios::binary);
    auto check = sim::verify_replay(in, data);
    if (!check.ok) {
      std::cerr << "replay mismatch: " << check.error << "\n";
      return 1;
    }
    std::cout << "ok ticks=" << check.ticks << " digest=" << sim::digest_hex(check.finalDigest);
    if (check.outcome) {
      std::cout << " reason=" << sim::reason_name(check.outcome->reason);
    }
    std::cout << "\n";
  } catch (const std::exception& ex) {
    std::cerr << "midlane_replay: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
