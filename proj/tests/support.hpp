#pragma once

// Helpers shared by the test binaries: fixture snapshots, random generators
// and a scripted bot.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "midlane/botkit.hpp"
#include "midlane/protocol.hpp"
#include "midlane/sim/game_data.hpp"
#include "midlane/sim/world.hpp"

namespace midlane::testing {

inline std::shared_ptr<const sim::GameData> data() {
  static auto d = sim::load_default_game_data();
  return d;
}

// The Dire tier-1 tower as it appears in the reference Update payload.
inline protocol::EntityRecord canonical_tower() {
  protocol::EntityRecord e;
  e.id = {760};
  e.type = "Tower";
  e.name = "dota_badguys_tower1_top";
  e.team = protocol::Team::Dire;
  e.level = 1;
  e.health = 1300;
  e.mana = 0;
  e.alive = true;
  e.attackRange = 700;
  e.origin = {-4736, 6016, 383.99987792969};
  return e;
}

inline protocol::EntityRecord make_entity(std::uint32_t id, std::string type, protocol::Team team,
                                          double x, double y, int health = 500) {
  protocol::EntityRecord e;
  e.id = {id};
  e.type = std::move(type);
  e.name = e.type == "Creep" ? "npc_dota_creep" : "unit";
  e.team = team;
  e.level = 1;
  e.health = health;
  e.alive = health > 0;
  e.attackRange = 100;
  e.origin = {x, y, 128};
  return e;
}

inline protocol::EntityRecord make_hero(std::uint32_t id, const std::string& hero,
                                        protocol::Team team, double x, double y, int health,
                                        int level = 1, double mana = 300) {
  auto e = make_entity(id, "Hero", team, x, y, health);
  const auto& def = data()->hero(hero);
  e.name = hero;
  e.level = level;
  e.mana = mana;
  e.attackRange = def.attackRange;
  protocol::HeroFields f;
  f.gold = 600;
  for (std::size_t i = 0; i < def.abilities.size(); ++i) {
    f.abilities.push_back({static_cast<int>(i), def.abilities[i].name, i == 0 ? 1 : 0, 0.0});
  }
  e.hero = f;
  return e;
}

inline protocol::EntitySnapshot snapshot_of(protocol::Team team,
                                            std::vector<protocol::EntityRecord> entities,
                                            std::int64_t tick = 100) {
  protocol::EntitySnapshot s;
  s.team = team;
  s.tick = tick;
  s.clock = static_cast<double>(tick) / 30.0;
  for (auto& e : entities) s.entities.emplace(e.id, std::move(e));
  return s;
}

// Brute-force fog rule written from the balance numbers alone: a point is
// visible to `team` iff some living allied unit has it inside its vision
// radius.
inline bool visible_to(const sim::WorldState& w, protocol::Team team, sim::Vec2 p) {
  const auto& b = data()->balance;
  auto within = [&](sim::Vec2 a, double r) {
    const double dx = a.x - p.x;
    const double dy = a.y - p.y;
    return dx * dx + dy * dy <= r * r;
  };
  const auto& h = w.hero(team);
  if (h.alive && h.unit.health > 0 && within(h.unit.pos, data()->hero(h.heroId).vision)) return true;
  const auto& t = w.tower(team);
  if (t.unit.health > 0 && within(t.unit.pos, b.tower.vision)) return true;
  if (within(w.courier(team).pos, b.courierVision)) return true;
  for (const auto& c : w.creeps) {
    if (c.unit.team == team && c.unit.health > 0 && within(c.unit.pos, b.meleeCreep.vision)) return true;
  }
  return false;
}

// Random wire values for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Mix of integral and fractional values, including ones that need all 17
  // significant digits.
  double coordinate() {
    switch (integer(0, 3)) {
      case 0:
        return static_cast<double>(integer(-8000, 8000));
      case 1:
        return real(-8000, 8000);
      case 2:
        return std::nextafter(static_cast<double>(integer(-8000, 8000)), 1e9);
      default:
        return 383.99987792969;
    }
  }

  std::string text(int maxLen) {
    static constexpr char kChars[] = "abcdefghijklmnopqrstuvwxyz_0123456789 \"\\/\t\n{}[]:,";
    std::string s;
    const int n = integer(0, maxLen);
    for (int i = 0; i < n; ++i) s.push_back(kChars[integer(0, sizeof kChars - 2)]);
    if (coin()) s += "\xc3\xa9";  // a multi-byte UTF-8 character
    return s;
  }

  protocol::EntityRecord entity(std::uint32_t id) {
    static const char* kTypes[] = {"Tower", "Hero", "Creep", "Courier", "Building"};
    protocol::EntityRecord e;
    e.id = {id};
    e.type = kTypes[integer(0, 4)];
    e.name = text(24);
    e.team = coin() ? protocol::Team::Radiant : protocol::Team::Dire;
    e.level = integer(0, 25);
    e.health = integer(0, 5000);
    e.mana = coin() ? static_cast<double>(integer(0, 1000)) : real(0, 1000);
    e.alive = coin();
    e.attackRange = coordinate();
    e.origin = {coordinate(), coordinate(), coordinate()};
    e.blind = coin();
    e.disarmed = coin();
    e.dominated = coin();
    e.rooted = coin();
    e.deniable = coin();
    if (e.type == "Hero") {
      protocol::HeroFields f;
      f.gold = integer(0, 100000);
      for (int i = integer(0, 4); i > 0; --i) {
        f.abilities.push_back({integer(0, 5), text(12), integer(0, 4), coin() ? 0.0 : real(0, 60)});
      }
      for (int i = integer(0, 6); i > 0; --i) {
        f.items.push_back({integer(0, 5), text(12), integer(0, 3)});
      }
      e.hero = f;
    }
    return e;
  }

  protocol::EntitySnapshot snapshot() {
    protocol::EntitySnapshot s;
    s.team = coin() ? protocol::Team::Radiant : protocol::Team::Dire;
    s.tick = integer(0, 200000);
    s.clock = static_cast<double>(s.tick) / 30.0;
    for (int i = integer(0, 30); i > 0; --i) {
      auto id = static_cast<std::uint32_t>(integer(0, 100000));
      s.entities.emplace(protocol::EntityId{id}, entity(id));
    }
    return s;
  }

  protocol::BotCommand command() {
    namespace cmd = protocol::cmd;
    auto id = [&] { return protocol::EntityId{static_cast<std::uint32_t>(integer(0, 1 << 30))}; };
    switch (integer(0, 6)) {
      case 0:
        return cmd::Noop{};
      case 1:
        return cmd::Move{{coordinate(), coordinate(), coordinate()}};
      case 2:
        return cmd::Attack{id()};
      case 3:
        return cmd::Cast{integer(0, 5), id()};
      case 4:
        return cmd::Buy{text(16)};
      case 5:
        return cmd::Sell{integer(0, 5)};
      default:
        return cmd::UseItem{integer(0, 5), coin() ? std::optional(id()) : std::nullopt};
    }
  }


  // Request bodies for decoder fuzzing: raw bytes, mutated valid payloads and
  // well-formed JSON with wrong types.
  std::string command_body() {
    static const std::vector<std::string> seeds = {
        R"({"x" : "4000", "y" : "4000", "z" : "380", "command" : "MOVE"})",
        R"({"target" : 370, "command" : "ATTACK"})",
        R"({"ability" : 3, "target" : 370, "command" : "CAST"})",
        R"({"command":"NOOP"})",
        R"({"item":"item_tango","command":"BUY"})",
        R"({"slot":2,"target":5,"command":"USE_ITEM"})",
    };
    std::string body;
    switch (integer(0, 2)) {
      case 0: {  // raw bytes
        const int n = integer(0, 64);
        for (int k = 0; k < n; ++k) body.push_back(static_cast<char>(integer(0, 255)));
        break;
      }
      case 1: {  // byte-level mutation of a valid payload
        body = seeds[static_cast<std::size_t>(integer(0, static_cast<int>(seeds.size()) - 1))];
        for (int k = integer(1, 4); k > 0; --k) {
          const auto pos = static_cast<std::size_t>(integer(0, static_cast<int>(body.size()) - 1));
          switch (integer(0, 2)) {
            case 0:
              body[pos] = static_cast<char>(integer(0, 255));
              break;
            case 1:
              body.erase(pos, 1);
              break;
            default:
              body.insert(pos, 1, static_cast<char>(integer(32, 126)));
          }
          if (body.empty()) break;
        }
        break;
      }
      default: {  // structurally valid JSON with wrong types
        protocol::Json j = protocol::Json::object();
        const char* keys[] = {"command", "x", "y", "z", "target", "ability", "item", "slot"};
        for (const char* k : keys) {
          if (!coin()) continue;
          switch (integer(0, 5)) {
            case 0:
              j[k] = integer(-5, 5);
              break;
            case 1:
              j[k] = text(8);
              break;
            case 2:
              j[k] = nullptr;
              break;
            case 3:
              j[k] = protocol::Json::array({1, 2});
              break;
            case 4:
              j[k] = real(-1e300, 1e300);
              break;
            default:
              j[k] = std::string(protocol::command_name(command()));
          }
        }
        body = j.dump();
      }
    }
    return body;
  }

 private:
  std::mt19937_64 rng_;
};

// A bot whose replies come from a callback; records every snapshot it saw.
class ScriptedBot : public botkit::BotHandler {
 public:
  using UpdateFn = std::function<protocol::BotCommand(const protocol::EntitySnapshot&, int)>;

  ScriptedBot(std::string hero, UpdateFn f) : hero_(std::move(hero)), update_(std::move(f)) {}

  protocol::HeroSelection on_select() override {
    std::lock_guard lock(mutex_);
    ++selects;
    return {hero_};
  }
  protocol::BotCommand on_update(const protocol::EntitySnapshot& s) override {
    std::lock_guard lock(mutex_);
    return update_(s, updates++);
  }
  void on_chat(const protocol::ChatEvent& e) override {
    std::lock_guard lock(mutex_);
    chats.push_back(e);
  }

  int selects = 0;
  int updates = 0;
  std::vector<protocol::ChatEvent> chats;

 private:
  std::mutex mutex_;
  std::string hero_;
  UpdateFn update_;
};

}  // namespace midlane::testing
