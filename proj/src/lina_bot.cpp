#include "midlane/lina_bot.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "midlane/lane.hpp"

namespace midlane::botkit {

namespace cmd = protocol::cmd;
using protocol::ConfigError;
using protocol::EntityRecord;

std::string_view phase_name(LinaPhase p) {
  switch (p) {
    case LinaPhase::Selecting:
      return "SELECTING";
    case LinaPhase::WalkMid:
      return "WALK_MID";
    case LinaPhase::Fight:
      return "FIGHT";
    case LinaPhase::Retreat:
      return "RETREAT";
    case LinaPhase::Shopping:
      return "SHOPPING";
    case LinaPhase::Dead:
      return "DEAD";
  }
  return "SELECTING";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_fraction(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !(v > 0.0) || !(v < 1.0)) {
    throw ConfigError(std::string(key) + " must be a number in (0, 1)");
  }
  return v;
}

// Drawn from the top 53 bits so the value is exact in a double.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void move_to(LinaState& s, LinaPhase to, std::string cause) {
  if (s.phase == to) return;
  s.transitions.push_back({s.lastTick, s.phase, to, std::move(cause)});
  s.phase = to;
}

struct Ability {
  int slot;
  const sim::AbilityDef* def;
};

std::vector<Ability> ready_abilities(const EntityRecord& self, const sim::HeroDef& def) {
  std::vector<Ability> out;
  if (!self.hero) return out;
  for (const auto& a : self.hero->abilities) {
    if (a.slot < 0 || static_cast<std::size_t>(a.slot) >= def.abilities.size()) continue;
    const auto& ability = def.abilities[static_cast<std::size_t>(a.slot)];
    if (ability.kind == sim::AbilityKind::Passive || a.level <= 0) continue;
    if (a.cooldownRemaining > 0.0 || self.mana < ability.manaCost) continue;
    out.push_back({a.slot, &ability});
  }
  return out;
}

}  // namespace

LinaConfig load_lina_config(std::string_view text) {
  LinaConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key == "retreat_threshold") {
      c.retreatThreshold = parse_fraction(key, value);
    } else if (key == "cast_probability") {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size() || v < 0.0 || v > 1.0) {
        throw ConfigError("cast_probability must be a number in [0, 1]");
      }
      c.castProbability = v;
    } else if (key == "seed") {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), c.seed);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("seed must be an unsigned integer");
      }
    } else if (key == "hero") {
      if (value.empty()) throw ConfigError("hero must not be empty");
      c.hero = std::string(value);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  return c;
}

LinaConfig load_lina_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bot config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_lina_config(text.str());
}

LinaState LinaState::fresh(const LinaConfig& config) {
  LinaState s;
  s.retreatThreshold = config.retreatThreshold;
  s.rng.seed(config.seed);
  return s;
}

std::string normalize_chat(std::string_view text) {
  std::string out;
  bool gap = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back(' ');
    gap = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

LinaState lina_chat(const protocol::ChatEvent& event, LinaState state) {
  const auto text = normalize_chat(event.text);
  if (text == "lina go") {
    if (state.phase == LinaPhase::WalkMid) {
      state.transitions.push_back({state.lastTick, state.phase, LinaPhase::WalkMid, "chat"});
    }
    move_to(state, LinaPhase::WalkMid, "chat");
  } else if (text == "lina buy tango") {
    state.pendingChatOrder = cmd::Buy{"item_tango"};
  }
  return state;
}

LinaStep lina_update(const protocol::EntitySnapshot& snapshot, LinaState state,
                     const LinaConfig& config, const sim::GameData& data) {
  state.lastTick = snapshot.tick;
  auto done = [&](LinaPhase phase, std::string cause, protocol::BotCommand c) {
    move_to(state, phase, std::move(cause));
    return LinaStep{std::move(c), std::move(state)};
  };

  const EntityRecord* self = own_hero(snapshot);
  if (!self) return done(LinaPhase::Dead, "dead", cmd::Noop{});

  const auto team = snapshot.team;
  const LaneView lane(data.map, team);
  const auto* def = data.find_hero(self->name);
  if (!def) def = &data.hero(config.hero);
  const Vec2 pos = ground(self->origin);
  const double maxHealth = sim::max_health_at(data, *def, self->level);

  if (self->health < state.retreatThreshold * maxHealth) {
    return done(LinaPhase::Retreat, "low_health", cmd::Move{lane.lift(lane.own_base())});
  }

  if (state.pendingChatOrder) {
    auto order = *state.pendingChatOrder;
    state.pendingChatOrder.reset();
    return done(LinaPhase::Shopping, "chat_order", order);
  }

  const auto* enemyHero = nearest(snapshot, pos, def->attackRange, enemy_of_type(team, "Hero"));
  const auto* enemyCreep = nearest(snapshot, pos, def->attackRange, enemy_of_type(team, "Creep"));
  if (enemyHero || enemyCreep) {
    const EntityRecord* target = enemyHero;
    if (!target || (enemyCreep && sim::distance(pos, ground(enemyCreep->origin)) <
                                      sim::distance(pos, ground(enemyHero->origin)))) {
      target = enemyCreep;
    }
    if (uniform01(state.rng) < config.castProbability) {
      auto ready = ready_abilities(*self, *def);
      if (!ready.empty()) {
        const auto pick = ready[static_cast<std::size_t>(state.rng() % ready.size())];
        const auto range = pick.def->castRange;
        const auto* castTarget = nearest(snapshot, pos, range, enemy_of_type(team, "Hero"));
        if (!castTarget) castTarget = nearest(snapshot, pos, range, enemy_of_type(team, "Creep"));
        if (castTarget) {
          return done(LinaPhase::Fight, "enemy_in_range", cmd::Cast{pick.slot, castTarget->id});
        }
      }
    }
    return done(LinaPhase::Fight, "enemy_in_range", cmd::Attack{target->id});
  }

  const double towerRange = data.balance.tower.attackRange;
  if (const auto* tower = nearest(snapshot, pos, def->attackRange, enemy_of_type(team, "Tower"));
      tower && creep_cover(snapshot, team, ground(tower->origin), towerRange)) {
    return done(LinaPhase::Fight, "tower_in_range", cmd::Attack{tower->id});
  }

  const Vec2 to = advance_point(lane, snapshot, pos, def->attackRange, towerRange);
  return done(LinaPhase::WalkMid, "lane_clear", cmd::Move{lane.lift(to)});
}

LinaBot::LinaBot(LinaConfig config, std::shared_ptr<const sim::GameData> data,
                 std::ostream* transitionLog)
    : config_(std::move(config)), data_(std::move(data)), log_(transitionLog) {
  if (!data_) throw ConfigError("no game data");
  data_->hero(config_.hero);
  state_ = LinaState::fresh(config_);
}

protocol::HeroSelection LinaBot::on_select() {
  state_ = LinaState::fresh(config_);
  return {config_.hero};
}

protocol::BotCommand LinaBot::on_update(const protocol::EntitySnapshot& snapshot) {
  auto step = lina_update(snapshot, std::move(state_), config_, *data_);
  state_ = std::move(step.state);
  flush();
  return step.command;
}

void LinaBot::on_chat(const protocol::ChatEvent& event) {
  state_ = lina_chat(event, std::move(state_));
  flush();
}

void LinaBot::flush() {
  for (auto& t : state_.transitions) {
    if (log_) {
      protocol::Json j{{"tick", t.tick},
                       {"from", phase_name(t.from)},
                       {"to", phase_name(t.to)},
                       {"cause", t.cause}};
      *log_ << j.dump() << '\n';
      log_->flush();
    }
    history_.push_back(std::move(t));
  }
  state_.transitions.clear();
}

}  // namespace midlane::botkit
