#include "midlane/sim/game_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#ifndef MIDLANE_DATA_DIR
#define MIDLANE_DATA_DIR "data"
#endif

namespace midlane::sim {

using protocol::ConfigError;
using protocol::Json;

namespace {

constexpr int kSupportedVersion = 1;

Json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open data file " + p.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("data file " + p.string() + " is not valid JSON");
  if (j.value("version", 0) != kSupportedVersion) {
    throw ConfigError("data file " + p.string() + " has unsupported version");
  }
  return j;
}

Vec2 vec2(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("expected [x, y] in map data");
  return {j[0].get<double>(), j[1].get<double>()};
}

UnitStats unit_stats(const Json& j) {
  UnitStats s;
  s.health = j.at("health").get<int>();
  s.attackDamage = j.at("attack_damage").get<int>();
  s.attackRange = j.at("attack_range").get<double>();
  s.attackInterval = j.at("attack_interval").get<double>();
  s.moveSpeed = j.value("move_speed", 0.0);
  s.acquireRange = j.value("acquire_range", s.attackRange);
  s.projectileSpeed = j.value("projectile_speed", 0.0);
  s.vision = j.value("vision", 0.0);
  return s;
}

AbilityDef ability(const Json& j) {
  AbilityDef a;
  a.name = j.at("name").get<std::string>();
  auto kind = j.at("kind").get<std::string>();
  if (kind == "nuke") {
    a.kind = AbilityKind::Nuke;
  } else if (kind == "aoe_stun") {
    a.kind = AbilityKind::AoeStun;
  } else if (kind == "passive") {
    a.kind = AbilityKind::Passive;
  } else {
    throw ConfigError("unknown ability kind '" + kind + "'");
  }
  a.manaCost = j.value("mana_cost", 0);
  a.cooldown = j.value("cooldown", 0.0);
  a.castRange = j.value("cast_range", 0.0);
  a.damage = j.value("damage", 0);
  a.damagePerLevel = j.value("damage_per_level", 0);
  a.radius = j.value("radius", 0.0);
  a.stunSeconds = j.value("stun_seconds", 0.0);
  a.bonusDamagePerLevel = j.value("bonus_damage_per_level", 0);
  return a;
}

void parse_balance(const Json& j, GameData& g) {
  auto& b = g.balance;
  b.tickRate = j.at("tick_rate").get<int>();
  b.startingGold = j.at("starting_gold").get<int>();
  b.passiveIncomePerSecond = j.at("passive_income_gold_per_second").get<int>();
  b.healthRegenPerSecond = j.at("health_regen_per_second").get<int>();
  b.manaRegenPerSecond = j.at("mana_regen_per_second").get<int>();

  const auto& lv = j.at("leveling");
  b.xpThresholdFactor = lv.at("xp_threshold_factor").get<int>();
  b.maxLevel = lv.at("max_level").get<int>();
  b.healthPerLevel = lv.at("health_per_level").get<int>();
  b.manaPerLevel = lv.at("mana_per_level").get<int>();
  b.damagePerLevel = lv.at("damage_per_level").get<int>();
  b.abilityMaxLevel = lv.at("ability_max_level").get<int>();

  b.respawnBaseSeconds = j.at("respawn").at("base_seconds").get<double>();
  b.respawnPerLevelSeconds = j.at("respawn").at("per_level_seconds").get<double>();

  const auto& bo = j.at("bounties");
  b.creepGold = bo.at("creep_gold").get<int>();
  b.creepXp = bo.at("creep_xp").get<int>();
  b.heroGold = bo.at("hero_gold").get<int>();
  b.heroXpPerLevel = bo.at("hero_xp_per_level").get<int>();
  b.xpRange = bo.at("xp_range").get<double>();

  b.tower = unit_stats(j.at("tower"));
  b.towerHeroAggroSeconds = j.at("tower").value("hero_aggro_seconds", 2.0);

  const auto& cr = j.at("creeps");
  b.meleeCreep = unit_stats(cr.at("melee"));
  b.rangedCreep = unit_stats(cr.at("ranged"));
  b.meleeCreep.vision = b.rangedCreep.vision = cr.at("vision").get<double>();
  b.creepDamageSpread = cr.value("damage_spread", 0);

  const auto& w = j.at("waves");
  b.firstWaveSeconds = w.at("first_at_seconds").get<double>();
  b.waveIntervalSeconds = w.at("interval_seconds").get<double>();
  b.waveMelee = w.at("melee").get<int>();
  b.waveRanged = w.at("ranged").get<int>();

  const auto& c = j.at("courier");
  b.courierHealth = c.at("health").get<int>();
  b.courierMoveSpeed = c.at("move_speed").get<double>();
  b.courierVision = c.at("vision").get<double>();
  b.courierDeliveryRange = c.at("delivery_range").get<double>();
  b.inventorySlots = c.at("inventory_slots").get<int>();

  b.fountainRadius = j.at("fountain").at("radius").get<double>();
  b.fountainRegenPercent = j.at("fountain").at("regen_percent_per_second").get<int>();

  const auto& d = j.at("hero_defaults");
  for (const auto& h : j.at("heroes")) {
    HeroDef def;
    def.id = h.at("id").get<std::string>();
    def.archetype = h.value("archetype", std::string{});
    def.health = h.value("health", d.at("health").get<int>());
    def.mana = h.value("mana", d.at("mana").get<int>());
    def.moveSpeed = h.value("move_speed", d.at("move_speed").get<double>());
    def.attackDamage = h.value("attack_damage", d.at("attack_damage").get<int>());
    def.attackInterval = h.value("attack_interval", d.at("attack_interval").get<double>());
    def.attackRange = h.value("attack_range", d.at("attack_range").get<double>());
    def.projectileSpeed = h.value("projectile_speed", d.at("projectile_speed").get<double>());
    def.vision = h.value("vision", d.at("vision").get<double>());
    for (const auto& a : h.at("abilities")) def.abilities.push_back(ability(a));
    g.heroes.push_back(std::move(def));
  }

  for (const auto& it : j.at("items")) {
    ItemDef item;
    item.name = it.at("name").get<std::string>();
    item.price = it.at("price").get<int>();
    item.charges = it.value("charges", 0);
    item.healHealth = it.value("heal_health", 0);
    item.healMana = it.value("heal_mana", 0);
    item.duration = it.value("duration", 0.0);
    g.items.emplace(item.name, item);
  }
}

void parse_map(const Json& j, MapData& m) {
  m.boundsMin = j.at("bounds").at("min").get<double>();
  m.boundsMax = j.at("bounds").at("max").get<double>();
  m.groundZ = j.at("ground_z").get<double>();
  m.radiantBase = vec2(j.at("bases").at("radiant"));
  m.direBase = vec2(j.at("bases").at("dire"));
  const auto& t = j.at("towers");
  m.radiantTower = {t.at("radiant").at("name").get<std::string>(),
                    vec2(t.at("radiant").at("position"))};
  m.direTower = {t.at("dire").at("name").get<std::string>(), vec2(t.at("dire").at("position"))};
  m.radiantCreepSpawn = vec2(j.at("creep_spawns").at("radiant"));
  m.direCreepSpawn = vec2(j.at("creep_spawns").at("dire"));
  for (const auto& p : j.at("lane_waypoints")) m.laneWaypoints.push_back(vec2(p));
  for (const auto& p : j.at("lane_corridor")) m.laneCorridor.push_back(vec2(p));
  if (m.laneWaypoints.size() < 2) throw ConfigError("lane needs at least two waypoints");
  if (m.laneCorridor.size() < 3) throw ConfigError("lane corridor needs at least three vertices");
}

}  // namespace

std::vector<Vec2> MapData::lane_for(protocol::Team t) const {
  std::vector<Vec2> lane = laneWaypoints;
  if (t == protocol::Team::Dire) std::reverse(lane.begin(), lane.end());
  return lane;
}

Vec2 MapData::clamp_to_bounds(Vec2 p) const {
  return {std::clamp(p.x, boundsMin, boundsMax), std::clamp(p.y, boundsMin, boundsMax)};
}

const HeroDef* GameData::find_hero(std::string_view id) const {
  auto it = std::find_if(heroes.begin(), heroes.end(), [&](const HeroDef& h) { return h.id == id; });
  return it == heroes.end() ? nullptr : &*it;
}

const HeroDef& GameData::hero(std::string_view id) const {
  if (const auto* h = find_hero(id)) return *h;
  throw ConfigError("unknown hero '" + std::string(id) + "'");
}

const ItemDef* GameData::find_item(std::string_view name) const {
  auto it = items.find(std::string(name));
  return it == items.end() ? nullptr : &it->second;
}

std::set<std::string> GameData::roster() const {
  std::set<std::string> out;
  for (const auto& h : heroes) out.insert(h.id);
  return out;
}

std::int64_t GameData::seconds_to_ticks(double seconds) const {
  return static_cast<std::int64_t>(std::llround(seconds * balance.tickRate));
}

GameData load_game_data(const std::filesystem::path& dir) {
  GameData g;
  try {
    Json balance = read_json(dir / "balance.json");
    Json map = read_json(dir / "map.json");
    g.version = kSupportedVersion;
    parse_balance(balance, g);
    parse_map(map, g.map);
  } catch (const Json::exception& ex) {
    throw ConfigError(std::string("invalid game data: ") + ex.what());
  }
  if (g.heroes.empty()) throw ConfigError("roster is empty");
  return g;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("MIDLANE_DATA_DIR"); env && *env) return env;
  return MIDLANE_DATA_DIR;
}

std::shared_ptr<const GameData> load_default_game_data() {
  return std::make_shared<const GameData>(load_game_data(default_data_dir()));
}

}  // namespace midlane::sim
