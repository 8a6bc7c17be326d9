#pragma once

// Balance, roster, item and map tables loaded from the data/ directory.
// Every combat or economy constant used by the simulator comes from here.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "midlane/protocol.hpp"
#include "midlane/sim/geometry.hpp"

namespace midlane::sim {

enum class AbilityKind { Nuke, AoeStun, Passive };

struct AbilityDef {
  std::string name;
  AbilityKind kind = AbilityKind::Nuke;
  int manaCost = 0;
  double cooldown = 0.0;  // seconds
  double castRange = 0.0;
  int damage = 0;
  int damagePerLevel = 0;
  double radius = 0.0;
  double stunSeconds = 0.0;
  int bonusDamagePerLevel = 0;  // passives

  int damage_at(int level) const { return damage + damagePerLevel * (level - 1); }
};

struct HeroDef {
  std::string id;
  std::string archetype;
  int health = 0;
  int mana = 0;
  double moveSpeed = 0.0;
  int attackDamage = 0;
  double attackInterval = 0.0;
  double attackRange = 0.0;
  double projectileSpeed = 0.0;  // 0 = melee, hits instantly
  double vision = 0.0;
  std::vector<AbilityDef> abilities;
};

struct ItemDef {
  std::string name;
  int price = 0;
  int charges = 0;
  int healHealth = 0;
  int healMana = 0;
  double duration = 0.0;

  bool usable() const { return charges > 0 && (healHealth > 0 || healMana > 0); }
};

struct UnitStats {
  int health = 0;
  int attackDamage = 0;
  double attackRange = 0.0;
  double attackInterval = 0.0;
  double moveSpeed = 0.0;
  double acquireRange = 0.0;
  double projectileSpeed = 0.0;
  double vision = 0.0;
};

struct Balance {
  int tickRate = 30;
  int startingGold = 0;
  int passiveIncomePerSecond = 0;
  int healthRegenPerSecond = 0;
  int manaRegenPerSecond = 0;

  int xpThresholdFactor = 100;
  int maxLevel = 25;
  int healthPerLevel = 0;
  int manaPerLevel = 0;
  int damagePerLevel = 0;
  int abilityMaxLevel = 4;

  double respawnBaseSeconds = 4.0;
  double respawnPerLevelSeconds = 2.0;

  int creepGold = 0;
  int creepXp = 0;
  int heroGold = 0;
  int heroXpPerLevel = 0;
  double xpRange = 0.0;

  UnitStats tower;
  double towerHeroAggroSeconds = 2.0;
  UnitStats meleeCreep;
  UnitStats rangedCreep;
  int creepDamageSpread = 0;

  double firstWaveSeconds = 30.0;
  double waveIntervalSeconds = 30.0;
  int waveMelee = 3;
  int waveRanged = 1;

  int courierHealth = 100;
  double courierMoveSpeed = 0.0;
  double courierVision = 0.0;
  double courierDeliveryRange = 0.0;
  int inventorySlots = 6;

  double fountainRadius = 0.0;
  int fountainRegenPercent = 0;
};

struct TowerSite {
  std::string name;
  Vec2 position;
};

struct MapData {
  double boundsMin = -8000.0;
  double boundsMax = 8000.0;
  double groundZ = 0.0;
  Vec2 radiantBase;
  Vec2 direBase;
  TowerSite radiantTower;
  TowerSite direTower;
  Vec2 radiantCreepSpawn;
  Vec2 direCreepSpawn;
  std::vector<Vec2> laneWaypoints;  // Radiant base -> Dire base
  std::vector<Vec2> laneCorridor;   // convex polygon

  Vec2 base(protocol::Team t) const {
    return t == protocol::Team::Radiant ? radiantBase : direBase;
  }
  const TowerSite& tower(protocol::Team t) const {
    return t == protocol::Team::Radiant ? radiantTower : direTower;
  }
  Vec2 creep_spawn(protocol::Team t) const {
    return t == protocol::Team::Radiant ? radiantCreepSpawn : direCreepSpawn;
  }
  // Waypoints ordered from team t's base toward the enemy base.
  std::vector<Vec2> lane_for(protocol::Team t) const;
  bool in_corridor(Vec2 p) const { return point_in_convex_polygon(p, laneCorridor); }
  Vec2 clamp_to_bounds(Vec2 p) const;
};

struct GameData {
  int version = 0;
  Balance balance;
  MapData map;
  std::vector<HeroDef> heroes;
  std::map<std::string, ItemDef> items;

  const HeroDef* find_hero(std::string_view id) const;
  const HeroDef& hero(std::string_view id) const;  // throws protocol::ConfigError
  const ItemDef* find_item(std::string_view name) const;
  std::set<std::string> roster() const;

  double dt() const { return 1.0 / balance.tickRate; }
  std::int64_t seconds_to_ticks(double seconds) const;
};

// Max health of a hero at `level`, as the simulator grows it on level-up.
inline int max_health_at(const GameData& g, const HeroDef& hero, int level) {
  return hero.health + g.balance.healthPerLevel * (level - 1);
}

// Reads balance.json and map.json from `dir`.
GameData load_game_data(const std::filesystem::path& dir);

// Directory baked in at build time (the repo's data/ folder), overridable
// through the MIDLANE_DATA_DIR environment variable.
std::filesystem::path default_data_dir();

std::shared_ptr<const GameData> load_default_game_data();

}  // namespace midlane::sim
