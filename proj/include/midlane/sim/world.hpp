#pragma once

// Deterministic fixed-timestep model of a 1v1 solo-mid match.
//
// The world advances one tick (1/30 s) per step(). All state-affecting
// arithmetic runs in a fixed order, so equal (config, seed, order stream)
// triples produce equal digests on every run.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "midlane/protocol.hpp"
#include "midlane/sim/game_data.hpp"
#include "midlane/sim/geometry.hpp"

namespace midlane::sim {

using protocol::BotCommand;
using protocol::EntityId;
using protocol::Team;

class IllegalState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct MatchConfig {
  std::string radiantHero;
  std::string direHero;

  const std::string& hero_for(Team t) const {
    return t == Team::Radiant ? radiantHero : direHero;
  }
};

enum class OutcomeReason { TowerDestroyed, Forfeit, Draw };

std::string_view reason_name(OutcomeReason r);
OutcomeReason reason_from_name(std::string_view name);

struct MatchOutcome {
  std::optional<Team> winner;  // empty for a draw
  OutcomeReason reason = OutcomeReason::Draw;
  std::int64_t endTick = 0;

  bool operator==(const MatchOutcome&) const = default;
};

struct AttackProfile {
  int damage = 0;
  std::int64_t intervalTicks = 1;
  double range = 0.0;
  double projectileSpeed = 0.0;  // 0 = melee
  std::int64_t nextAttackTick = 0;
};

// Fields shared by everything that can fight and be fought.
struct UnitCore {
  EntityId id;
  Team team = Team::Radiant;
  std::string name;
  Vec2 pos;
  int health = 0;
  int maxHealth = 0;
  int level = 1;
  double moveSpeed = 0.0;
  double vision = 0.0;
  AttackProfile attack;
  std::int64_t stunnedUntil = 0;
  bool lastHitByHero = false;

  bool standing() const { return health > 0; }
  bool stunned(std::int64_t tick) const { return tick < stunnedUntil; }
};

struct AbilityState {
  int level = 0;
  std::int64_t readyTick = 0;
};

struct ItemStack {
  std::string name;
  int charges = 0;
};

// Heal-over-time, distributed in whole points so the total is exact.
struct HealEffect {
  int health = 0;
  int mana = 0;
  std::int64_t startTick = 0;
  std::int64_t durationTicks = 1;
};

struct StickyOrder {
  BotCommand command = protocol::cmd::Noop{};
  bool completed = true;
};

struct HeroState {
  UnitCore unit;
  std::string heroId;
  bool alive = true;
  int mana = 0;
  int maxMana = 0;
  int xp = 0;
  std::int64_t gold = 0;
  int abilityPoints = 0;  // points already assigned
  std::vector<AbilityState> abilities;
  std::vector<std::optional<ItemStack>> items;
  std::optional<std::int64_t> respawnTick;
  StickyOrder order;
  std::vector<HealEffect> effects;
  std::int64_t lastHeroAttackTick = -1'000'000;
  int kills = 0;
  int deaths = 0;
};

struct TowerState {
  UnitCore unit;
  std::optional<EntityId> target;
};

enum class CreepKind { Melee, Ranged };

struct CreepState {
  UnitCore unit;
  CreepKind kind = CreepKind::Melee;
  std::size_t waypoint = 1;
  int goldBounty = 0;
  int xpBounty = 0;
  std::optional<EntityId> target;
};

enum class CourierPhase { Idle, Delivering, Returning };

struct CourierState {
  EntityId id;
  Team team = Team::Radiant;
  Vec2 pos;
  CourierPhase phase = CourierPhase::Idle;
  std::vector<ItemStack> carrying;
  std::vector<ItemStack> stash;  // bought, waiting at base
};

struct Projectile {
  Team team = Team::Radiant;
  EntityId source;
  EntityId target;
  Vec2 pos;
  double speed = 0.0;
  int damage = 0;
  bool fromHero = false;
};

struct WorldState {
  std::shared_ptr<const GameData> data;
  MatchConfig config;
  std::uint64_t seed = 0;
  std::int64_t tick = 0;
  std::uint64_t rng = 0;
  std::uint32_t nextId = 0;
  std::array<HeroState, 2> heroes;
  std::array<TowerState, 2> towers;
  std::vector<CreepState> creeps;
  std::array<CourierState, 2> couriers;
  std::vector<Projectile> projectiles;
  std::optional<MatchOutcome> outcome;

  double clock() const { return static_cast<double>(tick) / data->balance.tickRate; }
  double dt() const { return data->dt(); }

  HeroState& hero(Team t) { return heroes[protocol::team_index(t)]; }
  const HeroState& hero(Team t) const { return heroes[protocol::team_index(t)]; }
  TowerState& tower(Team t) { return towers[protocol::team_index(t)]; }
  const TowerState& tower(Team t) const { return towers[protocol::team_index(t)]; }
  CourierState& courier(Team t) { return couriers[protocol::team_index(t)]; }
  const CourierState& courier(Team t) const { return couriers[protocol::team_index(t)]; }
};

struct OrderResult {
  bool accepted = false;
  std::string reason;  // empty when accepted
};

// Throws protocol::ConfigError for a hero outside the roster.
WorldState init_world(std::shared_ptr<const GameData> data, const MatchConfig& config,
                      std::uint64_t seed);

// Checks a command against the current world without changing it.
OrderResult validate_order(const WorldState& world, Team team, const BotCommand& command);

// Noop keeps the current order. Anything else replaces it once validated;
// Buy/Sell/UseItem take effect immediately.
OrderResult submit_order(WorldState& world, Team team, const BotCommand& command);

// Advances exactly one tick. Throws IllegalState once the match is over.
void step(WorldState& world);

// Spawns one wave per team if the clock sits on a wave boundary.
bool spawn_creep_wave(WorldState& world);
bool is_wave_boundary(const WorldState& world);

protocol::EntitySnapshot visible_snapshot(const WorldState& world, Team team);
bool is_visible_to(const WorldState& world, Team team, Vec2 pos);

std::optional<MatchOutcome> check_terminal(const WorldState& world);

// Seconds until a hero of the given level respawns.
double respawn_time(const Balance& balance, int level);

// Cumulative XP at which a hero reaches `level`.
int xp_for_level(const Balance& balance, int level);
int hero_attack_damage(const WorldState& world, const HeroState& hero);

std::uint64_t digest(const WorldState& world);

}  // namespace midlane::sim
