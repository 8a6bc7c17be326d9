#include "midlane/sim/world.hpp"

#include <algorithm>
#include <cstring>
#include <type_traits>

namespace midlane::sim {

namespace cmd = protocol::cmd;
using protocol::ConfigError;
using protocol::opponent_of;

namespace {

constexpr std::array<Team, 2> kTeams = {Team::Radiant, Team::Dire};

std::uint64_t next_random(std::uint64_t& state) {
  // splitmix64
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class UnitKind { Hero, Tower, Creep };

template <class Unit, class Hero>
struct UnitRefT {
  Unit* unit = nullptr;
  Hero* hero = nullptr;
  UnitKind kind = UnitKind::Creep;

  bool targetable() const { return unit && unit->standing() && (!hero || hero->alive); }
};

using UnitRef = UnitRefT<UnitCore, HeroState>;
using ConstUnitRef = UnitRefT<const UnitCore, const HeroState>;

template <class World>
auto find_unit(World& w, EntityId id) {
  constexpr bool kConst = std::is_const_v<World>;
  using Ref = std::conditional_t<kConst, ConstUnitRef, UnitRef>;
  for (auto& h : w.heroes) {
    if (h.unit.id == id) return Ref{&h.unit, &h, UnitKind::Hero};
  }
  for (auto& t : w.towers) {
    if (t.unit.id == id) return Ref{&t.unit, nullptr, UnitKind::Tower};
  }
  for (auto& c : w.creeps) {
    if (c.unit.id == id) return Ref{&c.unit, nullptr, UnitKind::Creep};
  }
  return Ref{};
}

bool is_courier(const WorldState& w, EntityId id) {
  return std::any_of(w.couriers.begin(), w.couriers.end(),
                     [id](const CourierState& c) { return c.id == id; });
}

OrderResult accept() { return {true, {}}; }
OrderResult reject(std::string why) { return {false, std::move(why)}; }

AttackProfile attack_profile(const GameData& g, int damage, double interval, double range,
                             double projectileSpeed) {
  AttackProfile a;
  a.damage = damage;
  a.intervalTicks = std::max<std::int64_t>(1, g.seconds_to_ticks(interval));
  a.range = range;
  a.projectileSpeed = projectileSpeed;
  return a;
}

void assign_ability_points(HeroState& h, const Balance& b) {
  const std::size_t n = h.abilities.size();
  while (h.abilityPoints < h.unit.level) {
    for (std::size_t k = 0; k < n; ++k) {
      auto& a = h.abilities[(static_cast<std::size_t>(h.abilityPoints) + k) % n];
      if (a.level < b.abilityMaxLevel) {
        ++a.level;
        break;
      }
    }
    ++h.abilityPoints;
  }
}

HeroState make_hero(const GameData& g, const HeroDef& def, Team team, EntityId id) {
  HeroState h;
  h.heroId = def.id;
  h.unit.id = id;
  h.unit.team = team;
  h.unit.name = def.id;
  h.unit.pos = g.map.base(team);
  h.unit.health = h.unit.maxHealth = def.health;
  h.unit.moveSpeed = def.moveSpeed;
  h.unit.vision = def.vision;
  h.unit.attack = attack_profile(g, def.attackDamage, def.attackInterval, def.attackRange,
                                 def.projectileSpeed);
  h.mana = h.maxMana = def.mana;
  h.gold = g.balance.startingGold;
  h.abilities.resize(def.abilities.size());
  h.items.resize(static_cast<std::size_t>(g.balance.inventorySlots));
  assign_ability_points(h, g.balance);
  return h;
}

TowerState make_tower(const GameData& g, Team team, EntityId id) {
  const auto& s = g.balance.tower;
  TowerState t;
  t.unit.id = id;
  t.unit.team = team;
  t.unit.name = g.map.tower(team).name;
  t.unit.pos = g.map.tower(team).position;
  t.unit.health = t.unit.maxHealth = s.health;
  t.unit.vision = s.vision;
  t.unit.attack = attack_profile(g, s.attackDamage, s.attackInterval, s.attackRange,
                                 s.projectileSpeed);
  return t;
}

CreepState make_creep(const GameData& g, Team team, CreepKind kind, EntityId id, Vec2 pos) {
  const auto& s = kind == CreepKind::Melee ? g.balance.meleeCreep : g.balance.rangedCreep;
  CreepState c;
  c.kind = kind;
  c.unit.id = id;
  c.unit.team = team;
  c.unit.name = std::string("npc_dota_creep_") + (team == Team::Radiant ? "goodguys" : "badguys") +
                (kind == CreepKind::Melee ? "_melee" : "_ranged");
  c.unit.pos = pos;
  c.unit.health = c.unit.maxHealth = s.health;
  c.unit.moveSpeed = s.moveSpeed;
  c.unit.vision = s.vision;
  c.unit.attack = attack_profile(g, s.attackDamage, s.attackInterval, s.attackRange,
                                 s.projectileSpeed);
  c.goldBounty = g.balance.creepGold;
  c.xpBounty = g.balance.creepXp;
  return c;
}

int inventory_load(const WorldState& w, Team team) {
  const auto& h = w.hero(team);
  const auto& c = w.courier(team);
  auto held = std::count_if(h.items.begin(), h.items.end(), [](const auto& s) { return s.has_value(); });
  return static_cast<int>(held + c.stash.size() + c.carrying.size());
}

OrderResult validate_target(const WorldState& w, Team team, EntityId id) {
  if (is_courier(w, id)) return reject("couriers cannot be targeted");
  auto ref = find_unit(w, id);
  if (!ref.unit) return reject("no entity with id " + std::to_string(id.value));
  if (!ref.targetable()) return reject("target is dead");
  if (ref.unit->team == team) return reject("target is on the same team");
  if (!is_visible_to(w, team, ref.unit->pos)) return reject("target is not visible");
  return accept();
}

void deal_damage(UnitCore& target, int amount, bool fromHero) {
  if (target.health <= 0 || amount <= 0) return;
  target.health = std::max(0, target.health - amount);
  target.lastHitByHero = fromHero;
}

void fire(WorldState& w, const UnitCore& attacker, UnitCore& target, int damage, bool fromHero) {
  if (attacker.attack.projectileSpeed > 0.0) {
    w.projectiles.push_back(Projectile{attacker.team, attacker.id, target.id, attacker.pos,
                                       attacker.attack.projectileSpeed, damage, fromHero});
  } else {
    deal_damage(target, damage, fromHero);
  }
}

void execute_cast(WorldState& w, HeroState& h, const cmd::Cast& c) {
  if (!validate_order(w, h.unit.team, c).accepted) return;
  const auto& def = w.data->hero(h.heroId).abilities[static_cast<std::size_t>(c.ability)];
  auto& state = h.abilities[static_cast<std::size_t>(c.ability)];
  h.mana -= def.manaCost;
  state.readyTick = w.tick + w.data->seconds_to_ticks(def.cooldown);
  const int damage = def.damage_at(state.level);
  auto target = find_unit(w, c.target);
  if (def.kind == AbilityKind::Nuke) {
    deal_damage(*target.unit, damage, true);
    return;
  }
  // Area stun centred on the target.
  const Vec2 center = target.unit->pos;
  const auto stunUntil = w.tick + w.data->seconds_to_ticks(def.stunSeconds);
  auto hit = [&](UnitCore& u) {
    if (u.team == h.unit.team || !u.standing() || distance(u.pos, center) > def.radius) return;
    deal_damage(u, damage, true);
    u.stunnedUntil = std::max(u.stunnedUntil, stunUntil);
  };
  auto& enemy = w.hero(opponent_of(h.unit.team));
  if (enemy.alive) hit(enemy.unit);
  for (auto& creep : w.creeps) hit(creep.unit);
}

void respawn_heroes(WorldState& w) {
  for (auto& h : w.heroes) {
    if (h.alive || !h.respawnTick || w.tick < *h.respawnTick) continue;
    h.alive = true;
    h.respawnTick.reset();
    h.unit.health = h.unit.maxHealth;
    h.mana = h.maxMana;
    h.unit.pos = w.data->map.base(h.unit.team);
    h.unit.attack.nextAttackTick = w.tick;
    h.unit.stunnedUntil = 0;
    h.unit.lastHitByHero = false;
  }
}

void hero_act(WorldState& w, Team team) {
  auto& h = w.hero(team);
  if (!h.alive || h.order.completed || h.unit.stunned(w.tick)) return;
  const double stepLength = h.unit.moveSpeed * w.dt();

  std::visit(
      [&](const auto& order) {
        using T = std::decay_t<decltype(order)>;
        if constexpr (std::is_same_v<T, cmd::Move>) {
          const Vec2 target{order.target.x, order.target.y};
          h.unit.pos = step_toward(h.unit.pos, target, stepLength);
          if (h.unit.pos == target) h.order.completed = true;
        } else if constexpr (std::is_same_v<T, cmd::Attack>) {
          auto ref = find_unit(w, order.target);
          if (!ref.targetable() || !is_visible_to(w, team, ref.unit->pos)) {
            h.order.completed = true;
            return;
          }
          if (distance(h.unit.pos, ref.unit->pos) <= h.unit.attack.range) {
            if (w.tick >= h.unit.attack.nextAttackTick) {
              fire(w, h.unit, *ref.unit, hero_attack_damage(w, h), true);
              h.unit.attack.nextAttackTick = w.tick + h.unit.attack.intervalTicks;
              if (ref.kind == UnitKind::Hero) h.lastHeroAttackTick = w.tick;
            }
          } else {
            h.unit.pos = step_toward(h.unit.pos, ref.unit->pos, stepLength);
          }
        } else if constexpr (std::is_same_v<T, cmd::Cast>) {
          execute_cast(w, h, order);
          h.order.completed = true;
        } else {
          h.order.completed = true;
        }
      },
      h.order.command);
}

int creep_damage(WorldState& w, const CreepState& c) {
  const int spread = w.data->balance.creepDamageSpread;
  if (spread <= 0) return c.unit.attack.damage;
  const auto roll = static_cast<int>(next_random(w.rng) % static_cast<std::uint64_t>(2 * spread + 1));
  return std::max(1, c.unit.attack.damage + roll - spread);
}

void creep_act(WorldState& w, std::size_t index, const std::array<std::vector<Vec2>, 2>& lanes) {
  const auto& map = w.data->map;
  const auto& stats = w.creeps[index].kind == CreepKind::Melee ? w.data->balance.meleeCreep
                                                                : w.data->balance.rangedCreep;
  auto& c = w.creeps[index];
  if (!c.unit.standing() || c.unit.stunned(w.tick)) return;

  auto usable = [&](const UnitCore* u, double within) {
    return u && u->team != c.unit.team && map.in_corridor(u->pos) &&
           distance(u->pos, c.unit.pos) <= within;
  };

  if (c.target) {
    auto ref = find_unit(w, *c.target);
    if (!ref.targetable() || !usable(ref.unit, stats.acquireRange * 1.5)) c.target.reset();
  }
  if (!c.target) {
    const UnitCore* best = nullptr;
    double bestDistance = 0.0;
    auto consider = [&](const UnitCore& u, bool alive) {
      if (!alive || !u.standing() || !usable(&u, stats.acquireRange)) return;
      double d = distance(u.pos, c.unit.pos);
      if (!best || d < bestDistance) {
        best = &u;
        bestDistance = d;
      }
    };
    for (const auto& other : w.creeps) consider(other.unit, true);
    const auto& enemyHero = w.hero(opponent_of(c.unit.team));
    consider(enemyHero.unit, enemyHero.alive);
    consider(w.tower(opponent_of(c.unit.team)).unit, true);
    if (best) c.target = best->id;
  }

  const double stepLength = c.unit.moveSpeed * w.dt();
  if (c.target) {
    auto ref = find_unit(w, *c.target);
    if (distance(c.unit.pos, ref.unit->pos) <= c.unit.attack.range) {
      if (w.tick >= c.unit.attack.nextAttackTick) {
        const int damage = creep_damage(w, c);
        fire(w, c.unit, *ref.unit, damage, false);
        c.unit.attack.nextAttackTick = w.tick + c.unit.attack.intervalTicks;
      }
    } else {
      c.unit.pos = step_toward(c.unit.pos, ref.unit->pos, stepLength);
    }
    return;
  }

  const auto& lane = lanes[protocol::team_index(c.unit.team)];
  const Vec2 waypoint = lane[std::min(c.waypoint, lane.size() - 1)];
  c.unit.pos = step_toward(c.unit.pos, waypoint, stepLength);
  if (c.unit.pos == waypoint && c.waypoint + 1 < lane.size()) ++c.waypoint;
}

void tower_act(WorldState& w, Team team) {
  auto& t = w.tower(team);
  if (!t.unit.standing()) return;
  const double range = t.unit.attack.range;
  auto inRange = [&](const UnitCore& u) { return distance(u.pos, t.unit.pos) <= range; };

  // An enemy hero that just attacked our hero inside tower range draws aggro.
  const auto& enemy = w.hero(opponent_of(team));
  const auto aggroTicks = w.data->seconds_to_ticks(w.data->balance.towerHeroAggroSeconds);
  if (enemy.alive && enemy.unit.standing() && inRange(enemy.unit) &&
      w.tick - enemy.lastHeroAttackTick <= aggroTicks) {
    t.target = enemy.unit.id;
  } else if (t.target) {
    auto ref = find_unit(w, *t.target);
    if (!ref.targetable() || !inRange(*ref.unit)) t.target.reset();
  }
  if (!t.target) {
    const UnitCore* best = nullptr;
    double bestDistance = 0.0;
    for (const auto& c : w.creeps) {
      if (c.unit.team == team || !c.unit.standing() || !inRange(c.unit)) continue;
      double d = distance(c.unit.pos, t.unit.pos);
      if (!best || d < bestDistance) {
        best = &c.unit;
        bestDistance = d;
      }
    }
    if (!best && enemy.alive && enemy.unit.standing() && inRange(enemy.unit)) best = &enemy.unit;
    if (best) t.target = best->id;
  }
  if (t.target && w.tick >= t.unit.attack.nextAttackTick) {
    auto ref = find_unit(w, *t.target);
    fire(w, t.unit, *ref.unit, t.unit.attack.damage, false);
    t.unit.attack.nextAttackTick = w.tick + t.unit.attack.intervalTicks;
  }
}

void advance_projectiles(WorldState& w) {
  std::vector<Projectile> flying;
  flying.reserve(w.projectiles.size());
  for (auto p : w.projectiles) {
    auto ref = find_unit(w, p.target);
    if (!ref.targetable()) continue;
    const Vec2 aim = ref.unit->pos;
    p.pos = step_toward(p.pos, aim, p.speed * w.dt());
    if (p.pos == aim) {
      deal_damage(*ref.unit, p.damage, p.fromHero);
    } else {
      flying.push_back(p);
    }
  }
  w.projectiles = std::move(flying);
}

void regenerate(WorldState& w) {
  const auto& b = w.data->balance;
  const bool wholeSecond = w.tick % b.tickRate == 0;
  for (auto& h : w.heroes) {
    if (wholeSecond) h.gold += b.passiveIncomePerSecond;
    if (!h.alive) continue;
    int health = 0;
    int mana = 0;
    for (auto& e : h.effects) {
      const std::int64_t k = w.tick - e.startTick - 1;
      if (k < 0 || k >= e.durationTicks) continue;
      health += static_cast<int>(e.health * (k + 1) / e.durationTicks - e.health * k / e.durationTicks);
      mana += static_cast<int>(e.mana * (k + 1) / e.durationTicks - e.mana * k / e.durationTicks);
    }
    std::erase_if(h.effects, [&](const HealEffect& e) { return w.tick - e.startTick >= e.durationTicks; });
    if (wholeSecond) {
      health += b.healthRegenPerSecond;
      mana += b.manaRegenPerSecond;
      if (distance(h.unit.pos, w.data->map.base(h.unit.team)) <= b.fountainRadius) {
        health += h.unit.maxHealth * b.fountainRegenPercent / 100;
        mana += h.maxMana * b.fountainRegenPercent / 100;
      }
    }
    if (h.unit.health > 0) h.unit.health = std::min(h.unit.maxHealth, h.unit.health + health);
    h.mana = std::min(h.maxMana, h.mana + mana);
  }
}

void move_couriers(WorldState& w) {
  const auto& b = w.data->balance;
  for (auto& c : w.couriers) {
    auto& h = w.hero(c.team);
    const Vec2 base = w.data->map.base(c.team);
    const double stepLength = b.courierMoveSpeed * w.dt();
    switch (c.phase) {
      case CourierPhase::Idle:
        if (!c.stash.empty() && h.alive) {
          c.carrying = std::move(c.stash);
          c.stash.clear();
          c.phase = CourierPhase::Delivering;
        }
        break;
      case CourierPhase::Delivering:
        if (!h.alive) {
          c.phase = CourierPhase::Returning;
          break;
        }
        c.pos = step_toward(c.pos, h.unit.pos, stepLength);
        if (distance(c.pos, h.unit.pos) <= b.courierDeliveryRange) {
          std::vector<ItemStack> leftover;
          for (auto& item : c.carrying) {
            auto slot = std::find_if(h.items.begin(), h.items.end(), [](const auto& s) { return !s; });
            if (slot == h.items.end()) {
              leftover.push_back(std::move(item));
            } else {
              *slot = std::move(item);
            }
          }
          c.carrying = std::move(leftover);
          c.phase = CourierPhase::Returning;
        }
        break;
      case CourierPhase::Returning:
        c.pos = step_toward(c.pos, base, stepLength);
        if (c.pos == base) {
          c.stash.insert(c.stash.end(), c.carrying.begin(), c.carrying.end());
          c.carrying.clear();
          c.phase = CourierPhase::Idle;
        }
        break;
    }
  }
}

void apply_level_ups(WorldState& w, HeroState& h) {
  const auto& b = w.data->balance;
  while (h.unit.level < b.maxLevel && h.xp >= xp_for_level(b, h.unit.level + 1)) {
    ++h.unit.level;
    h.unit.maxHealth += b.healthPerLevel;
    if (h.alive) h.unit.health += b.healthPerLevel;
    h.maxMana += b.manaPerLevel;
    h.mana += b.manaPerLevel;
    h.unit.attack.damage += b.damagePerLevel;
  }
  assign_ability_points(h, b);
}

void process_deaths(WorldState& w) {
  const auto& b = w.data->balance;
  for (const auto& c : w.creeps) {
    if (c.unit.standing()) continue;
    auto& killer = w.hero(opponent_of(c.unit.team));
    if (c.unit.lastHitByHero) killer.gold += c.goldBounty;
    if (killer.alive && killer.unit.standing() && distance(killer.unit.pos, c.unit.pos) <= b.xpRange) {
      killer.xp += c.xpBounty;
    }
  }
  std::erase_if(w.creeps, [](const CreepState& c) { return !c.unit.standing(); });

  std::array<bool, 2> died{};
  for (auto team : kTeams) {
    const auto& h = w.hero(team);
    died[static_cast<std::size_t>(protocol::team_index(team))] = h.alive && !h.unit.standing();
  }
  for (auto team : kTeams) {
    if (!died[static_cast<std::size_t>(protocol::team_index(team))]) continue;
    auto& h = w.hero(team);
    auto& killer = w.hero(opponent_of(team));
    if (h.unit.lastHitByHero) {
      killer.gold += b.heroGold;
      ++killer.kills;
    }
    if (killer.alive && killer.unit.standing() &&
        (h.unit.lastHitByHero || distance(killer.unit.pos, h.unit.pos) <= b.xpRange)) {
      killer.xp += b.heroXpPerLevel * h.unit.level;
    }
    h.alive = false;
    ++h.deaths;
    h.respawnTick = w.tick + w.data->seconds_to_ticks(respawn_time(b, h.unit.level));
    h.order = StickyOrder{};
    h.effects.clear();
    h.unit.stunnedUntil = 0;
  }
  for (auto& h : w.heroes) apply_level_ups(w, h);
}

protocol::Vec3 lift(const WorldState& w, Vec2 p) { return {p.x, p.y, w.data->map.groundZ}; }

protocol::EntityRecord unit_record(const WorldState& w, const UnitCore& u, const char* type) {
  protocol::EntityRecord r;
  r.id = u.id;
  r.type = type;
  r.name = u.name;
  r.team = u.team;
  r.level = u.level;
  r.health = u.health;
  r.alive = u.health > 0;
  r.attackRange = u.attack.range;
  r.origin = lift(w, u.pos);
  r.rooted = u.stunned(w.tick);
  return r;
}

protocol::EntityRecord hero_record(const WorldState& w, const HeroState& h) {
  auto r = unit_record(w, h.unit, "Hero");
  r.mana = h.mana;
  protocol::HeroFields f;
  f.gold = h.gold;
  const auto& def = w.data->hero(h.heroId);
  for (std::size_t i = 0; i < h.abilities.size(); ++i) {
    const auto remaining = std::max<std::int64_t>(0, h.abilities[i].readyTick - w.tick);
    f.abilities.push_back({static_cast<int>(i), def.abilities[i].name, h.abilities[i].level,
                           static_cast<double>(remaining) / w.data->balance.tickRate});
  }
  for (std::size_t i = 0; i < h.items.size(); ++i) {
    if (h.items[i]) f.items.push_back({static_cast<int>(i), h.items[i]->name, h.items[i]->charges});
  }
  r.hero = std::move(f);
  return r;
}

protocol::EntityRecord courier_record(const WorldState& w, const CourierState& c) {
  protocol::EntityRecord r;
  r.id = c.id;
  r.type = "Courier";
  r.name = "npc_dota_courier";
  r.team = c.team;
  r.level = 1;
  r.health = w.data->balance.courierHealth;
  r.alive = true;
  r.origin = lift(w, c.pos);
  return r;
}

class Hasher {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xFF;
      state_ *= 0x100000001B3ULL;
    }
  }
  void add(std::int64_t v) { add(static_cast<std::uint64_t>(v)); }
  void add(int v) { add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  void add(bool v) { add(static_cast<std::uint64_t>(v)); }
  void add(double v) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(v));
    add(bits);
  }
  void add(const std::string& s) {
    add(static_cast<std::uint64_t>(s.size()));
    for (unsigned char ch : s) {
      state_ ^= ch;
      state_ *= 0x100000001B3ULL;
    }
  }
  void add(Vec2 p) {
    add(p.x);
    add(p.y);
  }
  void add(EntityId id) { add(static_cast<std::uint64_t>(id.value)); }
  void add(Team t) { add(static_cast<int>(t)); }
  template <class T>
  void add(const std::optional<T>& o) {
    add(o.has_value());
    if (o) add(*o);
  }
  void add(const UnitCore& u) {
    add(u.id);
    add(u.team);
    add(u.name);
    add(u.pos);
    add(u.health);
    add(u.maxHealth);
    add(u.level);
    add(u.moveSpeed);
    add(u.vision);
    add(u.attack.damage);
    add(u.attack.intervalTicks);
    add(u.attack.range);
    add(u.attack.projectileSpeed);
    add(u.attack.nextAttackTick);
    add(u.stunnedUntil);
    add(u.lastHitByHero);
  }
  void add(const ItemStack& s) {
    add(s.name);
    add(s.charges);
  }
  void add(const BotCommand& c) { add(protocol::encode_bot_command(c)); }

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xCBF29CE484222325ULL;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string_view reason_name(OutcomeReason r) {
  switch (r) {
    case OutcomeReason::TowerDestroyed:
      return "tower-destroyed";
    case OutcomeReason::Forfeit:
      return "forfeit";
    case OutcomeReason::Draw:
      return "draw";
  }
  return "draw";
}

OutcomeReason reason_from_name(std::string_view name) {
  if (name == "tower-destroyed") return OutcomeReason::TowerDestroyed;
  if (name == "forfeit") return OutcomeReason::Forfeit;
  if (name == "draw") return OutcomeReason::Draw;
  throw ConfigError("unknown outcome reason '" + std::string(name) + "'");
}

double respawn_time(const Balance& balance, int level) {
  return balance.respawnBaseSeconds + balance.respawnPerLevelSeconds * level;
}

int xp_for_level(const Balance& balance, int level) {
  return balance.xpThresholdFactor * (level - 1) * (level - 1);
}

int hero_attack_damage(const WorldState& w, const HeroState& h) {
  int damage = h.unit.attack.damage;
  const auto& def = w.data->hero(h.heroId);
  for (std::size_t i = 0; i < h.abilities.size(); ++i) {
    if (def.abilities[i].kind == AbilityKind::Passive) {
      damage += def.abilities[i].bonusDamagePerLevel * h.abilities[i].level;
    }
  }
  return damage;
}

WorldState init_world(std::shared_ptr<const GameData> data, const MatchConfig& config,
                      std::uint64_t seed) {
  if (!data) throw ConfigError("no game data");
  const auto& radiant = data->hero(config.radiantHero);
  const auto& dire = data->hero(config.direHero);

  WorldState w;
  w.data = data;
  w.config = config;
  w.seed = seed;
  w.rng = seed;
  w.nextId = 1;
  auto allocate = [&w] { return EntityId{w.nextId++}; };

  for (auto team : kTeams) w.tower(team) = make_tower(*data, team, allocate());
  w.hero(Team::Radiant) = make_hero(*data, radiant, Team::Radiant, allocate());
  w.hero(Team::Dire) = make_hero(*data, dire, Team::Dire, allocate());
  for (auto team : kTeams) {
    auto& c = w.courier(team);
    c.id = allocate();
    c.team = team;
    c.pos = data->map.base(team);
  }
  return w;
}

OrderResult validate_order(const WorldState& w, Team team, const BotCommand& command) {
  if (std::holds_alternative<cmd::Noop>(command)) return accept();
  if (w.outcome) return reject("match is over");
  const auto& h = w.hero(team);
  if (!h.alive) return reject("hero is dead");

  return std::visit(
      [&](const auto& c) -> OrderResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, cmd::Move>) {
          return accept();
        } else if constexpr (std::is_same_v<T, cmd::Attack>) {
          return validate_target(w, team, c.target);
        } else if constexpr (std::is_same_v<T, cmd::Cast>) {
          const auto& def = w.data->hero(h.heroId);
          if (c.ability < 0 || static_cast<std::size_t>(c.ability) >= def.abilities.size()) {
            return reject("no ability in slot " + std::to_string(c.ability));
          }
          const auto slot = static_cast<std::size_t>(c.ability);
          const auto& ability = def.abilities[slot];
          if (ability.kind == AbilityKind::Passive) return reject("ability is passive");
          if (h.abilities[slot].level == 0) return reject("ability not learned");
          if (h.abilities[slot].readyTick > w.tick) return reject("ability on cooldown");
          if (h.mana < ability.manaCost) return reject("not enough mana");
          if (auto t = validate_target(w, team, c.target); !t.accepted) return t;
          auto ref = find_unit(w, c.target);
          if (distance(ref.unit->pos, h.unit.pos) > ability.castRange) {
            return reject("target out of cast range");
          }
          return accept();
        } else if constexpr (std::is_same_v<T, cmd::Buy>) {
          const auto* item = w.data->find_item(c.item);
          if (!item) return reject("unknown item '" + c.item + "'");
          if (h.gold < item->price) return reject("not enough gold");
          if (inventory_load(w, team) >= w.data->balance.inventorySlots) {
            return reject("inventory full");
          }
          return accept();
        } else if constexpr (std::is_same_v<T, cmd::Sell>) {
          if (c.slot < 0 || static_cast<std::size_t>(c.slot) >= h.items.size() ||
              !h.items[static_cast<std::size_t>(c.slot)]) {
            return reject("no item in slot " + std::to_string(c.slot));
          }
          return accept();
        } else if constexpr (std::is_same_v<T, cmd::UseItem>) {
          if (c.slot < 0 || static_cast<std::size_t>(c.slot) >= h.items.size() ||
              !h.items[static_cast<std::size_t>(c.slot)]) {
            return reject("no item in slot " + std::to_string(c.slot));
          }
          const auto& stack = *h.items[static_cast<std::size_t>(c.slot)];
          const auto* item = w.data->find_item(stack.name);
          if (!item || !item->usable() || stack.charges <= 0) return reject("item is not usable");
          if (c.target && *c.target != h.unit.id) return reject("item can only target its owner");
          return accept();
        } else {
          return accept();
        }
      },
      command);
}

OrderResult submit_order(WorldState& w, Team team, const BotCommand& command) {
  auto result = validate_order(w, team, command);
  if (!result.accepted || std::holds_alternative<cmd::Noop>(command)) return result;

  auto& h = w.hero(team);
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, cmd::Move>) {
          const Vec2 clamped = w.data->map.clamp_to_bounds({c.target.x, c.target.y});
          h.order = {cmd::Move{{clamped.x, clamped.y, c.target.z}}, false};
        } else if constexpr (std::is_same_v<T, cmd::Attack> || std::is_same_v<T, cmd::Cast>) {
          h.order = {c, false};
        } else if constexpr (std::is_same_v<T, cmd::Buy>) {
          const auto& item = *w.data->find_item(c.item);
          h.gold -= item.price;
          w.courier(team).stash.push_back({item.name, item.charges});
          h.order = {c, true};
        } else if constexpr (std::is_same_v<T, cmd::Sell>) {
          auto& slot = h.items[static_cast<std::size_t>(c.slot)];
          if (const auto* item = w.data->find_item(slot->name)) h.gold += item->price / 2;
          slot.reset();
          h.order = {c, true};
        } else if constexpr (std::is_same_v<T, cmd::UseItem>) {
          auto& slot = h.items[static_cast<std::size_t>(c.slot)];
          const auto& item = *w.data->find_item(slot->name);
          h.effects.push_back({item.healHealth, item.healMana, w.tick,
                               std::max<std::int64_t>(1, w.data->seconds_to_ticks(item.duration))});
          if (--slot->charges <= 0) slot.reset();
          h.order = {c, true};
        }
      },
      command);
  return result;
}

bool is_wave_boundary(const WorldState& w) {
  const auto first = w.data->seconds_to_ticks(w.data->balance.firstWaveSeconds);
  const auto interval = w.data->seconds_to_ticks(w.data->balance.waveIntervalSeconds);
  return w.tick >= first && interval > 0 && (w.tick - first) % interval == 0;
}

bool spawn_creep_wave(WorldState& w) {
  if (!is_wave_boundary(w)) return false;
  const auto& b = w.data->balance;
  for (auto team : kTeams) {
    const Vec2 spawn = w.data->map.creep_spawn(team);
    const Vec2 toBase = w.data->map.base(team) - spawn;
    const double len = length(toBase);
    const Vec2 back = len > 0 ? toBase * (1.0 / len) : Vec2{};
    int rank = 0;
    auto add = [&](CreepKind kind) {
      const Vec2 pos = spawn + back * (60.0 * rank++);
      w.creeps.push_back(make_creep(*w.data, team, kind, EntityId{w.nextId++}, pos));
    };
    for (int i = 0; i < b.waveMelee; ++i) add(CreepKind::Melee);
    for (int i = 0; i < b.waveRanged; ++i) add(CreepKind::Ranged);
  }
  return true;
}

void step(WorldState& w) {
  if (w.outcome) throw IllegalState("cannot step a finished match");
  ++w.tick;

  respawn_heroes(w);
  for (auto team : kTeams) hero_act(w, team);

  const std::array<std::vector<Vec2>, 2> lanes = {w.data->map.lane_for(Team::Radiant),
                                                  w.data->map.lane_for(Team::Dire)};
  for (std::size_t i = 0; i < w.creeps.size(); ++i) creep_act(w, i, lanes);
  for (auto team : kTeams) tower_act(w, team);

  advance_projectiles(w);
  regenerate(w);
  move_couriers(w);
  process_deaths(w);
  spawn_creep_wave(w);
  w.outcome = check_terminal(w);
}

std::optional<MatchOutcome> check_terminal(const WorldState& w) {
  const bool radiantDown = !w.tower(Team::Radiant).unit.standing();
  const bool direDown = !w.tower(Team::Dire).unit.standing();
  if (!radiantDown && !direDown) return std::nullopt;
  MatchOutcome o;
  o.endTick = w.tick;
  if (radiantDown && direDown) {
    o.reason = OutcomeReason::Draw;
  } else {
    o.reason = OutcomeReason::TowerDestroyed;
    o.winner = radiantDown ? Team::Dire : Team::Radiant;
  }
  return o;
}

bool is_visible_to(const WorldState& w, Team team, Vec2 pos) {
  auto sees = [&](Vec2 from, double radius) { return distance(from, pos) <= radius; };
  const auto& h = w.hero(team);
  if (h.alive && h.unit.standing() && sees(h.unit.pos, h.unit.vision)) return true;
  const auto& t = w.tower(team);
  if (t.unit.standing() && sees(t.unit.pos, t.unit.vision)) return true;
  if (sees(w.courier(team).pos, w.data->balance.courierVision)) return true;
  return std::any_of(w.creeps.begin(), w.creeps.end(), [&](const CreepState& c) {
    return c.unit.team == team && c.unit.standing() && sees(c.unit.pos, c.unit.vision);
  });
}

protocol::EntitySnapshot visible_snapshot(const WorldState& w, Team team) {
  protocol::EntitySnapshot s;
  s.team = team;
  s.tick = w.tick;
  s.clock = w.clock();
  auto include = [&](const protocol::EntityRecord& r, Vec2 pos) {
    if (r.team == team || is_visible_to(w, team, pos)) s.entities.emplace(r.id, r);
  };
  for (const auto& h : w.heroes) {
    if (h.alive) include(hero_record(w, h), h.unit.pos);
  }
  for (const auto& t : w.towers) include(unit_record(w, t.unit, "Tower"), t.unit.pos);
  for (const auto& c : w.couriers) include(courier_record(w, c), c.pos);
  for (const auto& c : w.creeps) {
    auto r = unit_record(w, c.unit, "Creep");
    r.deniable = c.unit.health * 2 < c.unit.maxHealth;
    include(r, c.unit.pos);
  }
  return s;
}

std::uint64_t digest(const WorldState& w) {
  Hasher h;
  h.add(w.seed);
  h.add(w.tick);
  h.add(w.rng);
  h.add(static_cast<std::uint64_t>(w.nextId));
  h.add(w.config.radiantHero);
  h.add(w.config.direHero);
  for (const auto& hero : w.heroes) {
    h.add(hero.unit);
    h.add(hero.heroId);
    h.add(hero.alive);
    h.add(hero.mana);
    h.add(hero.maxMana);
    h.add(hero.xp);
    h.add(hero.gold);
    h.add(hero.abilityPoints);
    for (const auto& a : hero.abilities) {
      h.add(a.level);
      h.add(a.readyTick);
    }
    for (const auto& item : hero.items) h.add(item);
    h.add(hero.respawnTick);
    h.add(hero.order.command);
    h.add(hero.order.completed);
    for (const auto& e : hero.effects) {
      h.add(e.health);
      h.add(e.mana);
      h.add(e.startTick);
      h.add(e.durationTicks);
    }
    h.add(hero.lastHeroAttackTick);
    h.add(hero.kills);
    h.add(hero.deaths);
  }
  for (const auto& t : w.towers) {
    h.add(t.unit);
    h.add(t.target);
  }
  h.add(static_cast<std::uint64_t>(w.creeps.size()));
  for (const auto& c : w.creeps) {
    h.add(c.unit);
    h.add(static_cast<int>(c.kind));
    h.add(static_cast<std::uint64_t>(c.waypoint));
    h.add(c.goldBounty);
    h.add(c.xpBounty);
    h.add(c.target);
  }
  for (const auto& c : w.couriers) {
    h.add(c.id);
    h.add(c.pos);
    h.add(static_cast<int>(c.phase));
    for (const auto& s : c.carrying) h.add(s);
    h.add(static_cast<std::uint64_t>(c.carrying.size()));
    for (const auto& s : c.stash) h.add(s);
    h.add(static_cast<std::uint64_t>(c.stash.size()));
  }
  h.add(static_cast<std::uint64_t>(w.projectiles.size()));
  for (const auto& p : w.projectiles) {
    h.add(p.team);
    h.add(p.source);
    h.add(p.target);
    h.add(p.pos);
    h.add(p.speed);
    h.add(p.damage);
    h.add(p.fromHero);
  }
  h.add(w.outcome.has_value());
  if (w.outcome) {
    h.add(w.outcome->winner.has_value() ? static_cast<int>(*w.outcome->winner) : 0);
    h.add(static_cast<int>(w.outcome->reason));
    h.add(w.outcome->endTick);
  }
  return h.value();
}

}  // namespace midlane::sim
