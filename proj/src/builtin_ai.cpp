#include "midlane/builtin_ai.hpp"

#include "midlane/lane.hpp"

namespace midlane::ai {

namespace cmd = protocol::cmd;
using protocol::EntityRecord;
using Phase = BuiltinState::Phase;

std::string_view personality_name(Personality p) {
  switch (p) {
    case Personality::Passive:
      return "passive";
    case Personality::Laner:
      return "laner";
    case Personality::Aggressive:
      return "aggressive";
  }
  return "laner";
}

Personality personality_from_name(std::string_view name) {
  if (name == "passive") return Personality::Passive;
  if (name == "laner") return Personality::Laner;
  if (name == "aggressive") return Personality::Aggressive;
  throw protocol::ConfigError("unknown personality '" + std::string(name) + "'");
}

BuiltinPersonality BuiltinPersonality::preset(Personality kind, std::string hero) {
  BuiltinPersonality p;
  p.kind = kind;
  p.hero = std::move(hero);
  switch (kind) {
    case Personality::Passive:
      p.aggressionRange = 0.0;
      p.retreatThreshold = 0.3;
      break;
    case Personality::Laner:
      p.aggressionRange = 0.0;
      p.retreatThreshold = 0.3;
      break;
    case Personality::Aggressive:
      p.aggressionRange = 1200.0;
      p.retreatThreshold = 0.2;
      break;
  }
  return p;
}

namespace {

// First ability that the simulator would accept as a cast on `target` right now.
std::optional<int> castable_on(const EntityRecord& self, const EntityRecord& target,
                               const sim::HeroDef& def) {
  if (!self.hero) return std::nullopt;
  const double d = sim::distance(ground(self.origin), ground(target.origin));
  for (const auto& a : self.hero->abilities) {
    if (a.slot < 0 || static_cast<std::size_t>(a.slot) >= def.abilities.size()) continue;
    const auto& ability = def.abilities[static_cast<std::size_t>(a.slot)];
    if (ability.kind == sim::AbilityKind::Passive || a.level <= 0) continue;
    if (a.cooldownRemaining > 0.0 || self.mana < ability.manaCost) continue;
    if (d > ability.castRange) continue;
    return a.slot;
  }
  return std::nullopt;
}

}  // namespace

BuiltinDecision builtin_decide(const protocol::EntitySnapshot& snapshot,
                               const BuiltinPersonality& personality, const BuiltinState& state,
                               const sim::GameData& data) {
  BuiltinState next = state;
  ++next.decisions;
  auto decide = [&](Phase phase, protocol::BotCommand c) {
    next.phase = phase;
    return BuiltinDecision{std::move(c), next};
  };

  if (personality.kind == Personality::Passive) return decide(Phase::Idle, cmd::Noop{});

  const EntityRecord* self = own_hero(snapshot);
  if (!self) return decide(Phase::Dead, cmd::Noop{});

  const auto team = snapshot.team;
  const LaneView lane(data.map, team);
  const auto& def = data.hero(self->name);
  const Vec2 pos = ground(self->origin);
  const double maxHealth = sim::max_health_at(data, def, self->level);

  if (self->health < personality.retreatThreshold * maxHealth) {
    return decide(Phase::Retreat, cmd::Move{lane.lift(lane.own_base())});
  }

  if (personality.kind == Personality::Aggressive) {
    if (const auto* enemy = nearest(snapshot, pos, personality.aggressionRange,
                                    enemy_of_type(team, "Hero"))) {
      if (auto slot = castable_on(*self, *enemy, def)) {
        return decide(Phase::Fight, cmd::Cast{*slot, enemy->id});
      }
      return decide(Phase::Fight, cmd::Attack{enemy->id});
    }
  }

  if (const auto* creep = nearest(snapshot, pos, def.attackRange, enemy_of_type(team, "Creep"))) {
    return decide(Phase::Fight, cmd::Attack{creep->id});
  }

  const double towerRange = data.balance.tower.attackRange;
  const bool aggressive = personality.kind == Personality::Aggressive;
  const auto* tower = nearest(snapshot, pos, def.attackRange, enemy_of_type(team, "Tower"));
  if (tower && (aggressive || creep_cover(snapshot, team, ground(tower->origin), towerRange))) {
    return decide(Phase::Fight, cmd::Attack{tower->id});
  }

  const Vec2 to = advance_point(lane, snapshot, pos, def.attackRange, towerRange, aggressive);
  return decide(Phase::Push, cmd::Move{lane.lift(to)});
}

}  // namespace midlane::ai
