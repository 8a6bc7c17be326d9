#include <gtest/gtest.h>

#include "midlane/builtin_ai.hpp"
#include "midlane/lane.hpp"
#include "midlane/sim/world.hpp"
#include "support.hpp"

namespace midlane {
namespace {

using namespace ai;
using protocol::Team;
namespace cmd = protocol::cmd;
using testing::data;
using testing::make_entity;
using testing::make_hero;
using testing::snapshot_of;

constexpr const char* kLina = "npc_dota_hero_lina";

BuiltinDecision decide(Personality p, const protocol::EntitySnapshot& s) {
  return builtin_decide(s, BuiltinPersonality::preset(p, kLina), {}, *data());
}

int full_health() { return static_cast<int>(sim::max_health_at(*data(), data()->hero(kLina), 1)); }

TEST(Personalities, NamesRoundTrip) {
  for (auto p : {Personality::Passive, Personality::Laner, Personality::Aggressive}) {
    EXPECT_EQ(personality_from_name(personality_name(p)), p);
  }
  EXPECT_THROW(personality_from_name("berserk"), protocol::ConfigError);
  EXPECT_GT(BuiltinPersonality::preset(Personality::Aggressive, kLina).aggressionRange, 0);
  EXPECT_EQ(BuiltinPersonality::preset(Personality::Laner, kLina).aggressionRange, 0);
}

TEST(Builtin, PassiveAlwaysNoop) {
  auto s = snapshot_of(Team::Radiant, {make_hero(3, kLina, Team::Radiant, 0, 0, 20),
                                       make_hero(4, kLina, Team::Dire, 100, 0, 600),
                                       make_entity(9, "Creep", Team::Dire, 50, 0)});
  auto d = decide(Personality::Passive, s);
  EXPECT_TRUE(std::holds_alternative<cmd::Noop>(d.command));
  EXPECT_EQ(d.state.decisions, 1);
}

TEST(Builtin, DeadHeroWaits) {
  auto s = snapshot_of(Team::Radiant, {make_entity(9, "Creep", Team::Dire, 50, 0)});
  auto d = decide(Personality::Aggressive, s);
  EXPECT_TRUE(std::holds_alternative<cmd::Noop>(d.command));
  EXPECT_EQ(d.state.phase, BuiltinState::Phase::Dead);
}

TEST(Builtin, RetreatsBelowThreshold) {
  const int hp = full_health();
  const int low = static_cast<int>(0.3 * hp) - 1;
  auto s = snapshot_of(Team::Dire, {make_hero(4, kLina, Team::Dire, 0, 0, low),
                                    make_entity(9, "Creep", Team::Radiant, 50, 0)});
  auto d = decide(Personality::Laner, s);
  const auto* m = std::get_if<cmd::Move>(&d.command);
  ASSERT_NE(m, nullptr);
  EXPECT_EQ((sim::Vec2{m->target.x, m->target.y}), data()->map.base(Team::Dire));
  EXPECT_EQ(d.state.phase, BuiltinState::Phase::Retreat);

  // Aggressive keeps fighting at that health.
  auto a = decide(Personality::Aggressive, s);
  EXPECT_TRUE(std::holds_alternative<cmd::Attack>(a.command));
}

TEST(Builtin, LanerHitsNearestCreepIgnoringHero) {
  auto s = snapshot_of(Team::Radiant, {make_hero(3, kLina, Team::Radiant, 0, 0, 600),
                                       make_hero(4, kLina, Team::Dire, 100, 0, 600),
                                       make_entity(20, "Creep", Team::Dire, 400, 0),
                                       make_entity(21, "Creep", Team::Dire, 0, -300),
                                       make_entity(22, "Creep", Team::Radiant, 10, 0)});
  auto d = decide(Personality::Laner, s);
  ASSERT_TRUE(std::holds_alternative<cmd::Attack>(d.command));
  EXPECT_EQ(std::get<cmd::Attack>(d.command).target, protocol::EntityId{21});
}

TEST(Builtin, AggressiveCastsThenAttacks) {
  auto self = make_hero(3, kLina, Team::Radiant, 0, 0, 600);
  auto s = snapshot_of(Team::Radiant, {self, make_hero(4, kLina, Team::Dire, 700, 0, 600)});
  auto d = decide(Personality::Aggressive, s);
  ASSERT_TRUE(std::holds_alternative<cmd::Cast>(d.command));
  EXPECT_EQ(std::get<cmd::Cast>(d.command).ability, 0);

  self.mana = 10;
  s = snapshot_of(Team::Radiant, {self, make_hero(4, kLina, Team::Dire, 700, 0, 600)});
  d = decide(Personality::Aggressive, s);
  ASSERT_TRUE(std::holds_alternative<cmd::Attack>(d.command));
  EXPECT_EQ(std::get<cmd::Attack>(d.command).target, protocol::EntityId{4});

  // Outside the chase radius it goes back to laning.
  s = snapshot_of(Team::Radiant, {self, make_hero(4, kLina, Team::Dire, 1500, 0, 600)});
  d = decide(Personality::Aggressive, s);
  EXPECT_TRUE(std::holds_alternative<cmd::Move>(d.command));
}

TEST(Builtin, LanerRespectsTowerWithoutCover) {
  const auto tower = data()->map.tower(Team::Dire).position;
  const double range = data()->balance.tower.attackRange;
  auto s = snapshot_of(Team::Radiant, {make_hero(3, kLina, Team::Radiant, tower.x - 350, tower.y - 350, 600),
                                       make_entity(2, "Tower", Team::Dire, tower.x, tower.y, 1300)});
  auto d = decide(Personality::Laner, s);
  const auto* m = std::get_if<cmd::Move>(&d.command);
  ASSERT_NE(m, nullptr);
  EXPECT_GT(sim::distance({m->target.x, m->target.y}, tower), range);

  s.entities.emplace(protocol::EntityId{30},
                     make_entity(30, "Creep", Team::Radiant, tower.x - 200, tower.y - 200));
  d = decide(Personality::Laner, s);
  ASSERT_TRUE(std::holds_alternative<cmd::Attack>(d.command));
  EXPECT_EQ(std::get<cmd::Attack>(d.command).target, protocol::EntityId{2});
}

// Every command the built-in AI emits during real play must pass the
// simulator's own order validation.
TEST(Builtin, OrdersAreAlwaysLegal) {
  const char* heroes[] = {"npc_dota_hero_lina", "npc_dota_hero_axe", "npc_dota_hero_drow_ranger",
                          "npc_dota_hero_ogre_magi"};
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const std::string a = heroes[seed % 4];
    const std::string b = heroes[(seed + 1) % 4];
    auto w = sim::init_world(data(), {a, b}, seed);
    BuiltinController ra(BuiltinPersonality::preset(Personality::Aggressive, a), data());
    BuiltinController rb(BuiltinPersonality::preset(seed % 2 ? Personality::Laner : Personality::Aggressive, b), data());
    for (int i = 0; i < 30 * 60 * 3 && !w.outcome; ++i) {
      const auto ca = ra.decide(sim::visible_snapshot(w, Team::Radiant));
      const auto cb = rb.decide(sim::visible_snapshot(w, Team::Dire));
      auto va = sim::validate_order(w, Team::Radiant, ca);
      auto vb = sim::validate_order(w, Team::Dire, cb);
      ASSERT_TRUE(va.accepted) << "tick " << w.tick << " " << protocol::encode_bot_command(ca) << " " << va.reason;
      ASSERT_TRUE(vb.accepted) << "tick " << w.tick << " " << protocol::encode_bot_command(cb) << " " << vb.reason;
      sim::submit_order(w, Team::Radiant, ca);
      sim::submit_order(w, Team::Dire, cb);
      sim::step(w);
      checked += 2;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Lane, AdvancePointHoldsOutsideTowerRange) {
  const LaneView lane(data()->map, Team::Radiant);
  const double range = data()->balance.tower.attackRange;
  auto s = snapshot_of(Team::Radiant, {});
  for (double p = 0; p < lane.progress(lane.enemy_tower()); p += 97) {
    const Vec2 pos = lane.point_at(p);
    const Vec2 to = advance_point(lane, s, pos, 600, range);
    EXPECT_GT(sim::distance(to, lane.enemy_tower()), range) << "progress " << p;
    EXPECT_GE(lane.progress(to) + 1e-9, std::min(p, lane.progress(lane.enemy_tower()) - range - 100));
  }
}

TEST(Lane, NearestBreaksTiesByLowerId) {
  auto s = snapshot_of(Team::Radiant, {make_entity(12, "Creep", Team::Dire, 100, 0),
                                       make_entity(11, "Creep", Team::Dire, -100, 0)});
  const auto* n = nearest(s, {0, 0}, 500, enemy_of_type(Team::Radiant, "Creep"));
  ASSERT_NE(n, nullptr);
  EXPECT_EQ(n->id, protocol::EntityId{11});
  EXPECT_EQ(nearest(s, {0, 0}, 50, enemy_of_type(Team::Radiant, "Creep")), nullptr);
}

}  // namespace
}  // namespace midlane
