#include <gtest/gtest.h>

#include <sstream>

#include "midlane/builtin_ai.hpp"
#include "midlane/lane.hpp"
#include "midlane/sim/replay.hpp"
#include "midlane/sim/world.hpp"
#include "support.hpp"

namespace midlane {
namespace {

using namespace sim;
namespace cmd = protocol::cmd;
using testing::data;

constexpr const char* kLina = "npc_dota_hero_lina";
constexpr const char* kAxe = "npc_dota_hero_axe";

WorldState fresh(std::uint64_t seed = 1, std::string radiant = kLina, std::string dire = kLina) {
  return init_world(data(), {radiant, dire}, seed);
}

void run_ticks(WorldState& w, int n) {
  for (int i = 0; i < n && !w.outcome; ++i) step(w);
}

TEST(Data, LoadsShippedFiles) {
  const auto& d = *data();
  EXPECT_EQ(d.balance.tickRate, 30);
  EXPECT_DOUBLE_EQ(d.dt(), 1.0 / 30.0);
  EXPECT_EQ(d.roster().size(), 4u);
  EXPECT_TRUE(d.roster().contains(kLina));
  EXPECT_EQ(d.hero(kLina).abilities.size(), 4u);
  EXPECT_THROW(d.hero("npc_dota_hero_pudge"), protocol::ConfigError);
  EXPECT_THROW(load_game_data("/nonexistent"), protocol::ConfigError);
}

TEST(Init, PlacesUnitsAtBases) {
  auto w = fresh();
  const auto& d = *data();
  for (auto team : {Team::Radiant, Team::Dire}) {
    const auto& h = w.hero(team);
    EXPECT_EQ(h.unit.pos, d.map.base(team));
    EXPECT_EQ(h.unit.health, d.hero(kLina).health);
    EXPECT_EQ(h.gold, d.balance.startingGold);
    EXPECT_EQ(h.unit.level, 1);
    EXPECT_EQ(h.abilities[0].level, 1);
    EXPECT_EQ(w.tower(team).unit.health, d.balance.tower.health);
  }
  EXPECT_TRUE(w.creeps.empty());
  EXPECT_THROW(init_world(data(), {kLina, "npc_dota_hero_pudge"}, 1), protocol::ConfigError);
}

// Closed-form straight-line motion, independent of step_toward.
Vec2 kinematics_oracle(Vec2 start, Vec2 target, double speed, double dt, int ticks) {
  const double dx = target.x - start.x;
  const double dy = target.y - start.y;
  const double dist = std::sqrt(dx * dx + dy * dy);
  const double travelled = std::min(dist, speed * dt * ticks);
  if (dist == 0) return start;
  return {start.x + dx / dist * travelled, start.y + dy / dist * travelled};
}

TEST(Orders, StickyMoveFollowsKinematics) {
  auto w = fresh();
  auto& h = w.hero(Team::Radiant);
  const Vec2 start = h.unit.pos;
  const Vec2 target{-5400, -6100};
  ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::Move{{target.x, target.y, 128}}).accepted);
  double previous = distance(start, target);
  for (int k = 1; k <= 200; ++k) {
    submit_order(w, Team::Radiant, cmd::Noop{});
    step(w);
    const Vec2 expected = kinematics_oracle(start, target, h.unit.moveSpeed, w.dt(), k);
    ASSERT_NEAR(h.unit.pos.x, expected.x, 1e-6) << "tick " << k;
    ASSERT_NEAR(h.unit.pos.y, expected.y, 1e-6) << "tick " << k;
    const double now = distance(h.unit.pos, target);
    ASSERT_LE(now, previous);
    previous = now;
  }
  EXPECT_EQ(h.unit.pos, target);
  EXPECT_TRUE(h.order.completed);
}

TEST(Orders, NewOrderReplacesOld) {
  auto w = fresh();
  submit_order(w, Team::Radiant, cmd::Move{{0, 0, 0}});
  run_ticks(w, 5);
  const Vec2 mid = w.hero(Team::Radiant).unit.pos;
  submit_order(w, Team::Radiant, cmd::Move{{-8000, -6700, 0}});
  step(w);
  EXPECT_LT(w.hero(Team::Radiant).unit.pos.x, mid.x);
}

TEST(Orders, MoveTargetIsClampedToMap) {
  auto w = fresh();
  submit_order(w, Team::Radiant, cmd::Move{{-1e7, -6700, 0}});
  const auto& order = std::get<cmd::Move>(w.hero(Team::Radiant).order.command);
  EXPECT_EQ(order.target.x, data()->map.boundsMin);
}

TEST(Orders, AttackNeedsVisibleLivingEnemy) {
  auto w = fresh();
  const auto enemyTower = w.tower(Team::Dire).unit.id;
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Attack{enemyTower}).accepted)
      << "enemy tower is beyond vision from base";
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Attack{w.tower(Team::Radiant).unit.id}).accepted);
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Attack{EntityId{9999}}).accepted);
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Attack{w.courier(Team::Dire).id}).accepted);
  w.hero(Team::Radiant).unit.pos = {600, 600};
  EXPECT_TRUE(validate_order(w, Team::Radiant, cmd::Attack{enemyTower}).accepted);
}

TEST(Orders, CastValidation) {
  auto w = fresh();
  auto& lina = w.hero(Team::Radiant);
  auto& enemy = w.hero(Team::Dire);
  enemy.unit.pos = {0, 0};
  lina.unit.pos = {-500, 0};
  EXPECT_TRUE(validate_order(w, Team::Radiant, cmd::Cast{0, enemy.unit.id}).accepted);
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Cast{1, enemy.unit.id}).accepted)
      << "slot 1 not learned at level 1";
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Cast{2, enemy.unit.id}).accepted) << "passive";
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Cast{7, enemy.unit.id}).accepted);
  lina.unit.pos = {-5000, 0};
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Cast{0, enemy.unit.id}).accepted);
}

TEST(Orders, CastDealsDamageSpendsManaStartsCooldown) {
  auto w = fresh();
  auto& lina = w.hero(Team::Radiant);
  auto& enemy = w.hero(Team::Dire);
  enemy.unit.pos = {0, 0};
  lina.unit.pos = {-500, 0};
  const auto& ability = data()->hero(kLina).abilities[0];
  const int hp = enemy.unit.health;
  const int mana = lina.mana;
  ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::Cast{0, enemy.unit.id}).accepted);
  step(w);
  EXPECT_EQ(enemy.unit.health, hp - ability.damage);
  EXPECT_EQ(lina.mana, mana - ability.manaCost);
  EXPECT_FALSE(validate_order(w, Team::Radiant, cmd::Cast{0, enemy.unit.id}).accepted);
  EXPECT_TRUE(lina.order.completed);
}

TEST(Economy, BuyDeductsGoldAndDelivers) {
  auto w = fresh();
  auto& h = w.hero(Team::Radiant);
  const auto* tango = data()->find_item("item_tango");
  ASSERT_NE(tango, nullptr);
  const auto gold = h.gold;
  ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::Buy{"item_tango"}).accepted);
  EXPECT_EQ(h.gold, gold - tango->price);
  EXPECT_TRUE(h.order.completed);
  run_ticks(w, 60);
  ASSERT_TRUE(h.items[0].has_value()) << "courier delivers to a hero standing at base";
  EXPECT_EQ(h.items[0]->name, "item_tango");
  EXPECT_EQ(h.items[0]->charges, tango->charges);
  EXPECT_FALSE(submit_order(w, Team::Radiant, cmd::Buy{"item_rapier"}).accepted);
}

TEST(Economy, BuyRejectedWithoutGoldOrSpace) {
  auto w = fresh();
  auto& h = w.hero(Team::Radiant);
  h.gold = 10;
  EXPECT_FALSE(submit_order(w, Team::Radiant, cmd::Buy{"item_tango"}).accepted);
  h.gold = 100000;
  for (int i = 0; i < data()->balance.inventorySlots; ++i) {
    ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::Buy{"item_branches"}).accepted);
  }
  EXPECT_FALSE(submit_order(w, Team::Radiant, cmd::Buy{"item_branches"}).accepted);
}

TEST(Economy, SellRefundsHalf) {
  auto w = fresh();
  auto& h = w.hero(Team::Radiant);
  h.items[2] = ItemStack{"item_flask", 1};
  const auto gold = h.gold;
  ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::Sell{2}).accepted);
  EXPECT_EQ(h.gold, gold + data()->find_item("item_flask")->price / 2);
  EXPECT_FALSE(h.items[2].has_value());
  EXPECT_FALSE(submit_order(w, Team::Radiant, cmd::Sell{2}).accepted);
}

TEST(Economy, UseItemHealsExactTotal) {
  auto w = fresh();
  auto& h = w.hero(Team::Radiant);
  h.unit.pos = {0, 0};  // away from the fountain
  h.unit.health = 100;
  h.items[0] = ItemStack{"item_tango", 3};
  const auto& tango = *data()->find_item("item_tango");
  ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::UseItem{0, std::nullopt}).accepted);
  EXPECT_EQ(h.items[0]->charges, 2);
  const auto ticks = data()->seconds_to_ticks(tango.duration);
  run_ticks(w, static_cast<int>(ticks));
  const int regen = static_cast<int>(ticks / 30) * data()->balance.healthRegenPerSecond;
  EXPECT_EQ(h.unit.health, 100 + tango.healHealth + regen);
  EXPECT_FALSE(
      submit_order(w, Team::Radiant, cmd::UseItem{0, w.hero(Team::Dire).unit.id}).accepted);
}

TEST(Economy, PassiveIncome) {
  auto w = fresh();
  const auto gold = w.hero(Team::Radiant).gold;
  run_ticks(w, 300);
  EXPECT_EQ(w.hero(Team::Radiant).gold, gold + 10 * data()->balance.passiveIncomePerSecond);
}

TEST(Waves, SpawnOnSchedule) {
  auto w = fresh();
  const auto& b = data()->balance;
  const auto first = data()->seconds_to_ticks(b.firstWaveSeconds);
  run_ticks(w, static_cast<int>(first) - 1);
  EXPECT_TRUE(w.creeps.empty());
  step(w);
  EXPECT_EQ(w.creeps.size(), static_cast<std::size_t>(2 * (b.waveMelee + b.waveRanged)));
  const auto interval = data()->seconds_to_ticks(b.waveIntervalSeconds);
  int waves = 1;
  for (std::int64_t t = w.tick + 1; t <= first + 3 * interval; ++t) {
    step(w);
    if (is_wave_boundary(w)) ++waves;
  }
  EXPECT_EQ(waves, 4);
}

TEST(Waves, CreepsStayInsideCorridor) {
  auto w = fresh();
  for (int i = 0; i < 30 * 120 && !w.outcome; ++i) {
    step(w);
    for (const auto& c : w.creeps) {
      ASSERT_TRUE(data()->map.in_corridor(c.unit.pos)) << c.unit.pos.x << "," << c.unit.pos.y;
    }
  }
}

TEST(Progression, RespawnTimeFormula) {
  const auto& b = data()->balance;
  for (int level = 1; level <= 25; ++level) EXPECT_DOUBLE_EQ(respawn_time(b, level), 4.0 + 2.0 * level);
}

TEST(Progression, DeadHeroRespawnsAtBase) {
  auto w = fresh();
  auto& h = w.hero(Team::Dire);
  h.unit.pos = {0, 0};
  h.unit.health = 0;
  step(w);
  EXPECT_FALSE(h.alive);
  const auto diedAt = w.tick;
  const auto wait = data()->seconds_to_ticks(respawn_time(data()->balance, 1));
  EXPECT_FALSE(visible_snapshot(w, Team::Dire).entities.contains(h.unit.id));
  EXPECT_FALSE(submit_order(w, Team::Dire, cmd::Move{{0, 0, 0}}).accepted);
  run_ticks(w, static_cast<int>(wait) - 1);
  EXPECT_FALSE(h.alive);
  step(w);
  EXPECT_TRUE(h.alive);
  EXPECT_EQ(w.tick - diedAt, wait);
  EXPECT_EQ(h.unit.pos, data()->map.base(Team::Dire));
  EXPECT_EQ(h.unit.health, h.unit.maxHealth);
  EXPECT_EQ(h.deaths, 1);
}

TEST(Progression, LevelThresholds) {
  const auto& b = data()->balance;
  EXPECT_EQ(xp_for_level(b, 1), 0);
  EXPECT_EQ(xp_for_level(b, 2), 100);
  EXPECT_EQ(xp_for_level(b, 3), 400);
  auto w = fresh();
  auto& h = w.hero(Team::Radiant);
  h.xp = 400;
  h.unit.pos = {0, 0};
  const int hp = h.unit.health;
  step(w);
  EXPECT_EQ(h.unit.level, 3);
  EXPECT_EQ(h.unit.maxHealth, data()->hero(kLina).health + 2 * b.healthPerLevel);
  EXPECT_EQ(max_health_at(*data(), data()->hero(kLina), 3), h.unit.maxHealth);
  EXPECT_GE(h.unit.health, hp + 2 * b.healthPerLevel);
  int learned = 0;
  for (const auto& a : h.abilities) learned += a.level;
  EXPECT_EQ(learned, 3);
}

TEST(Terminal, TowerDeathDecidesMatch) {
  auto w = fresh();
  w.tower(Team::Dire).unit.health = 0;
  step(w);
  ASSERT_TRUE(w.outcome);
  EXPECT_EQ(w.outcome->winner, Team::Radiant);
  EXPECT_EQ(w.outcome->reason, OutcomeReason::TowerDestroyed);
  EXPECT_EQ(w.outcome->endTick, 1);
  EXPECT_THROW(step(w), IllegalState);
}

TEST(Terminal, BothTowersSameTickIsDraw) {
  auto w = fresh();
  w.tower(Team::Dire).unit.health = 0;
  w.tower(Team::Radiant).unit.health = 0;
  step(w);
  ASSERT_TRUE(w.outcome);
  EXPECT_FALSE(w.outcome->winner);
  EXPECT_EQ(w.outcome->reason, OutcomeReason::Draw);
}

TEST(Terminal, HeroKillsDoNotEndMatch) {
  auto w = fresh();
  for (int kill = 0; kill < 2; ++kill) {
    auto& h = w.hero(Team::Dire);
    h.unit.pos = {0, 0};
    h.unit.health = 0;
    h.unit.lastHitByHero = true;
    step(w);
    EXPECT_FALSE(h.alive);
    run_ticks(w, static_cast<int>(data()->seconds_to_ticks(30)));
  }
  EXPECT_EQ(w.hero(Team::Radiant).kills, 2);
  const auto from = w.tick;
  // Hold both towers up while the lanes fight so only kills could end it.
  for (int i = 0; i < 1000; ++i) {
    w.tower(Team::Radiant).unit.health = w.tower(Team::Dire).unit.health = 1300;
    step(w);
    ASSERT_FALSE(w.outcome) << "tick " << w.tick;
  }
  EXPECT_EQ(w.tick - from, 1000);
}

TEST(Combat, HeroKillPaysBounty) {
  auto w = fresh();
  auto& killer = w.hero(Team::Radiant);
  auto& victim = w.hero(Team::Dire);
  killer.unit.pos = {0, 0};
  victim.unit.pos = {300, 0};
  victim.unit.health = 1;
  const auto gold = killer.gold;
  ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::Attack{victim.unit.id}).accepted);
  for (int i = 0; i < 60 && victim.alive; ++i) step(w);
  ASSERT_FALSE(victim.alive);
  const auto& b = data()->balance;
  EXPECT_GE(killer.gold, gold + b.heroGold);
  EXPECT_EQ(killer.kills, 1);
  EXPECT_GE(killer.xp, b.heroXpPerLevel);
}

TEST(Combat, TowerPrefersCreepsUnlessHeroAggro) {
  auto w = fresh();
  run_ticks(w, static_cast<int>(data()->seconds_to_ticks(data()->balance.firstWaveSeconds)));
  auto& tower = w.tower(Team::Dire);
  auto& lina = w.hero(Team::Radiant);
  auto& enemy = w.hero(Team::Dire);
  ASSERT_FALSE(w.creeps.empty());
  auto& creep = w.creeps.front();
  ASSERT_EQ(creep.unit.team, Team::Radiant);
  creep.unit.pos = tower.unit.pos + Vec2{300, 0};
  lina.unit.pos = tower.unit.pos + Vec2{-200, 0};
  tower.target.reset();
  tower.unit.attack.nextAttackTick = w.tick + 1000;
  step(w);
  ASSERT_TRUE(tower.target);
  EXPECT_EQ(*tower.target, creep.unit.id);

  enemy.unit.pos = lina.unit.pos + Vec2{0, 200};
  ASSERT_TRUE(submit_order(w, Team::Radiant, cmd::Attack{enemy.unit.id}).accepted);
  for (int i = 0; i < 5; ++i) step(w);
  ASSERT_TRUE(tower.target);
  EXPECT_EQ(*tower.target, lina.unit.id);
}

TEST(Visibility, SnapshotsMatchOracleOverMatch) {
  auto w = fresh(3, kLina, kAxe);
  auto d = data();
  ai::BuiltinController radiant(ai::BuiltinPersonality::preset(ai::Personality::Aggressive, kLina), d);
  ai::BuiltinController dire(ai::BuiltinPersonality::preset(ai::Personality::Laner, kAxe), d);
  int checked = 0;
  for (int i = 0; i < 30 * 60 * 4 && !w.outcome; ++i) {
    for (auto team : {Team::Radiant, Team::Dire}) {
      const auto snap = visible_snapshot(w, team);
      auto expectEnemy = [&](EntityId id, Vec2 pos, bool alive) {
        const bool shown = snap.entities.contains(id);
        ASSERT_EQ(shown, alive && testing::visible_to(w, team, pos)) << "id " << id.value;
        ++checked;
      };
      const auto other = protocol::opponent_of(team);
      expectEnemy(w.hero(other).unit.id, w.hero(other).unit.pos, w.hero(other).alive);
      for (const auto& c : w.creeps) {
        if (c.unit.team == other) expectEnemy(c.unit.id, c.unit.pos, true);
      }
      expectEnemy(w.tower(other).unit.id, w.tower(other).unit.pos, true);
      for (const auto& [id, e] : snap.entities) {
        if (e.team == team) continue;
        ASSERT_TRUE(testing::visible_to(w, team, ground(e.origin))) << "leaked id " << id.value;
      }
    }
    submit_order(w, Team::Radiant, radiant.decide(visible_snapshot(w, Team::Radiant)));
    submit_order(w, Team::Dire, dire.decide(visible_snapshot(w, Team::Dire)));
    step(w);
  }
  EXPECT_GT(checked, 10000);
}

TEST(Determinism, SameSeedSameDigests) {
  auto d = data();
  auto play = [&](std::uint64_t seed) {
    auto w = fresh(seed, kLina, kAxe);
    ai::BuiltinController a(ai::BuiltinPersonality::preset(ai::Personality::Laner, kLina), d);
    ai::BuiltinController b(ai::BuiltinPersonality::preset(ai::Personality::Aggressive, kAxe), d);
    std::vector<std::uint64_t> digests;
    for (int i = 0; i < 3000 && !w.outcome; ++i) {
      submit_order(w, Team::Radiant, a.decide(visible_snapshot(w, Team::Radiant)));
      submit_order(w, Team::Dire, b.decide(visible_snapshot(w, Team::Dire)));
      step(w);
      digests.push_back(digest(w));
    }
    return digests;
  };
  const auto first = play(11);
  EXPECT_EQ(first, play(11));
  EXPECT_NE(first, play(12));
}

TEST(Determinism, DigestCoversState) {
  auto a = fresh();
  auto b = fresh();
  EXPECT_EQ(digest(a), digest(b));
  b.hero(Team::Radiant).unit.pos.x = std::nextafter(b.hero(Team::Radiant).unit.pos.x, 0.0);
  EXPECT_NE(digest(a), digest(b));
  auto c = fresh();
  c.hero(Team::Dire).gold += 1;
  EXPECT_NE(digest(a), digest(c));
  EXPECT_NE(digest(fresh(1)), digest(fresh(2)));
}

TEST(Replay, RoundTripReproducesDigests) {
  auto d = data();
  auto w = fresh(5, kLina, kAxe);
  std::stringstream file;
  ReplayWriter writer(file);
  writer.header(w);
  ai::BuiltinController a(ai::BuiltinPersonality::preset(ai::Personality::Aggressive, kLina), d);
  ai::BuiltinController b(ai::BuiltinPersonality::preset(ai::Personality::Laner, kAxe), d);
  for (int i = 0; i < 2000 && !w.outcome; ++i) {
    const auto ca = a.decide(visible_snapshot(w, Team::Radiant));
    const auto cb = b.decide(visible_snapshot(w, Team::Dire));
    submit_order(w, Team::Radiant, ca);
    submit_order(w, Team::Dire, cb);
    const auto tick = w.tick;
    step(w);
    writer.record(tick, ca, cb, digest(w));
  }
  auto check = verify_replay(file, d);
  ASSERT_TRUE(check.ok) << check.error;
  EXPECT_EQ(check.finalDigest, digest(w));
  EXPECT_EQ(check.ticks, w.tick);

  std::string text = file.str();
  const auto pos = text.rfind("\"digest\":\"");
  ASSERT_NE(pos, std::string::npos);
  text[pos + 10] = text[pos + 10] == '0' ? '1' : '0';
  std::stringstream tampered(text);
  EXPECT_FALSE(verify_replay(tampered, d).ok);
}

TEST(Geometry, ConvexPolygonMembership) {
  const std::vector<Vec2> square = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  EXPECT_TRUE(point_in_convex_polygon({5, 5}, square));
  EXPECT_TRUE(point_in_convex_polygon({0, 5}, square));
  EXPECT_FALSE(point_in_convex_polygon({10.5, 5}, square));
  EXPECT_TRUE(data()->map.in_corridor({0, 0}));
  EXPECT_FALSE(data()->map.in_corridor({-6000, 6000}));
}

}  // namespace
}  // namespace midlane
