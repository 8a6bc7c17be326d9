#pragma once

// Lane geometry and snapshot queries shared by the built-in opponent and the
// reference bot. Both only look at what arrives in an EntitySnapshot plus the
// public map layout.

#include <functional>
#include <vector>

#include "midlane/protocol.hpp"
#include "midlane/sim/game_data.hpp"
#include "midlane/sim/geometry.hpp"

namespace midlane {

using sim::Vec2;

inline Vec2 ground(const protocol::Vec3& v) { return {v.x, v.y}; }

// The mid lane seen from one team: progress is measured from the own base
// toward the enemy base.
class LaneView {
 public:
  LaneView(const sim::MapData& map, protocol::Team team);

  protocol::Team team() const { return team_; }
  Vec2 own_base() const { return ownBase_; }
  Vec2 enemy_base() const { return enemyBase_; }
  Vec2 own_tower() const { return ownTower_; }
  Vec2 enemy_tower() const { return enemyTower_; }
  double ground_z() const { return groundZ_; }
  const std::vector<Vec2>& waypoints() const { return waypoints_; }

  double progress(Vec2 p) const;
  Vec2 point_at(double progress) const;

  // First waypoint at least one step ahead of `pos`, pulled back to
  // `limitProgress` if it lies beyond it.
  Vec2 forward_waypoint(Vec2 pos, double limitProgress) const;

  protocol::Vec3 lift(Vec2 p) const { return {p.x, p.y, groundZ_}; }

 private:
  protocol::Team team_;
  Vec2 ownBase_;
  Vec2 enemyBase_;
  Vec2 ownTower_;
  Vec2 enemyTower_;
  Vec2 axis_;  // unit vector own base -> enemy base
  double groundZ_ = 0.0;
  std::vector<Vec2> waypoints_;
};

using EntityFilter = std::function<bool(const protocol::EntityRecord&)>;

// The observing team's hero, or null when it is dead.
const protocol::EntityRecord* own_hero(const protocol::EntitySnapshot& s);

// Nearest entity passing `filter` within `within` of `from`; ties go to the
// lower id.
const protocol::EntityRecord* nearest(const protocol::EntitySnapshot& s, Vec2 from,
                                      double within, const EntityFilter& filter);

inline EntityFilter enemy_of_type(protocol::Team own, std::string_view type) {
  return [own, type = std::string(type)](const protocol::EntityRecord& e) {
    return e.team != own && e.alive && e.type == type;
  };
}

// Where a hero at `pos` should walk to push the lane: the next waypoint,
// held outside enemy tower range unless an allied creep stands inside it
// (or `ignoreCover` is set), in which case the hero closes to attack range.
Vec2 advance_point(const LaneView& lane, const protocol::EntitySnapshot& s, Vec2 pos,
                   double attackRange, double towerRange, bool ignoreCover = false);

// True when an allied creep stands within `towerRange` of `tower`.
bool creep_cover(const protocol::EntitySnapshot& s, protocol::Team own, Vec2 tower,
                 double towerRange);

inline EntityFilter ally_of_type(protocol::Team own, std::string_view type) {
  return [own, type = std::string(type)](const protocol::EntityRecord& e) {
    return e.team == own && e.alive && e.type == type;
  };
}

}  // namespace midlane
