#include "midlane/lane.hpp"

#include <limits>

namespace midlane {

namespace {
constexpr double kWaypointLead = 50.0;
}

LaneView::LaneView(const sim::MapData& map, protocol::Team team)
    : team_(team),
      ownBase_(map.base(team)),
      enemyBase_(map.base(protocol::opponent_of(team))),
      ownTower_(map.tower(team).position),
      enemyTower_(map.tower(protocol::opponent_of(team)).position),
      groundZ_(map.groundZ),
      waypoints_(map.lane_for(team)) {
  Vec2 d = enemyBase_ - ownBase_;
  double len = sim::length(d);
  axis_ = len > 0 ? d * (1.0 / len) : Vec2{1.0, 0.0};
}

double LaneView::progress(Vec2 p) const { return sim::dot(p - ownBase_, axis_); }

Vec2 LaneView::point_at(double progress) const { return ownBase_ + axis_ * progress; }

Vec2 LaneView::forward_waypoint(Vec2 pos, double limitProgress) const {
  const double here = progress(pos);
  Vec2 next = waypoints_.back();
  for (const auto& w : waypoints_) {
    if (progress(w) > here + kWaypointLead) {
      next = w;
      break;
    }
  }
  if (progress(next) > limitProgress) return point_at(limitProgress);
  return next;
}

const protocol::EntityRecord* own_hero(const protocol::EntitySnapshot& s) {
  for (const auto& [id, e] : s.entities) {
    if (e.type == "Hero" && e.team == s.team && e.alive) return &e;
  }
  return nullptr;
}

const protocol::EntityRecord* nearest(const protocol::EntitySnapshot& s, Vec2 from, double within,
                                      const EntityFilter& filter) {
  const protocol::EntityRecord* best = nullptr;
  double bestDistance = std::numeric_limits<double>::infinity();
  for (const auto& [id, e] : s.entities) {
    if (!filter(e)) continue;
    double d = sim::distance(from, ground(e.origin));
    if (d <= within && d < bestDistance) {
      best = &e;
      bestDistance = d;
    }
  }
  return best;
}

bool creep_cover(const protocol::EntitySnapshot& s, protocol::Team own, Vec2 tower,
                 double towerRange) {
  return nearest(s, tower, towerRange, ally_of_type(own, "Creep")) != nullptr;
}

Vec2 advance_point(const LaneView& lane, const protocol::EntitySnapshot& s, Vec2 pos,
                   double attackRange, double towerRange, bool ignoreCover) {
  const double towerProgress = lane.progress(lane.enemy_tower());
  const bool covered = ignoreCover || creep_cover(s, lane.team(), lane.enemy_tower(), towerRange);
  const double limit =
      covered ? towerProgress - (attackRange - 50.0) : towerProgress - (towerRange + 100.0);
  return lane.forward_waypoint(pos, limit);
}

}  // namespace midlane
