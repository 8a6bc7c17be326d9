#pragma once

// Wire-level data model and JSON codec for the game <-> bot protocol.
//
// Every message travels as an HTTP POST body with MIME type
// application/json. The game side sends Select/Update/Chat/Test calls, the
// bot side replies with a hero selection or a single command.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace midlane::protocol {

using Json = nlohmann::json;

struct EntityId {
  std::uint32_t value = 0;

  auto operator<=>(const EntityId&) const = default;
};

enum class Team : int { Radiant = 2, Dire = 3 };

constexpr Team opponent_of(Team t) {
  return t == Team::Radiant ? Team::Dire : Team::Radiant;
}
constexpr int team_index(Team t) { return t == Team::Radiant ? 0 : 1; }
std::string_view team_name(Team t);

// Player slots follow the game convention: 0..4 Radiant, 5..9 Dire.
constexpr Team team_of_player(int player) {
  return player >= 5 ? Team::Dire : Team::Radiant;
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Vec3&) const = default;
};

struct AbilityInfo {
  int slot = 0;
  std::string name;
  int level = 0;
  double cooldownRemaining = 0.0;  // seconds

  bool operator==(const AbilityInfo&) const = default;
};

struct ItemInfo {
  int slot = 0;
  std::string name;
  int charges = 0;

  bool operator==(const ItemInfo&) const = default;
};

// Fields only serialized for type "Hero".
struct HeroFields {
  std::int64_t gold = 0;
  std::vector<AbilityInfo> abilities;
  std::vector<ItemInfo> items;

  bool operator==(const HeroFields&) const = default;
};

struct EntityRecord {
  EntityId id;
  std::string type;  // "Tower", "Hero", "Creep", "Courier", "Building"
  std::string name;
  Team team = Team::Radiant;
  int level = 0;
  int health = 0;
  double mana = 0.0;
  bool alive = false;
  double attackRange = 0.0;
  Vec3 origin;
  bool blind = false;
  bool disarmed = false;
  bool dominated = false;
  bool rooted = false;
  bool deniable = false;
  std::optional<HeroFields> hero;

  bool operator==(const EntityRecord&) const = default;
};

// The Update payload: Entities keyed by id, plus tick/clock and the
// observing team at the top level.
struct EntitySnapshot {
  Team team = Team::Radiant;
  std::int64_t tick = 0;
  double clock = 0.0;
  std::map<EntityId, EntityRecord> entities;

  bool operator==(const EntitySnapshot&) const = default;
};

namespace cmd {
struct Noop {
  bool operator==(const Noop&) const = default;
};
struct Move {
  Vec3 target;
  bool operator==(const Move&) const = default;
};
struct Attack {
  EntityId target;
  bool operator==(const Attack&) const = default;
};
struct Cast {
  int ability = 0;
  EntityId target;
  bool operator==(const Cast&) const = default;
};
struct Buy {
  std::string item;
  bool operator==(const Buy&) const = default;
};
struct Sell {
  int slot = 0;
  bool operator==(const Sell&) const = default;
};
struct UseItem {
  int slot = 0;
  std::optional<EntityId> target;
  bool operator==(const UseItem&) const = default;
};
}  // namespace cmd

using BotCommand = std::variant<cmd::Noop, cmd::Move, cmd::Attack, cmd::Cast,
                                cmd::Buy, cmd::Sell, cmd::UseItem>;

// Discriminator string ("NOOP", "MOVE", ...).
std::string_view command_name(const BotCommand& c);

struct HeroSelection {
  std::string hero;

  bool operator==(const HeroSelection&) const = default;
};

struct ChatEvent {
  bool teamOnly = false;
  std::string text;
  int player = 0;

  bool operator==(const ChatEvent&) const = default;
};

// ---------------------------------------------------------------------------
// Errors

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  enum class Kind { UnknownCommand, Malformed };

  ProtocolError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class SelectError : public std::runtime_error {
 public:
  enum class Kind { MissingHero, UnknownHero, Malformed };

  SelectError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Codec

Json entity_to_json(const EntityRecord& e);
EntityRecord entity_from_json(EntityId id, const Json& j);

// The Entities map: `{"760": {...}, ...}`. Throws EncodeError on a
// non-finite number.
std::string encode_entity_snapshot(const EntitySnapshot& s);
Json entities_to_json(const EntitySnapshot& s);

// Full Update request body: `{"Entities": {...}, "tick": n, "clock": s,
// "team": t}`.
std::string encode_update_request(const EntitySnapshot& s);
EntitySnapshot decode_update_request(std::string_view body);

Json command_to_json(const BotCommand& c);
std::string encode_bot_command(const BotCommand& c);
BotCommand command_from_json(const Json& j);
// Never throws anything but ProtocolError, whatever the input bytes.
BotCommand decode_bot_command(std::string_view body);

std::string encode_select_response(const HeroSelection& s);
HeroSelection decode_select_response(std::string_view body,
                                     const std::set<std::string>& roster);

std::string encode_chat_event(const ChatEvent& e);
ChatEvent decode_chat_event(std::string_view body);

// ---------------------------------------------------------------------------
// Endpoint configuration (`key=value` lines, `#` comments).

inline constexpr std::string_view kFunctions[] = {"select", "update", "chat",
                                                  "test"};

struct HttpUrl {
  std::string scheme;  // always "http"
  std::string host;
  int port = 80;
  std::string path;  // begins with '/', may be just "/"

  // "http://host:port" without the path.
  std::string origin() const;
  std::string str() const;
};

HttpUrl parse_http_url(std::string_view url);

struct EndpointConfig {
  std::string baseUrl;
  std::map<std::string, std::string> endpoints;  // function -> full URL

  const std::string& url_for(std::string_view function) const;
};

EndpointConfig load_endpoint_config(std::string_view text);
EndpointConfig endpoint_config_for(std::string_view baseUrl);
EndpointConfig load_endpoint_config_file(const std::string& path);

}  // namespace midlane::protocol
