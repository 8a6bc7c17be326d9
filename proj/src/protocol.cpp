#include "midlane/protocol.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace midlane::protocol {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw ProtocolError(ProtocolError::Kind::Malformed, what);
}

// Integral doubles are written as JSON integers so the tower example
// serializes as `"attackRange": 700` rather than `700.0`.
Json number(double v, const char* field) {
  if (!std::isfinite(v)) {
    throw EncodeError(std::string("non-finite value in field '") + field + "'");
  }
  constexpr double kExact = 9007199254740992.0;  // 2^53
  if (std::trunc(v) == v && std::fabs(v) < kExact) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v);
}

const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

double as_real(const Json& j, const char* key) {
  if (!j.is_number()) malformed(std::string("field '") + key + "' is not a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) malformed(std::string("field '") + key + "' is not finite");
  return v;
}

std::int64_t as_int(const Json& j, const char* key) {
  if (j.is_number_unsigned()) {
    auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      malformed(std::string("field '") + key + "' out of range");
    }
    return static_cast<std::int64_t>(v);
  }
  if (j.is_number_integer()) return j.get<std::int64_t>();
  malformed(std::string("field '") + key + "' is not an integer");
}

int as_small_int(const Json& j, const char* key) {
  auto v = as_int(j, key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    malformed(std::string("field '") + key + "' out of range");
  }
  return static_cast<int>(v);
}

bool as_bool(const Json& j, const char* key) {
  if (!j.is_boolean()) malformed(std::string("field '") + key + "' is not a boolean");
  return j.get<bool>();
}

std::string as_string(const Json& j, const char* key) {
  if (!j.is_string()) malformed(std::string("field '") + key + "' is not a string");
  return j.get<std::string>();
}

EntityId as_id(const Json& j, const char* key) {
  auto v = as_int(j, key);
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
    malformed(std::string("field '") + key + "' is not a valid entity id");
  }
  return EntityId{static_cast<std::uint32_t>(v)};
}

// MOVE coordinates arrive either as numbers or as numeric strings.
double as_coordinate(const Json& j, const char* key) {
  if (j.is_number()) return as_real(j, key);
  if (!j.is_string()) malformed(std::string("field '") + key + "' is not numeric");
  const auto& s = j.get_ref<const std::string&>();
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) {
    malformed(std::string("field '") + key + "' is not a numeric string");
  }
  return v;
}

Team as_team(const Json& j) {
  auto v = as_int(j, "team");
  if (v == 2) return Team::Radiant;
  if (v == 3) return Team::Dire;
  malformed("field 'team' must be 2 or 3");
}

Json parse_or_malformed(std::string_view body) {
  Json j = Json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded()) malformed("body is not valid JSON");
  return j;
}

EntityId parse_id_key(const std::string& key) {
  std::uint32_t v = 0;
  auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
  if (key.empty() || ec != std::errc{} || end != key.data() + key.size()) {
    malformed("entity key '" + key + "' is not an id");
  }
  return EntityId{v};
}

}  // namespace

std::string_view team_name(Team t) {
  return t == Team::Radiant ? "radiant" : "dire";
}

std::string_view command_name(const BotCommand& c) {
  static constexpr std::string_view kNames[] = {"NOOP", "MOVE", "ATTACK", "CAST",
                                                "BUY",  "SELL", "USE_ITEM"};
  return kNames[c.index()];
}

// ---------------------------------------------------------------------------

Json entity_to_json(const EntityRecord& e) {
  Json j = Json::object();
  j["level"] = e.level;
  j["mana"] = number(e.mana, "mana");
  j["disarmed"] = e.disarmed;
  j["health"] = e.health;
  j["alive"] = e.alive;
  j["attackRange"] = number(e.attackRange, "attackRange");
  j["team"] = static_cast<int>(e.team);
  j["blind"] = e.blind;
  j["dominated"] = e.dominated;
  j["origin"] = Json::array({number(e.origin.x, "origin"), number(e.origin.y, "origin"),
                             number(e.origin.z, "origin")});
  j["type"] = e.type;
  j["rooted"] = e.rooted;
  j["name"] = e.name;
  j["deniable"] = e.deniable;
  if (e.hero && e.type == "Hero") {
    j["gold"] = e.hero->gold;
    Json abilities = Json::array();
    for (const auto& a : e.hero->abilities) {
      abilities.push_back({{"slot", a.slot},
                           {"name", a.name},
                           {"level", a.level},
                           {"cooldownRemaining", number(a.cooldownRemaining, "cooldownRemaining")}});
    }
    j["abilities"] = std::move(abilities);
    Json items = Json::array();
    for (const auto& it : e.hero->items) {
      items.push_back({{"slot", it.slot}, {"name", it.name}, {"charges", it.charges}});
    }
    j["items"] = std::move(items);
  }
  return j;
}

EntityRecord entity_from_json(EntityId id, const Json& j) {
  if (!j.is_object()) malformed("entity is not an object");
  EntityRecord e;
  e.id = id;
  e.level = as_small_int(require(j, "level"), "level");
  e.mana = as_real(require(j, "mana"), "mana");
  e.disarmed = as_bool(require(j, "disarmed"), "disarmed");
  e.health = as_small_int(require(j, "health"), "health");
  e.alive = as_bool(require(j, "alive"), "alive");
  e.attackRange = as_real(require(j, "attackRange"), "attackRange");
  e.team = as_team(require(j, "team"));
  e.blind = as_bool(require(j, "blind"), "blind");
  e.dominated = as_bool(require(j, "dominated"), "dominated");
  const auto& origin = require(j, "origin");
  if (!origin.is_array() || origin.size() != 3) malformed("origin must be [x, y, z]");
  e.origin = {as_real(origin[0], "origin"), as_real(origin[1], "origin"),
              as_real(origin[2], "origin")};
  e.type = as_string(require(j, "type"), "type");
  e.rooted = as_bool(require(j, "rooted"), "rooted");
  e.name = as_string(require(j, "name"), "name");
  e.deniable = as_bool(require(j, "deniable"), "deniable");
  if (e.type == "Hero" && j.contains("gold")) {
    HeroFields h;
    h.gold = as_int(j["gold"], "gold");
    for (const auto& a : require(j, "abilities")) {
      h.abilities.push_back({as_small_int(require(a, "slot"), "slot"),
                             as_string(require(a, "name"), "name"),
                             as_small_int(require(a, "level"), "level"),
                             as_real(require(a, "cooldownRemaining"), "cooldownRemaining")});
    }
    for (const auto& it : require(j, "items")) {
      h.items.push_back({as_small_int(require(it, "slot"), "slot"),
                         as_string(require(it, "name"), "name"),
                         as_small_int(require(it, "charges"), "charges")});
    }
    e.hero = std::move(h);
  }
  return e;
}

Json entities_to_json(const EntitySnapshot& s) {
  Json j = Json::object();
  for (const auto& [id, e] : s.entities) j[std::to_string(id.value)] = entity_to_json(e);
  return j;
}

std::string encode_entity_snapshot(const EntitySnapshot& s) {
  return entities_to_json(s).dump();
}

std::string encode_update_request(const EntitySnapshot& s) {
  Json j = Json::object();
  j["Entities"] = entities_to_json(s);
  j["tick"] = s.tick;
  j["clock"] = number(s.clock, "clock");
  j["team"] = static_cast<int>(s.team);
  return j.dump();
}

EntitySnapshot decode_update_request(std::string_view body) {
  try {
    Json j = parse_or_malformed(body);
    if (!j.is_object()) malformed("update body is not an object");
    EntitySnapshot s;
    const auto& entities = require(j, "Entities");
    if (!entities.is_object()) malformed("Entities is not an object");
    for (const auto& [key, value] : entities.items()) {
      EntityId id = parse_id_key(key);
      s.entities.emplace(id, entity_from_json(id, value));
    }
    s.tick = as_int(require(j, "tick"), "tick");
    s.clock = as_real(require(j, "clock"), "clock");
    s.team = as_team(require(j, "team"));
    return s;
  } catch (const Json::exception& ex) {
    malformed(ex.what());
  }
}

// ---------------------------------------------------------------------------

Json command_to_json(const BotCommand& c) {
  Json j = Json::object();
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, cmd::Move>) {
          j["x"] = number(v.target.x, "x");
          j["y"] = number(v.target.y, "y");
          j["z"] = number(v.target.z, "z");
        } else if constexpr (std::is_same_v<T, cmd::Attack>) {
          j["target"] = v.target.value;
        } else if constexpr (std::is_same_v<T, cmd::Cast>) {
          j["ability"] = v.ability;
          j["target"] = v.target.value;
        } else if constexpr (std::is_same_v<T, cmd::Buy>) {
          j["item"] = v.item;
        } else if constexpr (std::is_same_v<T, cmd::Sell>) {
          j["slot"] = v.slot;
        } else if constexpr (std::is_same_v<T, cmd::UseItem>) {
          j["slot"] = v.slot;
          if (v.target) j["target"] = v.target->value;
        }
      },
      c);
  j["command"] = std::string(command_name(c));
  return j;
}

std::string encode_bot_command(const BotCommand& c) { return command_to_json(c).dump(); }

BotCommand command_from_json(const Json& j) {
  if (!j.is_object()) malformed("command body is not an object");
  const std::string name = as_string(require(j, "command"), "command");
  if (name == "NOOP") return cmd::Noop{};
  if (name == "MOVE") {
    Vec3 t{as_coordinate(require(j, "x"), "x"), as_coordinate(require(j, "y"), "y"), 0.0};
    if (auto z = j.find("z"); z != j.end()) t.z = as_coordinate(*z, "z");
    return cmd::Move{t};
  }
  if (name == "ATTACK") return cmd::Attack{as_id(require(j, "target"), "target")};
  if (name == "CAST") {
    return cmd::Cast{as_small_int(require(j, "ability"), "ability"),
                     as_id(require(j, "target"), "target")};
  }
  if (name == "BUY") return cmd::Buy{as_string(require(j, "item"), "item")};
  if (name == "SELL") return cmd::Sell{as_small_int(require(j, "slot"), "slot")};
  if (name == "USE_ITEM") {
    cmd::UseItem u{as_small_int(require(j, "slot"), "slot"), std::nullopt};
    if (auto t = j.find("target"); t != j.end() && !t->is_null()) u.target = as_id(*t, "target");
    return u;
  }
  throw ProtocolError(ProtocolError::Kind::UnknownCommand, "unknown command '" + name + "'");
}

BotCommand decode_bot_command(std::string_view body) {
  try {
    return command_from_json(parse_or_malformed(body));
  } catch (const ProtocolError&) {
    throw;
  } catch (const std::exception& ex) {
    malformed(ex.what());
  }
}

// ---------------------------------------------------------------------------

std::string encode_select_response(const HeroSelection& s) {
  // Insertion order: hero before command, byte-for-byte as bots expect.
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["hero"] = s.hero;
  j["command"] = "SELECT";
  return j.dump();
}

HeroSelection decode_select_response(std::string_view body,
                                     const std::set<std::string>& roster) {
  Json j = Json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw SelectError(SelectError::Kind::Malformed, "select reply is not a JSON object");
  }
  auto c = j.find("command");
  if (c == j.end() || !c->is_string() || c->get<std::string>() != "SELECT") {
    throw SelectError(SelectError::Kind::Malformed, "select reply lacks command SELECT");
  }
  auto h = j.find("hero");
  if (h == j.end()) throw SelectError(SelectError::Kind::MissingHero, "missing hero");
  if (!h->is_string()) throw SelectError(SelectError::Kind::Malformed, "hero is not a string");
  auto hero = h->get<std::string>();
  if (!roster.contains(hero)) {
    throw SelectError(SelectError::Kind::UnknownHero, "unknown hero '" + hero + "'");
  }
  return HeroSelection{std::move(hero)};
}

std::string encode_chat_event(const ChatEvent& e) {
  Json j = Json::object();
  j["teamOnly"] = e.teamOnly;
  j["text"] = e.text;
  j["player"] = e.player;
  return j.dump();
}

ChatEvent decode_chat_event(std::string_view body) {
  try {
    Json j = parse_or_malformed(body);
    if (!j.is_object()) malformed("chat body is not an object");
    return ChatEvent{as_bool(require(j, "teamOnly"), "teamOnly"),
                     as_string(require(j, "text"), "text"),
                     as_small_int(require(j, "player"), "player")};
  } catch (const Json::exception& ex) {
    malformed(ex.what());
  }
}

// ---------------------------------------------------------------------------

std::string HttpUrl::origin() const {
  return scheme + "://" + host + ":" + std::to_string(port);
}

std::string HttpUrl::str() const { return origin() + path; }

HttpUrl parse_http_url(std::string_view url) {
  constexpr std::string_view kPrefix = "http://";
  if (!url.starts_with(kPrefix)) {
    throw ConfigError("malformed URL '" + std::string(url) + "': expected http://");
  }
  for (char ch : url) {
    if (static_cast<unsigned char>(ch) <= ' ') {
      throw ConfigError("malformed URL '" + std::string(url) + "': contains whitespace");
    }
  }
  HttpUrl out;
  out.scheme = "http";
  std::string_view rest = url.substr(kPrefix.size());
  auto slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  out.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  auto colon = authority.rfind(':');
  std::string_view host = authority;
  if (colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    std::string_view port = authority.substr(colon + 1);
    int p = 0;
    auto [end, ec] = std::from_chars(port.data(), port.data() + port.size(), p);
    if (port.empty() || ec != std::errc{} || end != port.data() + port.size() || p < 1 ||
        p > 65535) {
      throw ConfigError("malformed URL '" + std::string(url) + "': bad port");
    }
    out.port = p;
  }
  if (host.empty()) throw ConfigError("malformed URL '" + std::string(url) + "': empty host");
  out.host = std::string(host);
  return out;
}

const std::string& EndpointConfig::url_for(std::string_view function) const {
  auto it = endpoints.find(std::string(function));
  if (it == endpoints.end()) {
    throw ConfigError("no endpoint for function '" + std::string(function) + "'");
  }
  return it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string strip_trailing_slashes(std::string s) {
  while (!s.empty() && s.back() == '/') s.pop_back();
  return s;
}

std::string resolve(const std::string& base, std::string_view target) {
  if (target.find("://") != std::string_view::npos) {
    parse_http_url(target);
    return std::string(target);
  }
  while (!target.empty() && target.front() == '/') target.remove_prefix(1);
  if (target.empty()) throw ConfigError("empty endpoint path");
  return base + "/" + std::string(target);
}

}  // namespace

EndpointConfig endpoint_config_for(std::string_view baseUrl) {
  return load_endpoint_config("base_url=" + std::string(baseUrl));
}

EndpointConfig load_endpoint_config(std::string_view text) {
  std::optional<std::string> base;
  std::map<std::string, std::string> overrides;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key == "base_url") {
      base = value;
    } else if (key == "select" || key == "update" || key == "chat" || key == "test") {
      overrides[key] = value;
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!base || base->empty()) throw ConfigError("missing base_url");
  parse_http_url(*base);

  EndpointConfig cfg;
  cfg.baseUrl = strip_trailing_slashes(*base);
  for (auto fn : kFunctions) {
    std::string name(fn);
    auto it = overrides.find(name);
    cfg.endpoints[name] = it == overrides.end() ? cfg.baseUrl + "/" + name
                                                : resolve(cfg.baseUrl, it->second);
  }
  return cfg;
}

EndpointConfig load_endpoint_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open endpoint config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_endpoint_config(ss.str());
}

}  // namespace midlane::protocol
