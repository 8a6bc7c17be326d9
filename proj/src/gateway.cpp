#include "midlane/gateway.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <thread>

#include <httplib.h>

#include "midlane/sim/replay.hpp"

namespace midlane::gateway {

namespace cmd = protocol::cmd;
using Clock = std::chrono::steady_clock;

std::string_view mode_name(Mode m) { return m == Mode::Realtime ? "realtime" : "fast"; }

Mode mode_from_name(std::string_view name) {
  if (name == "realtime") return Mode::Realtime;
  if (name == "fast") return Mode::Fast;
  throw protocol::ConfigError("unknown mode '" + std::string(name) + "'");
}

bool chat_reaches(const protocol::ChatEvent& event, Team botTeam) {
  return !event.teamOnly || protocol::team_of_player(event.player) == botTeam;
}

// ---------------------------------------------------------------------------
// BotEndpoint

struct BotEndpoint::Impl {
  protocol::EndpointConfig config;
  GatewayOptions options;
  std::map<std::string, std::unique_ptr<httplib::Client>> clients;  // by origin
  int consecutiveWarnings = 0;
  int consecutiveFailures = 0;

  struct Raw {
    CallResult call;
    std::string body;
  };

  httplib::Client& client_for(const protocol::HttpUrl& url) {
    auto& c = clients[url.origin()];
    if (!c) {
      c = std::make_unique<httplib::Client>(url.host, url.port);
      c->set_keep_alive(true);
      c->set_tcp_nodelay(true);
      auto connect = options.connectTimeout;
      c->set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(connect).count(),
                                static_cast<time_t>((connect.count() % 1000) * 1000));
      // No hard cutoff on the bot's think time.
      c->set_read_timeout(24 * 3600, 0);
      c->set_write_timeout(60, 0);
    }
    return *c;
  }

  Raw post(std::string_view function, const std::string& body) {
    Raw r;
    r.call.sentBytes = body.size();
    const auto url = protocol::parse_http_url(config.url_for(function));
    auto& client = client_for(url);
    const auto start = Clock::now();
    auto res = client.Post(url.path, body, "application/json");
    r.call.latencyMs = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    r.call.slow = r.call.latencyMs > static_cast<double>(options.softTimeout.count());
    if (!res) {
      r.call.status = CallStatus::TransportError;
      r.call.error = httplib::to_string(res.error());
      // Drop the connection so the next call reconnects.
      clients.erase(url.origin());
      return r;
    }
    r.call.httpStatus = res->status;
    if (res->status != 200) {
      r.call.status = CallStatus::BadStatus;
      r.call.error = "HTTP " + std::to_string(res->status);
    }
    r.body = std::move(res->body);
    return r;
  }

  void count(const CallResult& c) {
    consecutiveWarnings = c.slow ? consecutiveWarnings + 1 : 0;
    const bool failed = c.status == CallStatus::TransportError || c.status == CallStatus::BadStatus;
    consecutiveFailures = failed ? consecutiveFailures + 1 : 0;
  }
};

BotEndpoint::BotEndpoint(protocol::EndpointConfig config, GatewayOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  impl_->options = options;
}
BotEndpoint::~BotEndpoint() = default;
BotEndpoint::BotEndpoint(BotEndpoint&&) noexcept = default;
BotEndpoint& BotEndpoint::operator=(BotEndpoint&&) noexcept = default;

const protocol::EndpointConfig& BotEndpoint::config() const { return impl_->config; }
int BotEndpoint::consecutive_warnings() const { return impl_->consecutiveWarnings; }
int BotEndpoint::consecutive_failures() const { return impl_->consecutiveFailures; }

BotEndpoint::Select BotEndpoint::call_select(const std::set<std::string>& roster) {
  auto raw = impl_->post("select", "{}");
  Select out;
  out.call = raw.call;
  if (out.call.ok()) {
    try {
      out.selection = protocol::decode_select_response(raw.body, roster);
    } catch (const protocol::SelectError& ex) {
      out.call.status = CallStatus::ProtocolError;
      out.call.error = ex.what();
    }
  }
  impl_->count(out.call);
  return out;
}

BotEndpoint::Update BotEndpoint::call_update(const protocol::EntitySnapshot& snapshot) {
  auto raw = impl_->post("update", protocol::encode_update_request(snapshot));
  Update out;
  out.call = raw.call;
  if (out.call.ok()) {
    try {
      out.command = protocol::decode_bot_command(raw.body);
    } catch (const protocol::ProtocolError& ex) {
      out.call.status = CallStatus::ProtocolError;
      out.call.error = ex.what();
    }
  }
  impl_->count(out.call);
  return out;
}

CallResult BotEndpoint::call_chat(const protocol::ChatEvent& event) {
  auto raw = impl_->post("chat", protocol::encode_chat_event(event));
  return raw.call;
}

CallResult BotEndpoint::call_test() {
  auto raw = impl_->post("test", "{}");
  return raw.call;
}

// ---------------------------------------------------------------------------
// MatchDriver

MatchDriver::MatchDriver(std::shared_ptr<const sim::GameData> data, MatchSetup setup)
    : data_(std::move(data)), setup_(std::move(setup)) {
  if (!data_) throw protocol::ConfigError("no game data");
  data_->hero(setup_.opponent.hero);
  if (setup_.maxTicks <= 0) throw protocol::ConfigError("maxTicks must be positive");
}

void MatchDriver::inject_chat(const protocol::ChatEvent& event) {
  std::lock_guard lock(chatMutex_);
  if (finished_) throw sim::IllegalState("match is over");
  chatQueue_.push_back(event);
}

bool MatchDriver::finished() const {
  std::lock_guard lock(chatMutex_);
  return finished_;
}

namespace {

protocol::Json call_json(const CallResult& c) {
  return {{"status", c.httpStatus}, {"error", c.error}, {"latencyMs", c.latencyMs}};
}

}  // namespace

MatchResult MatchDriver::run() {
  const Team botTeam = setup_.botTeam;
  const Team aiTeam = protocol::opponent_of(botTeam);
  BotEndpoint endpoint(setup_.endpoints, setup_.gateway);

  MatchResult result;
  result.opponentHero = setup_.opponent.hero;

  auto finish = [&] {
    std::lock_guard lock(chatMutex_);
    finished_ = true;
  };
  auto write_log = [&](const protocol::Json& j) {
    if (log_) *log_ << j.dump() << '\n';
  };

  // Select phase. Nothing about the opponent is sent before this returns.
  auto sel = endpoint.call_select(data_->roster());
  if (sel.call.slow) ++result.warningCount;
  write_log({{"phase", "select"},
             {"sentBytes", sel.call.sentBytes},
             {"replyLatencyMs", sel.call.latencyMs},
             {"hero", sel.selection ? sel.selection->hero : ""},
             {"warning", sel.call.slow},
             {"errors", sel.call.ok() ? protocol::Json::array()
                                      : protocol::Json::array({sel.call.error})}});
  if (!sel.selection) {
    if (sel.call.status == CallStatus::ProtocolError) ++result.protocolErrorCount;
    result.winner = aiTeam;
    result.reason = sim::OutcomeReason::Forfeit;
    result.abortReason = "select failed: " + sel.call.error;
    if (log_) log_->flush();
    finish();
    return result;
  }
  result.botHero = sel.selection->hero;

  sim::MatchConfig config;
  (botTeam == Team::Radiant ? config.radiantHero : config.direHero) = result.botHero;
  (aiTeam == Team::Radiant ? config.radiantHero : config.direHero) = setup_.opponent.hero;
  sim::WorldState world = sim::init_world(data_, config, setup_.seed);

  std::optional<sim::ReplayWriter> replay;
  if (replay_) {
    replay.emplace(*replay_);
    replay->header(world);
  }

  ai::BuiltinController builtin(setup_.opponent, data_);
  auto scheduled = setup_.scheduledChat;
  std::stable_sort(scheduled.begin(), scheduled.end(),
                   [](const ScheduledChat& a, const ScheduledChat& b) { return a.tick < b.tick; });
  std::size_t nextScheduled = 0;

  const auto tickPeriod = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(data_->dt()));
  const auto start = Clock::now();

  while (!world.outcome) {
    if (setup_.mode == Mode::Realtime) {
      std::this_thread::sleep_until(start + tickPeriod * world.tick);
    }

    protocol::Json errors = protocol::Json::array();
    protocol::Json delivered = protocol::Json::array();

    std::vector<protocol::ChatEvent> chats;
    while (nextScheduled < scheduled.size() && scheduled[nextScheduled].tick <= world.tick) {
      chats.push_back(scheduled[nextScheduled++].event);
    }
    {
      std::lock_guard lock(chatMutex_);
      chats.insert(chats.end(), chatQueue_.begin(), chatQueue_.end());
      chatQueue_.clear();
    }
    for (const auto& chat : chats) {
      if (!chat_reaches(chat, botTeam)) continue;
      auto c = endpoint.call_chat(chat);
      delivered.push_back({{"text", chat.text}, {"teamOnly", chat.teamOnly},
                           {"player", chat.player}, {"ok", c.ok()}});
      if (!c.ok()) errors.push_back("chat: " + c.error);
    }

    const auto snapshot = sim::visible_snapshot(world, botTeam);
    auto update = endpoint.call_update(snapshot);
    if (update.call.slow) ++result.warningCount;
    switch (update.call.status) {
      case CallStatus::Ok:
        break;
      case CallStatus::ProtocolError:
        ++result.protocolErrorCount;
        errors.push_back("protocol: " + update.call.error);
        break;
      case CallStatus::TransportError:
      case CallStatus::BadStatus:
        ++result.transportErrorCount;
        errors.push_back("transport: " + update.call.error);
        break;
    }

    if (endpoint.consecutive_failures() >= setup_.gateway.forfeitAfterFailures) {
      world.outcome = sim::MatchOutcome{aiTeam, sim::OutcomeReason::Forfeit, world.tick};
      result.abortReason = "bot unreachable for " +
                           std::to_string(endpoint.consecutive_failures()) + " ticks";
      write_log({{"tick", world.tick},
                 {"sentBytes", update.call.sentBytes},
                 {"replyLatencyMs", update.call.latencyMs},
                 {"command", protocol::command_to_json(update.command)},
                 {"errors", errors},
                 {"chat", delivered},
                 {"forfeit", true},
                 {"call", call_json(update.call)}});
      break;
    }

    if (auto r = sim::submit_order(world, botTeam, update.command); !r.accepted) {
      ++result.rejectedOrders;
      errors.push_back("rejected: " + r.reason);
    }
    const auto aiSnapshot = sim::visible_snapshot(world, aiTeam);
    const auto aiCommand = builtin.decide(aiSnapshot);
    sim::submit_order(world, aiTeam, aiCommand);

    const std::int64_t tick = world.tick;
    if (observer_) observer_(TickInfo{tick, &world, &snapshot, update.command, aiCommand});
    sim::step(world);
    if (!world.outcome && world.tick >= setup_.maxTicks) {
      world.outcome = sim::MatchOutcome{std::nullopt, sim::OutcomeReason::Draw, world.tick};
    }
    const auto d = sim::digest(world);
    if (replay) {
      const auto& radiant = botTeam == Team::Radiant ? update.command : aiCommand;
      const auto& dire = botTeam == Team::Radiant ? aiCommand : update.command;
      replay->record(tick, radiant, dire, d);
    }

    protocol::Json rec{{"tick", tick},
                       {"sentBytes", update.call.sentBytes},
                       {"replyLatencyMs", update.call.latencyMs},
                       {"command", protocol::command_to_json(update.command)},
                       {"errors", errors}};
    if (!delivered.empty()) rec["chat"] = delivered;
    if (update.call.slow) rec["warning"] = "reply slower than soft timeout";
    write_log(rec);

  }

  finish();
  const auto& outcome = *world.outcome;
  result.winner = outcome.winner;
  result.reason = outcome.reason;
  result.ticks = world.tick;
  result.finalDigest = sim::digest(world);
  if (replay) replay->outcome(outcome);
  write_log({{"outcome",
              {{"winner", outcome.winner ? static_cast<int>(*outcome.winner) : 0},
               {"reason", std::string(sim::reason_name(outcome.reason))},
               {"ticks", world.tick},
               {"protocolErrors", result.protocolErrorCount},
               {"transportErrors", result.transportErrorCount},
               {"warnings", result.warningCount}}}});
  if (log_) log_->flush();
  return result;
}

MatchResult run_match(std::shared_ptr<const sim::GameData> data, MatchSetup setup,
                      std::ostream* log, std::ostream* replay) {
  MatchDriver driver(std::move(data), std::move(setup));
  driver.set_log(log);
  driver.set_replay(replay);
  return driver.run();
}

}  // namespace midlane::gateway
