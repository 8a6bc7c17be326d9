#pragma once

// Bot-side SDK: an HTTP service that routes /select, /update, /chat and
// /test to a BotHandler.

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "midlane/protocol.hpp"

namespace midlane::botkit {

class BotHandler {
 public:
  virtual ~BotHandler() = default;

  virtual protocol::HeroSelection on_select() = 0;
  // Must return a command for every snapshot.
  virtual protocol::BotCommand on_update(const protocol::EntitySnapshot& snapshot) = 0;
  virtual void on_chat(const protocol::ChatEvent&) {}
  virtual void on_test() {}
};

// Replies NOOP to everything and picks the configured hero.
class NoopBot : public BotHandler {
 public:
  explicit NoopBot(std::string hero = "npc_dota_hero_lina") : hero_(std::move(hero)) {}
  protocol::HeroSelection on_select() override { return {hero_}; }
  protocol::BotCommand on_update(const protocol::EntitySnapshot&) override {
    return protocol::cmd::Noop{};
  }

 private:
  std::string hero_;
};

class StartupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RequestRecord {
  std::string function;  // "select", "update", ...
  std::string body;
  int status = 0;
  std::string reply;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  std::string basePath = "/Dota2AIService";
  // Called after each request, from the server thread.
  std::function<void(const RequestRecord&)> observer;
};

class ServiceHandle {
 public:
  ServiceHandle();
  ~ServiceHandle();
  ServiceHandle(ServiceHandle&&) noexcept;
  ServiceHandle& operator=(ServiceHandle&&) noexcept;

  int port() const;
  // "http://host:port/basePath"
  std::string base_url() const;
  bool running() const;
  void stop();
  // Blocks until stop() is called from elsewhere.
  void wait();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  friend ServiceHandle serve(std::shared_ptr<BotHandler>, ServeOptions);
};

// Starts the service on a background thread. Throws StartupError when the
// address cannot be bound.
ServiceHandle serve(std::shared_ptr<BotHandler> handler, ServeOptions options = {});

}  // namespace midlane::botkit
