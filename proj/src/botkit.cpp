#include "midlane/botkit.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include <httplib.h>

namespace midlane::botkit {

namespace {

constexpr const char* kJson = "application/json";

std::string trim_base(std::string base) {
  while (base.size() > 1 && base.back() == '/') base.pop_back();
  if (base == "/") base.clear();
  if (!base.empty() && base.front() != '/') base.insert(base.begin(), '/');
  return base;
}

}  // namespace

struct ServiceHandle::Impl {
  std::shared_ptr<BotHandler> handler;
  ServeOptions options;
  httplib::Server server;
  std::mutex handlerMutex;
  std::thread thread;
  int port = 0;
  std::atomic<bool> stopped{false};

  void reply(const httplib::Request& req, httplib::Response& res, const std::string& fn,
             const std::function<std::string(const std::string&)>& handle) {
    int status = 200;
    std::string out;
    try {
      std::lock_guard lock(handlerMutex);
      out = handle(req.body);
    } catch (const protocol::ProtocolError& ex) {
      status = 400;
      out = protocol::Json{{"error", ex.what()}}.dump();
    } catch (const std::exception& ex) {
      status = 500;
      out = protocol::Json{{"error", ex.what()}}.dump();
    }
    res.status = status;
    res.set_content(out, kJson);
    if (options.observer) options.observer(RequestRecord{fn, req.body, status, out});
  }

  void install() {
    const std::string base = trim_base(options.basePath);
    auto route = [&](const std::string& fn,
                     std::function<std::string(const std::string&)> handle) {
      server.Post(base + "/" + fn,
                  [this, fn, handle](const httplib::Request& req, httplib::Response& res) {
                    reply(req, res, fn, handle);
                  });
    };
    route("select", [this](const std::string& body) {
      require_object(body);
      return protocol::encode_select_response(handler->on_select());
    });
    route("update", [this](const std::string& body) {
      auto snapshot = protocol::decode_update_request(body);
      return protocol::encode_bot_command(handler->on_update(snapshot));
    });
    route("chat", [this](const std::string& body) {
      handler->on_chat(protocol::decode_chat_event(body));
      return std::string("{}");
    });
    route("test", [this](const std::string& body) {
      require_object(body);
      handler->on_test();
      return std::string("{}");
    });
  }

  static void require_object(const std::string& body) {
    auto j = protocol::Json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw protocol::ProtocolError(protocol::ProtocolError::Kind::Malformed,
                                    "body is not a JSON object");
    }
  }
};

ServiceHandle::ServiceHandle() = default;
ServiceHandle::~ServiceHandle() { stop(); }
ServiceHandle::ServiceHandle(ServiceHandle&&) noexcept = default;
ServiceHandle& ServiceHandle::operator=(ServiceHandle&& other) noexcept {
  if (this != &other) {
    stop();
    impl_ = std::move(other.impl_);
  }
  return *this;
}

int ServiceHandle::port() const { return impl_ ? impl_->port : 0; }

std::string ServiceHandle::base_url() const {
  if (!impl_) return {};
  return "http://" + impl_->options.host + ":" + std::to_string(impl_->port) +
         trim_base(impl_->options.basePath);
}

bool ServiceHandle::running() const { return impl_ && !impl_->stopped; }

void ServiceHandle::stop() {
  if (!impl_) return;
  if (!impl_->stopped.exchange(true)) impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

void ServiceHandle::wait() {
  if (impl_ && impl_->thread.joinable()) impl_->thread.join();
}

ServiceHandle serve(std::shared_ptr<BotHandler> handler, ServeOptions options) {
  if (!handler) throw StartupError("no bot handler");
  ServiceHandle h;
  h.impl_ = std::make_unique<ServiceHandle::Impl>();
  auto& impl = *h.impl_;
  impl.handler = std::move(handler);
  impl.options = std::move(options);
  impl.server.set_tcp_nodelay(true);
  // httplib defaults to SO_REUSEPORT, which lets a second service share the
  // port silently.
  impl.server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  impl.install();

  if (impl.options.port == 0) {
    impl.port = impl.server.bind_to_any_port(impl.options.host);
    if (impl.port < 0) impl.port = 0;
  } else if (impl.server.bind_to_port(impl.options.host, impl.options.port)) {
    impl.port = impl.options.port;
  }
  if (impl.port <= 0) {
    impl.stopped = true;
    throw StartupError("cannot bind " + impl.options.host + ":" +
                       std::to_string(impl.options.port));
  }
  impl.thread = std::thread([&impl] { impl.server.listen_after_bind(); });
  impl.server.wait_until_ready();
  return h;
}

}  // namespace midlane::botkit
