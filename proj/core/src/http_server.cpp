#include "kre/http_server.hpp"

#include <httplib.h>

#include <atomic>
#include <thread>

namespace kre {

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;
  bool bound = false;
  std::atomic<bool> listened{false};
  std::atomic<bool> stop_requested{false};

  explicit Impl(const Service& s) : service(s) {
    const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
      const Response out = service.handle(req.method, req.path, req.body);
      res.status = out.status;
      res.set_content(out.body, "application/json");
    };
    server.Get("/api/info", dispatch);
    server.Post("/api/matrix", dispatch);
    server.Post("/api/timeline", dispatch);
    server.Post("/api/tweets", dispatch);
    // Method mismatches and unknown paths get the service's JSON errors.
    server.Get(R"(/api/.*)", dispatch);
    server.Post(R"(/api/.*)", dispatch);
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    // httplib defaults to SO_REUSEPORT, which lets a second server share a busy port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  }

  // httplib only closes a bound socket from inside its accept loop, so run the
  // loop just long enough to stop it.
  void release_socket() {
    std::thread loop([this] { server.listen_after_bind(); });
    server.wait_until_ready();
    server.stop();
    loop.join();
  }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() {
  stop();
  if (impl_->bound && !impl_->listened.exchange(true)) impl_->release_socket();
}

int HttpServer::bind(const std::string& host, int port) {
  int bound_port = port;
  if (port == 0) {
    bound_port = impl_->server.bind_to_any_port(host);
    if (bound_port < 0) throw BindError("cannot bind " + host + " to any port");
  } else if (!impl_->server.bind_to_port(host, port)) {
    throw BindError("cannot bind " + host + ":" + std::to_string(port) + " (address in use?)");
  }
  impl_->bound = true;
  return bound_port;
}

void HttpServer::listen() {
  if (!impl_->bound) throw IoError("HttpServer::listen called before bind");
  if (impl_->listened.exchange(true)) throw IoError("HttpServer::listen called twice");
  if (impl_->stop_requested) {
    impl_->release_socket();
    return;
  }
  impl_->server.listen_after_bind();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (!impl_) return;
  impl_->stop_requested = true;
  // A listen() that has started but not yet entered its loop would miss the stop.
  if (impl_->listened) impl_->server.wait_until_ready();
  impl_->server.stop();
}

}  // namespace kre
