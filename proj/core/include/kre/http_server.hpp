#pragma once

#include <memory>
#include <string>

#include "kre/error.hpp"
#include "kre/service.hpp"

namespace kre {

/// The port could not be bound (usually already in use).
class BindError : public IoError {
 public:
  using IoError::IoError;
};

/// Serves a Service over HTTP. Requests are handled on a worker pool.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free port) and returns the bound port.
  /// Throws BindError.
  int bind(const std::string& host, int port);

  /// Accepts connections until stop(). Requires a prior bind().
  void listen();

  /// Blocks until a concurrent listen() is accepting connections.
  void wait_until_ready() const;

  /// Ends listen(). Safe from another thread, and before listen() starts.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kre
