#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>

#include "labelguide/session.hpp"

namespace labelguide::cli {

struct ServerOptions {
  SessionOptions session;
  std::optional<Scene> scene;
  /// When set, each connection's client messages are appended to
  /// <dir>/<session id>.jsonl for later replay.
  std::optional<std::filesystem::path> record_dir;
};

/// Line-delimited session protocol over TCP on the loopback interface. Each
/// connection owns one Session; closing the connection drops it.
class Server {
 public:
  Server(ServerOptions options, std::uint16_t port);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Bound port, useful when constructed with port 0.
  std::uint16_t port() const;
  /// Blocks until stop() is called.
  void run();
  /// Safe to call from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Runs one session over a pair of streams until end of input.
void serve_stream(const ServerOptions& options, std::istream& in, std::ostream& out);

}  // namespace labelguide::cli
