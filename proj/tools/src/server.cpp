#include "labelguide_cli/server.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <boost/asio.hpp>

namespace labelguide::cli {

namespace asio = boost::asio;
using asio::ip::tcp;

namespace {

constexpr std::size_t kMaxLine = 1 << 20;

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

std::unique_ptr<std::ofstream> open_record(const ServerOptions& options, const std::string& id) {
  if (!options.record_dir) return nullptr;
  std::filesystem::create_directories(*options.record_dir);
  return std::make_unique<std::ofstream>(*options.record_dir / (id + ".jsonl"), std::ios::app);
}

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, const ServerOptions& options, const std::string& id)
      : socket_(std::move(socket)), buffer_(kMaxLine), session_(with_id(options, id), options.scene),
        record_(open_record(options, id)) {}

  void start() { read(); }

 private:
  static SessionOptions with_id(const ServerOptions& options, const std::string& id) {
    SessionOptions s = options.session;
    s.id = id;
    return s;
  }

  void read() {
    asio::async_read_until(socket_, buffer_, '\n',
                           [self = shared_from_this()](boost::system::error_code ec, std::size_t n) {
                             self->on_line(ec, n);
                           });
  }

  void on_line(boost::system::error_code ec, std::size_t n) {
    if (ec) return;  // peer closed or line too long; the session goes away with us
    std::string line(asio::buffers_begin(buffer_.data()),
                     asio::buffers_begin(buffer_.data()) + static_cast<std::ptrdiff_t>(n) - 1);
    buffer_.consume(n);
    line = strip_cr(std::move(line));
    if (blank(line)) {
      read();
      return;
    }
    if (record_) *record_ << line << '\n' << std::flush;
    outbox_.clear();
    for (const auto& reply : session_.handle_line(line)) {
      outbox_ += reply.dump();
      outbox_ += '\n';
    }
    asio::async_write(socket_, asio::buffer(outbox_),
                      [self = shared_from_this()](boost::system::error_code wec, std::size_t) {
                        if (!wec) self->read();
                      });
  }

  tcp::socket socket_;
  asio::streambuf buffer_;
  Session session_;
  std::unique_ptr<std::ofstream> record_;
  std::string outbox_;
};

}  // namespace

struct Server::Impl {
  Impl(ServerOptions opts, std::uint16_t port)
      : options(std::move(opts)),
        acceptor(io, tcp::endpoint(asio::ip::address_v4::loopback(), port)) {}

  void accept() {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
      if (ec) return;
      const std::string id = "c" + std::to_string(++next_id);
      std::make_shared<Connection>(std::move(socket), options, id)->start();
      accept();
    });
  }

  ServerOptions options;
  asio::io_context io;
  tcp::acceptor acceptor;
  std::uint64_t next_id = 0;
};

Server::Server(ServerOptions options, std::uint16_t port)
    : impl_(std::make_unique<Impl>(std::move(options), port)) {
  impl_->accept();
}

Server::~Server() = default;

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() { impl_->io.run(); }

void Server::stop() { impl_->io.stop(); }

void serve_stream(const ServerOptions& options, std::istream& in, std::ostream& out) {
  Session session(options.session, options.scene);
  auto record = open_record(options, options.session.id);
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(std::move(line));
    if (blank(line)) continue;
    if (record) *record << line << '\n' << std::flush;
    for (const auto& reply : session.handle_line(line)) out << reply.dump() << '\n';
    out.flush();
  }
}

}  // namespace labelguide::cli
