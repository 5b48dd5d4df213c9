// Copyright 2026 The iontrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iontrace/netapi.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace iontrace::net {

namespace {

using nlohmann::json;

json state_to_json(const StateVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(json::array({v[i].real(), v[i].imag()}));
  return arr;
}

StateVector state_from_json(const json& arr, int expected_dim) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != expected_dim)
    throw ContractError("state vector has the wrong length");
  StateVector v(expected_dim);
  for (int i = 0; i < expected_dim; ++i) {
    const json& z = arr[i];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw ContractError("amplitudes must be [re, im] pairs");
    v[i] = Complex(z[0].get<double>(), z[1].get<double>());
  }
  return v;
}

// Blocking line-framed socket IO.
class LineSocket {
 public:
  explicit LineSocket(int fd) : fd_(fd) {}
  ~LineSocket() { close_fd(); }
  LineSocket(const LineSocket&) = delete;
  LineSocket& operator=(const LineSocket&) = delete;

  void close_fd() {
    if (fd_ >= 0) {
      ::shutdown(fd_, SHUT_RDWR);
      ::close(fd_);
      fd_ = -1;
    }
  }

  bool valid() const { return fd_ >= 0; }

  void send_line(const std::string& line) {
    std::string framed = line;
    framed.push_back('\n');
    std::size_t off = 0;
    while (off < framed.size()) {
      ssize_t n = ::send(fd_, framed.data() + off, framed.size() - off, MSG_NOSIGNAL);
      if (n <= 0) throw TransportError("connection lost while sending");
      off += static_cast<std::size_t>(n);
    }
  }

  /// Reads one newline-terminated line; false on orderly peer close.
  bool recv_line(std::string& line) {
    line.clear();
    while (true) {
      auto pos = buf_.find('\n');
      if (pos != std::string::npos) {
        line = buf_.substr(0, pos);
        buf_.erase(0, pos + 1);
        return true;
      }
      char chunk[4096];
      ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n == 0) return false;
      if (n < 0) throw TransportError("connection lost while receiving");
      buf_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_;
  std::string buf_;
};

int connect_to(const std::string& host, int port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string service = std::to_string(port);
  int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0) throw TransportError("cannot resolve " + host + ": " + gai_strerror(rc));
  int fd = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0)
    throw TransportError("cannot connect to " + host + ":" + std::to_string(port));
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return fd;
}

json error_message(const std::string& code, const std::string& message) {
  return json{{"type", "error"}, {"code", code}, {"message", message}};
}

}  // namespace

std::pair<std::string, int> parse_address(const std::string& address) {
  auto pos = address.rfind(':');
  if (pos == std::string::npos) return {address, kDefaultPort};
  std::string host = address.substr(0, pos);
  std::string port_str = address.substr(pos + 1);
  try {
    std::size_t used = 0;
    int port = std::stoi(port_str, &used);
    if (used != port_str.size() || port < 0 || port > 65535)
      throw ParameterError("");
    return {host.empty() ? std::string("127.0.0.1") : host, port};
  } catch (const std::exception&) {
    throw ParameterError("bad address '" + address + "' (expected host:port)");
  }
}

std::string default_address() {
  if (const char* env = std::getenv(kAddressEnvVar); env && *env) return env;
  return "127.0.0.1:" + std::to_string(kDefaultPort);
}

Server::Server(UnitarySpec spec, std::string host, int port, FockDims dims)
    : spec_(std::move(spec)),
      host_(std::move(host)),
      port_(port),
      dims_(dims),
      apply_(server_for(spec_)) {}

Server::~Server() { stop(); }

void Server::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw TransportError("cannot create listening socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port_));
  if (::inet_pton(AF_INET, host_.c_str(), &addr.sin_addr) != 1)
    throw TransportError("bind host must be an IPv4 address, got '" + host_ + "'");
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw TransportError("cannot bind " + host_ + ":" + std::to_string(port_));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  if (::listen(listen_fd_, 16) < 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw TransportError("cannot listen on " + host_ + ":" + std::to_string(port_));
  }
  running_ = true;
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
  if (!running_.exchange(false)) return;
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  {
    // Unblock workers parked in recv on live connections.
    std::lock_guard<std::mutex> lock(conn_mu_);
    for (int fd : live_connections_) ::shutdown(fd, SHUT_RDWR);
  }
  if (accept_thread_.joinable()) accept_thread_.join();
  for (auto& t : workers_)
    if (t.joinable()) t.join();
  workers_.clear();
}

void Server::register_connection(int fd) {
  std::lock_guard<std::mutex> lock(conn_mu_);
  live_connections_.insert(fd);
}

void Server::deregister_connection(int fd) {
  std::lock_guard<std::mutex> lock(conn_mu_);
  live_connections_.erase(fd);
}

void Server::accept_loop() {
  while (running_) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (!running_) break;
      continue;
    }
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    workers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void Server::serve_connection(int fd) {
  register_connection(fd);
  LineSocket sock(fd);
  // Deregister before the socket closes, so stop() never touches a reused fd.
  struct Dereg {
    Server* s;
    int fd;
    ~Dereg() { s->deregister_connection(fd); }
  } dereg{this, fd};
  std::string line;
  try {
    while (running_ && sock.recv_line(line)) {
      json msg;
      try {
        msg = json::parse(line);
      } catch (const json::exception& e) {
        sock.send_line(error_message("malformed", e.what()).dump());
        continue;  // malformed message: reply and keep the connection
      }
      std::string type = msg.value("type", "");
      if (type == "hello") {
        int version = msg.value("version", -1);
        if (version != kProtocolVersion) {
          sock.send_line(
              error_message("version", "unsupported protocol version").dump());
          return;  // version mismatch: error then close
        }
        int dim = msg.value("dim", -1);
        if (dim != dims_.dim()) {
          sock.send_line(error_message("dim", "state dimension mismatch").dump());
          return;
        }
        sock.send_line(json{{"type", "hello"},
                            {"version", kProtocolVersion},
                            {"dim", dims_.dim()}}
                           .dump());
      } else if (type == "apply") {
        try {
          InterfaceSpec iface = InterfaceSpec::control_qubit();
          if (msg.contains("interface")) {
            const json& ji = msg["interface"];
            if (ji.value("subsystem", "") != iface.in_system.subsystem ||
                ji.value("levels", std::vector<int>{}) != iface.in_system.levels)
              throw ContractError("unsupported interface");
          }
          StateVector v = state_from_json(msg.at("state"), dims_.dim());
          if (std::abs(v.norm() - 1.0) > 1e-6)
            throw ContractError("state is not normalized");
          IonState state(dims_);
          state.amplitudes() = v;
          apply_.apply(state);
          sock.send_line(
              json{{"type", "state_reply"}, {"state", state_to_json(state.amplitudes())}}
                  .dump());
        } catch (const std::exception& e) {
          sock.send_line(error_message("apply", e.what()).dump());
        }
      } else {
        sock.send_line(error_message("malformed", "unknown message type").dump());
      }
    }
  } catch (const TransportError&) {
    // peer went away mid-message; drop the connection
  }
}

namespace {

class RemoteConnection {
 public:
  RemoteConnection(const std::string& host, int port, FockDims dims)
      : sock_(connect_to(host, port)), dims_(dims) {
    json hello{{"type", "hello"}, {"version", kProtocolVersion}, {"dim", dims.dim()}};
    json reply = round_trip(hello);
    if (reply.value("type", "") != "hello")
      throw TransportError("handshake rejected: " + reply.value("message", "no reply"));
  }

  void apply(IonState& state) {
    std::lock_guard<std::mutex> lock(mu_);  // one in-flight apply per connection
    json msg{{"type", "apply"},
             {"interface",
              {{"subsystem", "control"}, {"levels", {kLevel0, kLevel1}}}},
             {"state", state_to_json(state.amplitudes())}};
    json reply = round_trip(msg);
    std::string type = reply.value("type", "");
    if (type == "error")
      throw ContractError("server error: " + reply.value("message", "unknown"));
    if (type != "state_reply") throw TransportError("unexpected reply type '" + type + "'");
    StateVector v = state_from_json(reply.at("state"), dims_.dim());
    // Guard against serialization drift; exact round trips leave the norm
    // untouched so this is a no-op in practice.
    double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-9) {
      if (std::abs(norm - 1.0) > 1e-6)
        throw ContractError("server returned a non-normalized state");
      v /= norm;
    }
    state.amplitudes() = v;
  }

 private:
  json round_trip(const json& msg) {
    sock_.send_line(msg.dump());
    std::string line;
    if (!sock_.recv_line(line)) throw TransportError("server closed the connection");
    try {
      return json::parse(line);
    } catch (const json::exception& e) {
      throw TransportError(std::string("unparseable server reply: ") + e.what());
    }
  }

  LineSocket sock_;
  FockDims dims_;
  std::mutex mu_;
};

}  // namespace

ServerHandle remote_server_handle(const std::string& address, FockDims dims) {
  auto [host, port] = parse_address(address);
  auto conn = std::make_shared<RemoteConnection>(host, port, dims);
  return ServerHandle([conn](IonState& s) { conn->apply(s); }, "remote:" + address);
}

}  // namespace iontrace::net
