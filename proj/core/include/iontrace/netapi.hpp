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

#ifndef IONTRACE_NETAPI_HPP
#define IONTRACE_NETAPI_HPP

#include <atomic>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "iontrace/protocol.hpp"

namespace iontrace::net {

inline constexpr int kProtocolVersion = 1;
inline constexpr int kDefaultPort = 4755;
inline constexpr const char* kAddressEnvVar = "IONTRACE_ADDR";

/// "host:port" -> (host, port). A bare host uses the default port.
std::pair<std::string, int> parse_address(const std::string& address);

/// Default server address: $IONTRACE_ADDR if set, else 127.0.0.1:<default>.
std::string default_address();

/// Out-of-process unitary server. Speaks newline-delimited JSON over TCP:
///   client: {"type":"hello","version":1,"dim":64}
///   server: {"type":"hello","version":1,"dim":64}
///   client: {"type":"apply","interface":{"subsystem":"control","levels":[0,1]},
///            "state":[[re,im], ...]}
///   server: {"type":"state_reply","state":[[re,im], ...]}
///   server: {"type":"error","code":"...","message":"..."}
///
/// The wire carries the full joint state while the contract restricts the
/// server's action to the interface levels; this is a simulation stand-in for
/// physically shipping the interface qubit. Amplitudes are serialized as
/// round-trip-exact decimal, so a remote round trip reproduces the in-process
/// amplitudes bit for bit.
class Server {
 public:
  Server(UnitarySpec spec, std::string host, int port, FockDims dims = {});
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Bind and start accepting connections. Throws TransportError on failure.
  void start();

  /// Port actually bound (useful with port 0).
  int port() const { return port_; }
  const std::string& host() const { return host_; }

  void stop();

 private:
  void accept_loop();
  void serve_connection(int fd);
  void register_connection(int fd);
  void deregister_connection(int fd);

  UnitarySpec spec_;
  std::string host_;
  int port_;
  FockDims dims_;
  ServerHandle apply_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread accept_thread_;
  std::vector<std::thread> workers_;
  std::mutex conn_mu_;
  std::set<int> live_connections_;
};

/// Connect to a remote server and wrap it as an ordinary ServerHandle; the
/// client code path is identical to the in-process case. Throws
/// TransportError if the server is unreachable or the handshake fails.
ServerHandle remote_server_handle(const std::string& address, FockDims dims = {});

}  // namespace iontrace::net

#endif  // IONTRACE_NETAPI_HPP
