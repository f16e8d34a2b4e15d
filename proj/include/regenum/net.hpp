// Copyright 2026 The regenum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Thin RAII layer over POSIX TCP sockets.

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <utility>

#include "regenum/error.hpp"

namespace regenum::net {

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  // "host:port" or ":port" / "port".
  static Endpoint parse(const std::string& text) {
    Endpoint e;
    const auto colon = text.rfind(':');
    std::string port = text;
    if (colon != std::string::npos) {
      if (colon > 0) e.host = text.substr(0, colon);
      port = text.substr(colon + 1);
    }
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(port, &used);
      if (used != port.size() || value > 65535) throw std::out_of_range("port");
      e.port = static_cast<std::uint16_t>(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad endpoint '" + text + "'");
    }
    return e;
  }

  std::string to_string() const { return host + ":" + std::to_string(port); }
};

class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept {
    if (this != &other) {
      close();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { close(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }

  void close() {
    if (fd_ >= 0) ::close(std::exchange(fd_, -1));
  }

  // False when the peer is gone.
  bool send_all(std::span<const std::uint8_t> bytes) const {
    std::size_t sent = 0;
    while (sent < bytes.size()) {
      const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      sent += static_cast<std::size_t>(n);
    }
    return true;
  }

  // Bytes read; 0 on orderly close, -1 on error.
  ssize_t recv_some(std::span<std::uint8_t> buf) const {
    for (;;) {
      const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
      if (n < 0 && errno == EINTR) continue;
      return n;
    }
  }

 private:
  int fd_ = -1;
};

namespace detail {

inline sockaddr_in resolve(const Endpoint& e) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(e.port);
  const std::string host = e.host == "localhost" || e.host.empty() ? "127.0.0.1" : e.host;
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr) {
    throw Error(ErrorCode::kIo, "cannot resolve " + e.host);
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  ::freeaddrinfo(res);
  return addr;
}

}  // namespace detail

// Bound, listening socket; port 0 picks an ephemeral port.
inline Socket listen_on(const Endpoint& e, std::uint16_t* bound_port = nullptr) {
  Socket s(::socket(AF_INET, SOCK_STREAM, 0));
  if (!s.valid()) throw Error(ErrorCode::kIo, std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr = detail::resolve(e);
  if (::bind(s.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    throw Error(ErrorCode::kIo, "bind " + e.to_string() + ": " + std::strerror(errno));
  }
  if (::listen(s.fd(), 128) != 0) throw Error(ErrorCode::kIo, std::string("listen: ") + std::strerror(errno));
  if (bound_port != nullptr) {
    socklen_t len = sizeof addr;
    ::getsockname(s.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
    *bound_port = ntohs(addr.sin_port);
  }
  return s;
}

inline Socket accept_from(const Socket& listener) {
  for (;;) {
    const int fd = ::accept(listener.fd(), nullptr, nullptr);
    if (fd < 0 && errno == EINTR) continue;
    if (fd >= 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    }
    return Socket(fd);
  }
}

// Invalid socket when the connection is refused.
inline Socket connect_to(const Endpoint& e) {
  Socket s(::socket(AF_INET, SOCK_STREAM, 0));
  if (!s.valid()) throw Error(ErrorCode::kIo, std::string("socket: ") + std::strerror(errno));
  sockaddr_in addr = detail::resolve(e);
  if (::connect(s.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) return Socket();
  const int one = 1;
  ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return s;
}

}  // namespace regenum::net
