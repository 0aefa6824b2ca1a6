#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>

#include "lpp/bytes.hpp"

namespace lpp {

// Reliable byte stream between the two parties. Implementations throw
// TransportError on broken or closed streams.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send_all(BytesView data) = 0;
  virtual void recv_exact(std::span<std::uint8_t> out) = 0;
  // Tears down both directions; idempotent, never throws.
  virtual void shutdown() = 0;
};

// In-memory bidirectional pipe pair for tests and loopback benchmarks.
// Thread-safe: the two ends may live on different threads.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>
make_loopback_pair();

class TcpListener {
 public:
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::unique_ptr<Transport> accept();
  std::uint16_t port() const { return port_; }  // resolved port (for bind to 0)
  void close();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

std::unique_ptr<Transport> tcp_connect(const std::string& host,
                                       std::uint16_t port);

}  // namespace lpp
