#include "lpp/transport.hpp"

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

struct Pipe {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> buf;
  bool closed = false;

  void close() {
    std::lock_guard lk(mu);
    closed = true;
    cv.notify_all();
  }
};

class LoopbackTransport final : public Transport {
 public:
  LoopbackTransport(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~LoopbackTransport() override { shutdown(); }

  void send_all(BytesView data) override {
    std::lock_guard lk(out_->mu);
    if (out_->closed) throw TransportError("loopback: send on closed pipe");
    out_->buf.insert(out_->buf.end(), data.begin(), data.end());
    out_->cv.notify_all();
  }

  void recv_exact(std::span<std::uint8_t> out) override {
    std::size_t got = 0;
    std::unique_lock lk(in_->mu);
    while (got < out.size()) {
      in_->cv.wait(lk, [&] { return !in_->buf.empty() || in_->closed; });
      while (got < out.size() && !in_->buf.empty()) {
        out[got++] = in_->buf.front();
        in_->buf.pop_front();
      }
      if (got < out.size() && in_->closed && in_->buf.empty())
        throw TransportError("loopback: pipe closed mid-read");
    }
  }

  void shutdown() override {
    in_->close();
    out_->close();
  }

 private:
  std::shared_ptr<Pipe> in_, out_;
};

class TcpTransport final : public Transport {
 public:
  explicit TcpTransport(int fd) : fd_(fd) {}
  ~TcpTransport() override {
    shutdown();
    if (fd_ >= 0) ::close(fd_);
  }

  void send_all(BytesView data) override {
    std::size_t sent = 0;
    while (sent < data.size()) {
      ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent,
                         MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("send: ") + std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  void recv_exact(std::span<std::uint8_t> out) override {
    std::size_t got = 0;
    while (got < out.size()) {
      ssize_t n = ::recv(fd_, out.data() + got, out.size() - got, 0);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("recv: ") + std::strerror(errno));
      }
      if (n == 0) throw TransportError("recv: peer closed the connection");
      got += static_cast<std::size_t>(n);
    }
  }

  void shutdown() override { ::shutdown(fd_, SHUT_RDWR); }

 private:
  int fd_;
};

struct AddrInfo {
  addrinfo* res = nullptr;
  ~AddrInfo() {
    if (res) freeaddrinfo(res);
  }
};

}  // namespace

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>
make_loopback_pair() {
  auto a_to_b = std::make_shared<Pipe>();
  auto b_to_a = std::make_shared<Pipe>();
  return {std::make_unique<LoopbackTransport>(b_to_a, a_to_b),
          std::make_unique<LoopbackTransport>(a_to_b, b_to_a)};
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  AddrInfo ai;
  int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(),
                       std::to_string(port).c_str(), &hints, &ai.res);
  if (rc != 0)
    throw TransportError(std::string("getaddrinfo: ") + gai_strerror(rc));

  for (addrinfo* a = ai.res; a; a = a->ai_next) {
    int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd, 16) == 0) {
      fd_ = fd;
      break;
    }
    ::close(fd);
  }
  if (fd_ < 0) throw TransportError("bind/listen failed on " + host + ":" +
                                    std::to_string(port));

  sockaddr_storage ss{};
  socklen_t slen = sizeof ss;
  if (getsockname(fd_, reinterpret_cast<sockaddr*>(&ss), &slen) == 0) {
    if (ss.ss_family == AF_INET)
      port_ = ntohs(reinterpret_cast<sockaddr_in*>(&ss)->sin_port);
    else if (ss.ss_family == AF_INET6)
      port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&ss)->sin6_port);
  }
}

TcpListener::~TcpListener() { close(); }

void TcpListener::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

std::unique_ptr<Transport> TcpListener::accept() {
  for (;;) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      int one = 1;
      setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return std::make_unique<TcpTransport>(fd);
    }
    if (errno == EINTR) continue;
    throw TransportError(std::string("accept: ") + std::strerror(errno));
  }
}

std::unique_ptr<Transport> tcp_connect(const std::string& host,
                                       std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  AddrInfo ai;
  int rc = getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints,
                       &ai.res);
  if (rc != 0)
    throw TransportError(std::string("getaddrinfo: ") + gai_strerror(rc));

  int last_errno = 0;
  for (addrinfo* a = ai.res; a; a = a->ai_next) {
    int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) {
      int one = 1;
      setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return std::make_unique<TcpTransport>(fd);
    }
    last_errno = errno;
    ::close(fd);
  }
  throw TransportError("connect to " + host + ":" + std::to_string(port) +
                       ": " + std::strerror(last_errno));
}

}  // namespace lpp
