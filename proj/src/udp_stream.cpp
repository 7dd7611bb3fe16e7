// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/udp_stream.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <map>
#include <random>
#include <thread>

#include "hsc/error.hpp"

namespace hsc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

class UdpSocket {
public:
  UdpSocket() : fd_(::socket(AF_INET, SOCK_DGRAM, 0)) {
    if (fd_ < 0) raise(ErrorKind::Transport, "socket() failed");
  }
  ~UdpSocket() {
    if (fd_ >= 0) ::close(fd_);
  }
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;

  int fd() const { return fd_; }

  void bind_loopback() {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0)
      raise(ErrorKind::Transport, "bind() failed on loopback");
  }

  sockaddr_in local_address() const {
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) < 0)
      raise(ErrorKind::Transport, "getsockname() failed");
    return addr;
  }

  void set_recv_timeout_ms(int ms) {
    timeval tv{};
    tv.tv_sec = ms / 1000;
    tv.tv_usec = (ms % 1000) * 1000;
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  }

  void set_recv_buffer(int bytes) {
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &bytes, sizeof bytes);
  }

private:
  int fd_;
};

} // namespace

StreamReport stream_loopback(
    const std::vector<std::pair<int, EncodedFrame>>& tiered_frames,
    const StreamConfig& cfg) {
  PacketizerConfig pcfg{cfg.size_limit, cfg.loss_policy};
  std::vector<Packet> packets = packetize(tiered_frames, pcfg);

  // Plan synthetic drops up front so the receiver knows what to expect.
  std::vector<bool> dropped(packets.size(), false);
  size_t planned_drops = 0;
  if (cfg.drop_rate > 0.0) {
    std::mt19937_64 gen(cfg.drop_seed);
    for (size_t i = 0; i < packets.size(); ++i) {
      double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      if (u < cfg.drop_rate) {
        dropped[i] = true;
        ++planned_drops;
      }
    }
  }
  const size_t expected = packets.size() - planned_drops;

  UdpSocket rx;
  rx.bind_loopback();
  rx.set_recv_timeout_ms(50);
  rx.set_recv_buffer(4 << 20);
  sockaddr_in dest = rx.local_address();
  UdpSocket tx;

  struct Arrival {
    std::vector<uint8_t> bytes;
    Clock::time_point at;
  };
  std::vector<Arrival> arrivals;
  arrivals.reserve(expected);
  std::atomic<bool> give_up{false};

  const Clock::time_point t0 = Clock::now();
  std::thread receiver([&] {
    std::vector<uint8_t> buf(cfg.size_limit);
    Clock::time_point deadline = t0 + std::chrono::milliseconds(cfg.timeout_ms);
    while (arrivals.size() < expected && !give_up.load()) {
      ssize_t n = ::recv(rx.fd(), buf.data(), buf.size(), 0);
      if (n > 0) {
        arrivals.push_back({{buf.begin(), buf.begin() + n}, Clock::now()});
        continue;
      }
      if (Clock::now() > deadline) break;
    }
  });

  std::map<uint32_t, Clock::time_point> first_send;
  size_t sent = 0;
  bool send_failed = false;
  for (size_t i = 0; i < packets.size(); ++i) {
    if (dropped[i]) continue;
    std::vector<uint8_t> wire = packets[i].serialize();
    if (!first_send.count(packets[i].frame_id))
      first_send[packets[i].frame_id] = Clock::now();
    ssize_t n = ::sendto(tx.fd(), wire.data(), wire.size(), 0,
                         reinterpret_cast<const sockaddr*>(&dest), sizeof dest);
    if (n != static_cast<ssize_t>(wire.size())) {
      send_failed = true;
      break;
    }
    ++sent;
    if (cfg.pace_us > 0)
      std::this_thread::sleep_for(std::chrono::microseconds(cfg.pace_us));
  }
  if (send_failed) give_up.store(true);
  receiver.join();
  const Clock::time_point t_end = Clock::now();
  if (send_failed) raise(ErrorKind::Transport, "sendto() failed");

  StreamReport report;
  report.packets_sent = sent;
  report.packets_dropped = planned_drops;
  report.packets_received = arrivals.size();
  report.elapsed_ms = ms_between(t0, t_end);

  std::vector<Packet> received;
  received.reserve(arrivals.size());
  std::map<uint32_t, Clock::time_point> last_arrival;
  std::map<uint32_t, size_t> fragments_arrived;
  std::map<int, Clock::time_point> tier_first;
  for (const Arrival& a : arrivals) {
    Packet p = Packet::parse(a.bytes);
    last_arrival[p.frame_id] = std::max(
        last_arrival.count(p.frame_id) ? last_arrival[p.frame_id] : a.at, a.at);
    ++fragments_arrived[p.frame_id];
    auto it = tier_first.find(p.tier);
    if (it == tier_first.end() || a.at < it->second) tier_first[p.tier] = a.at;
    received.push_back(std::move(p));
  }

  report.reassembly = reassemble(received, pcfg);

  for (uint32_t id = 0; id < tiered_frames.size(); ++id) {
    FrameStreamStats fs;
    fs.frame_id = id;
    fs.tier = tiered_frames[id].first;
    fs.bytes = tiered_frames[id].second.serialized_size();
    fs.fragments = fragments_arrived.count(id) ? fragments_arrived[id] : 0;
    fs.delivered = report.reassembly.frames.count(id) > 0;
    if (fs.delivered && first_send.count(id))
      fs.end_to_end_ms = ms_between(first_send[id], last_arrival[id]);
    report.frames.push_back(fs);
  }
  for (const auto& [tier, at] : tier_first)
    report.tiers.push_back({tier, ms_between(t0, at)});

  return report;
}

} // namespace hsc
