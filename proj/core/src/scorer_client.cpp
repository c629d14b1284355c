#include "goalnav/scorer_client.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>

#include "json.hpp"

namespace goalnav {

using nlohmann::json;

std::string build_score_request(const GoalQuery& query,
                                const std::vector<Frontier>& frontiers,
                                double cell_size, double origin_x,
                                double origin_y, const std::string& history,
                                const std::string& image_b64) {
  json j;
  j["type"] = "score_request";
  j["query"] = query.text;
  j["history"] = history;
  j["frontiers"] = json::array();
  for (const Frontier& f : frontiers) {
    j["frontiers"].push_back(
        {{"x", origin_x + (f.centroid.x + 0.5) * cell_size},
         {"y", origin_y + (f.centroid.y + 0.5) * cell_size}});
  }
  if (!image_b64.empty()) j["image_b64"] = image_b64;
  return j.dump() + "\n";
}

FrontierScores parse_score_reply(const std::string& line,
                                 std::size_t expected_count) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("unparseable reply: ") + e.what() +
                        "; payload: " + line);
  }
  if (!j.contains("scores") || !j["scores"].is_array())
    throw ProtocolError("reply missing scores array; payload: " + line);
  FrontierScores scores;
  for (const auto& s : j["scores"]) {
    if (!s.is_number())
      throw ProtocolError("non-numeric score; payload: " + line);
    scores.push_back(s.get<double>());
  }
  if (scores.size() != expected_count)
    throw ProtocolError("score count mismatch; payload: " + line);
  return scores;
}

namespace {

struct FdGuard {
  int fd = -1;
  ~FdGuard() {
    if (fd >= 0) ::close(fd);
  }
};

// Connect + send + read one line, honoring the deadline at every stage.
std::string round_trip(const std::string& host, int port,
                       const std::string& request,
                       std::chrono::milliseconds timeout) {
  FdGuard sock;
  sock.fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (sock.fd < 0) throw ProtocolError("socket() failed");

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    hostent* he = ::gethostbyname(host.c_str());
    if (!he) throw ProtocolError("cannot resolve host " + host);
    std::memcpy(&addr.sin_addr, he->h_addr, sizeof(addr.sin_addr));
  }

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  auto remaining_ms = [&]() {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    return static_cast<int>(std::max<long long>(0, left.count()));
  };

  struct timeval tv;
  tv.tv_sec = timeout.count() / 1000;
  tv.tv_usec = (timeout.count() % 1000) * 1000;
  ::setsockopt(sock.fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  ::setsockopt(sock.fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  if (::connect(sock.fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
    throw ProtocolError("connect to " + host + " failed");

  std::size_t sent = 0;
  while (sent < request.size()) {
    const ssize_t n =
        ::send(sock.fd, request.data() + sent, request.size() - sent, 0);
    if (n <= 0) throw ProtocolError("send failed or timed out");
    sent += static_cast<std::size_t>(n);
  }

  std::string line;
  char buf[4096];
  for (;;) {
    pollfd pfd{sock.fd, POLLIN, 0};
    const int pr = ::poll(&pfd, 1, remaining_ms());
    if (pr <= 0) throw ProtocolError("reply timed out");
    const ssize_t n = ::recv(sock.fd, buf, sizeof(buf), 0);
    if (n <= 0) throw ProtocolError("connection closed before newline");
    line.append(buf, static_cast<std::size_t>(n));
    const auto nl = line.find('\n');
    if (nl != std::string::npos) return line.substr(0, nl);
    if (line.size() > (1u << 20)) throw ProtocolError("reply too large");
  }
}

}  // namespace

ExternalScorer::ExternalScorer(std::string endpoint,
                               std::chrono::milliseconds timeout,
                               double cell_size, double origin_x,
                               double origin_y)
    : timeout_(timeout), cell_size_(cell_size), origin_x_(origin_x),
      origin_y_(origin_y) {
  if (endpoint.empty()) {
    const char* env = std::getenv(kScorerEndpointEnv);
    if (env) endpoint = env;
  }
  const auto colon = endpoint.rfind(':');
  if (colon == std::string::npos)
    throw std::invalid_argument(
        "ExternalScorer: endpoint must be host:port (set " +
        std::string(kScorerEndpointEnv) + ")");
  host_ = endpoint.substr(0, colon);
  port_ = std::stoi(endpoint.substr(colon + 1));
}

FrontierScores ExternalScorer::score_frontiers(
    const RgbImage&, const GoalQuery& query,
    const std::vector<Frontier>& frontiers, const std::string& history) {
  const std::string request = build_score_request(
      query, frontiers, cell_size_, origin_x_, origin_y_, history);
  try {
    const std::string reply = round_trip(host_, port_, request, timeout_);
    return parse_score_reply(reply, frontiers.size());
  } catch (const ProtocolError& e) {
    ++fallbacks_;
    last_error_ = e.what();
    return FrontierScores(frontiers.size(), kUniformFallbackScore);
  }
}

}  // namespace goalnav
