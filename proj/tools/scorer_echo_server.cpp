// Reference implementation of the frontier-scoring wire protocol plus fault
// injection modes for exercising the client's fallback path.
//
//   echo            scores frontier i as (i+1)/(K+1)
//   constant        scores every frontier 0.5
//   wrong-length    replies with one score too few
//   garbage         replies with a non-JSON line
//   hang            accepts, reads, never replies
//   close-mid-reply sends half a reply then closes

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <cstring>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string make_reply(const std::string& request_line,
                       const std::string& mode) {
  std::size_t k = 0;
  try {
    const json req = json::parse(request_line);
    if (req.contains("frontiers") && req["frontiers"].is_array())
      k = req["frontiers"].size();
  } catch (const json::exception&) {
    // malformed request still gets a reply so the client surfaces the
    // mismatch on its own side
  }
  if (mode == "garbage") return "not json at all\n";
  json reply;
  reply["scores"] = json::array();
  const std::size_t n = mode == "wrong-length" && k > 0 ? k - 1 : k;
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == "constant")
      reply["scores"].push_back(0.5);
    else
      reply["scores"].push_back(static_cast<double>(i + 1) / (k + 1));
  }
  return reply.dump() + "\n";
}

void serve_connection(int fd, const std::string& mode) {
  std::string buf;
  char chunk[4096];
  for (;;) {
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n <= 0) return;
    buf.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    while ((nl = buf.find('\n')) != std::string::npos) {
      const std::string line = buf.substr(0, nl);
      buf.erase(0, nl + 1);
      if (mode == "hang") {
        ::sleep(3600);
        return;
      }
      std::string reply = make_reply(line, mode);
      if (mode == "close-mid-reply") {
        reply = reply.substr(0, reply.size() / 2);
        ::send(fd, reply.data(), reply.size(), 0);
        return;
      }
      std::size_t sent = 0;
      while (sent < reply.size()) {
        const ssize_t s =
            ::send(fd, reply.data() + sent, reply.size() - sent, 0);
        if (s <= 0) return;
        sent += static_cast<std::size_t>(s);
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newline-delimited JSON frontier score server"};
  int port = 0;
  std::string mode = "echo";
  int max_connections = 0;
  app.add_option("--port", port, "listen port (0 picks a free port)")
      ->default_val(0);
  app.add_option("--mode", mode, "reply behavior")
      ->check(CLI::IsMember(
          {"echo", "constant", "wrong-length", "garbage", "hang",
           "close-mid-reply"}))
      ->default_val("echo");
  app.add_option("--max-connections", max_connections,
                 "exit after serving this many connections (0 = forever)")
      ->default_val(0);
  CLI11_PARSE(app, argc, argv);

  ::signal(SIGPIPE, SIG_IGN);

  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) {
    std::perror("socket");
    return 1;
  }
  const int one = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    std::perror("bind");
    return 1;
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);
  if (::listen(listener, 16) != 0) {
    std::perror("listen");
    return 1;
  }
  std::printf("listening 127.0.0.1:%d mode=%s\n", ntohs(addr.sin_port),
              mode.c_str());
  std::fflush(stdout);

  int served = 0;
  for (;;) {
    const int fd = ::accept(listener, nullptr, nullptr);
    if (fd < 0) continue;
    serve_connection(fd, mode);
    ::close(fd);
    if (max_connections > 0 && ++served >= max_connections) break;
  }
  ::close(listener);
  return 0;
}
