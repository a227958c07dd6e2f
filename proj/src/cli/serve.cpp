#include <httplib.h>

#include <atomic>
#include <csignal>
#include <iostream>
#include <thread>

#include "lambdalab/cli.hpp"
#include "lambdalab/protocol.hpp"

namespace lambdalab::cli {

namespace {

int serve_stdio(ProtocolServer& server) {
  // One request per line, one response per line.
  for (std::string line; std::getline(std::cin, line);) {
    if (line.empty()) continue;
    std::cout << server.handle(line) << '\n' << std::flush;
  }
  return kOk;
}

}  // namespace

int cmd_serve(const ServeOptions& options, const CommonOptions& common) {
  std::string err;
  auto config = load_config(common, err);
  if (!config) {
    std::cerr << err;
    return kParseError;
  }
  ProtocolServer protocol(*config);
  if (options.stdio) return serve_stdio(protocol);

  httplib::Server http;
  http.Post("/api", [&](const httplib::Request& req, httplib::Response& res) {
    res.set_content(protocol.handle(req.body), "application/json");
  });
  if (options.root && !http.set_mount_point("/", *options.root)) {
    std::cerr << *options.root << ": not a directory\n";
    return kParseError;
  }
  if (!http.bind_to_port(options.host, options.port)) {
    std::cerr << "cannot listen on " << options.host << ":" << options.port << "\n";
    return kParseError;
  }

  // Interrupts are taken by a watcher thread; stopping the server lets
  // in-flight requests finish before listen returns.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::atomic<bool> interrupted = false;
  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    interrupted = true;
    http.stop();
  });

  std::cerr << "serving on http://" << options.host << ":" << options.port << "\n";
  http.listen_after_bind();

  // Wake the watcher if the server stopped for another reason.
  if (!interrupted) pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  return kOk;
}

}  // namespace lambdalab::cli
