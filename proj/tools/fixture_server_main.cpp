// Standalone fixture server for manual CLI runs: serves the static corpus
// plus deterministic generated log pages for any other date.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "../tests/support/fixture_corpus.hpp"
#include "../tests/support/fixture_server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"local AfD log-page fixture server"};
  std::string corpus = "fixtures/corpus";
  int port = 0;
  app.add_option("--corpus", corpus, "static fixture corpus directory");
  app.add_option("--port", port, "port to bind (default: ephemeral)");
  CLI11_PARSE(app, argc, argv);

  afdkit::testsupport::FixtureServer server(corpus, port);
  std::cout << "serving fixtures at " << server.base_url()
            << "/wiki/Wikipedia:Articles_for_deletion/Log/2023_January_1\n"
            << "press Ctrl-C to stop" << std::endl;

  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  int sig = 0;
  sigwait(&set, &sig);
  return 0;
}
