#include "fixture_server.hpp"

#include <httplib.h>

#include "afdkit/collector.hpp"
#include "afdkit/date.hpp"
#include "afdkit/util.hpp"
#include "fixture_corpus.hpp"

namespace afdkit::testsupport {

FixtureServer::FixtureServer(std::filesystem::path corpus_dir, int port)
    : corpus_dir_(std::move(corpus_dir)), server_(std::make_unique<httplib::Server>()) {
  server_->set_pre_routing_handler([this](const httplib::Request&, httplib::Response&) {
    hits_.fetch_add(1);
    return httplib::Server::HandlerResponse::Unhandled;
  });
  server_->Get(R"(/wiki/Wikipedia:Articles_for_deletion/Log/(.+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 Date date{};
                 try {
                   date = date_from_log_url("http://fixture" + req.path);
                 } catch (const MalformedUrl&) {
                   res.status = 404;
                   res.set_content("no such log page", "text/plain");
                   return;
                 }
                 if (date.year < 2000) {
                   res.status = 404;
                   res.set_content("log pages start in 2000", "text/plain");
                   return;
                 }
                 if (auto page = static_page(corpus_dir_, date)) {
                   res.set_content(*page, "text/html; charset=UTF-8");
                 } else {
                   res.set_content(generated_log_page(date), "text/html; charset=UTF-8");
                 }
               });
  server_->Get("/missing",
               [](const httplib::Request&, httplib::Response& res) { res.status = 404; });
  server_->Get("/flaky500",
               [](const httplib::Request&, httplib::Response& res) { res.status = 500; });

  if (port > 0) {
    if (!server_->bind_to_port("127.0.0.1", port))
      throw std::runtime_error("fixture server could not bind port " + std::to_string(port));
    port_ = port;
  } else {
    port_ = server_->bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("fixture server could not bind a port");
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  base_url_ = "http://127.0.0.1:" + std::to_string(port_);
}

FixtureServer::~FixtureServer() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string FixtureServer::log_url(const std::string& iso_date) const {
  Date d = parse_date(iso_date);
  return base_url_ + "/wiki/Wikipedia:Articles_for_deletion/Log/" + std::to_string(d.year) + "_" +
         month_name(d.month) + "_" + std::to_string(d.day);
}

}  // namespace afdkit::testsupport
