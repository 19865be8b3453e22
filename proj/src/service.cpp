#include "tdu/service.hpp"

#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "tdu/bench.hpp"

namespace tdu::service {

using nlohmann::json;

struct Service::Impl {
    platform::Platform& platform;
    httplib::Server server;
    std::thread worker;

    explicit Impl(platform::Platform& p) : platform(p) { route(); }

    static void fail(httplib::Response& res, int status, const std::string& message) {
        res.status = status;
        res.set_content(json{{"error", message}}.dump(2), "application/json");
    }

    template <typename Fn>
    static void guarded(httplib::Response& res, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            fail(res, 400, e.what());
        }
    }

    void route() {
        server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(json{{"status", "ok"}}.dump(2), "application/json");
        });

        server.Post("/policies", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                auto type = req.get_header_value("Content-Type");
                model::Format format = type.find("json") != std::string::npos
                                           ? model::Format::Json
                                           : model::Format::Xml;
                model::UsagePolicy p = model::parse_usage_policy(req.body, format);
                platform.add_policy(p);
                res.status = 201;
                res.set_content(json{{"name", p.name}}.dump(2), "application/json");
            });
        });

        server.Get("/policies", [this](const httplib::Request&, httplib::Response& res) {
            guarded(res, [&] {
                json out = json::array();
                for (const auto& p : platform.policies())
                    out.push_back(
                        json::parse(model::serialize_usage_policy(p, model::Format::Json)));
                res.set_content(out.dump(2), "application/json");
            });
        });

        server.Post("/data/readings",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        guarded(res, [&] {
                            auto readings = data::parse_readings_csv(req.body);
                            platform.ingest_readings(readings);
                            res.status = 201;
                            res.set_content(
                                json{{"ingested", readings.size()},
                                     {"total", platform.dataset().size()}}
                                    .dump(2),
                                "application/json");
                        });
                    });

        server.Post("/query", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                res.set_content(platform::query_json(platform, req.body), "application/json");
            });
        });

        server.Get("/usage-history",
                   [this](const httplib::Request& req, httplib::Response& res) {
                       guarded(res, [&] {
                           ledger::HistoryFilter filter;
                           if (req.has_param("policy")) filter.policy = req.get_param_value("policy");
                           if (req.has_param("subject"))
                               filter.subject = req.get_param_value("subject");
                           if (req.has_param("outcome")) {
                               auto o = req.get_param_value("outcome");
                               if (o != "Granted" && o != "Refused")
                                   throw platform::Error("unknown outcome filter: " + o);
                               filter.outcome = o == "Granted" ? enforce::Outcome::Granted
                                                               : enforce::Outcome::Refused;
                           }
                           json out = json::array();
                           for (const auto& r : platform.history(filter))
                               out.push_back(json::parse(ledger::record_to_json_string(r)));
                           res.set_content(out.dump(2), "application/json");
                       });
                   });

        server.Get("/bench", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                int iterations = req.has_param("iterations")
                                     ? std::stoi(req.get_param_value("iterations"))
                                     : 50;
                bench::Mode mode = req.has_param("mode")
                                       ? bench::mode_from_string(req.get_param_value("mode"))
                                       : bench::Mode::Warm;
                res.set_content(bench::stats_to_json(bench::bench_tet(iterations, mode)),
                                "application/json");
            });
        });
    }
};

Service::Service(platform::Platform& platform) : impl_(std::make_unique<Impl>(platform)) {}

Service::~Service() { stop(); }

void Service::serve(const std::string& host, int port) {
    if (!impl_->server.listen(host, port))
        throw platform::Error("cannot listen on " + host + ":" + std::to_string(port));
}

int Service::start(const std::string& host) {
    int port = impl_->server.bind_to_any_port(host);
    if (port < 0) throw platform::Error("cannot bind to " + host);
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port;
}

void Service::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace tdu::service
