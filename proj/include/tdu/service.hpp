#ifndef TDU_SERVICE_HPP
#define TDU_SERVICE_HPP

// HTTP endpoints over the JSON encodings:
//   GET  /health
//   POST /policies           (UsagePolicy XML or JSON)
//   GET  /policies
//   POST /data/readings      (CSV import)
//   POST /query              (ConsumerRequest -> Decision + DataItems)
//   GET  /usage-history?policy=&subject=&outcome=
//   GET  /bench?iterations=&mode=

#include <memory>

#include "tdu/platform.hpp"

namespace tdu::service {

class Service {
public:
    explicit Service(platform::Platform& platform);
    ~Service();

    // Blocks until stop(); throws platform::Error when the port is busy.
    void serve(const std::string& host, int port);

    // Binds to an ephemeral port and serves on a background thread.
    int start(const std::string& host);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tdu::service

#endif
