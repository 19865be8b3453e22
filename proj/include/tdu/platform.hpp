#ifndef TDU_PLATFORM_HPP
#define TDU_PLATFORM_HPP

// Platform layer: policy registry (PM), data manager (DM), scope vocabulary
// (OM) and request handling with usage accounting (AM), shared by the
// service endpoints and the CLI.

#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "tdu/compiler.hpp"
#include "tdu/data_plane.hpp"
#include "tdu/enforce.hpp"
#include "tdu/ledger.hpp"
#include "tdu/model.hpp"

namespace tdu::platform {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Subject {
    std::string id;
    std::string actor_class;
};

struct Config {
    int port = 8080;
    std::string data_dir = ".";
    std::string ledger_path = "ledger.log";
    bool modal_conversion = true;
    std::vector<Subject> subjects;  // known subjects and their actor classes
};

Config load_config(const std::string& path);
Config parse_config(const std::string& text);

struct QueryResult {
    enforce::Decision decision;
    std::vector<model::DataItem> items;  // released data, empty when refused
    std::uint64_t record_id = 0;
};

class Platform {
public:
    explicit Platform(Config config);

    // PM
    void add_policy(const model::UsagePolicy& policy);  // replaces same-name policy
    std::vector<model::UsagePolicy> policies() const;
    std::vector<compiler::ConflictPair> check_policies() const;

    // DM
    void ingest_readings(const std::vector<data::Reading>& readings);
    const data::Dataset& dataset() const { return dataset_; }

    void register_subject(const Subject& s);

    // AM: evaluates, transforms when granted, and appends one ledger record.
    QueryResult query(const enforce::ConsumerRequest& request,
                      std::optional<std::int64_t> window_start = {},
                      std::optional<std::int64_t> window_end = {});

    std::vector<ledger::UsageRecord> history(const ledger::HistoryFilter& filter) const;

    const Config& config() const { return config_; }

private:
    std::vector<dl::ModalLiteral> subject_facts() const;

    Config config_;
    mutable std::shared_mutex policy_mutex_;
    std::vector<model::UsagePolicy> policies_;
    std::vector<Subject> subjects_;
    data::Dataset dataset_;
    mutable std::mutex ledger_mutex_;
    ledger::Ledger ledger_;
};

// Full query round trip over the JSON encodings (decision, explanation,
// released items, ledger record id). Shared by the service and the C API so
// both paths answer byte-identically.
std::string query_json(Platform& p, const std::string& request_body, int indent = 2);

}  // namespace tdu::platform

#endif
