#ifndef TDU_LEDGER_HPP
#define TDU_LEDGER_HPP

// Accountability store: append-only, checksummed, line-oriented file of
// usage records. Every enforcement transaction is recorded, refusals
// included.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdu/enforce.hpp"
#include "tdu/model.hpp"

namespace tdu::ledger {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageRecord {
    std::uint64_t record_id = 0;  // assigned by append
    std::int64_t timestamp = 0;
    std::string subject;
    std::string actor_class;
    std::string spatial;
    std::string temporal;
    std::string abstraction;
    std::optional<std::string> purpose;
    enforce::Outcome outcome = enforce::Outcome::Refused;
    std::vector<std::string> policies;  // policy URIs consulted
    std::uint64_t items_released = 0;
    std::string trace_digest;  // stable hash of the proof trace
    auto operator<=>(const UsageRecord&) const = default;
};

struct HistoryFilter {
    std::optional<std::string> policy;
    std::optional<std::string> subject;
    std::optional<enforce::Outcome> outcome;
    std::optional<std::int64_t> from;  // inclusive
    std::optional<std::int64_t> to;    // exclusive
};

class Ledger {
public:
    // Opens (creating if absent) and replays the file; corrupt or
    // out-of-order lines are rejected.
    explicit Ledger(std::string path);

    // Durable ordered append; the record's id field is assigned here.
    std::uint64_t append(UsageRecord record);

    std::vector<UsageRecord> history(const HistoryFilter& filter = {}) const;

    std::uint64_t size() const { return static_cast<std::uint64_t>(records_.size()); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::vector<UsageRecord> records_;
};

// FNV-1a digest of the proof trace rendering, hex-encoded.
std::string trace_digest(const enforce::ProofTrace& trace);

// JSON encoding used by the service layer (and the ledger file payloads).
std::string record_to_json_string(const UsageRecord& record, int indent = -1);

// Record rendered as a Listing-1-shaped data item, entity type UsageRecord.
model::DataItem as_data_item(const UsageRecord& record);
UsageRecord record_from_data_item(const model::DataItem& item);

}  // namespace tdu::ledger

#endif
