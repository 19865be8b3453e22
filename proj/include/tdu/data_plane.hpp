#ifndef TDU_DATA_PLANE_HPP
#define TDU_DATA_PLANE_HPP

// Data Manager: reading ingestion, trust annotation, and the spatial/
// temporal/abstraction transforms that realize granted constraints.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdu/model.hpp"

namespace tdu::data {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Metric { Temperature, Humidity, Co2, Voc };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& name);
std::string metric_unit(Metric m);
std::pair<double, double> metric_range(Metric m);

struct Reading {
    model::EntityId entity;
    Metric metric = Metric::Temperature;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    std::string street;
    std::string zone;
    double value = 0.0;
};

class Dataset {
public:
    // Validates invariants (timestamps, single zone per street); duplicate
    // (entity, metric, timestamp) keys keep the first occurrence and add a
    // warning. Iteration order is (timestamp, entity id, metric).
    static Dataset ingest(const std::vector<Reading>& readings);

    const std::vector<Reading>& readings() const { return readings_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    size_t size() const { return readings_.size(); }

private:
    std::vector<Reading> readings_;
    std::vector<std::string> warnings_;
};

struct TransformSpec {
    std::string spatial;      // street | zone | any
    std::string temporal;     // secondly .. yearly | any
    std::string abstraction;  // detail | aggregation | statistic | any

    void validate() const;
};

// Calendar-aligned UTC bucket start for a timestamp (weeks start Monday;
// `any` collapses to the window start).
std::int64_t bucket_start(std::int64_t ts, const std::string& temporal_level,
                          std::int64_t window_start);

// Groups readings by metric x spatial unit x temporal bucket and renders one
// DataItem per group (per reading for detail). Deterministic output order.
std::vector<model::DataItem> transform(const Dataset& d, const TransformSpec& spec,
                                       std::int64_t t0, std::int64_t t1);

// Adds a usagePolicy metadata entry carrying the policy URI; idempotent per
// policy, preserving first-annotation order.
model::DataItem annotate(const model::DataItem& item, const model::UsagePolicy& policy);

// Same seed, same readings. Values fall in fixed plausible per-metric ranges.
std::vector<Reading> generate_synthetic(std::uint64_t seed, size_t count,
                                        int streets_per_zone, int zones,
                                        std::int64_t t0, std::int64_t t1);

// Line format: header then entity_id,entity_type,metric,timestamp,street,zone,value
std::vector<Reading> parse_readings_csv(const std::string& text);
std::string serialize_readings_csv(const std::vector<Reading>& readings);

}  // namespace tdu::data

#endif
