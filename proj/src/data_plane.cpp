#include "tdu/data_plane.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

namespace tdu::data {

namespace {

constexpr std::int64_t kDay = 86400;
// 1969-12-29 was a Monday; shifting by 3 days Monday-aligns week buckets.
constexpr std::int64_t kMondayShift = 3 * kDay;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string reading_key(const Reading& r) {
    return r.entity.id + "/" + to_string(r.metric) + "/" + std::to_string(r.timestamp);
}

}  // namespace

std::string to_string(Metric m) {
    switch (m) {
        case Metric::Temperature: return "temperature";
        case Metric::Humidity: return "humidity";
        case Metric::Co2: return "co2";
        case Metric::Voc: return "voc";
    }
    throw Error("unknown metric");
}

Metric metric_from_string(const std::string& name) {
    if (name == "temperature") return Metric::Temperature;
    if (name == "humidity") return Metric::Humidity;
    if (name == "co2") return Metric::Co2;
    if (name == "voc") return Metric::Voc;
    throw Error("unknown metric: " + name);
}

std::string metric_unit(Metric m) {
    switch (m) {
        case Metric::Temperature: return "celsius";
        case Metric::Humidity: return "percent";
        case Metric::Co2: return "ppm";
        case Metric::Voc: return "ppb";
    }
    throw Error("unknown metric");
}

std::pair<double, double> metric_range(Metric m) {
    switch (m) {
        case Metric::Temperature: return {-10.0, 40.0};
        case Metric::Humidity: return {0.0, 100.0};
        case Metric::Co2: return {350.0, 2000.0};
        case Metric::Voc: return {0.0, 1000.0};
    }
    throw Error("unknown metric");
}

Dataset Dataset::ingest(const std::vector<Reading>& readings) {
    Dataset out;
    std::map<std::string, std::string> street_zone;
    std::set<std::string> keys;
    for (const auto& r : readings) {
        if (r.timestamp < 0)
            throw Error("reading " + reading_key(r) + ": negative timestamp");
        if (r.entity.id.empty()) throw Error("reading with empty entity id");
        if (r.street.empty() || r.zone.empty())
            throw Error("reading " + reading_key(r) + ": empty street or zone");
        auto [it, inserted] = street_zone.emplace(r.street, r.zone);
        if (!inserted && it->second != r.zone)
            throw Error("reading " + reading_key(r) + ": street " + r.street +
                        " mapped to zones " + it->second + " and " + r.zone);
        if (!keys.insert(reading_key(r)).second) {
            out.warnings_.push_back("duplicate reading dropped: " + reading_key(r));
            continue;
        }
        out.readings_.push_back(r);
    }
    std::stable_sort(out.readings_.begin(), out.readings_.end(),
                     [](const Reading& a, const Reading& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         if (a.entity.id != b.entity.id) return a.entity.id < b.entity.id;
                         return to_string(a.metric) < to_string(b.metric);
                     });
    return out;
}

void TransformSpec::validate() const {
    using scopes::Dimension;
    for (auto [d, v] : {std::pair{Dimension::Spatial, spatial},
                        {Dimension::Temporal, temporal},
                        {Dimension::Abstraction, abstraction}})
        if (!scopes::is_valid(d, v))
            throw Error("value '" + v + "' does not belong to dimension " +
                        scopes::to_string(d));
}

std::int64_t bucket_start(std::int64_t ts, const std::string& level,
                          std::int64_t window_start) {
    using namespace std::chrono;
    if (level == "any") return window_start;
    if (level == "secondly") return ts;
    if (level == "minutely") return ts - ts % 60;
    if (level == "hourly") return ts - ts % 3600;
    if (level == "daily") return ts - ts % kDay;
    if (level == "weekly") {
        std::int64_t shifted = ts + kMondayShift;
        return shifted - shifted % (7 * kDay) - kMondayShift;
    }
    sys_seconds t{seconds{ts}};
    auto day = floor<days>(t);
    year_month_day ymd{day};
    if (level == "monthly") {
        return sys_days{ymd.year() / ymd.month() / 1}.time_since_epoch().count() * kDay;
    }
    if (level == "yearly") {
        return sys_days{ymd.year() / std::chrono::January / 1}.time_since_epoch().count() *
               kDay;
    }
    throw Error("unknown temporal level: " + level);
}

namespace {

struct GroupKey {
    std::string metric;
    std::string spatial_unit;
    std::int64_t bucket = 0;
    auto operator<=>(const GroupKey&) const = default;
};

struct GroupStats {
    double sum = 0, min = 0, max = 0;
    std::int64_t count = 0;
    std::string zone;  // zone of the group's readings (context attribute)
    void add(double v) {
        if (count == 0) { min = max = v; }
        else { min = std::min(min, v); max = std::max(max, v); }
        sum += v;
        ++count;
    }
};

model::EntityMetadata md(const std::string& name, const std::string& type,
                         const std::string& value) {
    return {name, type, value};
}

model::EntityAttribute attr(const std::string& name, const std::string& type,
                            const std::string& value,
                            std::vector<model::EntityMetadata> metadata) {
    return {name, type, value, std::move(metadata)};
}

std::vector<model::EntityMetadata> spec_metadata(const TransformSpec& spec,
                                                 std::int64_t t0, std::int64_t t1) {
    return {md("spatialLevel", "string", spec.spatial),
            md("temporalLevel", "string", spec.temporal),
            md("abstractionLevel", "string", spec.abstraction),
            md("windowStart", "integer", std::to_string(t0)),
            md("windowEnd", "integer", std::to_string(t1))};
}

}  // namespace

std::vector<model::DataItem> transform(const Dataset& d, const TransformSpec& spec,
                                       std::int64_t t0, std::int64_t t1) {
    spec.validate();
    if (t0 >= t1) throw Error("transform window start must precede its end");

    const bool detail = spec.abstraction == "detail" || spec.abstraction == "any";
    std::vector<model::DataItem> out;

    auto spatial_unit = [&](const Reading& r) -> std::string {
        if (spec.spatial == "street") return r.street;
        if (spec.spatial == "zone") return r.zone;
        return detail ? r.entity.id : "any";  // per-entity only for detail output
    };

    if (detail) {
        // Raw passthrough: one item per reading in the window.
        for (const auto& r : d.readings()) {
            if (r.timestamp < t0 || r.timestamp >= t1) continue;
            model::DataItem item;
            item.entity_id = r.entity;
            item.attributes = {
                attr("metric", "string", to_string(r.metric),
                     {md("unit", "string", metric_unit(r.metric))}),
                attr("value", "float", format_double(r.value),
                     {md("unit", "string", metric_unit(r.metric))}),
                attr("timestamp", "integer", std::to_string(r.timestamp),
                     {md("bucketStart", "integer",
                         std::to_string(bucket_start(r.timestamp, spec.temporal, t0)))}),
                attr("street", "string", r.street, {md("zone", "string", r.zone)}),
            };
            item.domain_metadata = spec_metadata(spec, t0, t1);
            out.push_back(std::move(item));
        }
        return out;
    }

    std::map<GroupKey, GroupStats> groups;
    for (const auto& r : d.readings()) {
        if (r.timestamp < t0 || r.timestamp >= t1) continue;
        GroupKey key{to_string(r.metric), spatial_unit(r),
                     bucket_start(r.timestamp, spec.temporal, t0)};
        auto& g = groups[key];
        g.add(r.value);
        g.zone = spec.spatial == "street" ? r.zone : key.spatial_unit;
    }

    for (const auto& [key, g] : groups) {
        const bool statistic = spec.abstraction == "statistic";
        Metric metric = metric_from_string(key.metric);
        model::DataItem item;
        item.entity_id = {key.metric + "/" + key.spatial_unit + "/" +
                              std::to_string(key.bucket),
                          statistic ? "StatisticalReading" : "AggregatedReading"};
        item.attributes = {
            attr("metric", "string", key.metric,
                 {md("unit", "string", metric_unit(metric))}),
            attr("spatialUnit", "string", key.spatial_unit,
                 {md("level", "string", spec.spatial)}),
            attr("bucketStart", "integer", std::to_string(key.bucket),
                 {md("level", "string", spec.temporal)}),
            attr("mean", "float", format_double(g.sum / static_cast<double>(g.count)),
                 {md("unit", "string", metric_unit(metric))}),
        };
        if (statistic) {
            item.attributes.push_back(attr("min", "float", format_double(g.min),
                                           {md("unit", "string", metric_unit(metric))}));
            item.attributes.push_back(attr("max", "float", format_double(g.max),
                                           {md("unit", "string", metric_unit(metric))}));
        }
        item.attributes.push_back(attr("count", "integer", std::to_string(g.count),
                                       {md("unit", "string", "readings")}));
        item.domain_metadata = spec_metadata(spec, t0, t1);
        out.push_back(std::move(item));
    }
    return out;
}

model::DataItem annotate(const model::DataItem& item, const model::UsagePolicy& policy) {
    model::DataItem out = item;
    if (!out.domain_metadata) out.domain_metadata.emplace();
    for (const auto& m : *out.domain_metadata)
        if (m.name == "usagePolicy" && m.value == policy.name) return out;  // idempotent
    out.domain_metadata->push_back({"usagePolicy", "URI", policy.name});
    return out;
}

std::vector<Reading> generate_synthetic(std::uint64_t seed, size_t count,
                                        int streets_per_zone, int zones,
                                        std::int64_t t0, std::int64_t t1) {
    if (zones <= 0 || streets_per_zone <= 0)
        throw Error("zones and streets_per_zone must be positive");
    if (t0 < 0 || t1 <= t0) throw Error("invalid time span");
    std::mt19937_64 rng(seed);
    // Derive values straight from the raw engine output so identical seeds
    // give identical readings on any platform.
    auto uniform = [&rng](double lo, double hi) {
        double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
        return lo + u * (hi - lo);
    };
    const Metric metrics[] = {Metric::Temperature, Metric::Humidity, Metric::Co2,
                              Metric::Voc};
    std::vector<Reading> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        int zone = static_cast<int>(rng() % static_cast<std::uint64_t>(zones));
        int street = static_cast<int>(rng() % static_cast<std::uint64_t>(streets_per_zone));
        Metric metric = metrics[rng() % 4];
        std::int64_t ts = t0 + static_cast<std::int64_t>(
                                   rng() % static_cast<std::uint64_t>(t1 - t0));
        auto [lo, hi] = metric_range(metric);
        Reading r;
        r.street = "street-" + std::to_string(zone) + "-" + std::to_string(street);
        r.zone = "zone-" + std::to_string(zone);
        r.entity = {"sensor-" + r.street, "AirQualitySensor"};
        r.metric = metric;
        r.timestamp = ts;
        r.value = uniform(lo, hi);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Reading> parse_readings_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("missing CSV header line");
    // Tolerate a trailing carriage return from Windows-edited files.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "entity_id,entity_type,metric,timestamp,street,zone,value")
        throw Error("unexpected CSV header: " + line);

    std::vector<Reading> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 7)
            throw Error("line " + std::to_string(lineno) + ": expected 7 fields, got " +
                        std::to_string(fields.size()));
        Reading r;
        r.entity = {fields[0], fields[1]};
        r.metric = metric_from_string(fields[2]);
        try {
            r.timestamp = std::stoll(fields[3]);
            r.value = std::stod(fields[6]);
        } catch (const std::exception&) {
            throw Error("line " + std::to_string(lineno) + ": malformed number");
        }
        r.street = fields[4];
        r.zone = fields[5];
        out.push_back(std::move(r));
    }
    return out;
}

std::string serialize_readings_csv(const std::vector<Reading>& readings) {
    std::ostringstream out;
    out << "entity_id,entity_type,metric,timestamp,street,zone,value\n";
    for (const auto& r : readings)
        out << r.entity.id << "," << r.entity.type << "," << to_string(r.metric) << ","
            << r.timestamp << "," << r.street << "," << r.zone << ","
            << format_double(r.value) << "\n";
    return out.str();
}

}  // namespace tdu::data
