#include "tdu/ledger.hpp"

#include <zlib.h>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace tdu::ledger {

using nlohmann::json;

namespace {

std::string crc32_hex(const std::string& data) {
    uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
                      static_cast<uInt>(data.size()));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%08lx", static_cast<unsigned long>(crc));
    return buf;
}

json record_to_json(const UsageRecord& r) {
    json j{{"id", r.record_id},
           {"timestamp", r.timestamp},
           {"subject", r.subject},
           {"actorClass", r.actor_class},
           {"spatial", r.spatial},
           {"temporal", r.temporal},
           {"abstraction", r.abstraction},
           {"outcome", enforce::to_string(r.outcome)},
           {"policies", r.policies},
           {"itemsReleased", r.items_released},
           {"traceDigest", r.trace_digest}};
    if (r.purpose) j["purpose"] = *r.purpose;
    return j;
}

UsageRecord record_from_json(const json& j) {
    UsageRecord r;
    r.record_id = j.at("id").get<std::uint64_t>();
    r.timestamp = j.at("timestamp").get<std::int64_t>();
    r.subject = j.at("subject").get<std::string>();
    r.actor_class = j.at("actorClass").get<std::string>();
    r.spatial = j.at("spatial").get<std::string>();
    r.temporal = j.at("temporal").get<std::string>();
    r.abstraction = j.at("abstraction").get<std::string>();
    r.outcome = j.at("outcome").get<std::string>() == "Granted" ? enforce::Outcome::Granted
                                                                : enforce::Outcome::Refused;
    r.policies = j.at("policies").get<std::vector<std::string>>();
    r.items_released = j.at("itemsReleased").get<std::uint64_t>();
    r.trace_digest = j.at("traceDigest").get<std::string>();
    if (j.contains("purpose")) r.purpose = j.at("purpose").get<std::string>();
    return r;
}

}  // namespace

Ledger::Ledger(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in.is_open()) return;  // new ledger
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto space = line.find(' ');
        if (space == std::string::npos)
            throw Error(path_ + ":" + std::to_string(lineno) + ": malformed ledger line");
        std::string checksum = line.substr(0, space);
        std::string payload = line.substr(space + 1);
        if (crc32_hex(payload) != checksum)
            throw Error(path_ + ":" + std::to_string(lineno) + ": checksum mismatch");
        UsageRecord r;
        try {
            r = record_from_json(json::parse(payload));
        } catch (const std::exception& e) {
            throw Error(path_ + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (r.record_id != records_.size() + 1)
            throw Error(path_ + ":" + std::to_string(lineno) + ": record id " +
                        std::to_string(r.record_id) + " out of sequence");
        records_.push_back(std::move(r));
    }
}

std::uint64_t Ledger::append(UsageRecord record) {
    record.record_id = records_.size() + 1;
    std::string payload = record_to_json(record).dump();
    std::string line = crc32_hex(payload) + " " + payload + "\n";

    std::ofstream out(path_, std::ios::app);
    if (!out.is_open()) throw Error("cannot open ledger file: " + path_);
    out << line << std::flush;
    if (!out) throw Error("ledger append failed: " + path_);

    records_.push_back(std::move(record));
    return records_.back().record_id;
}

std::vector<UsageRecord> Ledger::history(const HistoryFilter& filter) const {
    std::vector<UsageRecord> out;
    for (const auto& r : records_) {
        if (filter.subject && r.subject != *filter.subject) continue;
        if (filter.outcome && r.outcome != *filter.outcome) continue;
        if (filter.from && r.timestamp < *filter.from) continue;
        if (filter.to && r.timestamp >= *filter.to) continue;
        if (filter.policy &&
            std::find(r.policies.begin(), r.policies.end(), *filter.policy) ==
                r.policies.end())
            continue;
        out.push_back(r);
    }
    return out;
}

std::string record_to_json_string(const UsageRecord& record, int indent) {
    return record_to_json(record).dump(indent);
}

std::string trace_digest(const enforce::ProofTrace& trace) {
    // FNV-1a over a canonical rendering of the trace literals and tags.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& tl : trace.literals) {
        mix(dl::to_string(tl.literal));
        mix(dl::to_string(tl.conclusion.delta));
        mix(dl::to_string(tl.conclusion.partial));
        for (const auto& s : tl.supporting) mix(s.label + (s.applicable ? "+" : "-"));
        for (const auto& a : tl.attacking) mix(a.label + (a.applicable ? "+" : "-"));
        for (const auto& s : tl.superiority) mix(s.winner + ">" + s.loser);
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

model::DataItem as_data_item(const UsageRecord& record) {
    auto attr = [](const std::string& name, const std::string& type,
                   const std::string& value) {
        return model::EntityAttribute{
            name, type, value, {{"source", "string", "ledger"}}};
    };
    model::DataItem item;
    item.entity_id = {"usage-record-" + std::to_string(record.record_id), "UsageRecord"};
    item.attributes = {
        attr("recordId", "integer", std::to_string(record.record_id)),
        attr("timestamp", "integer", std::to_string(record.timestamp)),
        attr("subject", "string", record.subject),
        attr("actorClass", "string", record.actor_class),
        attr("spatial", "string", record.spatial),
        attr("temporal", "string", record.temporal),
        attr("abstraction", "string", record.abstraction),
        attr("outcome", "string", enforce::to_string(record.outcome)),
        attr("itemsReleased", "integer", std::to_string(record.items_released)),
        attr("traceDigest", "string", record.trace_digest),
    };
    if (record.purpose) item.attributes.push_back(attr("purpose", "string", *record.purpose));
    std::vector<model::EntityMetadata> dm;
    for (const auto& p : record.policies) dm.push_back({"usagePolicy", "URI", p});
    item.domain_metadata = std::move(dm);
    return item;
}

UsageRecord record_from_data_item(const model::DataItem& item) {
    if (item.entity_id.type != "UsageRecord")
        throw Error("not a usage record item: " + item.entity_id.type);
    UsageRecord r;
    auto get = [&](const std::string& name) -> std::optional<std::string> {
        for (const auto& a : item.attributes)
            if (a.name == name) return a.value;
        return std::nullopt;
    };
    auto require = [&](const std::string& name) {
        auto v = get(name);
        if (!v) throw Error("usage record item missing attribute: " + name);
        return *v;
    };
    r.record_id = std::stoull(require("recordId"));
    r.timestamp = std::stoll(require("timestamp"));
    r.subject = require("subject");
    r.actor_class = require("actorClass");
    r.spatial = require("spatial");
    r.temporal = require("temporal");
    r.abstraction = require("abstraction");
    r.outcome = require("outcome") == "Granted" ? enforce::Outcome::Granted
                                                : enforce::Outcome::Refused;
    r.items_released = std::stoull(require("itemsReleased"));
    r.trace_digest = require("traceDigest");
    if (auto p = get("purpose")) r.purpose = *p;
    if (item.domain_metadata)
        for (const auto& m : *item.domain_metadata)
            if (m.name == "usagePolicy") r.policies.push_back(m.value);
    return r;
}

}  // namespace tdu::ledger
