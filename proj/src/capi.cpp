#include "tdu.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "tdu/bench.hpp"
#include "tdu/platform.hpp"
#include "tdu/service.hpp"

using nlohmann::json;

struct tdu_platform {
    tdu::platform::Platform impl;
    std::string last_error;

    explicit tdu_platform(tdu::platform::Config config) : impl(std::move(config)) {}
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

tdu_status classify(const std::exception& e) {
    const std::string what = e.what();
    if (what.find("malformed") != std::string::npos ||
        what.find("expected") != std::string::npos ||
        what.find("unknown") != std::string::npos ||
        what.find("missing") != std::string::npos)
        return TDU_ERROR_PARSE;
    if (what.find("file") != std::string::npos || what.find("listen") != std::string::npos)
        return TDU_ERROR_IO;
    return TDU_ERROR_INVALID_ARGUMENT;
}

template <typename Fn>
tdu_status guarded(tdu_platform* platform, Fn&& fn) {
    if (!platform) return TDU_ERROR_INVALID_ARGUMENT;
    try {
        fn();
        platform->last_error.clear();
        return TDU_OK;
    } catch (const std::exception& e) {
        platform->last_error = e.what();
        return classify(e);
    } catch (...) {
        platform->last_error = "unknown error";
        return TDU_ERROR_INTERNAL;
    }
}

template <typename Fn>
tdu_status guarded_free(Fn&& fn) {
    try {
        fn();
        return TDU_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        return TDU_ERROR_INTERNAL;
    }
}

tdu::model::Format to_format(tdu_format f) {
    return f == TDU_FORMAT_JSON ? tdu::model::Format::Json : tdu::model::Format::Xml;
}

}  // namespace

extern "C" {

tdu_status tdu_platform_create(const char* config_json, tdu_platform** out) {
    if (!out) return TDU_ERROR_INVALID_ARGUMENT;
    *out = nullptr;
    try {
        tdu::platform::Config config;
        if (config_json && *config_json)
            config = tdu::platform::parse_config(config_json);
        *out = new tdu_platform(std::move(config));
        return TDU_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

tdu_status tdu_platform_create_from_file(const char* config_path, tdu_platform** out) {
    if (!out || !config_path) return TDU_ERROR_INVALID_ARGUMENT;
    *out = nullptr;
    try {
        *out = new tdu_platform(tdu::platform::load_config(config_path));
        return TDU_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

void tdu_platform_destroy(tdu_platform* platform) { delete platform; }

const char* tdu_last_error(const tdu_platform* platform) {
    return platform ? platform->last_error.c_str() : "null platform handle";
}

void tdu_string_free(char* s) { std::free(s); }

tdu_status tdu_policy_add(tdu_platform* platform, const char* document, tdu_format format) {
    return guarded(platform, [&] {
        if (!document) throw tdu::platform::Error("null policy document");
        platform->impl.add_policy(
            tdu::model::parse_usage_policy(document, to_format(format)));
    });
}

tdu_status tdu_policy_list(tdu_platform* platform, char** out_json) {
    return guarded(platform, [&] {
        if (!out_json) throw tdu::platform::Error("null output parameter");
        json out = json::array();
        for (const auto& p : platform->impl.policies())
            out.push_back(json::parse(
                tdu::model::serialize_usage_policy(p, tdu::model::Format::Json)));
        *out_json = dup_string(out.dump(2));
    });
}

tdu_status tdu_policy_check(tdu_platform* platform, char** out_json) {
    return guarded(platform, [&] {
        if (!out_json) throw tdu::platform::Error("null output parameter");
        json out = json::array();
        for (const auto& c : platform->impl.check_policies())
            out.push_back({{"ruleA", c.rule_a},
                           {"ruleB", c.rule_b},
                           {"headA", tdu::dl::to_string(c.head_a)},
                           {"headB", tdu::dl::to_string(c.head_b)}});
        *out_json = dup_string(out.dump(2));
    });
}

tdu_status tdu_subject_register(tdu_platform* platform, const char* id,
                                const char* actor_class) {
    return guarded(platform, [&] {
        if (!id || !actor_class) throw tdu::platform::Error("null subject parameter");
        platform->impl.register_subject({id, actor_class});
    });
}

tdu_status tdu_data_ingest_csv(tdu_platform* platform, const char* csv) {
    return guarded(platform, [&] {
        if (!csv) throw tdu::platform::Error("null csv document");
        platform->impl.ingest_readings(tdu::data::parse_readings_csv(csv));
    });
}

tdu_status tdu_data_generate(uint64_t seed, size_t count, int streets_per_zone,
                             int zones, int64_t t0, int64_t t1, char** out_csv) {
    return guarded_free([&] {
        if (!out_csv) throw tdu::platform::Error("null output parameter");
        auto readings =
            tdu::data::generate_synthetic(seed, count, streets_per_zone, zones, t0, t1);
        *out_csv = dup_string(tdu::data::serialize_readings_csv(readings));
    });
}

tdu_status tdu_data_transform(tdu_platform* platform, const char* spatial,
                              const char* temporal, const char* abstraction,
                              int64_t t0, int64_t t1, tdu_format format,
                              char** out_items) {
    return guarded(platform, [&] {
        if (!out_items || !spatial || !temporal || !abstraction)
            throw tdu::platform::Error("null parameter");
        tdu::data::TransformSpec spec{spatial, temporal, abstraction};
        auto items = tdu::data::transform(platform->impl.dataset(), spec, t0, t1);
        if (format == TDU_FORMAT_JSON) {
            json out = json::array();
            for (const auto& item : items)
                out.push_back(json::parse(
                    tdu::model::serialize_data_item(item, tdu::model::Format::Json)));
            *out_items = dup_string(out.dump(2));
        } else {
            std::string out;
            for (const auto& item : items)
                out += tdu::model::serialize_data_item(item, tdu::model::Format::Xml);
            *out_items = dup_string(out);
        }
    });
}

tdu_status tdu_query(tdu_platform* platform, const char* request_json, char** out_json) {
    return guarded(platform, [&] {
        if (!request_json || !out_json) throw tdu::platform::Error("null parameter");
        *out_json = dup_string(tdu::platform::query_json(platform->impl, request_json));
    });
}

tdu_status tdu_ledger_history(tdu_platform* platform, const char* filter_json,
                              char** out_json) {
    return guarded(platform, [&] {
        if (!out_json) throw tdu::platform::Error("null output parameter");
        tdu::ledger::HistoryFilter filter;
        if (filter_json && *filter_json) {
            json j = json::parse(filter_json);
            if (j.contains("policy")) filter.policy = j.at("policy").get<std::string>();
            if (j.contains("subject")) filter.subject = j.at("subject").get<std::string>();
            if (j.contains("outcome")) {
                auto o = j.at("outcome").get<std::string>();
                if (o != "Granted" && o != "Refused")
                    throw tdu::platform::Error("unknown outcome filter: " + o);
                filter.outcome = o == "Granted" ? tdu::enforce::Outcome::Granted
                                                : tdu::enforce::Outcome::Refused;
            }
            if (j.contains("from")) filter.from = j.at("from").get<std::int64_t>();
            if (j.contains("to")) filter.to = j.at("to").get<std::int64_t>();
        }
        json out = json::array();
        for (const auto& r : platform->impl.history(filter))
            out.push_back(json::parse(tdu::ledger::record_to_json_string(r)));
        *out_json = dup_string(out.dump(2));
    });
}

tdu_status tdu_bench(int iterations, const char* mode, char** out_stats_json) {
    return guarded_free([&] {
        if (!out_stats_json || !mode) throw tdu::platform::Error("null parameter");
        std::string m = mode;
        if (m == "both") {
            auto cold = tdu::bench::bench_tet(iterations, tdu::bench::Mode::Cold);
            auto warm = tdu::bench::bench_tet(iterations, tdu::bench::Mode::Warm);
            json out{{"cold", json::parse(tdu::bench::stats_to_json(cold))},
                     {"warm", json::parse(tdu::bench::stats_to_json(warm))},
                     {"table", tdu::bench::stats_table_header() + "\n" +
                                   tdu::bench::stats_table_row(cold) + "\n" +
                                   tdu::bench::stats_table_row(warm) + "\n"}};
            *out_stats_json = dup_string(out.dump(2));
        } else {
            auto stats = tdu::bench::bench_tet(iterations, tdu::bench::mode_from_string(m));
            *out_stats_json = dup_string(tdu::bench::stats_to_json(stats));
        }
    });
}

tdu_status tdu_serve(tdu_platform* platform, const char* host, int port) {
    return guarded(platform, [&] {
        tdu::service::Service service(platform->impl);
        service.serve(host && *host ? host : "0.0.0.0", port);
    });
}

}  // extern "C"
