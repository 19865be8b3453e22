#include "tdu/platform.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace tdu::platform {

using nlohmann::json;

Config parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("malformed config: ") + e.what());
    }
    Config c;
    if (j.contains("port")) c.port = j.at("port").get<int>();
    if (j.contains("data-dir")) c.data_dir = j.at("data-dir").get<std::string>();
    if (j.contains("ledger-path")) c.ledger_path = j.at("ledger-path").get<std::string>();
    if (j.contains("modal-conversion"))
        c.modal_conversion = j.at("modal-conversion").get<bool>();
    if (j.contains("subjects")) {
        for (const json& s : j.at("subjects"))
            c.subjects.push_back({s.at("id").get<std::string>(),
                                  s.at("actorClass").get<std::string>()});
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw Error("cannot read config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Platform::Platform(Config config)
    : config_(std::move(config)), subjects_(config_.subjects), ledger_(config_.ledger_path) {
    for (const auto& s : subjects_) scopes::actor_predicate(s.actor_class);  // validate
}

void Platform::add_policy(const model::UsagePolicy& policy) {
    compiler::compile_policy(policy);  // reject uncompilable policies up front
    std::unique_lock lock(policy_mutex_);
    for (auto& p : policies_) {
        if (p.name == policy.name) {
            p = policy;
            return;
        }
    }
    policies_.push_back(policy);
}

std::vector<model::UsagePolicy> Platform::policies() const {
    std::shared_lock lock(policy_mutex_);
    return policies_;
}

std::vector<compiler::ConflictPair> Platform::check_policies() const {
    std::shared_lock lock(policy_mutex_);
    std::vector<dl::Theory> parts;
    for (const auto& p : policies_) parts.push_back(compiler::compile_policy(p));
    dl::Theory merged = compiler::merge_theories(parts);
    merged.facts = subject_facts();
    return compiler::detect_conflicts(merged);
}

void Platform::ingest_readings(const std::vector<data::Reading>& readings) {
    std::vector<data::Reading> all = dataset_.readings();
    all.insert(all.end(), readings.begin(), readings.end());
    dataset_ = data::Dataset::ingest(all);
}

void Platform::register_subject(const Subject& s) {
    scopes::actor_predicate(s.actor_class);
    subjects_.push_back(s);
}

std::vector<dl::ModalLiteral> Platform::subject_facts() const {
    std::vector<dl::ModalLiteral> facts;
    for (const auto& s : subjects_)
        facts.push_back({dl::Modality::Fact,
                         {dl::Atom{scopes::actor_predicate(s.actor_class),
                                   {dl::Term::constant(s.id)}},
                          false}});
    return facts;
}

QueryResult Platform::query(const enforce::ConsumerRequest& request,
                            std::optional<std::int64_t> window_start,
                            std::optional<std::int64_t> window_end) {
    QueryResult result;
    {
        std::shared_lock lock(policy_mutex_);
        result.decision = enforce::evaluate(request, policies_, subject_facts());
    }

    if (result.decision.outcome == enforce::Outcome::Granted) {
        // Release data filtered to the request's target at the granted levels.
        std::vector<data::Reading> selected;
        for (const auto& r : dataset_.readings()) {
            if (!request.target_type.empty() && r.entity.type != request.target_type)
                continue;
            if (!request.target_id.empty() && r.entity.id != request.target_id) continue;
            selected.push_back(r);
        }
        std::int64_t t0 = window_start.value_or(0);
        std::int64_t t1 = window_end.value_or(std::numeric_limits<std::int64_t>::max());
        data::TransformSpec spec{request.spatial, request.temporal, request.abstraction};
        result.items = data::transform(data::Dataset::ingest(selected), spec, t0, t1);
    }

    ledger::UsageRecord record;
    record.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    record.subject = request.subject;
    record.actor_class = request.actor_class;
    record.spatial = request.spatial;
    record.temporal = request.temporal;
    record.abstraction = request.abstraction;
    record.purpose = request.purpose;
    record.outcome = result.decision.outcome;
    {
        std::shared_lock lock(policy_mutex_);
        for (const auto& p : policies_) record.policies.push_back(p.name);
    }
    record.items_released = result.items.size();
    record.trace_digest = ledger::trace_digest(result.decision.trace);
    {
        std::lock_guard lock(ledger_mutex_);
        result.record_id = ledger_.append(std::move(record));
    }
    return result;
}

std::vector<ledger::UsageRecord> Platform::history(
    const ledger::HistoryFilter& filter) const {
    std::lock_guard lock(ledger_mutex_);
    return ledger_.history(filter);
}

std::string query_json(Platform& p, const std::string& request_body, int indent) {
    enforce::ConsumerRequest r = enforce::request_from_json(request_body);
    std::optional<std::int64_t> from, to;
    json body = json::parse(request_body);
    if (body.contains("window")) {
        from = body.at("window").at("from").get<std::int64_t>();
        to = body.at("window").at("to").get<std::int64_t>();
    }
    QueryResult result = p.query(r, from, to);
    json out;
    out["decision"] = json::parse(enforce::decision_to_json(result.decision));
    out["explanation"] = enforce::explain(result.decision);
    out["recordId"] = result.record_id;
    json items = json::array();
    for (const auto& item : result.items)
        items.push_back(json::parse(model::serialize_data_item(item, model::Format::Json)));
    out["items"] = items;
    return out.dump(indent);
}

}  // namespace tdu::platform
