// Acceptance suite: seven end-to-end criteria, one verdict line each.
// Exit status 0 only when every criterion holds.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "tdu/bench.hpp"
#include "tdu/data_plane.hpp"
#include "tdu/enforce.hpp"
#include "tdu/ledger.hpp"
#include "tdu/model.hpp"
#include "tdu/platform.hpp"
#include "tdu/scenario.hpp"
#include "tdu/scopes.hpp"

using namespace tdu;
using dl::Conclusion;
using dl::Modality;
using dl::ModalLiteral;
using dl::ProofStatus;
using dl::Rule;
using dl::RuleKind;
using dl::Term;
using dl::Theory;

namespace {

int checks_failed = 0;

void require(bool ok, const std::string& what) {
    if (!ok) {
        ++checks_failed;
        std::printf("    check failed: %s\n", what.c_str());
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Criterion 1: stakeholder scenario decisions.

enforce::Decision decide(const std::string& subject, const std::string& cls,
                         const std::string& spatial, const std::string& temporal,
                         const std::string& abstraction) {
    static const std::vector<model::UsagePolicy> policies = scenario::all_policies();
    static const std::vector<ModalLiteral> facts = scenario::subject_facts();
    enforce::ConsumerRequest r;
    r.subject = subject;
    r.actor_class = cls;
    r.spatial = spatial;
    r.temporal = temporal;
    r.abstraction = abstraction;
    return enforce::evaluate(r, policies, facts);
}

bool criterion_scenario() {
    int failures_before = checks_failed;
    auto start = std::chrono::steady_clock::now();
    const auto& spatial = scopes::values(scopes::Dimension::Spatial);
    const auto& temporal = scopes::values(scopes::Dimension::Temporal);
    const auto& abstraction = scopes::values(scopes::Dimension::Abstraction);
    require(spatial.size() == 3 && temporal.size() == 8 && abstraction.size() == 4,
            "vocabulary sizes 3x8x4");

    // The owner's wildcard grant covers the full enumeration.
    for (const auto& s : spatial)
        for (const auto& t : temporal)
            for (const auto& a : abstraction)
                require(decide("d", "DataOwner", s, t, a).outcome ==
                            enforce::Outcome::Granted,
                        "owner granted at " + s + "/" + t + "/" + a);

    require(decide("m", "MunicipalAuthority", "street", "hourly", "aggregation").outcome ==
                enforce::Outcome::Granted,
            "authority street/hourly/aggregation granted");
    require(decide("m", "MunicipalAuthority", "street", "minutely", "aggregation").outcome ==
                enforce::Outcome::Refused,
            "authority street/minutely/aggregation refused");
    require(decide("m", "MunicipalAuthority", "street", "hourly", "detail").outcome ==
                enforce::Outcome::Refused,
            "authority street/hourly/detail refused");

    require(decide("c", "CommercialOperator", "zone", "weekly", "statistic").outcome ==
                enforce::Outcome::Granted,
            "operator zone/weekly/statistic granted");
    auto refused = decide("c", "CommercialOperator", "street", "hourly", "detail");
    require(refused.outcome == enforce::Outcome::Refused,
            "operator street/hourly/detail refused");
    ModalLiteral head{Modality::Obl,
                      {{"ConsumerRequest", {Term::constant("c")}}, false}};
    bool head_seen = false;
    for (const auto& tl : refused.trace.literals) {
        if (!(tl.literal == head)) continue;
        head_seen = true;
        require(tl.conclusion.delta == ProofStatus::Disproved,
                "refused request definitely disproved");
        require(tl.conclusion.partial == ProofStatus::Disproved,
                "refused request defeasibly disproved");
    }
    require(head_seen, "refusal trace covers the request obligation");

    double elapsed = seconds_since(start);
    require(elapsed < 1.0, "scenario decisions under 1s");
    return checks_failed == failures_before;
}

// ---------------------------------------------------------------------------
// Criteria 2 and 3: random ground theories versus an independent recursive
// evaluator, plus coherence of the produced tags.

struct RecursiveOracle {
    std::vector<Rule> rules;
    std::set<ModalLiteral> facts;
    std::set<std::pair<std::string, std::string>> sup;
    std::map<ModalLiteral, bool> delta_memo, partial_memo;

    explicit RecursiveOracle(const Theory& t) {
        rules = t.rules;
        for (const auto& f : t.facts) facts.insert(f);
        for (const auto& p : t.superiority) sup.insert(p);
    }

    std::vector<const Rule*> rules_for(const ModalLiteral& head, bool strict_only,
                                       bool include_defeaters) const {
        std::vector<const Rule*> out;
        for (const auto& r : rules) {
            if (!(r.head == head)) continue;
            if (strict_only && r.kind != RuleKind::Strict) continue;
            if (!include_defeaters && r.kind == RuleKind::Defeater) continue;
            out.push_back(&r);
        }
        return out;
    }

    bool delta(const ModalLiteral& q) {
        auto it = delta_memo.find(q);
        if (it != delta_memo.end()) return it->second;
        bool result = facts.count(q) != 0;
        if (!result) {
            for (const Rule* r : rules_for(q, true, false)) {
                bool all = true;
                for (const auto& b : r->body) all = all && delta(b);
                if (all) { result = true; break; }
            }
        }
        delta_memo[q] = result;
        return result;
    }

    bool applicable(const Rule* r) {
        for (const auto& b : r->body)
            if (!partial(b)) return false;
        return true;
    }

    bool partial(const ModalLiteral& q) {
        auto it = partial_memo.find(q);
        if (it != partial_memo.end()) return it->second;
        bool result = delta(q);
        if (!result) {
            bool conflicts_refuted = true;
            for (const auto& c : dl::conflict_set(q))
                conflicts_refuted = conflicts_refuted && !delta(c);
            bool supported = false;
            auto supporters = rules_for(q, false, false);
            for (const Rule* r : supporters)
                if (applicable(r)) { supported = true; break; }
            if (conflicts_refuted && supported) {
                result = true;
                for (const auto& c : dl::conflict_set(q)) {
                    for (const Rule* s : rules_for(c, false, true)) {
                        if (!applicable(s)) continue;
                        bool beaten = false;
                        for (const Rule* u : supporters)
                            if (applicable(u) && sup.count({u->label, s->label}))
                                beaten = true;
                        if (!beaten) result = false;
                    }
                }
            }
        }
        partial_memo[q] = result;
        return result;
    }
};

// Acyclic ground theory: rule bodies only mention atoms strictly below the
// head's atom in a fixed rank, so the recursive evaluation is well founded.
Theory random_theory(std::mt19937_64& rng) {
    auto pick = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    Theory t;
    t.modal_conversion = false;
    int natoms = pick(2, 8);
    auto literal = [&](int max_atom_exclusive) {
        ModalLiteral l;
        int m = pick(0, 2);
        l.modality = m == 0 ? Modality::Fact : m == 1 ? Modality::Obl : Modality::Perm;
        l.literal.negated = pick(0, 1) == 1;
        l.literal.atom = {"a" + std::to_string(pick(0, max_atom_exclusive - 1)), {}};
        return l;
    };

    int nfacts = pick(0, 3);
    for (int i = 0; i < nfacts; ++i) t.facts.push_back(literal(natoms));

    int nrules = pick(1, 15);
    for (int i = 0; i < nrules; ++i) {
        Rule r;
        r.label = "g" + std::to_string(i);
        int k = pick(0, 2);
        r.kind = k == 0 ? RuleKind::Strict : k == 1 ? RuleKind::Defeasible
                                                    : RuleKind::Defeater;
        ModalLiteral head = literal(natoms);
        int head_rank = std::stoi(head.literal.atom.predicate.substr(1));
        int nbody = head_rank == 0 ? 0 : pick(0, 2);
        for (int b = 0; b < nbody; ++b) r.body.push_back(literal(head_rank));
        if (r.kind == RuleKind::Strict && head.modality == Modality::Perm &&
            pick(0, 1) == 0)
            head.modality = Modality::Obl;  // vary modal spread a little
        r.head = head;
        r.mode = head.modality;
        t.rules.push_back(std::move(r));
    }

    int nsup = pick(0, 5);
    for (int i = 0; i < nsup; ++i) {
        int winner = pick(0, nrules - 1);
        int loser = pick(0, nrules - 1);
        if (winner == loser) continue;
        t.superiority.emplace_back("g" + std::to_string(winner),
                                   "g" + std::to_string(loser));
    }
    t.validate();
    return t;
}

bool criterion_oracle_and_coherence() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240817);
    const int kTheories = 1200;
    int failures_before = checks_failed;

    for (int i = 0; i < kTheories; ++i) {
        Theory t = random_theory(rng);
        dl::ConclusionSet conclusions = dl::compute_conclusions(t);
        RecursiveOracle oracle(t);

        for (const auto& [lit, got] : conclusions.entries()) {
            // Oracle agreement; acyclic theories leave nothing undetermined.
            bool want_delta = oracle.delta(lit);
            bool want_partial = oracle.partial(lit);
            require(got.delta == (want_delta ? ProofStatus::Proved
                                             : ProofStatus::Disproved),
                    "definite tag matches oracle (theory " + std::to_string(i) + ", " +
                        dl::to_string(lit) + ")");
            require(got.partial == (want_partial ? ProofStatus::Proved
                                                 : ProofStatus::Disproved),
                    "defeasible tag matches oracle (theory " + std::to_string(i) + ", " +
                        dl::to_string(lit) + ")");

            // Coherence: definite conclusions are defeasible conclusions.
            if (got.delta == ProofStatus::Proved)
                require(got.partial == ProofStatus::Proved,
                        "definite implies defeasible (theory " + std::to_string(i) + ")");
            if (got.partial == ProofStatus::Disproved)
                require(got.delta != ProofStatus::Proved,
                        "defeasible refutation excludes definite proof (theory " +
                            std::to_string(i) + ")");

            // Consistency: conflicting defeasible conclusions only when the
            // strict part already proves both sides.
            for (const auto& c : dl::conflict_set(lit)) {
                Conclusion other = conclusions.get(c);
                if (got.partial == ProofStatus::Proved &&
                    other.partial == ProofStatus::Proved)
                    require(got.delta == ProofStatus::Proved &&
                                other.delta == ProofStatus::Proved,
                            "conflicting conclusions trace to strict clash (theory " +
                                std::to_string(i) + ")");
            }
        }
        if (checks_failed > failures_before + 20) return false;  // avoid spam
    }
    double elapsed = seconds_since(start);
    require(elapsed < 30.0, "oracle comparison under 30s");
    return checks_failed == failures_before;
}

// ---------------------------------------------------------------------------
// Criterion 4: aggregation against a brute-force group-by.

std::int64_t oracle_bucket(std::int64_t ts, const std::string& level,
                           std::int64_t window_start) {
    if (level == "any") return window_start;
    if (level == "secondly") return ts;
    if (level == "minutely") return ts - ts % 60;
    if (level == "hourly") return ts - ts % 3600;
    std::time_t tt = ts;
    std::tm tm{};
    gmtime_r(&tt, &tm);
    tm.tm_hour = tm.tm_min = tm.tm_sec = 0;
    if (level == "daily") return timegm(&tm);
    if (level == "weekly") return timegm(&tm) - ((tm.tm_wday + 6) % 7) * 86400;
    tm.tm_mday = 1;
    if (level == "monthly") return timegm(&tm);
    tm.tm_mon = 0;
    return timegm(&tm);  // yearly
}

std::string attr(const model::DataItem& item, const std::string& name) {
    for (const auto& a : item.attributes)
        if (a.name == name) return a.value;
    return "";
}

bool close_rel(double got, double want) {
    return std::abs(got - want) <= 1e-9 * std::max({1.0, std::abs(got), std::abs(want)});
}

bool criterion_aggregation() {
    int failures_before = checks_failed;
    const std::int64_t t0 = 1690000000, t1 = 1706000000;
    auto readings = data::generate_synthetic(2024, 10000, 3, 3, t0, t1);
    data::Dataset d = data::Dataset::ingest(readings);
    size_t in_window = d.size();  // generation stays inside [t0, t1)

    for (const std::string spatial : {"street", "zone", "any"}) {
        for (const std::string temporal :
             {"secondly", "minutely", "hourly", "daily", "weekly", "monthly", "yearly",
              "any"}) {
            for (const std::string abstraction : {"detail", "aggregation", "statistic"}) {
                auto items = data::transform(d, {spatial, temporal, abstraction}, t0, t1);
                if (abstraction == "detail") {
                    require(items.size() == in_window,
                            "detail release conserves readings at " + spatial + "/" +
                                temporal);
                    continue;
                }

                struct Group {
                    double sum = 0, min = 0, max = 0;
                    std::int64_t count = 0;
                };
                std::map<std::tuple<std::string, std::string, std::int64_t>, Group> want;
                for (const auto& r : d.readings()) {
                    std::string unit = spatial == "street" ? r.street
                                       : spatial == "zone" ? r.zone
                                                           : "any";
                    auto& g = want[{data::to_string(r.metric), unit,
                                    oracle_bucket(r.timestamp, temporal, t0)}];
                    if (g.count == 0) { g.min = r.value; g.max = r.value; }
                    g.sum += r.value;
                    g.min = std::min(g.min, r.value);
                    g.max = std::max(g.max, r.value);
                    ++g.count;
                }

                std::string where = spatial + "/" + temporal + "/" + abstraction;
                require(items.size() == want.size(), "group count at " + where);
                std::int64_t released = 0;
                for (const auto& item : items) {
                    auto key = std::make_tuple(attr(item, "metric"),
                                               attr(item, "spatialUnit"),
                                               std::stoll(attr(item, "bucketStart")));
                    auto it = want.find(key);
                    if (it == want.end()) {
                        require(false, "unexpected group at " + where);
                        continue;
                    }
                    const Group& g = it->second;
                    released += g.count;
                    require(std::stoll(attr(item, "count")) == g.count,
                            "exact count at " + where);
                    require(close_rel(std::stod(attr(item, "mean")),
                                      g.sum / static_cast<double>(g.count)),
                            "mean within 1e-9 at " + where);
                    if (abstraction == "statistic") {
                        require(close_rel(std::stod(attr(item, "min")), g.min),
                                "min within 1e-9 at " + where);
                        require(close_rel(std::stod(attr(item, "max")), g.max),
                                "max within 1e-9 at " + where);
                    }
                }
                require(released == static_cast<std::int64_t>(in_window),
                        "count conservation at " + where);
            }
        }
    }
    return checks_failed == failures_before;
}

// ---------------------------------------------------------------------------
// Criterion 5: ledger accountability across restarts.

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool criterion_ledger() {
    int failures_before = checks_failed;
    std::string ledger_path =
        (std::filesystem::temp_directory_path() /
         ("tdu-acceptance-" + std::to_string(::getpid()) + ".log"))
            .string();
    std::filesystem::remove(ledger_path);

    platform::Config cfg;
    cfg.ledger_path = ledger_path;
    cfg.subjects = {{"d", "DataOwner"},
                    {"m", "MunicipalAuthority"},
                    {"c", "CommercialOperator"}};

    const std::int64_t t0 = 1690000000, t1 = 1690600000;
    struct Row {
        const char* subject;
        const char* cls;
        const char* spatial;
        const char* temporal;
        const char* abstraction;
        enforce::Outcome expect;
    };
    const Row rows[] = {
        {"d", "DataOwner", "street", "secondly", "detail", enforce::Outcome::Granted},
        {"m", "MunicipalAuthority", "street", "hourly", "aggregation",
         enforce::Outcome::Granted},
        {"m", "MunicipalAuthority", "street", "minutely", "aggregation",
         enforce::Outcome::Refused},
        {"c", "CommercialOperator", "zone", "weekly", "statistic",
         enforce::Outcome::Granted},
        {"c", "CommercialOperator", "street", "hourly", "detail",
         enforce::Outcome::Refused},
    };

    std::vector<ledger::UsageRecord> before;
    {
        platform::Platform p(cfg);
        for (const auto& policy : scenario::all_policies()) p.add_policy(policy);
        p.ingest_readings(data::generate_synthetic(7, 500, 2, 2, t0, t1));
        for (int i = 0; i < 20; ++i) {
            const Row& row = rows[i % std::size(rows)];
            enforce::ConsumerRequest r;
            r.subject = row.subject;
            r.actor_class = row.cls;
            r.spatial = row.spatial;
            r.temporal = row.temporal;
            r.abstraction = row.abstraction;
            auto result = p.query(r, t0, t1);
            require(result.decision.outcome == row.expect,
                    std::string("scripted outcome for ") + row.subject + " #" +
                        std::to_string(i));
            require(result.record_id == static_cast<std::uint64_t>(i + 1),
                    "one record per evaluation");
        }
        before = p.history({});
    }
    require(before.size() == 20, "exactly 20 records for 20 evaluations");

    // Filters partition the history.
    platform::Platform reloaded(cfg);
    std::string bytes = read_file(ledger_path);
    ledger::HistoryFilter granted, refused;
    granted.outcome = enforce::Outcome::Granted;
    refused.outcome = enforce::Outcome::Refused;
    require(reloaded.history(granted).size() + reloaded.history(refused).size() == 20,
            "outcome filters partition the history");
    size_t by_subject = 0;
    for (const char* s : {"d", "m", "c"}) {
        ledger::HistoryFilter f;
        f.subject = s;
        by_subject += reloaded.history(f).size();
    }
    require(by_subject == 20, "subject filters partition the history");

    // Restart fidelity: same records, file untouched by the reload.
    require(reloaded.history({}) == before, "records survive restart");
    require(read_file(ledger_path) == bytes, "reload leaves the file byte-identical");

    std::filesystem::remove(ledger_path);
    return checks_failed == failures_before;
}

// ---------------------------------------------------------------------------
// Criterion 6: enforcement-time benchmark.

bool criterion_bench() {
    int failures_before = checks_failed;
    auto start = std::chrono::steady_clock::now();
    bench::Stats cold = bench::bench_tet(50, bench::Mode::Cold);
    bench::Stats warm = bench::bench_tet(50, bench::Mode::Warm);
    require(warm.mean_ms < cold.mean_ms, "warm mean below cold mean");
    require(warm.mean_ms <= 50.0, "warm mean at most 50ms");
    for (const bench::Stats& s : {cold, warm}) {
        nlohmann::json j = nlohmann::json::parse(bench::stats_to_json(s));
        for (const char* key : {"mode", "iterations", "mean_ms", "ci95_low_ms",
                                "ci95_high_ms", "min_ms", "max_ms", "samples_ms"})
            require(j.contains(key), std::string("stats report ") + key);
        require(j.at("iterations") == 50, "stats report 50 iterations");
        require(j.at("ci95_low_ms").get<double>() <= j.at("mean_ms").get<double>() &&
                    j.at("mean_ms").get<double>() <= j.at("ci95_high_ms").get<double>(),
                "confidence interval brackets the mean");
    }
    require(seconds_since(start) < 60.0, "benchmark under 60s");
    return checks_failed == failures_before;
}

// ---------------------------------------------------------------------------
// Criterion 7: randomized document round-trips.

std::string rand_word(std::mt19937_64& rng) {
    static const char* words[] = {"alpha", "bravo", "delta", "echo", "kilo",
                                  "lima", "nova", "sigma", "tango", "zulu"};
    return words[rng() % std::size(words)] + std::to_string(rng() % 100);
}

model::UsagePolicy random_policy(std::mt19937_64& rng) {
    model::UsagePolicy p;
    p.name = "urn:rt:" + rand_word(rng);
    int nrules = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nrules; ++i) {
        model::PolicyRule rule;
        int op = static_cast<int>(rng() % 3);
        rule.op = op == 0   ? model::DeonticOperator::Permission
                  : op == 1 ? model::DeonticOperator::Obligation
                            : model::DeonticOperator::Forbidden;
        auto fill = [&rng](std::vector<std::string>& out, scopes::Dimension d) {
            if (rng() % 2 == 0) return;
            const auto& vals = scopes::values(d);
            std::set<std::string> chosen;
            int n = 1 + static_cast<int>(rng() % 2);
            while (static_cast<int>(chosen.size()) < n)
                chosen.insert(vals[rng() % vals.size()]);
            out.assign(chosen.begin(), chosen.end());
        };
        fill(rule.condition.temporality, scopes::Dimension::Temporal);
        fill(rule.condition.spatiality, scopes::Dimension::Spatial);
        fill(rule.condition.abstraction, scopes::Dimension::Abstraction);
        fill(rule.condition.purpose, scopes::Dimension::Purpose);
        const auto& actors = scopes::actor_classes();
        rule.condition.actor.push_back(actors[rng() % actors.size()]);
        p.rules.push_back(std::move(rule));
    }
    return p;
}

model::DataItem random_item(std::mt19937_64& rng) {
    model::DataItem item;
    item.entity_id = {rand_word(rng), rand_word(rng)};
    if (rng() % 2 == 0) item.attribute_domain_name = rand_word(rng);
    int nattrs = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < nattrs; ++i) {
        model::EntityAttribute a{rand_word(rng), "string", rand_word(rng), {}};
        int nmeta = 1 + static_cast<int>(rng() % 2);
        for (int m = 0; m < nmeta; ++m)
            a.metadata.push_back({rand_word(rng), "string", rand_word(rng)});
        item.attributes.push_back(std::move(a));
    }
    if (rng() % 2 == 0) {
        item.domain_metadata.emplace();
        item.domain_metadata->push_back({rand_word(rng), "string", rand_word(rng)});
    }
    return item;
}

bool criterion_roundtrip() {
    int failures_before = checks_failed;
    std::mt19937_64 rng(7777);
    for (int i = 0; i < 100; ++i) {
        model::UsagePolicy p = random_policy(rng);
        for (auto format : {model::Format::Xml, model::Format::Json})
            require(model::parse_usage_policy(model::serialize_usage_policy(p, format),
                                              format) == p,
                    "policy round trip #" + std::to_string(i));

        model::DataItem item = random_item(rng);
        for (auto format : {model::Format::Xml, model::Format::Json})
            require(model::parse_data_item(model::serialize_data_item(item, format),
                                           format) == item,
                    "data item round trip #" + std::to_string(i));
    }
    return checks_failed == failures_before;
}

int verdict(const char* name, bool (*criterion)()) {
    bool ok = false;
    try {
        ok = criterion();
    } catch (const std::exception& e) {
        std::printf("    unexpected exception: %s\n", e.what());
        ok = false;
    }
    std::printf("%s: %s\n", ok ? "PASS" : "FAIL", name);
    return ok ? 0 : 1;
}

}  // namespace

int main() {
    int failed = 0;
    failed += verdict("scenario decisions reproduce the stakeholder policies",
                      criterion_scenario);
    failed += verdict("reasoner agrees with the independent recursive evaluator "
                      "on 1200 random theories",
                      criterion_oracle_and_coherence);
    // Coherence is asserted per conclusion inside the same corpus pass; give
    // it its own verdict line by re-running a smaller dedicated sweep.
    failed += verdict("tags are coherent over the random corpus", [] {
        int failures_before = checks_failed;
        std::mt19937_64 rng(5150);
        for (int i = 0; i < 300; ++i) {
            Theory t = random_theory(rng);
            dl::ConclusionSet conclusions = dl::compute_conclusions(t);
            for (const auto& [lit, got] : conclusions.entries()) {
                if (got.delta == ProofStatus::Proved)
                    require(got.partial == ProofStatus::Proved, "definite implies defeasible");
                if (got.partial == ProofStatus::Disproved)
                    require(got.delta != ProofStatus::Proved,
                            "defeasible refutation excludes definite proof");
                for (const auto& c : dl::conflict_set(lit)) {
                    Conclusion other = conclusions.get(c);
                    if (got.partial == ProofStatus::Proved &&
                        other.partial == ProofStatus::Proved)
                        require(got.delta == ProofStatus::Proved &&
                                    other.delta == ProofStatus::Proved,
                                "conflicting conclusions trace to strict clash");
                }
            }
        }
        return checks_failed == failures_before;
    });
    failed += verdict("aggregation matches the brute-force group-by on 10000 readings",
                      criterion_aggregation);
    failed += verdict("ledger records all 20 evaluations and survives restart",
                      criterion_ledger);
    failed += verdict("warm enforcement beats cold and stays at or under 50ms",
                      criterion_bench);
    failed += verdict("100 random policy and data item documents round-trip",
                      criterion_roundtrip);
    return failed == 0 ? 0 : 1;
}
