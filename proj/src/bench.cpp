#include "tdu/bench.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tdu/enforce.hpp"
#include "tdu/scenario.hpp"

namespace tdu::bench {

namespace {

// Fixed workload: a commercial operator asking for street-level hourly
// detail, refused under the commercial policy.
enforce::ConsumerRequest workload_request() {
    enforce::ConsumerRequest r;
    r.subject = "c";
    r.actor_class = "CommercialOperator";
    r.spatial = "street";
    r.temporal = "hourly";
    r.abstraction = "detail";
    return r;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

}  // namespace

Stats bench_tet(int iterations, Mode mode) {
    if (iterations < 2) throw dl::Error("bench requires at least 2 iterations");

    const auto policies = scenario::all_policies();
    const auto facts = scenario::subject_facts();
    const auto request = workload_request();

    // Policies as serialized documents, so a cold iteration pays the full
    // parse + compile + ground cost a fresh engine instance would.
    std::vector<std::string> policy_docs;
    for (const auto& p : policies)
        policy_docs.push_back(model::serialize_usage_policy(p, model::Format::Xml));

    Stats stats;
    stats.mode = mode;
    stats.iterations = iterations;
    stats.samples_ms.reserve(iterations);

    if (mode == Mode::Cold) {
        for (int i = 0; i < iterations; ++i) {
            auto start = std::chrono::steady_clock::now();
            std::vector<model::UsagePolicy> parsed;
            for (const auto& doc : policy_docs)
                parsed.push_back(model::parse_usage_policy(doc, model::Format::Xml));
            enforce::Decision d = enforce::evaluate(request, parsed, facts);
            stats.samples_ms.push_back(elapsed_ms(start));
            if (d.outcome != enforce::Outcome::Refused)
                throw dl::Error("benchmark workload produced an unexpected grant");
        }
    } else {
        // Warm: compile, merge and ground once; each request only reruns the
        // proof and the query.
        std::vector<dl::Theory> parts;
        for (const auto& p : policies) parts.push_back(compiler::compile_policy(p));
        dl::Theory request_theory;
        request_theory.rules.push_back(enforce::build_request_rule(request));
        parts.push_back(std::move(request_theory));
        dl::Theory merged = compiler::merge_theories(parts);
        merged.facts.insert(merged.facts.end(), facts.begin(), facts.end());
        dl::Theory ground = dl::ground_theory(merged);
        dl::ModalLiteral head{dl::Modality::Obl,
                              {dl::Atom{"ConsumerRequest", {dl::Term::constant("c")}}, false}};

        for (int i = 0; i < iterations; ++i) {
            auto start = std::chrono::steady_clock::now();
            dl::ConclusionSet conclusions = dl::compute_conclusions(ground);
            bool granted = dl::query(conclusions, dl::kPlusPartial, head);
            stats.samples_ms.push_back(elapsed_ms(start));
            if (granted) throw dl::Error("benchmark workload produced an unexpected grant");
        }
    }

    const auto& s = stats.samples_ms;
    stats.mean_ms = std::accumulate(s.begin(), s.end(), 0.0) / s.size();
    stats.min_ms = *std::min_element(s.begin(), s.end());
    stats.max_ms = *std::max_element(s.begin(), s.end());
    double sq = 0;
    for (double v : s) sq += (v - stats.mean_ms) * (v - stats.mean_ms);
    double stddev = std::sqrt(sq / (s.size() - 1));
    boost::math::students_t dist(static_cast<double>(s.size() - 1));
    double t = boost::math::quantile(dist, 0.975);
    double half = t * stddev / std::sqrt(static_cast<double>(s.size()));
    stats.ci95_low_ms = stats.mean_ms - half;
    stats.ci95_high_ms = stats.mean_ms + half;
    return stats;
}

std::string stats_to_json(const Stats& s, int indent) {
    nlohmann::json j{{"mode", to_string(s.mode)},
                     {"iterations", s.iterations},
                     {"mean_ms", s.mean_ms},
                     {"ci95_low_ms", s.ci95_low_ms},
                     {"ci95_high_ms", s.ci95_high_ms},
                     {"min_ms", s.min_ms},
                     {"max_ms", s.max_ms},
                     {"samples_ms", s.samples_ms}};
    return j.dump(indent);
}

std::string stats_table_header() {
    return "mode\titerations\tmean_ms\tci95_low_ms\tci95_high_ms\tmin_ms\tmax_ms";
}

std::string stats_table_row(const Stats& s) {
    std::ostringstream out;
    out << to_string(s.mode) << "\t" << s.iterations << "\t" << s.mean_ms << "\t"
        << s.ci95_low_ms << "\t" << s.ci95_high_ms << "\t" << s.min_ms << "\t" << s.max_ms;
    return out.str();
}

std::string to_string(Mode m) { return m == Mode::Cold ? "cold" : "warm"; }

Mode mode_from_string(const std::string& name) {
    if (name == "cold") return Mode::Cold;
    if (name == "warm") return Mode::Warm;
    throw dl::Error("unknown bench mode: " + name);
}

}  // namespace tdu::bench
