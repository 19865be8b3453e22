// Enforcement tests: the scenario decision table, refusal diagnostics with
// replayable proof traces, and monotonicity of refusal under tightening.

#include <string>
#include <vector>

#include "doctest.h"
#include "tdu/dsl.hpp"
#include "tdu/enforce.hpp"
#include "tdu/scenario.hpp"
#include "tdu/scopes.hpp"

using namespace tdu;
using dl::Modality;
using dl::ModalLiteral;
using dl::ProofStatus;
using enforce::ConsumerRequest;
using enforce::Decision;
using enforce::Outcome;

namespace {

ConsumerRequest request(const std::string& subject, const std::string& actor,
                        const std::string& spatial, const std::string& temporal,
                        const std::string& abstraction) {
    ConsumerRequest r;
    r.subject = subject;
    r.actor_class = actor;
    r.spatial = spatial;
    r.temporal = temporal;
    r.abstraction = abstraction;
    return r;
}

Decision decide(const ConsumerRequest& r) {
    return enforce::evaluate(r, scenario::all_policies(), scenario::subject_facts());
}

ModalLiteral consumer_request(const std::string& subject) {
    return {Modality::Obl,
            {dl::Atom{"ConsumerRequest", {dl::Term::constant(subject)}}, false}};
}

}  // namespace

TEST_CASE("the request rule guards on the actor and requested scopes") {
    ConsumerRequest r = request("c", "CommercialOperator", "zone", "weekly", "statistic");
    r.purpose = "CommercialUse";
    dl::Rule rule = enforce::build_request_rule(r);
    CHECK(dl::to_string(rule) ==
          "request: CO(X), [P]SpatialScope(X, zone), [P]TemporalScope(X, weekly), "
          "[P]AbstractScope(X, statistic), [P]PurposeScope(X, 'CommercialUse') "
          "=>o ConsumerRequest(X).");
    r.purpose.reset();
    CHECK(dl::to_string(enforce::build_request_rule(r)) ==
          "request: CO(X), [P]SpatialScope(X, zone), [P]TemporalScope(X, weekly), "
          "[P]AbstractScope(X, statistic) =>o ConsumerRequest(X).");
}

TEST_CASE("request validation rejects foreign scope values") {
    CHECK_NOTHROW(request("c", "CommercialOperator", "zone", "weekly", "statistic").validate());
    CHECK_THROWS_AS(request("c", "CommercialOperator", "weekly", "zone", "statistic").validate(),
                    dl::Error);
    CHECK_THROWS_AS(request("c", "Martian", "zone", "weekly", "statistic").validate(),
                    scopes::Error);
    CHECK_THROWS_AS(request("", "CommercialOperator", "zone", "weekly", "statistic").validate(),
                    dl::Error);
    ConsumerRequest bad = request("c", "CommercialOperator", "zone", "weekly", "statistic");
    bad.purpose = "JoyRiding";
    CHECK_THROWS_AS(bad.validate(), dl::Error);
}

TEST_CASE("each stakeholder is granted its own scope profile") {
    struct Row {
        const char* subject;
        const char* actor;
        const char* spatial;
        const char* temporal;
        const char* abstraction;
    };
    const Row granted[] = {
        {"m", "MunicipalAuthority", "street", "hourly", "aggregation"},
        {"m", "MunicipalAuthority", "zone", "daily", "statistic"},  // all coarser
        {"c", "CommercialOperator", "zone", "weekly", "statistic"},
        {"c", "CommercialOperator", "zone", "yearly", "statistic"},
        {"d", "DataOwner", "street", "secondly", "detail"},
        {"d", "DataOwner", "any", "any", "any"},
    };
    for (const auto& row : granted) {
        CAPTURE(row.subject);
        CAPTURE(row.spatial);
        CAPTURE(row.temporal);
        Decision d = decide(request(row.subject, row.actor, row.spatial, row.temporal,
                                    row.abstraction));
        CHECK(d.outcome == Outcome::Granted);
        REQUIRE(d.effective_constraints.has_value());
        CHECK(d.effective_constraints->spatial == row.spatial);
        CHECK(d.refusal_reasons.empty());
    }

    const Row refused[] = {
        {"c", "CommercialOperator", "street", "weekly", "statistic"},  // finer space
        {"c", "CommercialOperator", "zone", "hourly", "statistic"},    // finer time
        {"c", "CommercialOperator", "zone", "weekly", "detail"},       // finer abstraction
        {"m", "MunicipalAuthority", "street", "minutely", "aggregation"},
        {"m", "MunicipalAuthority", "any", "hourly", "aggregation"},   // wildcard ask
        {"c", "CommercialOperator", "any", "any", "any"},
    };
    for (const auto& row : refused) {
        CAPTURE(row.subject);
        CAPTURE(row.spatial);
        CAPTURE(row.temporal);
        Decision d = decide(request(row.subject, row.actor, row.spatial, row.temporal,
                                    row.abstraction));
        CHECK(d.outcome == Outcome::Refused);
        CHECK_FALSE(d.effective_constraints.has_value());
        CHECK_FALSE(d.refusal_reasons.empty());
    }
}

TEST_CASE("the owner wildcard covers the full enumeration for the data owner") {
    for (const auto& s : scopes::values(scopes::Dimension::Spatial))
        for (const auto& t : scopes::values(scopes::Dimension::Temporal))
            for (const auto& a : scopes::values(scopes::Dimension::Abstraction)) {
                CAPTURE(s);
                CAPTURE(t);
                CAPTURE(a);
                CHECK(decide(request("d", "DataOwner", s, t, a)).outcome ==
                      Outcome::Granted);
            }
}

TEST_CASE("a refused fine-grained request reports the unprovable scopes") {
    Decision d = decide(request("c", "CommercialOperator", "street", "hourly", "detail"));
    REQUIRE(d.outcome == Outcome::Refused);

    // The head obligation and all three scope permissions are refuted, not
    // merely unresolved: the conclusions carry definite-refutation tags.
    auto find_reason = [&](const std::string& text) {
        for (const auto& r : d.refusal_reasons)
            if (dl::to_string(r.literal) == text) return true;
        return false;
    };
    CHECK(find_reason("[O]ConsumerRequest(c)"));
    CHECK(find_reason("[P]SpatialScope(c, street)"));
    CHECK(find_reason("[P]TemporalScope(c, hourly)"));
    CHECK(find_reason("[P]AbstractScope(c, detail)"));
    for (const auto& r : d.refusal_reasons) {
        CHECK(r.conclusion.delta == ProofStatus::Disproved);
        CHECK(r.conclusion.partial == ProofStatus::Disproved);
    }
    CHECK(explain(d).find("decision: Refused") != std::string::npos);
}

TEST_CASE("an unknown subject fails on the actor guard") {
    Decision d = decide(request("ghost", "CommercialOperator", "zone", "weekly",
                                "statistic"));
    REQUIRE(d.outcome == Outcome::Refused);
    bool actor_reason = false;
    for (const auto& r : d.refusal_reasons)
        if (r.note.find("unprovable actor class") != std::string::npos) actor_reason = true;
    CHECK(actor_reason);
}

TEST_CASE("the proof trace replays to the same conclusions") {
    for (const auto& req :
         {request("m", "MunicipalAuthority", "street", "hourly", "aggregation"),
          request("c", "CommercialOperator", "street", "hourly", "detail")}) {
        Decision d = decide(req);
        dl::Theory replay = dsl::parse_theory(d.trace.theory);
        REQUIRE(replay.is_ground());
        auto c = dl::compute_conclusions(replay);
        CHECK_FALSE(d.trace.literals.empty());
        for (const auto& tl : d.trace.literals) {
            CAPTURE(dl::to_string(tl.literal));
            CHECK(c.get(tl.literal) == tl.conclusion);
        }
        // The head literal is part of the trace.
        bool has_head = false;
        for (const auto& tl : d.trace.literals)
            if (tl.literal == consumer_request(req.subject)) {
                has_head = true;
                CHECK((tl.conclusion.partial == ProofStatus::Proved) ==
                      (d.outcome == Outcome::Granted));
            }
        CHECK(has_head);
    }
}

TEST_CASE("undetermined heads are refused fail-safe") {
    // A self-supporting policy pair leaves the obligation cyclic; enforcement
    // must refuse rather than grant.
    ConsumerRequest r = request("c", "CommercialOperator", "zone", "weekly", "statistic");
    std::vector<dl::ModalLiteral> facts = scenario::subject_facts();
    // No policies at all: nothing provable, refusal with reasons.
    Decision d = enforce::evaluate(r, {}, facts);
    CHECK(d.outcome == Outcome::Refused);
    CHECK_FALSE(d.refusal_reasons.empty());
}

TEST_CASE("tightening a request never turns a refusal into a grant") {
    // If a request at some (spatial, temporal, abstraction) is refused, every
    // finer request for the same subject must also be refused.
    using scopes::Dimension;
    const auto& sp = scopes::levels(Dimension::Spatial);
    const auto& tm = scopes::levels(Dimension::Temporal);
    const auto& ab = scopes::levels(Dimension::Abstraction);
    for (const char* subject : {"m", "c"}) {
        std::string actor =
            subject[0] == 'm' ? "MunicipalAuthority" : "CommercialOperator";
        for (size_t si = 0; si < sp.size(); ++si)
            for (size_t ti = 0; ti < tm.size(); ++ti)
                for (size_t ai = 0; ai < ab.size(); ++ai) {
                    Outcome coarse =
                        decide(request(subject, actor, sp[si], tm[ti], ab[ai])).outcome;
                    if (coarse == Outcome::Granted) continue;
                    for (size_t sj = 0; sj <= si; ++sj)
                        for (size_t tj = 0; tj <= ti; ++tj)
                            for (size_t aj = 0; aj <= ai; ++aj) {
                                CAPTURE(sp[si]);
                                CAPTURE(tm[ti]);
                                CAPTURE(ab[ai]);
                                CHECK(decide(request(subject, actor, sp[sj], tm[tj],
                                                     ab[aj]))
                                          .outcome == Outcome::Refused);
                            }
                }
    }
}

TEST_CASE("actors are isolated from each other's grants") {
    // The municipal profile request is granted to the municipal subject only.
    ConsumerRequest r = request("c", "CommercialOperator", "street", "hourly",
                                "aggregation");
    CHECK(decide(r).outcome == Outcome::Refused);
    // Claiming another class without the matching fact also fails.
    ConsumerRequest imposter = request("c", "MunicipalAuthority", "street", "hourly",
                                       "aggregation");
    CHECK(decide(imposter).outcome == Outcome::Refused);
}

TEST_CASE("purpose-restricted requests require a purpose grant") {
    ConsumerRequest r = request("c", "CommercialOperator", "zone", "weekly", "statistic");
    r.purpose = "CommercialUse";
    // The commercial policy grants no purpose scope, so the purposed request
    // fails while the purposeless one succeeds.
    CHECK(decide(r).outcome == Outcome::Refused);
    r.purpose.reset();
    CHECK(decide(r).outcome == Outcome::Granted);
    // The owner wildcard covers purposes.
    ConsumerRequest owner = request("d", "DataOwner", "zone", "weekly", "statistic");
    owner.purpose = "CommercialUse";
    CHECK(decide(owner).outcome == Outcome::Granted);
}

TEST_CASE("decisions round-trip through the JSON encoding") {
    ConsumerRequest r = request("m", "MunicipalAuthority", "street", "hourly",
                                "aggregation");
    r.purpose = "any";
    std::string encoded = enforce::request_to_json(r);
    ConsumerRequest back = enforce::request_from_json(encoded);
    CHECK(back.subject == r.subject);
    CHECK(back.actor_class == r.actor_class);
    CHECK(back.spatial == r.spatial);
    CHECK(back.temporal == r.temporal);
    CHECK(back.abstraction == r.abstraction);
    CHECK(back.purpose == r.purpose);

    // Purposed requests need a purpose grant the municipal policy lacks.
    Decision d = decide(r);
    std::string dj = enforce::decision_to_json(d, 2);
    CHECK(dj.find("\"outcome\": \"Refused\"") != std::string::npos);
    CHECK(dj.find("\"trace\"") != std::string::npos);
    r.purpose.reset();
    CHECK(enforce::decision_to_json(decide(r), 2).find("\"outcome\": \"Granted\"") !=
          std::string::npos);

    CHECK_THROWS_AS(enforce::request_from_json("{\"subject\":\"x\"}"), std::exception);
    CHECK_THROWS_AS(enforce::request_from_json("not json"), std::exception);
}
