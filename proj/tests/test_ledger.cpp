// Ledger tests: append/reload fidelity, checksum and sequence validation,
// history filtering, and the data-item rendering of usage records.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tdu/ledger.hpp"

using namespace tdu::ledger;
using tdu::enforce::Outcome;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() /
                ("tdu-ledger-test-" + name + "-" + std::to_string(::getpid())))
                   .string();
        std::filesystem::remove(path);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

UsageRecord record(const std::string& subject, Outcome outcome, std::int64_t ts,
                   std::vector<std::string> policies) {
    UsageRecord r;
    r.timestamp = ts;
    r.subject = subject;
    r.actor_class = "CommercialOperator";
    r.spatial = "zone";
    r.temporal = "daily";
    r.abstraction = "aggregation";
    r.outcome = outcome;
    r.policies = std::move(policies);
    r.items_released = outcome == Outcome::Granted ? 12 : 0;
    r.trace_digest = "00deadbeef00cafe";
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.is_open());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("append assigns sequential ids and survives reload") {
    TempFile f("reload");
    {
        Ledger led(f.path);
        CHECK(led.size() == 0);
        CHECK(led.append(record("alice", Outcome::Granted, 100, {"urn:p:1"})) == 1);
        UsageRecord purposed = record("bob", Outcome::Refused, 200, {"urn:p:1", "urn:p:2"});
        purposed.purpose = "CommercialUse";
        CHECK(led.append(purposed) == 2);
        CHECK(led.append(record("alice", Outcome::Refused, 300, {})) == 3);
        CHECK(led.size() == 3);
    }
    std::string bytes = read_file(f.path);

    Ledger led(f.path);
    REQUIRE(led.size() == 3);
    auto all = led.history();
    REQUIRE(all.size() == 3);
    CHECK(all[0].record_id == 1);
    CHECK(all[1].purpose == "CommercialUse");
    CHECK(all[2].subject == "alice");

    // Reload must not rewrite the file; appending reproduces the same lines.
    CHECK(read_file(f.path) == bytes);
    led.append(record("carol", Outcome::Granted, 400, {"urn:p:3"}));
    std::string grown = read_file(f.path);
    CHECK(grown.substr(0, bytes.size()) == bytes);
    CHECK(Ledger(f.path).size() == 4);
}

TEST_CASE("ledger file format is checksummed json lines") {
    TempFile f("format");
    Ledger led(f.path);
    led.append(record("alice", Outcome::Granted, 100, {"urn:p:1"}));
    std::string line = read_file(f.path);
    REQUIRE(line.back() == '\n');
    auto space = line.find(' ');
    REQUIRE(space == 8);  // crc32 is 8 hex digits
    std::string payload = line.substr(space + 1, line.size() - space - 2);
    CHECK(payload.front() == '{');
    CHECK(payload.find("\"subject\":\"alice\"") != std::string::npos);
    CHECK(payload.find("\"outcome\":\"Granted\"") != std::string::npos);
    CHECK(payload == record_to_json_string(led.history()[0]));
}

TEST_CASE("corruption and sequence gaps are rejected on load") {
    TempFile f("corrupt");
    {
        Ledger led(f.path);
        led.append(record("alice", Outcome::Granted, 100, {}));
        led.append(record("bob", Outcome::Refused, 200, {}));
    }
    std::string good = read_file(f.path);

    auto write = [&](const std::string& text) {
        std::ofstream(f.path, std::ios::trunc) << text;
    };

    // Flip a payload byte: checksum mismatch.
    std::string tampered = good;
    tampered[tampered.find("alice") + 1] = 'x';
    write(tampered);
    CHECK_THROWS_WITH_AS(Ledger(f.path),
                         doctest::Contains("checksum mismatch"), Error);

    // Drop the first line: ids start at 2.
    write(good.substr(good.find('\n') + 1));
    CHECK_THROWS_WITH_AS(Ledger(f.path),
                         doctest::Contains("out of sequence"), Error);

    // No separating space.
    write("deadbeef\n");
    CHECK_THROWS_WITH_AS(Ledger(f.path),
                         doctest::Contains("malformed ledger line"), Error);

    // Valid checksum over junk payload.
    write("f956e91f notjson\n");
    CHECK_THROWS_AS(Ledger(f.path), Error);

    // Blank lines are tolerated.
    write(good + "\n");
    CHECK(Ledger(f.path).size() == 2);
}

TEST_CASE("history filters compose and partition") {
    TempFile f("filters");
    Ledger led(f.path);
    led.append(record("alice", Outcome::Granted, 100, {"urn:p:1"}));
    led.append(record("bob", Outcome::Refused, 200, {"urn:p:1", "urn:p:2"}));
    led.append(record("alice", Outcome::Refused, 300, {"urn:p:2"}));
    led.append(record("bob", Outcome::Granted, 400, {}));

    HistoryFilter by_subject;
    by_subject.subject = "alice";
    CHECK(led.history(by_subject).size() == 2);

    HistoryFilter by_policy;
    by_policy.policy = "urn:p:1";
    CHECK(led.history(by_policy).size() == 2);

    HistoryFilter by_outcome;
    by_outcome.outcome = Outcome::Refused;
    auto refused = led.history(by_outcome);
    REQUIRE(refused.size() == 2);
    by_outcome.outcome = Outcome::Granted;
    auto granted = led.history(by_outcome);
    REQUIRE(granted.size() == 2);
    // Outcome filters partition the full history.
    CHECK(granted.size() + refused.size() == led.history().size());

    HistoryFilter window;
    window.from = 200;
    window.to = 400;  // exclusive
    auto mid = led.history(window);
    REQUIRE(mid.size() == 2);
    CHECK(mid[0].subject == "bob");
    CHECK(mid[1].subject == "alice");

    HistoryFilter combined;
    combined.subject = "bob";
    combined.policy = "urn:p:2";
    combined.outcome = Outcome::Refused;
    auto hits = led.history(combined);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].record_id == 2);

    HistoryFilter none;
    none.subject = "nobody";
    CHECK(led.history(none).empty());
}

TEST_CASE("usage records round-trip through the data item rendering") {
    UsageRecord r = record("alice", Outcome::Granted, 100, {"urn:p:1", "urn:p:2"});
    r.record_id = 7;
    r.purpose = "CommercialUse";

    auto item = as_data_item(r);
    CHECK(item.entity_id.id == "usage-record-7");
    CHECK(item.entity_id.type == "UsageRecord");
    REQUIRE(item.domain_metadata.has_value());
    CHECK(item.domain_metadata->size() == 2);
    CHECK(record_from_data_item(item) == r);

    // Purposeless record stays purposeless through the round trip.
    UsageRecord bare = record("bob", Outcome::Refused, 5, {});
    bare.record_id = 1;
    CHECK(record_from_data_item(as_data_item(bare)) == bare);

    tdu::model::DataItem wrong;
    wrong.entity_id = {"x", "SomethingElse"};
    CHECK_THROWS_WITH_AS(record_from_data_item(wrong),
                         doctest::Contains("not a usage record"), Error);
    tdu::model::DataItem partial = as_data_item(r);
    partial.attributes.erase(partial.attributes.begin());  // drop recordId
    CHECK_THROWS_WITH_AS(record_from_data_item(partial),
                         doctest::Contains("missing attribute: recordId"), Error);
}

TEST_CASE("trace digests are stable and sensitive to content") {
    tdu::enforce::ProofTrace trace;
    tdu::enforce::TraceLiteral tl;
    tl.literal = {tdu::dl::Modality::Obl,
                  {{"ConsumerRequest", {tdu::dl::Term::constant("c")}}, false}};
    tl.conclusion.delta = tdu::dl::ProofStatus::Disproved;
    tl.conclusion.partial = tdu::dl::ProofStatus::Proved;
    tl.supporting.push_back({"request", true});
    tl.attacking.push_back({"deny", false});
    tl.superiority.push_back({"request", "deny", true});
    trace.literals.push_back(tl);

    std::string d1 = trace_digest(trace);
    CHECK(d1.size() == 16);
    CHECK(trace_digest(trace) == d1);  // deterministic

    auto changed = trace;
    changed.literals[0].supporting[0].applicable = false;
    CHECK(trace_digest(changed) != d1);

    auto reordered = trace;
    reordered.literals[0].conclusion.partial = tdu::dl::ProofStatus::Undetermined;
    CHECK(trace_digest(reordered) != d1);

    CHECK(trace_digest({}) != d1);
}
