#include "tdu/enforce.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tdu::enforce {

using dl::Conclusion;
using dl::Modality;
using dl::ModalLiteral;
using dl::ProofStatus;
using dl::Rule;
using dl::RuleKind;
using dl::Term;
using dl::Theory;
using scopes::Dimension;

namespace {

constexpr const char* kRequestLabel = "request";

ModalLiteral perm_scope(Dimension d, const std::string& value, const Term& subject) {
    return {Modality::Perm,
            {dl::Atom{scopes::scope_predicate(d), {subject, Term::constant(value)}}, false}};
}

ModalLiteral actor_literal(const std::string& actor_class, const Term& subject) {
    return {Modality::Fact,
            {dl::Atom{scopes::actor_predicate(actor_class), {subject}}, false}};
}

ModalLiteral request_head(const Term& subject) {
    return {Modality::Obl, {dl::Atom{"ConsumerRequest", {subject}}, false}};
}

}  // namespace

void ConsumerRequest::validate() const {
    if (subject.empty()) throw dl::Error("request subject must be nonempty");
    scopes::actor_predicate(actor_class);  // throws for unknown classes
    auto check = [](Dimension d, const std::string& v) {
        if (!scopes::is_valid(d, v))
            throw dl::Error("value '" + v + "' does not belong to dimension " +
                            scopes::to_string(d));
    };
    check(Dimension::Spatial, spatial);
    check(Dimension::Temporal, temporal);
    check(Dimension::Abstraction, abstraction);
    if (purpose) check(Dimension::Purpose, *purpose);
}

dl::Rule build_request_rule(const ConsumerRequest& r) {
    r.validate();
    Term x = Term::variable("X");
    Rule rule;
    rule.label = kRequestLabel;
    rule.kind = RuleKind::Defeasible;
    rule.mode = Modality::Obl;
    rule.body.push_back(actor_literal(r.actor_class, x));
    rule.body.push_back(perm_scope(Dimension::Spatial, r.spatial, x));
    rule.body.push_back(perm_scope(Dimension::Temporal, r.temporal, x));
    rule.body.push_back(perm_scope(Dimension::Abstraction, r.abstraction, x));
    if (r.purpose) rule.body.push_back(perm_scope(Dimension::Purpose, *r.purpose, x));
    rule.head = request_head(x);
    return rule;
}

namespace {

TraceLiteral trace_literal(const ModalLiteral& l, const Theory& ground,
                           const dl::ConclusionSet& conclusions) {
    TraceLiteral out;
    out.literal = l;
    out.conclusion = conclusions.get(l);

    auto applicable = [&](const Rule& rule) {
        return std::all_of(rule.body.begin(), rule.body.end(), [&](const ModalLiteral& b) {
            return conclusions.get(b).partial == ProofStatus::Proved;
        });
    };

    std::set<std::string> supporters, attackers;
    auto conflicts = dl::conflict_set(l);
    for (const auto& rule : ground.rules) {
        if (rule.head == l) {
            out.supporting.push_back({rule.label, applicable(rule)});
            supporters.insert(rule.label);
        } else if (std::find(conflicts.begin(), conflicts.end(), rule.head) !=
                   conflicts.end()) {
            out.attacking.push_back({rule.label, applicable(rule)});
            attackers.insert(rule.label);
        }
    }
    std::set<std::pair<std::string, std::string>> sup(ground.superiority.begin(),
                                                      ground.superiority.end());
    for (const auto& s : out.supporting) {
        for (const auto& a : out.attacking) {
            if (sup.count({s.label, a.label}))
                out.superiority.push_back({s.label, a.label, true});
            if (sup.count({a.label, s.label}))
                out.superiority.push_back({a.label, s.label, true});
        }
    }
    return out;
}

}  // namespace

Decision evaluate(const ConsumerRequest& r,
                  const std::vector<model::UsagePolicy>& policies,
                  const std::vector<dl::ModalLiteral>& facts) {
    r.validate();

    std::vector<Theory> parts;
    parts.reserve(policies.size() + 1);
    for (const auto& p : policies) parts.push_back(compiler::compile_policy(p));
    Theory request_theory;
    request_theory.rules.push_back(build_request_rule(r));
    parts.push_back(std::move(request_theory));

    Theory merged = compiler::merge_theories(parts);
    merged.facts.insert(merged.facts.end(), facts.begin(), facts.end());

    Theory ground = dl::ground_theory(merged);
    dl::ConclusionSet conclusions = dl::compute_conclusions(ground);

    Term subject = Term::constant(r.subject);
    ModalLiteral head = request_head(subject);

    Decision d;
    d.trace.theory = dl::serialize_theory(ground);

    // Trace the head and every request-body literal for the subject.
    std::vector<ModalLiteral> queried;
    queried.push_back(head);
    queried.push_back(actor_literal(r.actor_class, subject));
    queried.push_back(perm_scope(Dimension::Spatial, r.spatial, subject));
    queried.push_back(perm_scope(Dimension::Temporal, r.temporal, subject));
    queried.push_back(perm_scope(Dimension::Abstraction, r.abstraction, subject));
    if (r.purpose) queried.push_back(perm_scope(Dimension::Purpose, *r.purpose, subject));
    for (const auto& q : queried)
        d.trace.literals.push_back(trace_literal(q, ground, conclusions));

    bool granted = dl::query(conclusions, dl::kPlusPartial, head);
    if (granted) {
        d.outcome = Outcome::Granted;
        d.effective_constraints = EffectiveConstraints{r.spatial, r.temporal, r.abstraction};
        return d;
    }

    d.outcome = Outcome::Refused;
    bool actor_fact_present =
        std::find(facts.begin(), facts.end(), actor_literal(r.actor_class, subject)) !=
        facts.end();
    for (const auto& q : queried) {
        Conclusion c = conclusions.get(q);
        if (c.partial == ProofStatus::Proved) continue;
        RefusalReason reason{q, c, ""};
        if (q.modality == Modality::Fact && !actor_fact_present)
            reason.note = "unprovable actor class";
        else if (c.partial == ProofStatus::Undetermined)
            reason.note = "undetermined (fail-safe refusal)";
        else
            reason.note = "not defeasibly provable";
        d.refusal_reasons.push_back(std::move(reason));
    }
    return d;
}

std::string explain(const Decision& d) {
    std::ostringstream out;
    out << "decision: " << to_string(d.outcome) << "\n";
    if (d.effective_constraints) {
        out << "effective constraints: spatial=" << d.effective_constraints->spatial
            << " temporal=" << d.effective_constraints->temporal
            << " abstraction=" << d.effective_constraints->abstraction << "\n";
    }
    if (!d.refusal_reasons.empty()) {
        out << "refusal reasons:\n";
        for (const auto& r : d.refusal_reasons)
            out << "  " << dl::to_string(r.literal) << ": delta="
                << dl::to_string(r.conclusion.delta)
                << " partial=" << dl::to_string(r.conclusion.partial) << " (" << r.note
                << ")\n";
    }
    out << "proof trace:\n";
    for (const auto& tl : d.trace.literals) {
        out << "  " << dl::to_string(tl.literal) << ": delta="
            << dl::to_string(tl.conclusion.delta)
            << " partial=" << dl::to_string(tl.conclusion.partial) << "\n";
        for (const auto& s : tl.supporting)
            out << "    supporting " << s.label << (s.applicable ? " (applicable)" : " (blocked)")
                << "\n";
        for (const auto& a : tl.attacking)
            out << "    attacking " << a.label << (a.applicable ? " (applicable)" : " (blocked)")
                << "\n";
        for (const auto& s : tl.superiority)
            out << "    superiority " << s.winner << " > " << s.loser << "\n";
        if (tl.supporting.empty() && tl.literal.modality == Modality::Perm)
            out << "    no rule supports this literal\n";
    }
    return out.str();
}

std::string to_string(Outcome o) {
    return o == Outcome::Granted ? "Granted" : "Refused";
}

}  // namespace tdu::enforce

#include "json.hpp"

namespace tdu::enforce {

namespace {

using nlohmann::json;

json steps_to_json(const std::vector<TraceRuleStep>& steps) {
    json out = json::array();
    for (const auto& s : steps)
        out.push_back({{"label", s.label}, {"applicable", s.applicable}});
    return out;
}

}  // namespace

std::string decision_to_json(const Decision& d, int indent) {
    json j;
    j["outcome"] = to_string(d.outcome);
    if (d.effective_constraints) {
        j["effectiveConstraints"] = {{"spatial", d.effective_constraints->spatial},
                                     {"temporal", d.effective_constraints->temporal},
                                     {"abstraction", d.effective_constraints->abstraction}};
    }
    if (!d.refusal_reasons.empty()) {
        json reasons = json::array();
        for (const auto& r : d.refusal_reasons)
            reasons.push_back({{"literal", dl::to_string(r.literal)},
                               {"delta", dl::to_string(r.conclusion.delta)},
                               {"partial", dl::to_string(r.conclusion.partial)},
                               {"note", r.note}});
        j["refusalReasons"] = reasons;
    }
    json literals = json::array();
    for (const auto& tl : d.trace.literals) {
        json sup = json::array();
        for (const auto& s : tl.superiority)
            sup.push_back({{"winner", s.winner}, {"loser", s.loser}});
        literals.push_back({{"literal", dl::to_string(tl.literal)},
                            {"delta", dl::to_string(tl.conclusion.delta)},
                            {"partial", dl::to_string(tl.conclusion.partial)},
                            {"supporting", steps_to_json(tl.supporting)},
                            {"attacking", steps_to_json(tl.attacking)},
                            {"superiority", sup}});
    }
    j["trace"] = {{"theory", d.trace.theory}, {"literals", literals}};
    return j.dump(indent);
}

std::string request_to_json(const ConsumerRequest& r, int indent) {
    json j{{"subject", r.subject},
           {"actorClass", r.actor_class},
           {"spatial", r.spatial},
           {"temporal", r.temporal},
           {"abstraction", r.abstraction}};
    if (r.purpose) j["purpose"] = *r.purpose;
    if (!r.target_type.empty() || !r.target_id.empty())
        j["target"] = {{"type", r.target_type}, {"id", r.target_id}};
    return j.dump(indent);
}

ConsumerRequest request_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw dl::Error(std::string("malformed request JSON: ") + e.what());
    }
    ConsumerRequest r;
    try {
        r.subject = j.at("subject").get<std::string>();
        r.actor_class = j.at("actorClass").get<std::string>();
        r.spatial = j.at("spatial").get<std::string>();
        r.temporal = j.at("temporal").get<std::string>();
        r.abstraction = j.at("abstraction").get<std::string>();
        if (j.contains("purpose")) r.purpose = j.at("purpose").get<std::string>();
        if (j.contains("target")) {
            const json& t = j.at("target");
            if (t.contains("type")) r.target_type = t.at("type").get<std::string>();
            if (t.contains("id")) r.target_id = t.at("id").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw dl::Error(std::string("invalid request JSON: ") + e.what());
    }
    r.validate();
    return r;
}

}  // namespace tdu::enforce
