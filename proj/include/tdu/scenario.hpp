#ifndef TDU_SCENARIO_HPP
#define TDU_SCENARIO_HPP

// The air-pollution sharing scenario: the three stakeholder policies and
// their subjects. Shared by the benchmark, the CLI samples and the tests.

#include <vector>

#include "tdu/dl.hpp"
#include "tdu/model.hpp"

namespace tdu::scenario {

inline model::UsagePolicy owner_policy() {
    model::UsagePolicy p;
    p.name = "urn:tdu:policy:data-owner";
    model::PolicyRule rule;
    rule.op = model::DeonticOperator::Permission;
    rule.condition.actor = {"DataOwner"};
    rule.condition.temporality = {"any"};
    rule.condition.spatiality = {"any"};
    rule.condition.abstraction = {"any"};
    rule.condition.purpose = {"any"};
    p.rules.push_back(rule);
    return p;
}

inline model::UsagePolicy municipal_policy() {
    model::UsagePolicy p;
    p.name = "urn:tdu:policy:municipal-authority";
    model::PolicyRule rule;
    rule.op = model::DeonticOperator::Permission;
    rule.condition.actor = {"MunicipalAuthority"};
    rule.condition.spatiality = {"street"};
    rule.condition.temporality = {"hourly"};
    rule.condition.abstraction = {"aggregation"};
    p.rules.push_back(rule);
    return p;
}

inline model::UsagePolicy commercial_policy() {
    model::UsagePolicy p;
    p.name = "urn:tdu:policy:commercial-operator";
    model::PolicyRule rule;
    rule.op = model::DeonticOperator::Permission;
    rule.condition.actor = {"CommercialOperator"};
    rule.condition.spatiality = {"zone"};
    rule.condition.temporality = {"weekly"};
    rule.condition.abstraction = {"statistic"};
    p.rules.push_back(rule);
    return p;
}

inline std::vector<model::UsagePolicy> all_policies() {
    return {owner_policy(), municipal_policy(), commercial_policy()};
}

// Facts {DO(d), MA(m), CO(c)}.
inline std::vector<dl::ModalLiteral> subject_facts() {
    auto fact = [](const char* pred, const char* subject) {
        return dl::ModalLiteral{
            dl::Modality::Fact,
            {dl::Atom{pred, {dl::Term::constant(subject)}}, false}};
    };
    return {fact("DO", "d"), fact("MA", "m"), fact("CO", "c")};
}

}  // namespace tdu::scenario

#endif
