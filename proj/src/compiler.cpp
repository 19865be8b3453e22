#include "tdu/compiler.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace tdu::compiler {

using dl::Modality;
using dl::ModalLiteral;
using dl::Rule;
using dl::RuleKind;
using dl::Term;
using dl::Theory;
using model::DeonticOperator;
using scopes::Dimension;

namespace {

const Dimension kDimensions[] = {Dimension::Temporal, Dimension::Spatial,
                                 Dimension::Abstraction, Dimension::Purpose};

const std::vector<std::string>& condition_values(const model::Condition& c, Dimension d) {
    switch (d) {
        case Dimension::Temporal: return c.temporality;
        case Dimension::Spatial: return c.spatiality;
        case Dimension::Abstraction: return c.abstraction;
        case Dimension::Purpose: return c.purpose;
    }
    throw dl::Error("unknown dimension");
}

std::string dim_tag(Dimension d) {
    switch (d) {
        case Dimension::Temporal: return "t";
        case Dimension::Spatial: return "s";
        case Dimension::Abstraction: return "a";
        case Dimension::Purpose: return "p";
    }
    return "?";
}

std::string resolve_actor_predicate(const std::string& actor_class) {
    if (actor_class == "DO" || actor_class == "MA" || actor_class == "CO")
        return actor_class;
    return scopes::actor_predicate(actor_class);  // throws for unknown classes
}

ModalLiteral scope_literal(Dimension d, const std::string& value, Modality mode,
                           bool negated = false) {
    dl::Atom atom{scopes::scope_predicate(d), {Term::variable("X"), Term::constant(value)}};
    return {mode, {std::move(atom), negated}};
}

}  // namespace

std::string label_prefix(const std::string& policy_name) {
    std::string out;
    for (char c : policy_name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
            out += c;
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "policy" : out;
}

dl::Theory compile_policy(const model::UsagePolicy& p, const std::string& actor_class) {
    const std::string actor_pred = resolve_actor_predicate(actor_class);
    const std::string prefix = label_prefix(p.name);
    Theory out;

    for (size_t i = 0; i < p.rules.size(); ++i) {
        const auto& rule = p.rules[i];
        // Guard atoms: the stakeholder class plus any actor conditions.
        std::vector<ModalLiteral> guards;
        std::set<std::string> guard_preds;
        auto add_guard = [&](const std::string& pred) {
            if (!guard_preds.insert(pred).second) return;
            guards.push_back({Modality::Fact,
                              {dl::Atom{pred, {Term::variable("X")}}, false}});
        };
        add_guard(actor_pred);
        for (const auto& a : rule.condition.actor) add_guard(resolve_actor_predicate(a));

        for (Dimension d : kDimensions) {
            for (const auto& value : condition_values(rule.condition, d)) {
                if (!scopes::is_valid(d, value))
                    throw dl::Error("unknown scope value: " + value);
                std::string base = prefix + "_r" + std::to_string(i + 1) + "_" +
                                   dim_tag(d) + "_" + value;
                Rule r;
                r.label = base;
                r.kind = RuleKind::Defeasible;
                r.body = guards;
                switch (rule.op) {
                    case DeonticOperator::Permission:
                        r.mode = Modality::Perm;
                        r.head = scope_literal(d, value, Modality::Perm);
                        break;
                    case DeonticOperator::Obligation:
                        r.mode = Modality::Obl;
                        r.head = scope_literal(d, value, Modality::Obl);
                        break;
                    case DeonticOperator::Forbidden:
                        r.mode = Modality::Obl;
                        r.head = scope_literal(d, value, Modality::Obl, true);
                        break;
                }
                out.rules.push_back(r);

                // Lattice expansion for permissions: a grant at this level is
                // a strict license for every coarser level (`any` licenses
                // every level of the dimension).
                if (rule.op != DeonticOperator::Permission) continue;
                std::vector<std::string> targets;
                if (value == scopes::kAny) {
                    targets = scopes::levels(d);
                } else if (auto idx = scopes::chain_index(d, value)) {
                    const auto& chain = scopes::levels(d);
                    for (size_t k = *idx + 1; k < chain.size(); ++k)
                        targets.push_back(chain[k]);
                }
                for (const auto& target : targets) {
                    Rule x;
                    x.label = base + "_to_" + target;
                    x.kind = RuleKind::Strict;
                    x.mode = Modality::Perm;
                    x.body = {scope_literal(d, value, Modality::Perm)};
                    x.head = scope_literal(d, target, Modality::Perm);
                    out.rules.push_back(std::move(x));
                }
            }
        }
    }
    out.validate();
    return out;
}

dl::Theory compile_policy(const model::UsagePolicy& p) {
    for (const auto& rule : p.rules)
        if (!rule.condition.actor.empty())
            return compile_policy(p, rule.condition.actor.front());
    throw dl::Error("policy '" + p.name + "' names no actor class");
}

dl::Theory merge_theories(const std::vector<dl::Theory>& theories) {
    Theory out;
    out.modal_conversion = true;
    std::set<ModalLiteral> seen_facts;
    std::set<std::string> used_labels;

    for (size_t i = 0; i < theories.size(); ++i) {
        const auto& t = theories[i];
        if (!t.modal_conversion) out.modal_conversion = false;
        for (const auto& f : t.facts)
            if (seen_facts.insert(f).second) out.facts.push_back(f);

        std::map<std::string, std::string> renamed;
        for (const auto& r : t.rules) {
            std::string label = r.label;
            if (used_labels.count(label)) {
                label = "t" + std::to_string(i + 1) + "_" + r.label;
                renamed[r.label] = label;
            }
            used_labels.insert(label);
            Rule copy = r;
            copy.label = label;
            out.rules.push_back(std::move(copy));
        }
        for (const auto& [w, l] : t.superiority) {
            auto rename = [&](const std::string& lbl) {
                auto it = renamed.find(lbl);
                return it == renamed.end() ? lbl : it->second;
            };
            out.superiority.emplace_back(rename(w), rename(l));
        }
    }
    return out;
}

std::vector<ConflictPair> detect_conflicts(const dl::Theory& t) {
    Theory g = t.is_ground() ? t : dl::ground_theory(t);
    std::set<std::pair<std::string, std::string>> sup(g.superiority.begin(),
                                                      g.superiority.end());
    std::vector<ConflictPair> out;
    for (size_t i = 0; i < g.rules.size(); ++i) {
        for (size_t j = i + 1; j < g.rules.size(); ++j) {
            const auto& a = g.rules[i];
            const auto& b = g.rules[j];
            auto ca = dl::conflict_set(a.head);
            auto cb = dl::conflict_set(b.head);
            bool mutual = std::find(ca.begin(), ca.end(), b.head) != ca.end() &&
                          std::find(cb.begin(), cb.end(), a.head) != cb.end();
            if (!mutual) continue;
            if (sup.count({a.label, b.label}) || sup.count({b.label, a.label})) continue;
            out.push_back({a.label, b.label, a.head, b.head});
        }
    }
    return out;
}

}  // namespace tdu::compiler
