#include "tdu/dl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tdu::dl {

namespace {

bool is_ground_literal(const ModalLiteral& l) {
    for (const auto& t : l.literal.atom.args)
        if (t.is_variable()) return false;
    return true;
}

}  // namespace

bool Theory::is_ground() const {
    for (const auto& f : facts)
        if (!is_ground_literal(f)) return false;
    for (const auto& r : rules) {
        if (!is_ground_literal(r.head)) return false;
        for (const auto& b : r.body)
            if (!is_ground_literal(b)) return false;
    }
    return true;
}

void Theory::validate() const {
    std::set<std::string> labels;
    for (const auto& r : rules) {
        if (r.head.modality != r.mode)
            throw Error("rule " + r.label + ": head modality disagrees with rule mode");
        if (!labels.insert(r.label).second)
            throw Error("duplicate rule label: " + r.label);
    }
    for (const auto& f : facts)
        if (!is_ground_literal(f))
            throw Error("non-ground fact: " + to_string(f));
    for (const auto& [winner, loser] : superiority) {
        if (winner == loser)
            throw Error("superiority is irreflexive: " + winner + " > " + loser);
        if (!labels.count(winner))
            throw Error("superiority references unknown rule: " + winner);
        if (!labels.count(loser))
            throw Error("superiority references unknown rule: " + loser);
    }
}

std::vector<ModalLiteral> conflict_set(const ModalLiteral& l) {
    Literal neg = l.literal.complement();
    switch (l.modality) {
        case Modality::Fact:
            return {{Modality::Fact, neg}};
        case Modality::Obl:
            return {{Modality::Obl, neg}, {Modality::Perm, neg}};
        case Modality::Perm:
            return {{Modality::Obl, neg}};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Grounding

namespace {

void collect_constants(const Atom& a, std::set<std::string>& out) {
    for (const auto& t : a.args)
        if (!t.is_variable()) out.insert(t.name);
}

void collect_variables(const Atom& a, std::vector<std::string>& order, std::set<std::string>& seen) {
    for (const auto& t : a.args)
        if (t.is_variable() && seen.insert(t.name).second) order.push_back(t.name);
}

Atom substitute(const Atom& a, const std::map<std::string, std::string>& sub) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        if (t.is_variable())
            out.args.push_back(Term::constant(sub.at(t.name)));
        else
            out.args.push_back(t);
    }
    return out;
}

ModalLiteral substitute(const ModalLiteral& l, const std::map<std::string, std::string>& sub) {
    return {l.modality, {substitute(l.literal.atom, sub), l.literal.negated}};
}

}  // namespace

Theory ground_theory(const Theory& t) {
    // Active domain: constants mentioned anywhere in the theory.
    std::set<std::string> constants;
    for (const auto& f : t.facts) collect_constants(f.literal.atom, constants);
    for (const auto& r : t.rules) {
        collect_constants(r.head.literal.atom, constants);
        for (const auto& b : r.body) collect_constants(b.literal.atom, constants);
    }

    Theory out;
    out.facts = t.facts;
    out.modal_conversion = t.modal_conversion;

    for (const auto& r : t.rules) {
        std::vector<std::string> vars;
        std::set<std::string> seen, body_vars;
        for (const auto& b : r.body) {
            collect_variables(b.literal.atom, vars, seen);
            for (const auto& term : b.literal.atom.args)
                if (term.is_variable()) body_vars.insert(term.name);
        }
        for (const auto& term : r.head.literal.atom.args)
            if (term.is_variable() && !body_vars.count(term.name))
                throw Error("unsafe rule " + r.label + ": head variable " + term.name +
                            " does not occur in the body");

        if (vars.empty()) {
            out.rules.push_back(r);
            continue;
        }

        // Enumerate substitutions in lexicographic constant order.
        std::vector<std::string> domain(constants.begin(), constants.end());
        std::vector<size_t> idx(vars.size(), 0);
        if (domain.empty()) continue;  // no constants, no instances
        while (true) {
            std::map<std::string, std::string> sub;
            std::ostringstream suffix;
            for (size_t i = 0; i < vars.size(); ++i) {
                sub[vars[i]] = domain[idx[i]];
                suffix << "__" << vars[i] << "_" << domain[idx[i]];
            }

            Rule g;
            g.label = r.label + suffix.str();
            g.kind = r.kind;
            g.mode = r.mode;
            g.head = substitute(r.head, sub);
            for (const auto& b : r.body) g.body.push_back(substitute(b, sub));
            out.rules.push_back(std::move(g));

            size_t k = 0;
            while (k < idx.size() && ++idx[k] == domain.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }

    // Superiority between rules with variables applies between all pairs of
    // their instances; keep pairs whose labels survived grounding untouched
    // and expand the rest by prefix match.
    std::set<std::string> ground_labels;
    for (const auto& r : out.rules) ground_labels.insert(r.label);
    for (const auto& [winner, loser] : t.superiority) {
        std::vector<std::string> winners, losers;
        for (const auto& l : ground_labels)
            if (l == winner || l.rfind(winner + "__", 0) == 0) winners.push_back(l);
        for (const auto& l : ground_labels)
            if (l == loser || l.rfind(loser + "__", 0) == 0) losers.push_back(l);
        for (const auto& w : winners)
            for (const auto& l : losers)
                if (w != l) out.superiority.emplace_back(w, l);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conclusions

namespace {

// Synthesized [O]l -> [P]l strict rules, one per ground literal of the
// theory's atom base. Labels never collide with user labels ('#' is not a
// legal label character in the DSL).
void add_conversion_rules(Theory& t) {
    std::set<Atom> atoms;
    for (const auto& f : t.facts) atoms.insert(f.literal.atom);
    for (const auto& r : t.rules) {
        atoms.insert(r.head.literal.atom);
        for (const auto& b : r.body) atoms.insert(b.literal.atom);
    }
    size_t n = 0;
    for (const auto& a : atoms) {
        for (bool neg : {false, true}) {
            Rule conv;
            conv.label = "#conv" + std::to_string(n++);
            conv.kind = RuleKind::Strict;
            conv.mode = Modality::Perm;
            conv.body = {{Modality::Obl, {a, neg}}};
            conv.head = {Modality::Perm, {a, neg}};
            t.rules.push_back(std::move(conv));
        }
    }
}

// Literals and rules are interned to dense integer ids up front so the
// fixpoint sweeps run over flat vectors instead of map lookups.
struct Engine {
    struct GroundRule {
        RuleKind kind;
        int head;
        std::vector<int> body;
    };

    std::vector<ModalLiteral> literals;
    std::map<ModalLiteral, int> index;
    std::vector<GroundRule> rules;
    std::vector<char> is_fact;
    std::vector<std::vector<int>> strict_for, sd_for, all_for;  // rule ids by head
    std::vector<std::vector<int>> conflicts;                    // literal ids
    std::set<std::pair<int, int>> sup;                          // rule id pairs

    std::vector<ProofStatus> delta, partial;

    int intern(const ModalLiteral& l) {
        auto [it, inserted] = index.emplace(l, static_cast<int>(literals.size()));
        if (inserted) literals.push_back(l);
        return it->second;
    }

    explicit Engine(const Theory& t) {
        for (const auto& f : t.facts) intern(f);
        std::map<std::string, std::vector<int>> by_label;
        for (const auto& r : t.rules) {
            GroundRule g;
            g.kind = r.kind;
            g.head = intern(r.head);
            for (const auto& b : r.body) g.body.push_back(intern(b));
            by_label[r.label].push_back(static_cast<int>(rules.size()));
            rules.push_back(std::move(g));
        }
        // Close the universe under the conflict relation so every potential
        // attacker has a status; conflict sets of new literals fold back in.
        for (size_t i = 0; i < literals.size(); ++i)
            for (const auto& c : conflict_set(literals[i])) intern(c);

        const int n = static_cast<int>(literals.size());
        is_fact.assign(n, 0);
        for (const auto& f : t.facts) is_fact[index.at(f)] = 1;
        strict_for.resize(n);
        sd_for.resize(n);
        all_for.resize(n);
        for (int r = 0; r < static_cast<int>(rules.size()); ++r) {
            all_for[rules[r].head].push_back(r);
            if (rules[r].kind != RuleKind::Defeater) sd_for[rules[r].head].push_back(r);
            if (rules[r].kind == RuleKind::Strict) strict_for[rules[r].head].push_back(r);
        }
        conflicts.resize(n);
        for (int i = 0; i < n; ++i)
            for (const auto& c : conflict_set(literals[i]))
                conflicts[i].push_back(index.at(c));
        for (const auto& [winner, loser] : t.superiority) {
            auto w = by_label.find(winner);
            auto l = by_label.find(loser);
            if (w == by_label.end() || l == by_label.end()) continue;
            for (int wr : w->second)
                for (int lr : l->second) sup.emplace(wr, lr);
        }
        delta.assign(n, ProofStatus::Undetermined);
        partial.assign(n, ProofStatus::Undetermined);
    }

    bool all_proved(const std::vector<ProofStatus>& st, const std::vector<int>& lits) const {
        return std::all_of(lits.begin(), lits.end(),
                           [&](int l) { return st[l] == ProofStatus::Proved; });
    }
    bool some_disproved(const std::vector<ProofStatus>& st,
                        const std::vector<int>& lits) const {
        return std::any_of(lits.begin(), lits.end(),
                           [&](int l) { return st[l] == ProofStatus::Disproved; });
    }

    bool beats(int winner, int loser) const { return sup.count({winner, loser}) != 0; }

    // +Delta: fact, or a strict rule with a definitely-proved body.
    bool plus_delta(int q) const {
        if (is_fact[q]) return true;
        for (int r : strict_for[q])
            if (all_proved(delta, rules[r].body)) return true;
        return false;
    }

    // -Delta: not a fact and every strict rule is definitely blocked.
    bool minus_delta(int q) const {
        if (is_fact[q]) return false;
        for (int r : strict_for[q])
            if (!some_disproved(delta, rules[r].body)) return false;
        return true;
    }

    bool plus_partial(int q) const {
        if (delta[q] == ProofStatus::Proved) return true;
        for (int c : conflicts[q])
            if (delta[c] != ProofStatus::Disproved) return false;
        bool supported = false;
        for (int r : sd_for[q])
            if (all_proved(partial, rules[r].body)) { supported = true; break; }
        if (!supported) return false;
        // Every attacker must be blocked or beaten by an applicable rule for q.
        for (int c : conflicts[q]) {
            for (int s : all_for[c]) {
                if (some_disproved(partial, rules[s].body)) continue;
                bool beaten = false;
                for (int u : sd_for[q])
                    if (all_proved(partial, rules[u].body) && beats(u, s)) { beaten = true; break; }
                if (!beaten) return false;
            }
        }
        return true;
    }

    bool minus_partial(int q) const {
        if (delta[q] != ProofStatus::Disproved) return false;
        for (int c : conflicts[q])
            if (delta[c] == ProofStatus::Proved) return true;
        bool all_blocked = true;
        for (int r : sd_for[q])
            if (!some_disproved(partial, rules[r].body)) { all_blocked = false; break; }
        if (all_blocked) return true;
        // An applicable attacker that no applicable rule for q outranks.
        for (int c : conflicts[q]) {
            for (int s : all_for[c]) {
                if (!all_proved(partial, rules[s].body)) continue;
                bool beatable = false;
                for (int u : sd_for[q])
                    if (!some_disproved(partial, rules[u].body) && beats(u, s)) { beatable = true; break; }
                if (!beatable) return true;
            }
        }
        return false;
    }

    ConclusionSet run() {
        const int n = static_cast<int>(literals.size());
        bool changed = true;
        while (changed) {
            changed = false;
            for (int q = 0; q < n; ++q) {
                if (delta[q] == ProofStatus::Undetermined) {
                    if (plus_delta(q)) { delta[q] = ProofStatus::Proved; changed = true; }
                    else if (minus_delta(q)) { delta[q] = ProofStatus::Disproved; changed = true; }
                }
                if (partial[q] == ProofStatus::Undetermined) {
                    if (plus_partial(q)) { partial[q] = ProofStatus::Proved; changed = true; }
                    else if (minus_partial(q)) { partial[q] = ProofStatus::Disproved; changed = true; }
                }
            }
        }
        ConclusionSet::Map out;
        for (int q = 0; q < n; ++q) out[literals[q]] = {delta[q], partial[q]};
        return ConclusionSet(std::move(out));
    }
};

}  // namespace

ConclusionSet compute_conclusions(const Theory& t) {
    if (!t.is_ground()) throw Error("compute_conclusions requires a ground theory");
    if (t.modal_conversion) {
        Theory expanded = t;
        add_conversion_rules(expanded);
        return Engine(expanded).run();
    }
    return Engine(t).run();
}

bool query(const ConclusionSet& c, ProofTag tag, const ModalLiteral& l) {
    Conclusion con = c.get(l);
    ProofStatus s = tag.strength == Strength::Delta ? con.delta : con.partial;
    return tag.polarity == Polarity::Plus ? s == ProofStatus::Proved
                                          : s == ProofStatus::Disproved;
}

std::vector<std::pair<ModalLiteral, ModalLiteral>> incoherent_pairs(const ConclusionSet& c) {
    std::vector<std::pair<ModalLiteral, ModalLiteral>> out;
    for (const auto& [l, con] : c.entries()) {
        if (con.partial != ProofStatus::Proved) continue;
        for (const auto& k : conflict_set(l)) {
            if (k < l) continue;  // report each pair once
            if (c.get(k).partial == ProofStatus::Proved) out.emplace_back(l, k);
        }
    }
    return out;
}

bool is_coherent(const ConclusionSet& c) { return incoherent_pairs(c).empty(); }

// ---------------------------------------------------------------------------
// Text forms

std::string to_string(const Term& t) {
    // Uppercase-initial names read back as variables, so constants that
    // would be misread are quoted.
    if (!t.is_variable() &&
        (t.name.empty() || std::isupper(static_cast<unsigned char>(t.name[0]))))
        return "'" + t.name + "'";
    return t.name;
}

std::string to_string(const Atom& a) {
    if (a.args.empty()) return a.predicate;
    std::string out = a.predicate + "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(a.args[i]);
    }
    return out + ")";
}

std::string to_string(const Literal& l) {
    return (l.negated ? "~" : "") + to_string(l.atom);
}

std::string to_string(const ModalLiteral& l) {
    switch (l.modality) {
        case Modality::Obl: return "[O]" + to_string(l.literal);
        case Modality::Perm: return "[P]" + to_string(l.literal);
        default: return to_string(l.literal);
    }
}

std::string to_string(const Rule& r) {
    std::string arrow;
    switch (r.kind) {
        case RuleKind::Strict: arrow = "->"; break;
        case RuleKind::Defeasible: arrow = "=>"; break;
        case RuleKind::Defeater: arrow = "~>"; break;
    }
    if (r.mode == Modality::Obl) arrow += "o";
    else if (r.mode == Modality::Perm) arrow += "p";
    std::string out = r.label + ": ";
    for (size_t i = 0; i < r.body.size(); ++i) {
        if (i) out += ", ";
        out += to_string(r.body[i]);
    }
    if (!r.body.empty()) out += " ";
    // The arrow mode already carries the head modality.
    out += arrow + " " + to_string(r.head.literal) + ".";
    return out;
}

std::string to_string(ProofStatus s) {
    switch (s) {
        case ProofStatus::Proved: return "proved";
        case ProofStatus::Disproved: return "disproved";
        default: return "undetermined";
    }
}

std::string to_string(ProofTag t) {
    std::string out = t.polarity == Polarity::Plus ? "+" : "-";
    out += t.strength == Strength::Delta ? "D" : "d";
    return out;
}

std::string serialize_theory(const Theory& t) {
    std::ostringstream out;
    if (!t.modal_conversion) out << "modal_conversion off.\n";
    for (const auto& f : t.facts) out << "fact " << to_string(f) << ".\n";
    for (const auto& r : t.rules) out << to_string(r) << "\n";
    for (const auto& [w, l] : t.superiority) out << w << " > " << l << ".\n";
    return out.str();
}

}  // namespace tdu::dl
