#ifndef TDU_COMPILER_HPP
#define TDU_COMPILER_HPP

// Translates usage policies into defeasible theories: one defeasible
// rule per granted scope value, plus strict lattice-expansion rules so a
// permission at one level carries to every coarser level.

#include <string>
#include <vector>

#include "tdu/dl.hpp"
#include "tdu/model.hpp"

namespace tdu::compiler {

struct ConflictPair {
    std::string rule_a;
    std::string rule_b;
    dl::ModalLiteral head_a;
    dl::ModalLiteral head_b;
    auto operator<=>(const ConflictPair&) const = default;
};

// actor_class accepts either the class name (MunicipalAuthority) or its
// predicate (MA). Throws dl::Error for an unknown actor class.
dl::Theory compile_policy(const model::UsagePolicy& p, const std::string& actor_class);

// Actor class taken from the policy's own Actor conditions.
dl::Theory compile_policy(const model::UsagePolicy& p);

// Union of facts/rules/superiority; clashing labels get a source prefix and
// superiority pairs are rewritten consistently.
dl::Theory merge_theories(const std::vector<dl::Theory>& theories);

// Rule pairs with mutually conflicting heads and no superiority either way.
std::vector<ConflictPair> detect_conflicts(const dl::Theory& t);

// DSL-safe label prefix derived from a policy URI.
std::string label_prefix(const std::string& policy_name);

}  // namespace tdu::compiler

#endif
