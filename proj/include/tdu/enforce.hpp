#ifndef TDU_ENFORCE_HPP
#define TDU_ENFORCE_HPP

// Trust enforcement: a consumer request becomes a defeasible obligation rule
// proved against the merged policy theory; the outcome is Granted exactly
// when the obligation is defeasibly provable.

#include <optional>
#include <string>
#include <vector>

#include "tdu/compiler.hpp"
#include "tdu/dl.hpp"
#include "tdu/model.hpp"

namespace tdu::enforce {

struct ConsumerRequest {
    std::string subject;      // constant identifier
    std::string actor_class;  // DataOwner, MunicipalAuthority, CommercialOperator
    std::string spatial;
    std::string temporal;
    std::string abstraction;
    std::optional<std::string> purpose;
    std::string target_type;  // data selector: entity type pattern ("" = all)
    std::string target_id;    // data selector: entity id pattern ("" = all)

    void validate() const;  // scope values belong to their dimensions
};

enum class Outcome { Granted, Refused };

struct TraceRuleStep {
    std::string label;
    bool applicable = false;  // all body literals defeasibly proved
};

struct TraceSuperiorityStep {
    std::string winner;
    std::string loser;
    bool consulted_outcome = false;  // winner actually beat loser here
};

struct TraceLiteral {
    dl::ModalLiteral literal;
    dl::Conclusion conclusion;
    std::vector<TraceRuleStep> supporting;  // rules with this head
    std::vector<TraceRuleStep> attacking;   // rules for conflicting literals
    std::vector<TraceSuperiorityStep> superiority;
};

struct ProofTrace {
    std::string theory;  // serialized ground theory; replaying it reproduces the tags
    std::vector<TraceLiteral> literals;
};

struct EffectiveConstraints {
    std::string spatial;
    std::string temporal;
    std::string abstraction;
};

struct RefusalReason {
    dl::ModalLiteral literal;
    dl::Conclusion conclusion;
    std::string note;
};

struct Decision {
    Outcome outcome = Outcome::Refused;
    std::optional<EffectiveConstraints> effective_constraints;  // set when Granted
    std::vector<RefusalReason> refusal_reasons;                 // set when Refused
    ProofTrace trace;
};

// The defeasible obligation rule of the request: actor guard plus one [P]
// scope literal per requested dimension, head [O]ConsumerRequest(X).
dl::Rule build_request_rule(const ConsumerRequest& r);

Decision evaluate(const ConsumerRequest& r,
                  const std::vector<model::UsagePolicy>& policies,
                  const std::vector<dl::ModalLiteral>& facts);

std::string explain(const Decision& d);

std::string to_string(Outcome o);

// Mirrored JSON encoding for the service layer.
std::string decision_to_json(const Decision& d, int indent = -1);
std::string request_to_json(const ConsumerRequest& r, int indent = -1);
ConsumerRequest request_from_json(const std::string& text);

}  // namespace tdu::enforce

#endif
