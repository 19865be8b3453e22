#ifndef TDU_DL_HPP
#define TDU_DL_HPP

// Ground modal defeasible logic: theories made of facts, strict/defeasible/
// defeater rules and a superiority relation, evaluated to the four proof
// tags (+Delta/-Delta/+partial/-partial) by least-fixpoint iteration.

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdu::dl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Term {
    enum class Kind { Constant, Variable };
    Kind kind = Kind::Constant;
    std::string name;

    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
    bool is_variable() const { return kind == Kind::Variable; }
    auto operator<=>(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;
    auto operator<=>(const Atom&) const = default;
};

struct Literal {
    Atom atom;
    bool negated = false;  // single boolean; double negation never represented
    Literal complement() const { return {atom, !negated}; }
    auto operator<=>(const Literal&) const = default;
};

// Fact = unmoded (constitutive) literal; Obl/Perm are the deontic modes.
enum class Modality { Fact, Obl, Perm };

struct ModalLiteral {
    Modality modality = Modality::Fact;
    Literal literal;
    auto operator<=>(const ModalLiteral&) const = default;
};

enum class RuleKind { Strict, Defeasible, Defeater };

struct Rule {
    std::string label;
    RuleKind kind = RuleKind::Defeasible;
    Modality mode = Modality::Fact;  // always equals head.modality
    std::vector<ModalLiteral> body;
    ModalLiteral head;
    auto operator<=>(const Rule&) const = default;
};

struct Theory {
    std::vector<ModalLiteral> facts;
    std::vector<Rule> rules;
    std::vector<std::pair<std::string, std::string>> superiority;  // (winner, loser)
    // When on, every obligation implicitly licenses the matching permission
    // ([O]l yields [P]l through synthesized strict rules).
    bool modal_conversion = true;

    bool is_ground() const;
    void validate() const;  // label uniqueness, safety, superiority well-formedness
};

enum class Polarity { Plus, Minus };
enum class Strength { Delta, Partial };

struct ProofTag {
    Polarity polarity;
    Strength strength;
};

inline constexpr ProofTag kPlusDelta{Polarity::Plus, Strength::Delta};
inline constexpr ProofTag kMinusDelta{Polarity::Minus, Strength::Delta};
inline constexpr ProofTag kPlusPartial{Polarity::Plus, Strength::Partial};
inline constexpr ProofTag kMinusPartial{Polarity::Minus, Strength::Partial};

enum class ProofStatus { Undetermined, Proved, Disproved };

struct Conclusion {
    ProofStatus delta = ProofStatus::Undetermined;
    ProofStatus partial = ProofStatus::Undetermined;
    auto operator<=>(const Conclusion&) const = default;
};

class ConclusionSet {
public:
    using Map = std::map<ModalLiteral, Conclusion>;

    ConclusionSet() = default;
    explicit ConclusionSet(Map m) : entries_(std::move(m)) {}

    // Literals outside the computed set are vacuously disproved at both
    // strengths (no fact, no rule can support them).
    Conclusion get(const ModalLiteral& l) const {
        auto it = entries_.find(l);
        if (it == entries_.end()) return {ProofStatus::Disproved, ProofStatus::Disproved};
        return it->second;
    }

    const Map& entries() const { return entries_; }
    bool operator==(const ConclusionSet&) const = default;

private:
    Map entries_;
};

// The literals that attack l. Perm p and Perm ~p are compatible.
std::vector<ModalLiteral> conflict_set(const ModalLiteral& l);

// Instantiates every rule variable with every constant of the active domain.
// Ground rule labels get a deterministic substitution suffix. Throws Error
// naming the rule when a head variable does not occur in the body.
Theory ground_theory(const Theory& t);

// Proof-tag fixpoint over a ground theory. Literals whose status is not
// settled by the fixpoint (cyclic dependencies) stay Undetermined.
ConclusionSet compute_conclusions(const Theory& t);

bool query(const ConclusionSet& c, ProofTag tag, const ModalLiteral& l);

// Conflicting literal pairs that are both defeasibly proved (includes pairs
// forced by an inconsistent strict part).
std::vector<std::pair<ModalLiteral, ModalLiteral>> incoherent_pairs(const ConclusionSet& c);
bool is_coherent(const ConclusionSet& c);

// Text forms in the theory language understood by the DSL parser.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const ModalLiteral& l);
std::string to_string(const Rule& r);
std::string to_string(ProofStatus s);
std::string to_string(ProofTag t);
std::string serialize_theory(const Theory& t);

}  // namespace tdu::dl

#endif
