#ifndef TDU_SCOPES_HPP
#define TDU_SCOPES_HPP

// Granularity vocabulary: the temporal/spatial/abstraction chains ordered by
// coarseness, the unordered purpose values, the actor classes, and the
// subsumption test a grant at one level implies for coarser levels.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdu::scopes {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Dimension { Temporal, Spatial, Abstraction, Purpose };

inline constexpr const char* kAny = "any";

// Levels finest-first; `any` is the wildcard, not a chain member.
const std::vector<std::string>& levels(Dimension d);

// All values accepted for a dimension (levels plus `any`).
const std::vector<std::string>& values(Dimension d);

bool is_valid(Dimension d, const std::string& value);

// Position in the coarseness chain; nullopt for `any` or unordered purpose.
std::optional<int> chain_index(Dimension d, const std::string& value);

// True iff granting `granted` also covers `requested`: wildcard grant,
// exact match, or requested strictly coarser. Purpose has no order.
// Throws Error when a value does not belong to the dimension.
bool subsumes(const std::string& granted, const std::string& requested, Dimension d);

const std::vector<std::string>& actor_classes();  // DataOwner, MunicipalAuthority, CommercialOperator

// Actor class name -> rule predicate (DataOwner -> DO, ...).
std::string actor_predicate(const std::string& actor_class);
bool is_actor_class(const std::string& name);

std::string scope_predicate(Dimension d);  // TemporalScope, SpatialScope, ...
std::string to_string(Dimension d);
Dimension dimension_from_string(const std::string& name);

}  // namespace tdu::scopes

#endif
