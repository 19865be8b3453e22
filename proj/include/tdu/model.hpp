#ifndef TDU_MODEL_HPP
#define TDU_MODEL_HPP

// Data model: data items, conditions, deontic operators and usage
// policies, with the XML documents as the normative encoding and a mirrored
// JSON encoding.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdu/scopes.hpp"

namespace tdu::model {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Xml, Json };

struct EntityId {
    std::string id;
    std::string type;
    auto operator<=>(const EntityId&) const = default;
};

struct EntityMetadata {
    std::string name;
    std::string type;
    std::string value;
    auto operator<=>(const EntityMetadata&) const = default;
};

struct EntityAttribute {
    std::string name;
    std::string type;
    std::string value;
    std::vector<EntityMetadata> metadata;  // at least one entry
    auto operator<=>(const EntityAttribute&) const = default;
};

struct DataItem {
    EntityId entity_id;
    std::optional<std::string> attribute_domain_name;
    std::vector<EntityAttribute> attributes;
    std::optional<std::vector<EntityMetadata>> domain_metadata;
    auto operator<=>(const DataItem&) const = default;
};

struct Condition {
    std::vector<std::string> temporality;
    std::vector<std::string> spatiality;
    std::vector<std::string> abstraction;
    std::vector<std::string> actor;    // actor class names
    std::vector<std::string> purpose;  // purpose values
    bool empty() const {
        return temporality.empty() && spatiality.empty() && abstraction.empty() &&
               actor.empty() && purpose.empty();
    }
    auto operator<=>(const Condition&) const = default;
};

enum class DeonticOperator { Obligation, Forbidden, Permission };

struct PolicyRule {
    DeonticOperator op = DeonticOperator::Permission;
    Condition condition;
    auto operator<=>(const PolicyRule&) const = default;
};

struct UsagePolicy {
    std::string name;  // URI
    std::vector<PolicyRule> rules;
    auto operator<=>(const UsagePolicy&) const = default;
};

DataItem parse_data_item(const std::string& document, Format format);
std::string serialize_data_item(const DataItem& item, Format format);

UsagePolicy parse_usage_policy(const std::string& document, Format format = Format::Xml);
std::string serialize_usage_policy(const UsagePolicy& policy, Format format = Format::Xml);

std::string to_string(DeonticOperator op);
DeonticOperator operator_from_string(const std::string& name);

}  // namespace tdu::model

#endif
