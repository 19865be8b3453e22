#include "tdu/model.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <map>
#include <sstream>

#include "json.hpp"

namespace tdu::model {

namespace pt = boost::property_tree;
using nlohmann::json;
using scopes::Dimension;

namespace {

bool is_meta_node(const std::string& name) {
    return name == "<xmlattr>" || name == "<xmlcomment>";
}

std::string element_for_value(Dimension d, const std::string& value) {
    if (value == scopes::kAny) return "Any";
    if (d == Dimension::Purpose || d == Dimension::Temporal || d == Dimension::Spatial ||
        d == Dimension::Abstraction) {
        if (d == Dimension::Purpose) return value;  // CommercialUse keeps its case
        std::string out = value;
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
        return out;
    }
    return value;
}

std::string value_for_element(Dimension d, const std::string& element) {
    for (const auto& v : scopes::values(d))
        if (element_for_value(d, v) == element) return v;
    throw Error("unknown scope value: " + element);
}

pt::ptree parse_xml(const std::string& document) {
    try {
        std::istringstream in(document);
        pt::ptree tree;
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
        return tree;
    } catch (const pt::xml_parser_error& e) {
        throw Error(std::string("malformed XML document: ") + e.what());
    }
}

std::string write_xml(const pt::ptree& tree) {
    std::ostringstream out;
    pt::write_xml(out, tree,
                  pt::xml_parser::xml_writer_settings<std::string>(' ', 2));
    return out.str();
}

json parse_json(const std::string& document) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(std::string("malformed JSON document: ") + e.what());
    }
}

const pt::ptree& require_child(const pt::ptree& node, const std::string& name) {
    auto it = node.find(name);
    if (it == node.not_found()) throw Error("missing required element: " + name);
    return it->second;
}

std::string require_text(const pt::ptree& node, const std::string& name) {
    return require_child(node, name).get_value<std::string>();
}

// --- DataItem ---------------------------------------------------------------

EntityMetadata metadata_from_xml(const pt::ptree& node) {
    return {require_text(node, "Name"), require_text(node, "Type"),
            require_text(node, "Value")};
}

EntityAttribute attribute_from_xml(const pt::ptree& node) {
    EntityAttribute attr;
    attr.name = require_text(node, "Name");
    attr.type = require_text(node, "Type");
    attr.value = require_text(node, "EntityValue");
    for (const auto& [name, child] : node) {
        if (is_meta_node(name)) continue;
        if (name == "EntityMetadata") attr.metadata.push_back(metadata_from_xml(child));
        else if (name != "Name" && name != "Type" && name != "EntityValue")
            throw Error("unknown element: " + name);
    }
    if (attr.metadata.empty())
        throw Error("missing required element: EntityMetadata");
    return attr;
}

DataItem data_item_from_xml(const pt::ptree& root) {
    const pt::ptree& item_node = require_child(root, "DataItem");
    const pt::ptree& element = require_child(item_node, "EntityElement");
    DataItem item;
    const pt::ptree& id_node = require_child(element, "EntityID");
    item.entity_id = {require_text(id_node, "Id"), require_text(id_node, "Type")};

    for (const auto& [name, child] : element) {
        if (is_meta_node(name) || name == "EntityID") continue;
        if (name == "AttributeDomainName") {
            item.attribute_domain_name = child.get_value<std::string>();
        } else if (name == "EntityAttributeList") {
            for (const auto& [aname, anode] : child) {
                if (is_meta_node(aname)) continue;
                if (aname != "EntityAttribute") throw Error("unknown element: " + aname);
                item.attributes.push_back(attribute_from_xml(anode));
            }
        } else if (name == "DomainMetadata") {
            std::vector<EntityMetadata> md;
            for (const auto& [mname, mnode] : child) {
                if (is_meta_node(mname)) continue;
                if (mname != "EntityMetadata") throw Error("unknown element: " + mname);
                md.push_back(metadata_from_xml(mnode));
            }
            item.domain_metadata = std::move(md);
        } else {
            throw Error("unknown element: " + name);
        }
    }
    if (item_node.find("EntityElement") == item_node.not_found())
        throw Error("missing required element: EntityElement");
    if (element.find("EntityAttributeList") == element.not_found())
        throw Error("missing required element: EntityAttributeList");
    return item;
}

void metadata_to_xml(pt::ptree& parent, const std::string& tag, const EntityMetadata& md) {
    pt::ptree node;
    node.add("Name", md.name);
    node.add("Type", md.type);
    node.add("Value", md.value);
    parent.add_child(tag, node);
}

pt::ptree data_item_to_xml(const DataItem& item) {
    pt::ptree element;
    pt::ptree id_node;
    id_node.add("Id", item.entity_id.id);
    id_node.add("Type", item.entity_id.type);
    element.add_child("EntityID", id_node);
    if (item.attribute_domain_name)
        element.add("AttributeDomainName", *item.attribute_domain_name);
    pt::ptree list;
    for (const auto& attr : item.attributes) {
        pt::ptree a;
        a.add("Name", attr.name);
        a.add("Type", attr.type);
        a.add("EntityValue", attr.value);
        for (const auto& md : attr.metadata) metadata_to_xml(a, "EntityMetadata", md);
        list.add_child("EntityAttribute", a);
    }
    element.add_child("EntityAttributeList", list);
    if (item.domain_metadata) {
        pt::ptree dm;
        for (const auto& md : *item.domain_metadata) metadata_to_xml(dm, "EntityMetadata", md);
        element.add_child("DomainMetadata", dm);
    }
    pt::ptree root;
    pt::ptree item_node;
    item_node.add_child("EntityElement", element);
    root.add_child("DataItem", item_node);
    return root;
}

EntityMetadata metadata_from_json(const json& j) {
    for (const auto& key : {"Name", "Type", "Value"})
        if (!j.contains(key)) throw Error(std::string("missing required element: ") + key);
    return {j.at("Name").get<std::string>(), j.at("Type").get<std::string>(),
            j.at("Value").get<std::string>()};
}

json metadata_to_json(const EntityMetadata& md) {
    return {{"Name", md.name}, {"Type", md.type}, {"Value", md.value}};
}

DataItem data_item_from_json(const json& root) {
    if (!root.contains("DataItem")) throw Error("missing required element: DataItem");
    const json& item_node = root.at("DataItem");
    if (!item_node.contains("EntityElement"))
        throw Error("missing required element: EntityElement");
    const json& element = item_node.at("EntityElement");
    if (!element.contains("EntityID")) throw Error("missing required element: EntityID");
    const json& id = element.at("EntityID");
    if (!id.contains("Id")) throw Error("missing required element: Id");
    if (!id.contains("Type")) throw Error("missing required element: Type");

    DataItem item;
    item.entity_id = {id.at("Id").get<std::string>(), id.at("Type").get<std::string>()};
    if (element.contains("AttributeDomainName"))
        item.attribute_domain_name = element.at("AttributeDomainName").get<std::string>();
    if (!element.contains("EntityAttributeList"))
        throw Error("missing required element: EntityAttributeList");
    for (const json& a : element.at("EntityAttributeList")) {
        EntityAttribute attr;
        attr.name = a.at("Name").get<std::string>();
        attr.type = a.at("Type").get<std::string>();
        attr.value = a.at("EntityValue").get<std::string>();
        if (!a.contains("EntityMetadata") || a.at("EntityMetadata").empty())
            throw Error("missing required element: EntityMetadata");
        for (const json& m : a.at("EntityMetadata")) attr.metadata.push_back(metadata_from_json(m));
        item.attributes.push_back(std::move(attr));
    }
    if (element.contains("DomainMetadata")) {
        std::vector<EntityMetadata> md;
        for (const json& m : element.at("DomainMetadata")) md.push_back(metadata_from_json(m));
        item.domain_metadata = std::move(md);
    }
    return item;
}

json data_item_to_json(const DataItem& item) {
    json element;
    element["EntityID"] = {{"Id", item.entity_id.id}, {"Type", item.entity_id.type}};
    if (item.attribute_domain_name)
        element["AttributeDomainName"] = *item.attribute_domain_name;
    json attrs = json::array();
    for (const auto& a : item.attributes) {
        json attr = {{"Name", a.name}, {"Type", a.type}, {"EntityValue", a.value}};
        json md = json::array();
        for (const auto& m : a.metadata) md.push_back(metadata_to_json(m));
        attr["EntityMetadata"] = md;
        attrs.push_back(attr);
    }
    element["EntityAttributeList"] = attrs;
    if (item.domain_metadata) {
        json dm = json::array();
        for (const auto& m : *item.domain_metadata) dm.push_back(metadata_to_json(m));
        element["DomainMetadata"] = dm;
    }
    return {{"DataItem", {{"EntityElement", element}}}};
}

// --- UsagePolicy ------------------------------------------------------------

struct DimensionSlot {
    Dimension dim;
    const char* container;  // Temporality, Spatiality, ...
    const char* scope;      // TemporalScope, SpatialScope, ...
    std::vector<std::string> Condition::* field;
};

const DimensionSlot kSlots[] = {
    {Dimension::Temporal, "Temporality", "TemporalScope", &Condition::temporality},
    {Dimension::Spatial, "Spatiality", "SpatialScope", &Condition::spatiality},
    {Dimension::Abstraction, "Abstraction", "AbstractScope", &Condition::abstraction},
    {Dimension::Purpose, "Purpose", "PurposeScope", &Condition::purpose},
};

void parse_actor_scope(const pt::ptree& scope_node, Condition& cond) {
    for (const auto& [name, _] : scope_node) {
        if (is_meta_node(name)) continue;
        if (!scopes::is_actor_class(name)) throw Error("unknown scope value: " + name);
        cond.actor.push_back(name);
    }
}

void parse_condition_xml(const pt::ptree& node, Condition& cond) {
    for (const auto& [name, child] : node) {
        if (is_meta_node(name)) continue;
        if (name == "Actor") {
            for (const auto& [sname, snode] : child) {
                if (is_meta_node(sname)) continue;
                if (sname != "ActorScope") throw Error("unknown element: " + sname);
                parse_actor_scope(snode, cond);
            }
            continue;
        }
        const DimensionSlot* slot = nullptr;
        for (const auto& s : kSlots)
            if (name == s.container) { slot = &s; break; }
        if (!slot) throw Error("unknown element: " + name);
        for (const auto& [sname, snode] : child) {
            if (is_meta_node(sname)) continue;
            if (sname != slot->scope) throw Error("unknown element: " + sname);
            for (const auto& [vname, _] : snode) {
                if (is_meta_node(vname)) continue;
                (cond.*(slot->field)).push_back(value_for_element(slot->dim, vname));
            }
        }
    }
}

DeonticOperator parse_operator_xml(const pt::ptree& node) {
    std::vector<DeonticOperator> set;
    for (const auto& [name, _] : node) {
        if (is_meta_node(name)) continue;
        set.push_back(operator_from_string(name));
    }
    if (set.size() != 1)
        throw Error("operator element must set exactly one operator, got " +
                    std::to_string(set.size()));
    return set.front();
}

UsagePolicy usage_policy_from_xml(const pt::ptree& root) {
    const pt::ptree& policy_node = require_child(root, "UsagePolicy");
    UsagePolicy policy;
    const pt::ptree& name_node = require_child(policy_node, "Name");
    policy.name = name_node.get<std::string>("URI", name_node.get_value<std::string>());

    for (const auto& [name, child] : policy_node) {
        if (is_meta_node(name) || name == "Name") continue;
        if (name != "Rule") throw Error("unknown element: " + name);
        PolicyRule rule;
        bool has_operator = false;
        for (const auto& [rname, rnode] : child) {
            if (is_meta_node(rname)) continue;
            if (rname == "Operator") {
                rule.op = parse_operator_xml(rnode);
                has_operator = true;
            } else if (rname == "Condition") {
                parse_condition_xml(rnode, rule.condition);
            } else {
                throw Error("unknown element: " + rname);
            }
        }
        if (!has_operator)
            throw Error("operator element must set exactly one operator, got 0");
        policy.rules.push_back(std::move(rule));
    }
    return policy;
}

pt::ptree usage_policy_to_xml(const UsagePolicy& policy) {
    pt::ptree policy_node;
    pt::ptree name_node;
    name_node.add("URI", policy.name);
    policy_node.add_child("Name", name_node);
    for (const auto& rule : policy.rules) {
        pt::ptree rule_node;
        pt::ptree op_node;
        op_node.add(to_string(rule.op), "");
        rule_node.add_child("Operator", op_node);
        pt::ptree cond_node;
        for (const auto& slot : kSlots) {
            const auto& vals = rule.condition.*(slot.field);
            if (vals.empty()) continue;
            pt::ptree scope_node;
            for (const auto& v : vals) scope_node.add(element_for_value(slot.dim, v), "");
            pt::ptree container;
            container.add_child(slot.scope, scope_node);
            cond_node.add_child(slot.container, container);
        }
        if (!rule.condition.actor.empty()) {
            pt::ptree scope_node;
            for (const auto& a : rule.condition.actor) scope_node.add(a, "");
            pt::ptree container;
            container.add_child("ActorScope", scope_node);
            cond_node.add_child("Actor", container);
        }
        rule_node.add_child("Condition", cond_node);
        policy_node.add_child("Rule", rule_node);
    }
    pt::ptree root;
    root.add_child("UsagePolicy", policy_node);
    return root;
}

Condition condition_from_json(const json& j) {
    Condition cond;
    for (const auto& slot : kSlots) {
        if (!j.contains(slot.container)) continue;
        for (const json& v : j.at(slot.container)) {
            std::string value = v.get<std::string>();
            if (!scopes::is_valid(slot.dim, value))
                throw Error("unknown scope value: " + value);
            (cond.*(slot.field)).push_back(value);
        }
    }
    if (j.contains("Actor")) {
        for (const json& v : j.at("Actor")) {
            std::string value = v.get<std::string>();
            if (!scopes::is_actor_class(value)) throw Error("unknown scope value: " + value);
            cond.actor.push_back(value);
        }
    }
    return cond;
}

json condition_to_json(const Condition& cond) {
    json j = json::object();
    for (const auto& slot : kSlots)
        if (!(cond.*(slot.field)).empty()) j[slot.container] = cond.*(slot.field);
    if (!cond.actor.empty()) j["Actor"] = cond.actor;
    return j;
}

UsagePolicy usage_policy_from_json(const json& root) {
    if (!root.contains("UsagePolicy")) throw Error("missing required element: UsagePolicy");
    const json& p = root.at("UsagePolicy");
    if (!p.contains("Name")) throw Error("missing required element: Name");
    UsagePolicy policy;
    policy.name = p.at("Name").get<std::string>();
    if (p.contains("Rule")) {
        for (const json& r : p.at("Rule")) {
            if (!r.contains("Operator"))
                throw Error("operator element must set exactly one operator, got 0");
            PolicyRule rule;
            rule.op = operator_from_string(r.at("Operator").get<std::string>());
            if (r.contains("Condition")) rule.condition = condition_from_json(r.at("Condition"));
            policy.rules.push_back(std::move(rule));
        }
    }
    return policy;
}

json usage_policy_to_json(const UsagePolicy& policy) {
    json rules = json::array();
    for (const auto& r : policy.rules)
        rules.push_back({{"Operator", to_string(r.op)}, {"Condition", condition_to_json(r.condition)}});
    return {{"UsagePolicy", {{"Name", policy.name}, {"Rule", rules}}}};
}

}  // namespace

DataItem parse_data_item(const std::string& document, Format format) {
    if (format == Format::Xml) return data_item_from_xml(parse_xml(document));
    return data_item_from_json(parse_json(document));
}

std::string serialize_data_item(const DataItem& item, Format format) {
    if (format == Format::Xml) return write_xml(data_item_to_xml(item));
    return data_item_to_json(item).dump(2) + "\n";
}

UsagePolicy parse_usage_policy(const std::string& document, Format format) {
    if (format == Format::Xml) return usage_policy_from_xml(parse_xml(document));
    return usage_policy_from_json(parse_json(document));
}

std::string serialize_usage_policy(const UsagePolicy& policy, Format format) {
    if (format == Format::Xml) return write_xml(usage_policy_to_xml(policy));
    return usage_policy_to_json(policy).dump(2) + "\n";
}

std::string to_string(DeonticOperator op) {
    switch (op) {
        case DeonticOperator::Obligation: return "Obligation";
        case DeonticOperator::Forbidden: return "Forbidden";
        case DeonticOperator::Permission: return "Permission";
    }
    throw Error("unknown operator");
}

DeonticOperator operator_from_string(const std::string& name) {
    if (name == "Obligation") return DeonticOperator::Obligation;
    if (name == "Forbidden") return DeonticOperator::Forbidden;
    if (name == "Permission") return DeonticOperator::Permission;
    throw Error("unknown operator: " + name);
}

}  // namespace tdu::model
