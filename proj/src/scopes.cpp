#include "tdu/scopes.hpp"

#include <algorithm>

namespace tdu::scopes {

namespace {

const std::vector<std::string> kTemporal = {"secondly", "minutely", "hourly", "daily",
                                            "weekly",   "monthly",  "yearly"};
const std::vector<std::string> kSpatial = {"street", "zone"};
const std::vector<std::string> kAbstraction = {"detail", "aggregation", "statistic"};
const std::vector<std::string> kPurpose = {"CommercialUse"};
const std::vector<std::string> kActors = {"DataOwner", "MunicipalAuthority",
                                          "CommercialOperator"};

std::vector<std::string> with_any(const std::vector<std::string>& levels) {
    std::vector<std::string> out = levels;
    out.push_back(kAny);
    return out;
}

}  // namespace

const std::vector<std::string>& levels(Dimension d) {
    switch (d) {
        case Dimension::Temporal: return kTemporal;
        case Dimension::Spatial: return kSpatial;
        case Dimension::Abstraction: return kAbstraction;
        case Dimension::Purpose: return kPurpose;
    }
    throw Error("unknown dimension");
}

const std::vector<std::string>& values(Dimension d) {
    static const std::vector<std::string> t = with_any(kTemporal);
    static const std::vector<std::string> s = with_any(kSpatial);
    static const std::vector<std::string> a = with_any(kAbstraction);
    static const std::vector<std::string> p = with_any(kPurpose);
    switch (d) {
        case Dimension::Temporal: return t;
        case Dimension::Spatial: return s;
        case Dimension::Abstraction: return a;
        case Dimension::Purpose: return p;
    }
    throw Error("unknown dimension");
}

bool is_valid(Dimension d, const std::string& value) {
    const auto& v = values(d);
    return std::find(v.begin(), v.end(), value) != v.end();
}

std::optional<int> chain_index(Dimension d, const std::string& value) {
    if (d == Dimension::Purpose || value == kAny) return std::nullopt;
    const auto& chain = levels(d);
    auto it = std::find(chain.begin(), chain.end(), value);
    if (it == chain.end()) return std::nullopt;
    return static_cast<int>(it - chain.begin());
}

bool subsumes(const std::string& granted, const std::string& requested, Dimension d) {
    if (!is_valid(d, granted))
        throw Error("value '" + granted + "' does not belong to dimension " + to_string(d));
    if (!is_valid(d, requested))
        throw Error("value '" + requested + "' does not belong to dimension " + to_string(d));
    if (granted == kAny) return true;
    if (requested == granted) return true;
    if (d == Dimension::Purpose) return false;  // no order: exact match or wildcard only
    auto g = chain_index(d, granted);
    auto r = chain_index(d, requested);
    if (!g || !r) return false;  // requested == any needs granted == any
    return *r > *g;
}

const std::vector<std::string>& actor_classes() { return kActors; }

std::string actor_predicate(const std::string& actor_class) {
    if (actor_class == "DataOwner") return "DO";
    if (actor_class == "MunicipalAuthority") return "MA";
    if (actor_class == "CommercialOperator") return "CO";
    throw Error("unknown actor class: " + actor_class);
}

bool is_actor_class(const std::string& name) {
    return std::find(kActors.begin(), kActors.end(), name) != kActors.end();
}

std::string scope_predicate(Dimension d) {
    switch (d) {
        case Dimension::Temporal: return "TemporalScope";
        case Dimension::Spatial: return "SpatialScope";
        case Dimension::Abstraction: return "AbstractScope";
        case Dimension::Purpose: return "PurposeScope";
    }
    throw Error("unknown dimension");
}

std::string to_string(Dimension d) {
    switch (d) {
        case Dimension::Temporal: return "temporal";
        case Dimension::Spatial: return "spatial";
        case Dimension::Abstraction: return "abstraction";
        case Dimension::Purpose: return "purpose";
    }
    throw Error("unknown dimension");
}

Dimension dimension_from_string(const std::string& name) {
    if (name == "temporal") return Dimension::Temporal;
    if (name == "spatial") return Dimension::Spatial;
    if (name == "abstraction") return Dimension::Abstraction;
    if (name == "purpose") return Dimension::Purpose;
    throw Error("unknown dimension: " + name);
}

}  // namespace tdu::scopes
