#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"

namespace prefmon {

// Half-open bin [lo, hi) mapping a numeric reading onto a categorical value.
// An infinite bound leaves that side open.
struct NumericBin {
    std::string name;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

struct Attribute {
    std::string name;
    std::vector<std::string> values;  // value ids follow declaration order
    std::vector<NumericBin> bins;     // empty for purely categorical attributes

    bool numeric() const { return !bins.empty(); }
};

// Declares the attributes of a stream, the ordered domain of each, and the
// discretization of numeric attributes. Ids are dense indexes in declaration
// order, so interning is stable across runs.
class Schema {
public:
    Schema() = default;

    AttributeId add_categorical(std::string name, std::vector<std::string> values) {
        Attribute a;
        a.name = std::move(name);
        a.values = std::move(values);
        return add(std::move(a));
    }

    AttributeId add_numeric(std::string name, std::vector<NumericBin> bins) {
        Attribute a;
        a.name = std::move(name);
        for (const auto& b : bins) a.values.push_back(b.name);
        a.bins = std::move(bins);
        validate_bins(a);
        return add(std::move(a));
    }

    int attribute_count() const { return static_cast<int>(attrs_.size()); }

    const Attribute& attribute(AttributeId d) const { return attrs_.at(static_cast<size_t>(d)); }

    int domain_size(AttributeId d) const {
        return static_cast<int>(attribute(d).values.size());
    }

    std::optional<AttributeId> find_attribute(const std::string& name) const {
        auto it = attr_ids_.find(name);
        if (it == attr_ids_.end()) return std::nullopt;
        return it->second;
    }

    AttributeId attribute_id(const std::string& name) const {
        auto id = find_attribute(name);
        if (!id) throw SchemaViolation("unknown attribute: " + name);
        return *id;
    }

    std::optional<ValueId> find_value(AttributeId d, const std::string& name) const {
        const auto& m = value_ids_.at(static_cast<size_t>(d));
        auto it = m.find(name);
        if (it == m.end()) return std::nullopt;
        return it->second;
    }

    ValueId value_id(AttributeId d, const std::string& name) const {
        auto v = find_value(d, name);
        if (!v) {
            throw SchemaViolation("unknown value '" + name + "' for attribute " +
                                  attribute(d).name);
        }
        return *v;
    }

    const std::string& value_name(AttributeId d, ValueId v) const {
        const auto& vals = attribute(d).values;
        if (v < 0 || static_cast<size_t>(v) >= vals.size())
            throw UnknownValue("value id out of domain");
        return vals[static_cast<size_t>(v)];
    }

    // Discretize a numeric reading onto the attribute's bins.
    ValueId bin_of(AttributeId d, double x) const {
        const auto& a = attribute(d);
        if (!a.numeric()) throw SchemaMismatch("attribute " + a.name + " is not numeric");
        for (size_t i = 0; i < a.bins.size(); ++i) {
            if (x >= a.bins[i].lo && x < a.bins[i].hi) return static_cast<ValueId>(i);
        }
        throw SchemaViolation("value " + std::to_string(x) + " outside bins of " + a.name);
    }

    // Parse a textual field into a value id: bin lookup by number for numeric
    // attributes, name lookup otherwise (bin names also accepted).
    ValueId parse_value(AttributeId d, const std::string& field) const {
        const auto& a = attribute(d);
        if (a.numeric()) {
            try {
                size_t pos = 0;
                double x = std::stod(field, &pos);
                if (pos == field.size()) return bin_of(d, x);
            } catch (const std::invalid_argument&) {
            }
        }
        return value_id(d, field);
    }

private:
    AttributeId add(Attribute a) {
        if (attr_ids_.count(a.name)) throw SchemaViolation("duplicate attribute: " + a.name);
        std::unordered_map<std::string, ValueId> ids;
        for (size_t i = 0; i < a.values.size(); ++i) {
            if (!ids.emplace(a.values[i], static_cast<ValueId>(i)).second)
                throw SchemaViolation("duplicate value '" + a.values[i] + "' in " + a.name);
        }
        AttributeId id = static_cast<AttributeId>(attrs_.size());
        attr_ids_.emplace(a.name, id);
        value_ids_.push_back(std::move(ids));
        attrs_.push_back(std::move(a));
        return id;
    }

    // Bins must tile the covered range: consecutive, disjoint, no gaps.
    static void validate_bins(const Attribute& a) {
        for (size_t i = 0; i < a.bins.size(); ++i) {
            if (!(a.bins[i].lo < a.bins[i].hi))
                throw SchemaViolation("empty bin '" + a.bins[i].name + "' in " + a.name);
            if (i + 1 < a.bins.size() && a.bins[i].hi != a.bins[i + 1].lo)
                throw SchemaViolation("bins of " + a.name + " leave a gap or overlap");
        }
    }

    std::vector<Attribute> attrs_;
    std::unordered_map<std::string, AttributeId> attr_ids_;
    std::vector<std::unordered_map<std::string, ValueId>> value_ids_;
};

// One streamed object: a value id per schema attribute plus its arrival index.
struct ObjectRecord {
    std::string id;
    std::vector<ValueId> values;
    std::int64_t timestamp = 0;
};

}  // namespace prefmon
