#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "profile.hpp"

namespace prefmon {

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

[[noreturn]] inline void parse_fail(const std::string& path, size_t line,
                                    const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    return out;
}

inline double parse_bound(const std::string& path, size_t ln, const std::string& t, bool lo) {
    if (t == "*")
        return lo ? -std::numeric_limits<double>::infinity()
                  : std::numeric_limits<double>::infinity();
    try {
        return std::stod(t);
    } catch (const std::exception&) {
        parse_fail(path, ln, "bad bin bound '" + t + "'");
    }
}

}  // namespace detail

// Schema file: one declaration per line, '#' comments.
//   attribute NAME values V1 V2 ...
//   attribute NAME numeric
//   bin NAME LO HI            (follows its numeric attribute; * = open end)
inline Schema load_schema(const std::string& path) {
    auto in = detail::open_input(path);
    Schema schema;
    std::string line;
    size_t ln = 0;
    std::string pending_name;
    std::vector<NumericBin> pending_bins;
    auto flush_numeric = [&] {
        if (pending_name.empty()) return;
        if (pending_bins.empty())
            throw SchemaViolation("numeric attribute " + pending_name + " has no bins");
        schema.add_numeric(pending_name, pending_bins);
        pending_name.clear();
        pending_bins.clear();
    };
    while (std::getline(in, line)) {
        ++ln;
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto tok = detail::tokens(line);
        if (tok[0] == "attribute") {
            flush_numeric();
            if (tok.size() >= 3 && tok[1].size() && tok[2] == "numeric") {
                pending_name = tok[1];
            } else if (tok.size() >= 4 && tok[2] == "values") {
                schema.add_categorical(tok[1], {tok.begin() + 3, tok.end()});
            } else {
                detail::parse_fail(path, ln, "bad attribute declaration");
            }
        } else if (tok[0] == "bin") {
            if (pending_name.empty()) detail::parse_fail(path, ln, "bin outside numeric attribute");
            if (tok.size() != 4) detail::parse_fail(path, ln, "bin needs NAME LO HI");
            pending_bins.push_back({tok[1], detail::parse_bound(path, ln, tok[2], true),
                                    detail::parse_bound(path, ln, tok[3], false)});
        } else {
            detail::parse_fail(path, ln, "unknown declaration '" + tok[0] + "'");
        }
    }
    flush_numeric();
    if (schema.attribute_count() == 0) throw SchemaViolation("schema declares no attributes");
    return schema;
}

inline void save_schema(const Schema& schema, const std::string& path) {
    auto out = detail::open_output(path);
    for (AttributeId d = 0; d < schema.attribute_count(); ++d) {
        const Attribute& a = schema.attribute(d);
        if (a.numeric()) {
            out << "attribute " << a.name << " numeric\n";
            for (const auto& b : a.bins) {
                out << "bin " << b.name << ' ';
                if (std::isinf(b.lo)) out << '*'; else out << b.lo;
                out << ' ';
                if (std::isinf(b.hi)) out << '*'; else out << b.hi;
                out << '\n';
            }
        } else {
            out << "attribute " << a.name << " values";
            for (const auto& v : a.values) out << ' ' << v;
            out << '\n';
        }
    }
}

// Objects: one per line, `id,value1,...,valueD` in schema attribute order.
// Numeric attributes take raw readings (binned on load) or bin names.
// File order is arrival order; timestamps are assigned as 0,1,2,...
inline std::vector<ObjectRecord> load_objects(const std::string& path, const Schema& schema) {
    auto in = detail::open_input(path);
    std::vector<ObjectRecord> out;
    std::set<std::string> seen;
    std::string line;
    size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split(line, ',');
        if (static_cast<int>(fields.size()) != schema.attribute_count() + 1)
            detail::parse_fail(path, ln, "expected id plus one value per attribute");
        ObjectRecord o;
        o.id = fields[0];
        if (!seen.insert(o.id).second)
            detail::parse_fail(path, ln, "duplicate object id '" + o.id + "'");
        o.timestamp = static_cast<std::int64_t>(out.size());
        for (AttributeId d = 0; d < schema.attribute_count(); ++d)
            o.values.push_back(schema.parse_value(d, fields[static_cast<size_t>(d) + 1]));
        out.push_back(std::move(o));
    }
    return out;
}

inline void save_objects(const std::vector<ObjectRecord>& objects, const Schema& schema,
                         const std::string& path) {
    auto out = detail::open_output(path);
    for (const auto& o : objects) {
        out << o.id;
        for (AttributeId d = 0; d < schema.attribute_count(); ++d)
            out << ',' << schema.value_name(d, o.values[static_cast<size_t>(d)]);
        out << '\n';
    }
}

// Preferences: one edge per line, `user,attribute,better,worse`. Edges may be
// Hasse edges or full closures; the loader closes transitively either way.
// Users appear in the output in first-mention order.
inline std::vector<UserProfile> load_profiles(const std::string& path, const Schema& schema) {
    auto in = detail::open_input(path);
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::vector<std::pair<ValueId, ValueId>>>> edges;
    std::string line;
    size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split(line, ',');
        if (fields.size() != 4)
            detail::parse_fail(path, ln, "expected user,attribute,better,worse");
        auto d = schema.find_attribute(fields[1]);
        if (!d) throw SchemaViolation(path + ":" + std::to_string(ln) +
                                      ": unknown attribute '" + fields[1] + "'");
        auto better = schema.find_value(*d, fields[2]);
        auto worse = schema.find_value(*d, fields[3]);
        if (!better || !worse)
            throw SchemaViolation(path + ":" + std::to_string(ln) + ": unknown value for '" +
                                  fields[1] + "'");
        auto [it, fresh] = edges.try_emplace(
            fields[0], static_cast<size_t>(schema.attribute_count()),
            std::vector<std::pair<ValueId, ValueId>>{});
        if (fresh) order.push_back(fields[0]);
        it->second[static_cast<size_t>(*d)].emplace_back(*better, *worse);
    }
    std::vector<UserProfile> out;
    for (const auto& id : order) {
        UserProfile u;
        u.id = id;
        for (AttributeId d = 0; d < schema.attribute_count(); ++d)
            u.relations.push_back(PreferenceRelation::from_edges(
                d, schema.domain_size(d), edges[id][static_cast<size_t>(d)]));
        out.push_back(std::move(u));
    }
    return out;
}

// Profiles are written as Hasse edges: the smallest edge set with the same
// closure, so files stay hand-readable.
inline void save_profiles(const std::vector<UserProfile>& users, const Schema& schema,
                          const std::string& path) {
    auto out = detail::open_output(path);
    for (const auto& u : users) {
        for (AttributeId d = 0; d < schema.attribute_count(); ++d) {
            for (auto [x, y] : transitive_reduction(u.relations[static_cast<size_t>(d)]).edges()) {
                out << u.id << ',' << schema.attribute(d).name << ',' << schema.value_name(d, x)
                    << ',' << schema.value_name(d, y) << '\n';
            }
        }
    }
}

inline Dataset load_dataset(const std::string& schema_path, const std::string& objects_path,
                            const std::string& prefs_path) {
    Dataset data;
    data.schema = load_schema(schema_path);
    data.objects = load_objects(objects_path, data.schema);
    data.users = load_profiles(prefs_path, data.schema);
    return data;
}

}  // namespace prefmon
