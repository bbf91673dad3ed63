#pragma once

#include <string>
#include <vector>

#include "relation.hpp"
#include "schema.hpp"

namespace prefmon {

// One real user: a preference relation per schema attribute.
struct UserProfile {
    std::string id;
    std::vector<PreferenceRelation> relations;
};

enum class ClusterKind {
    ExactCommon,  // relations = intersection of the members' relations
    Approximate,  // relations = superset built from frequent member tuples
};

// A virtual user standing in for a set of members.
struct ClusterProfile {
    int id = 0;
    std::vector<UserIndex> members;
    std::vector<PreferenceRelation> relations;
    ClusterKind kind = ClusterKind::ExactCommon;
};

// Everything a run needs: the schema, the users, and the object stream in
// arrival order.
struct Dataset {
    Schema schema;
    std::vector<UserProfile> users;
    std::vector<ObjectRecord> objects;

    UserIndex user_index(const std::string& id) const {
        for (size_t i = 0; i < users.size(); ++i)
            if (users[i].id == id) return static_cast<UserIndex>(i);
        throw SchemaViolation("unknown user: " + id);
    }
};

enum class Outcome {
    Dominates,    // a is equal-or-preferred everywhere, strictly somewhere
    DominatedBy,
    Identical,
    Incomparable,
};

// Compare two objects under one relation-per-attribute profile. Exactly one
// counter bump per call, whatever the outcome.
inline Outcome compare_objects(const ObjectRecord& a, const ObjectRecord& b,
                               const std::vector<PreferenceRelation>& relations,
                               DominanceStats& stats) {
    ++stats.comparisons;
    if (a.values.size() != b.values.size() || a.values.size() != relations.size())
        throw SchemaMismatch("objects do not fit the profile's schema");
    bool a_better = false;
    bool b_better = false;
    for (size_t d = 0; d < relations.size(); ++d) {
        ValueId va = a.values[d];
        ValueId vb = b.values[d];
        if (va == vb) continue;
        if (relations[d].holds(va, vb)) {
            a_better = true;
        } else if (relations[d].holds(vb, va)) {
            b_better = true;
        } else {
            return Outcome::Incomparable;
        }
        if (a_better && b_better) return Outcome::Incomparable;
    }
    if (a_better) return Outcome::Dominates;
    if (b_better) return Outcome::DominatedBy;
    return Outcome::Identical;
}

inline Outcome dominates(const ObjectRecord& a, const ObjectRecord& b,
                         const UserProfile& profile, DominanceStats& stats) {
    return compare_objects(a, b, profile.relations, stats);
}

inline Outcome dominates(const ObjectRecord& a, const ObjectRecord& b,
                         const ClusterProfile& profile, DominanceStats& stats) {
    return compare_objects(a, b, profile.relations, stats);
}

}  // namespace prefmon
