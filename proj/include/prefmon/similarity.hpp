#pragma once

#include <algorithm>
#include <vector>

#include "profile.hpp"

namespace prefmon {

enum class SimilarityKind {
    IntersectionSize,      // |a ∩ b| over tuple sets
    Jaccard,               // |a ∩ b| / |a ∪ b|
    WeightedIntersection,  // common tuples weighted by their better value
    WeightedJaccard,
    ApproxJaccard,         // vector Jaccard over member tuple frequencies
    ApproxWeightedJaccard,
};

inline bool similarity_uses_members(SimilarityKind k) {
    return k == SimilarityKind::ApproxJaccard || k == SimilarityKind::ApproxWeightedJaccard;
}

// Canonical enumeration of ordered value pairs (x,y), x != y, lexicographic
// by (better, worse). Frequency vectors and pair tables share this layout.
inline size_t pair_index(int domain_size, ValueId x, ValueId y) {
    return static_cast<size_t>(x) * static_cast<size_t>(domain_size - 1) +
           static_cast<size_t>(y < x ? y : y - 1);
}

inline size_t pair_count(int domain_size) {
    return static_cast<size_t>(domain_size) * static_cast<size_t>(domain_size - 1);
}

// Per-pair frequency across members: how often (and if weighted, how
// strongly) the members hold each preference tuple. A member lacking a tuple
// contributes 0 to its entry either way.
inline std::vector<Rational> frequency_vector(const std::vector<UserProfile>& users,
                                              const std::vector<UserIndex>& members,
                                              AttributeId d, bool weighted) {
    if (members.empty()) throw ConfigError("frequency vector over zero members");
    const auto& first = users.at(static_cast<size_t>(members.front())).relations.at(
        static_cast<size_t>(d));
    const int m = first.domain_size();
    std::vector<Rational> entries(pair_count(m), Rational(0));
    for (UserIndex c : members) {
        const auto& rel = users.at(static_cast<size_t>(c)).relations.at(static_cast<size_t>(d));
        std::vector<Rational> weights;
        if (weighted) weights = value_weights(rel);
        for (ValueId x = 0; x < m; ++x) {
            for (ValueId y = 0; y < m; ++y) {
                if (x == y || !rel.holds(x, y)) continue;
                entries[pair_index(m, x, y)] +=
                    weighted ? weights[static_cast<size_t>(x)] : Rational(1);
            }
        }
    }
    const Rational n(static_cast<long long>(members.size()));
    for (auto& e : entries) e /= n;
    return entries;
}

namespace detail {

inline Rational weighted_only_mass(const PreferenceRelation& a, const PreferenceRelation& b,
                                   const std::vector<Rational>& wa) {
    Rational sum(0);
    const int m = a.domain_size();
    for (ValueId x = 0; x < m; ++x)
        for (ValueId y = 0; y < m; ++y)
            if (x != y && a.holds(x, y) && !b.holds(x, y)) sum += wa[static_cast<size_t>(x)];
    return sum;
}

inline Rational exact_similarity(SimilarityKind kind, const PreferenceRelation& a,
                                 const PreferenceRelation& b) {
    if (a.attribute() != b.attribute() || a.domain_size() != b.domain_size())
        throw AttributeMismatch("similarity across different attributes");
    const int m = a.domain_size();
    long long inter = 0, only_a = 0, only_b = 0;
    for (ValueId x = 0; x < m; ++x) {
        for (ValueId y = 0; y < m; ++y) {
            if (x == y) continue;
            bool ha = a.holds(x, y), hb = b.holds(x, y);
            inter += ha && hb;
            only_a += ha && !hb;
            only_b += !ha && hb;
        }
    }
    switch (kind) {
        case SimilarityKind::IntersectionSize:
            return Rational(inter);
        case SimilarityKind::Jaccard: {
            long long uni = inter + only_a + only_b;
            // no expressed preferences on either side is not similarity
            return uni == 0 ? Rational(0) : Rational(inter, uni);
        }
        case SimilarityKind::WeightedIntersection:
        case SimilarityKind::WeightedJaccard: {
            auto wa = value_weights(a);
            auto wb = value_weights(b);
            Rational wi(0);
            for (ValueId x = 0; x < m; ++x)
                for (ValueId y = 0; y < m; ++y)
                    if (x != y && a.holds(x, y) && b.holds(x, y))
                        wi += (wa[static_cast<size_t>(x)] + wb[static_cast<size_t>(x)]) / 2;
            if (kind == SimilarityKind::WeightedIntersection) return wi;
            Rational denom = wi + weighted_only_mass(a, b, wa) + weighted_only_mass(b, a, wb);
            return denom == Rational(0) ? Rational(0) : wi / denom;
        }
        default:
            throw ConfigError("not an exact similarity kind");
    }
}

inline Rational vector_jaccard(const std::vector<Rational>& u, const std::vector<Rational>& v) {
    Rational mins(0), maxs(0);
    for (size_t i = 0; i < u.size(); ++i) {
        mins += std::min(u[i], v[i]);
        maxs += std::max(u[i], v[i]);
    }
    return maxs == Rational(0) ? Rational(0) : mins / maxs;
}

}  // namespace detail

// Similarity of two clusters on one attribute. Exact kinds compare the
// clusters' common relations; approximate kinds compare frequency vectors
// computed over the clusters' member users.
inline Rational similarity(SimilarityKind kind, const ClusterProfile& a, const ClusterProfile& b,
                           AttributeId d, const std::vector<UserProfile>& users) {
    if (similarity_uses_members(kind)) {
        bool weighted = kind == SimilarityKind::ApproxWeightedJaccard;
        return detail::vector_jaccard(frequency_vector(users, a.members, d, weighted),
                                      frequency_vector(users, b.members, d, weighted));
    }
    return detail::exact_similarity(kind, a.relations.at(static_cast<size_t>(d)),
                                    b.relations.at(static_cast<size_t>(d)));
}

// Sum of per-attribute similarities. The optional normalization divides each
// attribute's term by its domain size; it is off by default and not used by
// any shipped workflow.
inline Rational similarity_total(SimilarityKind kind, const ClusterProfile& a,
                                 const ClusterProfile& b, const std::vector<UserProfile>& users,
                                 int attribute_count, bool normalize = false) {
    Rational sum(0);
    for (AttributeId d = 0; d < attribute_count; ++d) {
        Rational s = similarity(kind, a, b, d, users);
        if (normalize) {
            int m = similarity_uses_members(kind)
                        ? users.at(static_cast<size_t>(a.members.front()))
                              .relations.at(static_cast<size_t>(d))
                              .domain_size()
                        : a.relations.at(static_cast<size_t>(d)).domain_size();
            s /= Rational(m);
        }
        sum += s;
    }
    return sum;
}

}  // namespace prefmon
