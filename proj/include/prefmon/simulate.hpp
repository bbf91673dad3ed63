#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "profile.hpp"

namespace prefmon {

// One observed interaction: a user engaged with an object carrying these
// attribute values and left a rating.
struct RatingRecord {
    std::string user;
    std::vector<std::string> values;  // one per schema attribute
    Rational rating{0};
};

// Count-style evidence about one attribute value, e.g. how often the user
// worked with it (p) and how much recognition that work drew (q).
struct CountRecord {
    std::string user;
    std::string attribute;
    std::string value;
    long long p = 0;
    long long q = 0;
};

namespace detail {

// Pareto rule on per-value statistics (primary, secondary): a is preferred
// to b when a is at least as good on both and strictly better on one.
inline bool stat_preferred(Rational pa, Rational sa, Rational pb, Rational sb) {
    return (pa > pb && sa >= sb) || (pa >= pb && sa > sb);
}

inline PreferenceRelation relation_from_stats(
    AttributeId d, int domain_size, const std::map<ValueId, std::pair<Rational, Rational>>& stats) {
    std::vector<std::pair<ValueId, ValueId>> edges;
    for (const auto& [a, sa] : stats)
        for (const auto& [b, sb] : stats)
            if (a != b && stat_preferred(sa.first, sa.second, sb.first, sb.second))
                edges.emplace_back(a, b);
    // the rule is dominance on (primary, secondary) pairs, hence acyclic and
    // transitive; closing again is a no-op but keeps the invariants checked
    return PreferenceRelation::from_edges(d, domain_size, edges);
}

}  // namespace detail

// Derive one user's relation on one attribute from ratings: value a is
// preferred to b when a's average rating and rating count weakly dominate
// b's with one strict side. Values never rated join no tuples.
inline PreferenceRelation simulate_relation_rating(const std::vector<RatingRecord>& log,
                                                   const std::string& user, AttributeId d,
                                                   const Schema& schema) {
    std::map<ValueId, std::pair<Rational, long long>> sums;  // value -> (rating sum, count)
    for (const auto& rec : log) {
        if (rec.user != user) continue;
        if (static_cast<int>(rec.values.size()) != schema.attribute_count())
            throw SchemaMismatch("rating record does not fit the schema");
        ValueId v = schema.value_id(d, rec.values[static_cast<size_t>(d)]);
        auto& s = sums[v];
        s.first += rec.rating;
        s.second += 1;
    }
    std::map<ValueId, std::pair<Rational, Rational>> stats;
    for (const auto& [v, s] : sums)
        stats[v] = {s.first / Rational(s.second), Rational(s.second)};
    return detail::relation_from_stats(d, schema.domain_size(d), stats);
}

// Same rule driven by two non-negative counts per value.
inline PreferenceRelation simulate_relation_counts(const std::vector<CountRecord>& log,
                                                   const std::string& user, AttributeId d,
                                                   const Schema& schema) {
    std::map<ValueId, std::pair<Rational, Rational>> stats;
    for (const auto& rec : log) {
        if (rec.user != user || schema.attribute_id(rec.attribute) != d) continue;
        if (rec.p < 0 || rec.q < 0) throw SchemaViolation("negative interaction count");
        ValueId v = schema.value_id(d, rec.value);
        stats[v] = {Rational(rec.p), Rational(rec.q)};
    }
    return detail::relation_from_stats(d, schema.domain_size(d), stats);
}

// Synthetic stream recipe: users are noisy copies of a few archetype
// profiles, objects are uniform over the domains.
struct WorkloadSpec {
    std::uint64_t seed = 1;
    int users = 10;
    int archetypes = 2;
    int objects = 100;
    int attributes = 2;
    int domain_size = 6;
    double edge_density = 0.5;   // chance an archetype keeps a forward pair
    double noise_drop = 0.1;     // chance a user drops one Hasse edge
    double noise_add = 0.1;      // chance a user gains one random edge
    size_t window = 0;           // 0 = append-only
};

struct Workload {
    Dataset data;
    std::vector<int> archetype_of;  // ground-truth label per user
};

namespace detail {

// Random strict partial order: orient edges along a shuffled topological
// order, keep each with the given density, then close.
inline PreferenceRelation random_relation(AttributeId d, int m, double density,
                                          std::mt19937_64& rng) {
    std::vector<ValueId> topo(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) topo[static_cast<size_t>(i)] = i;
    std::shuffle(topo.begin(), topo.end(), rng);
    std::bernoulli_distribution keep(density);
    std::vector<std::pair<ValueId, ValueId>> edges;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (keep(rng)) edges.emplace_back(topo[static_cast<size_t>(i)],
                                              topo[static_cast<size_t>(j)]);
    return PreferenceRelation::from_edges(d, m, edges);
}

inline PreferenceRelation perturb_relation(const PreferenceRelation& base, double drop,
                                           double add, std::mt19937_64& rng) {
    auto hasse = transitive_reduction(base).edges();
    std::bernoulli_distribution dropped(drop);
    std::vector<std::pair<ValueId, ValueId>> kept;
    for (auto e : hasse)
        if (!dropped(rng)) kept.push_back(e);
    PreferenceRelation r =
        PreferenceRelation::from_edges(base.attribute(), base.domain_size(), kept);
    std::bernoulli_distribution added(add);
    std::uniform_int_distribution<int> pick(0, base.domain_size() - 1);
    int attempts = base.domain_size();
    for (int i = 0; i < attempts; ++i) {
        if (!added(rng)) continue;
        auto cand = r.try_add(pick(rng), pick(rng));
        if (cand) r = std::move(*cand);  // additions breaking the order are skipped
    }
    return r;
}

}  // namespace detail

inline Workload generate_workload(const WorkloadSpec& spec) {
    if (spec.users < 1 || spec.archetypes < 1 || spec.archetypes > spec.users ||
        spec.objects < 0 || spec.attributes < 1 || spec.domain_size < 2)
        throw ConfigError("invalid workload spec");
    std::mt19937_64 rng(spec.seed);
    Workload w;
    for (int d = 0; d < spec.attributes; ++d)
        w.data.schema.add_categorical(
            "attr" + std::to_string(d), [&] {
                std::vector<std::string> names;
                for (int v = 0; v < spec.domain_size; ++v)
                    names.push_back("v" + std::to_string(v));
                return names;
            }());
    std::vector<std::vector<PreferenceRelation>> archetypes;
    for (int a = 0; a < spec.archetypes; ++a) {
        std::vector<PreferenceRelation> rels;
        for (AttributeId d = 0; d < spec.attributes; ++d)
            rels.push_back(detail::random_relation(d, spec.domain_size, spec.edge_density, rng));
        archetypes.push_back(std::move(rels));
    }
    for (int c = 0; c < spec.users; ++c) {
        int label = c % spec.archetypes;
        UserProfile u;
        u.id = "u" + std::to_string(c);
        for (AttributeId d = 0; d < spec.attributes; ++d)
            u.relations.push_back(detail::perturb_relation(
                archetypes[static_cast<size_t>(label)][static_cast<size_t>(d)], spec.noise_drop,
                spec.noise_add, rng));
        w.data.users.push_back(std::move(u));
        w.archetype_of.push_back(label);
    }
    std::uniform_int_distribution<int> pick(0, spec.domain_size - 1);
    for (int i = 0; i < spec.objects; ++i) {
        ObjectRecord o;
        o.id = "o" + std::to_string(i + 1);
        o.timestamp = i;
        for (int d = 0; d < spec.attributes; ++d) o.values.push_back(pick(rng));
        w.data.objects.push_back(std::move(o));
    }
    return w;
}

}  // namespace prefmon
