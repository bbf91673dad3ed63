#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "approx.hpp"
#include "similarity.hpp"

namespace prefmon {

struct DendrogramMerge {
    int left = 0;   // cluster ids being merged
    int right = 0;
    int merged = 0;  // id given to the merged cluster
    Rational similarity{0};
};

// Greedy max-first merge log. Similarities are non-increasing down the log.
struct Dendrogram {
    std::vector<DendrogramMerge> merges;
};

struct AgglomerateOptions {
    SimilarityKind kind = SimilarityKind::WeightedJaccard;
    Rational h{1};          // stop merging when the best similarity drops below h
    bool normalize = false;
    long long theta1 = 0;   // approximate kinds only; 0 = derive from common size
    Rational theta2{3, 5};
};

struct AgglomerateResult {
    std::vector<ClusterProfile> clusters;
    Dendrogram dendrogram;
};

namespace detail {

inline std::vector<PreferenceRelation> common_relations(const std::vector<UserProfile>& users,
                                                        const std::vector<UserIndex>& members,
                                                        int attribute_count) {
    std::vector<PreferenceRelation> out;
    out.reserve(static_cast<size_t>(attribute_count));
    for (AttributeId d = 0; d < attribute_count; ++d) {
        std::vector<PreferenceRelation> rels;
        for (UserIndex c : members)
            rels.push_back(users.at(static_cast<size_t>(c)).relations.at(static_cast<size_t>(d)));
        out.push_back(intersect_relations(rels));
    }
    return out;
}

}  // namespace detail

// Recompute a cluster's relations from its members: intersection for the
// exact kinds, frequency-driven approximation otherwise.
inline std::vector<PreferenceRelation> cluster_relations(const std::vector<UserProfile>& users,
                                                         const std::vector<UserIndex>& members,
                                                         int attribute_count,
                                                         const AgglomerateOptions& opt) {
    if (similarity_uses_members(opt.kind))
        return approximate_relations(users, members, attribute_count, opt.theta1, opt.theta2);
    return detail::common_relations(users, members, attribute_count);
}

// Bottom-up clustering: start from singletons, repeatedly merge the most
// similar pair while that similarity is at least h. Ties pick the pair whose
// (smallest, largest) member indexes are lexicographically least, so the
// dendrogram is reproducible. Merged clusters get fresh ids above the user
// count, and their relations are recomputed before further comparisons.
inline AgglomerateResult agglomerate(const std::vector<UserProfile>& users,
                                     const AgglomerateOptions& opt) {
    if (users.empty()) throw ConfigError("cannot cluster zero users");
    const int attrs = static_cast<int>(users.front().relations.size());
    AgglomerateResult result;
    std::vector<ClusterProfile> active;
    for (size_t c = 0; c < users.size(); ++c) {
        ClusterProfile p;
        p.id = static_cast<int>(c);
        p.members = {static_cast<UserIndex>(c)};
        p.relations = users[c].relations;
        p.kind = similarity_uses_members(opt.kind) ? ClusterKind::Approximate
                                                   : ClusterKind::ExactCommon;
        active.push_back(std::move(p));
    }
    int next_id = static_cast<int>(users.size());
    while (active.size() > 1) {
        std::optional<Rational> best;
        size_t bi = 0, bj = 0;
        auto key = [&](size_t i, size_t j) {
            UserIndex lo = std::min(*std::min_element(active[i].members.begin(),
                                                      active[i].members.end()),
                                    *std::min_element(active[j].members.begin(),
                                                      active[j].members.end()));
            UserIndex hi = std::max(*std::max_element(active[i].members.begin(),
                                                      active[i].members.end()),
                                    *std::max_element(active[j].members.begin(),
                                                      active[j].members.end()));
            return std::pair<UserIndex, UserIndex>(lo, hi);
        };
        for (size_t i = 0; i < active.size(); ++i) {
            for (size_t j = i + 1; j < active.size(); ++j) {
                Rational s = similarity_total(opt.kind, active[i], active[j], users, attrs,
                                              opt.normalize);
                if (!best || s > *best || (s == *best && key(i, j) < key(bi, bj))) {
                    best = s;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (*best < opt.h) break;
        ClusterProfile merged;
        merged.id = next_id++;
        merged.members = active[bi].members;
        merged.members.insert(merged.members.end(), active[bj].members.begin(),
                              active[bj].members.end());
        std::sort(merged.members.begin(), merged.members.end());
        merged.kind = active[bi].kind;
        merged.relations = cluster_relations(users, merged.members, attrs, opt);
        result.dendrogram.merges.push_back({active[bi].id, active[bj].id, merged.id, *best});
        active.erase(active.begin() + static_cast<long>(bj));
        active[bi] = std::move(merged);
    }
    std::sort(active.begin(), active.end(),
              [](const ClusterProfile& a, const ClusterProfile& b) {
                  return a.members.front() < b.members.front();
              });
    for (size_t i = 0; i < active.size(); ++i) active[i].id = static_cast<int>(i);
    result.clusters = std::move(active);
    return result;
}

}  // namespace prefmon
