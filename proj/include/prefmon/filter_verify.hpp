#pragma once

#include <algorithm>
#include <vector>

#include "frontier.hpp"

namespace prefmon {

// Shared-computation dissemination: each arriving object is filtered through
// a cluster-level frontier first; only survivors are verified against the
// member users' own frontiers. With exact common relations this produces the
// same target users as BaselineEngine while skipping most member work.
class FilterVerifyEngine {
public:
    FilterVerifyEngine(const Dataset& data, std::vector<ClusterProfile> clusters)
        : data_(&data),
          clusters_(std::move(clusters)),
          cluster_frontiers_(clusters_.size()),
          member_frontiers_(data.users.size()) {}

    std::vector<UserIndex> step(ObjectIndex o) {
        std::vector<UserIndex> targets;
        for (size_t u = 0; u < clusters_.size(); ++u) {
            if (!filter(u, o)) continue;
            for (UserIndex c : clusters_[u].members) {
                if (update_pareto_frontier(data_->objects,
                                           data_->users[static_cast<size_t>(c)].relations, c, o,
                                           member_frontiers_[static_cast<size_t>(c)], &index_,
                                           stats_)) {
                    targets.push_back(c);
                }
            }
        }
        std::sort(targets.begin(), targets.end());
        return targets;
    }

    const ClusterProfile& cluster(size_t u) const { return clusters_[u]; }
    size_t cluster_count() const { return clusters_.size(); }
    const Frontier& cluster_frontier(size_t u) const { return cluster_frontiers_[u]; }
    const Frontier& frontier(UserIndex c) const {
        return member_frontiers_[static_cast<size_t>(c)];
    }
    const TargetIndex& index() const { return index_; }
    const DominanceStats& stats() const { return stats_; }

private:
    // Cluster-level frontier update. Evictions cascade into the member
    // frontiers of the evicted object's holders before the new object is
    // verified: nothing outside the cluster frontier can be Pareto-optimal
    // for a member, and append-only streams never resurrect objects.
    bool filter(size_t u, ObjectIndex o) {
        Frontier& pu = cluster_frontiers_[u];
        bool survives = true;
        std::vector<ObjectIndex> evicted;
        for (ObjectIndex m : pu.members) {
            Outcome out = compare_objects(data_->objects[o], data_->objects[m],
                                          clusters_[u].relations, stats_);
            if (out == Outcome::Dominates) {
                evicted.push_back(m);
            } else if (out == Outcome::DominatedBy) {
                survives = false;
                break;
            }
            // identical or incomparable objects both stay
        }
        for (ObjectIndex m : evicted) {
            pu.erase(m);
            for (UserIndex c : clusters_[u].members) {
                Frontier& f = member_frontiers_[static_cast<size_t>(c)];
                if (f.contains(m)) {
                    f.erase(m);
                    index_.remove(m, c);
                }
            }
        }
        if (survives) pu.members.push_back(o);
        return survives;
    }

    const Dataset* data_;
    std::vector<ClusterProfile> clusters_;
    std::vector<Frontier> cluster_frontiers_;
    std::vector<Frontier> member_frontiers_;
    TargetIndex index_;
    DominanceStats stats_;
};

// Clusters whose profiles are each member's own relations: behaves exactly
// like Baseline with a redundant filter pass. Useful as a degenerate case.
inline std::vector<ClusterProfile> singleton_clusters(const Dataset& data) {
    std::vector<ClusterProfile> out;
    for (size_t c = 0; c < data.users.size(); ++c) {
        ClusterProfile p;
        p.id = static_cast<int>(c);
        p.members = {static_cast<UserIndex>(c)};
        p.relations = data.users[c].relations;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace prefmon
