#pragma once

#include <algorithm>
#include <vector>

#include "frontier.hpp"

namespace prefmon {

// Candidate pool for one holder in windowed mode: alive objects not dominated
// by any later alive object, kept in arrival order. When a frontier member
// expires, its victims in the buffer are the only possible replacements; an
// object evicted from the buffer is dominated by something younger and can
// never become Pareto-optimal again in its lifetime.
struct ParetoBuffer {
    std::vector<ObjectIndex> members;  // ascending arrival order

    bool contains(ObjectIndex o) const {
        return std::find(members.begin(), members.end(), o) != members.end();
    }

    void erase(ObjectIndex o) {
        members.erase(std::remove(members.begin(), members.end(), o), members.end());
    }
};

namespace detail {

// Re-check a buffered object against the current frontier after one of its
// dominators expired; promote it if nothing there dominates it now.
inline bool mend_into_frontier(const std::vector<ObjectRecord>& objects,
                               const std::vector<PreferenceRelation>& relations,
                               UserIndex holder, ObjectIndex o, Frontier& frontier,
                               TargetIndex* index, DominanceStats& stats) {
    if (frontier.contains(o)) return true;
    for (ObjectIndex m : frontier.members) {
        if (compare_objects(objects[m], objects[o], relations, stats) == Outcome::Dominates)
            return false;
    }
    frontier.members.push_back(o);
    if (index) index->add(o, holder);
    return true;
}

// Append the arriving object and drop buffer members it dominates.
inline void refresh_buffer(const std::vector<ObjectRecord>& objects,
                           const std::vector<PreferenceRelation>& relations, ObjectIndex o_in,
                           ParetoBuffer& buffer, DominanceStats& stats) {
    std::vector<ObjectIndex> evicted;
    for (ObjectIndex m : buffer.members) {
        if (compare_objects(objects[o_in], objects[m], relations, stats) == Outcome::Dominates)
            evicted.push_back(m);
    }
    for (ObjectIndex m : evicted) buffer.erase(m);
    buffer.members.push_back(o_in);
}

}  // namespace detail

// Windowed baseline: per user, a frontier over the W most recent objects and
// a buffer to resurrect objects whose dominators expire. Each step expires
// at most one object (strictly before the arrival is processed).
class BaselineSWEngine {
public:
    BaselineSWEngine(const Dataset& data, size_t window)
        : data_(&data),
          window_(window),
          frontiers_(data.users.size()),
          buffers_(data.users.size()) {
        if (window == 0) throw ConfigError("window must be positive");
    }

    std::vector<UserIndex> step(ObjectIndex o_in) {
        if (o_in >= window_) expire(o_in - static_cast<ObjectIndex>(window_));
        return arrive(o_in);
    }

    void expire(ObjectIndex o_out) {
        for (size_t c = 0; c < data_->users.size(); ++c) {
            const auto& rels = data_->users[c].relations;
            Frontier& f = frontiers_[c];
            ParetoBuffer& b = buffers_[c];
            if (f.contains(o_out)) {
                f.erase(o_out);
                index_.remove(o_out, static_cast<UserIndex>(c));
                // victims of the expired member may resurface
                for (ObjectIndex o : b.members) {
                    if (o == o_out) continue;
                    if (compare_objects(data_->objects[o_out], data_->objects[o], rels,
                                        stats_) == Outcome::Dominates) {
                        detail::mend_into_frontier(data_->objects, rels,
                                                   static_cast<UserIndex>(c), o, f, &index_,
                                                   stats_);
                    }
                }
            }
            b.erase(o_out);
        }
    }

    std::vector<UserIndex> arrive(ObjectIndex o_in) {
        std::vector<UserIndex> targets;
        for (size_t c = 0; c < data_->users.size(); ++c) {
            const auto& rels = data_->users[c].relations;
            if (update_pareto_frontier(data_->objects, rels, static_cast<UserIndex>(c), o_in,
                                       frontiers_[c], &index_, stats_)) {
                targets.push_back(static_cast<UserIndex>(c));
            }
            detail::refresh_buffer(data_->objects, rels, o_in, buffers_[c], stats_);
        }
        return targets;
    }

    size_t window() const { return window_; }
    const Frontier& frontier(UserIndex c) const { return frontiers_[static_cast<size_t>(c)]; }
    const ParetoBuffer& buffer(UserIndex c) const { return buffers_[static_cast<size_t>(c)]; }
    const TargetIndex& index() const { return index_; }
    const DominanceStats& stats() const { return stats_; }

private:
    const Dataset* data_;
    size_t window_;
    std::vector<Frontier> frontiers_;
    std::vector<ParetoBuffer> buffers_;
    TargetIndex index_;
    DominanceStats stats_;
};

// Windowed filter-then-verify. Each cluster keeps one shared buffer and a
// cluster-level frontier; member users keep only frontiers. On expiry of a
// cluster-frontier member, buffered victims are first mended into the
// cluster frontier, then each member that held the expired object admits its
// victims from the mended cluster frontier. Only such members can gain
// entries (any other alive blocker survives the expiry and already sits in
// the member's frontier), and a newcomer must be a direct victim of the
// expired object under the member's own relations.
class FilterVerifySWEngine {
public:
    FilterVerifySWEngine(const Dataset& data, std::vector<ClusterProfile> clusters,
                         size_t window)
        : data_(&data),
          clusters_(std::move(clusters)),
          window_(window),
          cluster_frontiers_(clusters_.size()),
          buffers_(clusters_.size()),
          member_frontiers_(data.users.size()) {
        if (window == 0) throw ConfigError("window must be positive");
    }

    std::vector<UserIndex> step(ObjectIndex o_in) {
        if (o_in >= window_) expire(o_in - static_cast<ObjectIndex>(window_));
        return arrive(o_in);
    }

    void expire(ObjectIndex o_out) {
        for (size_t u = 0; u < clusters_.size(); ++u) {
            const ClusterProfile& cl = clusters_[u];
            Frontier& pu = cluster_frontiers_[u];
            ParetoBuffer& b = buffers_[u];
            if (pu.contains(o_out)) {
                std::vector<UserIndex> held_by;  // members whose frontier loses o_out
                for (UserIndex c : cl.members) {
                    Frontier& f = member_frontiers_[static_cast<size_t>(c)];
                    if (f.contains(o_out)) {
                        f.erase(o_out);
                        index_.remove(o_out, c);
                        held_by.push_back(c);
                    }
                }
                pu.erase(o_out);
                for (ObjectIndex o : b.members) {
                    if (o == o_out) continue;
                    if (compare_objects(data_->objects[o_out], data_->objects[o], cl.relations,
                                        stats_) == Outcome::Dominates) {
                        detail::mend_into_frontier(data_->objects, cl.relations, -1, o, pu,
                                                   nullptr, stats_);
                    }
                }
                // Only members that held the expired object can gain frontier
                // entries, and the newcomers are exactly its victims inside
                // the mended cluster frontier. Admission is decided against
                // the whole candidate set at once: the shared buffer evicts
                // under the cluster relation only, so a victim's own
                // dominator may sit anywhere among the candidates.
                for (UserIndex c : held_by) {
                    const auto& rels = data_->users[static_cast<size_t>(c)].relations;
                    Frontier& f = member_frontiers_[static_cast<size_t>(c)];
                    std::vector<ObjectIndex> cands;
                    for (ObjectIndex o : pu.members) {
                        if (!f.contains(o) &&
                            compare_objects(data_->objects[o_out], data_->objects[o], rels,
                                            stats_) == Outcome::Dominates)
                            cands.push_back(o);
                    }
                    for (ObjectIndex o : cands) {
                        bool blocked = false;
                        for (ObjectIndex m : f.members) {
                            if (compare_objects(data_->objects[m], data_->objects[o], rels,
                                                stats_) == Outcome::Dominates) {
                                blocked = true;
                                break;
                            }
                        }
                        for (ObjectIndex z : cands) {
                            if (blocked) break;
                            if (z != o &&
                                compare_objects(data_->objects[z], data_->objects[o], rels,
                                                stats_) == Outcome::Dominates)
                                blocked = true;
                        }
                        if (!blocked) {
                            f.members.push_back(o);
                            index_.add(o, c);
                        }
                    }
                }
            }
            b.erase(o_out);
        }
    }

    std::vector<UserIndex> arrive(ObjectIndex o_in) {
        std::vector<UserIndex> targets;
        for (size_t u = 0; u < clusters_.size(); ++u) {
            const ClusterProfile& cl = clusters_[u];
            if (filter(u, o_in)) {
                for (UserIndex c : cl.members) {
                    if (update_pareto_frontier(data_->objects,
                                               data_->users[static_cast<size_t>(c)].relations, c,
                                               o_in, member_frontiers_[static_cast<size_t>(c)],
                                               &index_, stats_)) {
                        targets.push_back(c);
                    }
                }
            }
            detail::refresh_buffer(data_->objects, cl.relations, o_in, buffers_[u], stats_);
        }
        std::sort(targets.begin(), targets.end());
        return targets;
    }

    size_t window() const { return window_; }
    size_t cluster_count() const { return clusters_.size(); }
    const ClusterProfile& cluster(size_t u) const { return clusters_[u]; }
    const Frontier& cluster_frontier(size_t u) const { return cluster_frontiers_[u]; }
    const ParetoBuffer& buffer(size_t u) const { return buffers_[u]; }
    const Frontier& frontier(UserIndex c) const {
        return member_frontiers_[static_cast<size_t>(c)];
    }
    const TargetIndex& index() const { return index_; }
    const DominanceStats& stats() const { return stats_; }

private:
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
    size_t window_;
    std::vector<Frontier> cluster_frontiers_;
    std::vector<ParetoBuffer> buffers_;
    std::vector<Frontier> member_frontiers_;
    TargetIndex index_;
    DominanceStats stats_;
};

}  // namespace prefmon
