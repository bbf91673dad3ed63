#pragma once

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "profile.hpp"

namespace prefmon {

// Reverse index: object -> users currently holding it as Pareto-optimal.
class TargetIndex {
public:
    void add(ObjectIndex o, UserIndex c) { holders_[o].insert(c); }

    void remove(ObjectIndex o, UserIndex c) {
        auto it = holders_.find(o);
        if (it == holders_.end()) return;
        it->second.erase(c);
        if (it->second.empty()) holders_.erase(it);
    }

    const std::set<UserIndex>* find(ObjectIndex o) const {
        auto it = holders_.find(o);
        return it == holders_.end() ? nullptr : &it->second;
    }

    bool holds(ObjectIndex o, UserIndex c) const {
        const auto* s = find(o);
        return s && s->count(c);
    }

private:
    std::unordered_map<ObjectIndex, std::set<UserIndex>> holders_;
};

// Pareto-optimal objects for one holder, kept in insertion order. Objects are
// referred to by their index in the stream arena.
struct Frontier {
    std::vector<ObjectIndex> members;

    bool contains(ObjectIndex o) const {
        return std::find(members.begin(), members.end(), o) != members.end();
    }

    void erase(ObjectIndex o) {
        members.erase(std::remove(members.begin(), members.end(), o), members.end());
    }
};

// Insert object o into a frontier: scan members in insertion order, evict
// those o dominates, stop at the first dominator (o rejected) or identical
// member (o accepted). Eviction is collected first and applied after the
// scan so iteration never races its own mutations. The two cases cannot
// co-occur: a dominator of o would transitively dominate o's victims.
inline bool update_pareto_frontier(const std::vector<ObjectRecord>& objects,
                                   const std::vector<PreferenceRelation>& relations,
                                   UserIndex holder, ObjectIndex o, Frontier& frontier,
                                   TargetIndex* index, DominanceStats& stats) {
    bool is_pareto = true;
    std::vector<ObjectIndex> evicted;
    for (ObjectIndex m : frontier.members) {
        Outcome out = compare_objects(objects[o], objects[m], relations, stats);
        if (out == Outcome::Dominates) {
            evicted.push_back(m);
        } else if (out == Outcome::DominatedBy) {
            is_pareto = false;
            break;
        } else if (out == Outcome::Identical) {
            break;  // identical objects are both Pareto-optimal
        }
    }
    for (ObjectIndex m : evicted) {
        frontier.erase(m);
        if (index) index->remove(m, holder);
    }
    if (is_pareto) {
        frontier.members.push_back(o);
        if (index) index->add(o, holder);
    }
    return is_pareto;
}

// Brute force: objects of the set not dominated by any other object in it.
// Uses its own counter so oracle work never leaks into run statistics.
inline std::vector<ObjectIndex> frontier_oracle(const std::vector<ObjectRecord>& objects,
                                                const std::vector<ObjectIndex>& subset,
                                                const std::vector<PreferenceRelation>& relations) {
    DominanceStats scratch;
    std::vector<ObjectIndex> out;
    for (ObjectIndex o : subset) {
        bool dominated = false;
        for (ObjectIndex p : subset) {
            if (p == o) continue;
            if (compare_objects(objects[p], objects[o], relations, scratch) ==
                Outcome::Dominates) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(o);
    }
    return out;
}

// One frontier per user, updated per arriving object.
class BaselineEngine {
public:
    explicit BaselineEngine(const Dataset& data)
        : data_(&data), frontiers_(data.users.size()) {}

    // Feed the next object; returns its target users in ascending index order.
    std::vector<UserIndex> step(ObjectIndex o) {
        std::vector<UserIndex> targets;
        for (size_t c = 0; c < data_->users.size(); ++c) {
            if (update_pareto_frontier(data_->objects, data_->users[c].relations,
                                       static_cast<UserIndex>(c), o, frontiers_[c], &index_,
                                       stats_)) {
                targets.push_back(static_cast<UserIndex>(c));
            }
        }
        return targets;
    }

    const Frontier& frontier(UserIndex c) const { return frontiers_[static_cast<size_t>(c)]; }
    const TargetIndex& index() const { return index_; }
    const DominanceStats& stats() const { return stats_; }

private:
    const Dataset* data_;
    std::vector<Frontier> frontiers_;
    TargetIndex index_;
    DominanceStats stats_;
};

}  // namespace prefmon
