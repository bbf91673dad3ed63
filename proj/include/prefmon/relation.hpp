#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"

namespace prefmon {

// A strict partial order over one attribute's value domain, stored as the
// full transitive closure in a bit matrix. Closing eagerly makes every
// dominance test a constant-time bit probe, which is where streaming time
// goes; domains are small enough that the O(m^3) close is negligible.
class PreferenceRelation {
public:
    PreferenceRelation(AttributeId attribute, int domain_size)
        : attribute_(attribute),
          m_(domain_size),
          words_(static_cast<size_t>((domain_size + 63) / 64)),
          bits_(words_ * static_cast<size_t>(domain_size), 0) {}

    // Build from preference edges (better, worse). The closure of the edges
    // is taken; the result must be irreflexive and asymmetric.
    static PreferenceRelation from_edges(AttributeId attribute, int domain_size,
                                         const std::vector<std::pair<ValueId, ValueId>>& edges) {
        PreferenceRelation r(attribute, domain_size);
        for (auto [x, y] : edges) {
            r.check_value(x);
            r.check_value(y);
            if (x == y) throw CycleError("reflexive preference edge");
            r.set(x, y);
        }
        r.close();
        r.validate();
        return r;
    }

    AttributeId attribute() const { return attribute_; }
    int domain_size() const { return m_; }

    bool holds(ValueId better, ValueId worse) const {
        return (row(better)[static_cast<size_t>(worse) >> 6] >>
                (static_cast<unsigned>(worse) & 63)) & 1u;
    }

    size_t tuple_count() const {
        size_t n = 0;
        for (std::uint64_t w : bits_) n += static_cast<size_t>(__builtin_popcountll(w));
        return n;
    }

    std::vector<std::pair<ValueId, ValueId>> tuples() const {
        std::vector<std::pair<ValueId, ValueId>> out;
        for (ValueId x = 0; x < m_; ++x)
            for (ValueId y = 0; y < m_; ++y)
                if (holds(x, y)) out.emplace_back(x, y);
        return out;
    }

    bool operator==(const PreferenceRelation& other) const {
        return attribute_ == other.attribute_ && m_ == other.m_ && bits_ == other.bits_;
    }

    // True if every tuple of this relation is also in other.
    bool subset_of(const PreferenceRelation& other) const {
        if (m_ != other.m_) throw AttributeMismatch("domain size mismatch");
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~other.bits_[i]) return false;
        return true;
    }

    // Returns a copy extended with one more edge, or nothing if the addition
    // would break asymmetry or irreflexivity. The copy is re-closed.
    std::optional<PreferenceRelation> try_add(ValueId better, ValueId worse) const {
        check_value(better);
        check_value(worse);
        if (better == worse) return std::nullopt;
        PreferenceRelation r = *this;
        r.set(better, worse);
        r.close();
        if (!r.strict_partial_order()) return std::nullopt;
        return r;
    }

    friend PreferenceRelation intersect_relations(const std::vector<PreferenceRelation>& rs);

private:
    std::uint64_t* row(ValueId v) { return bits_.data() + static_cast<size_t>(v) * words_; }
    const std::uint64_t* row(ValueId v) const {
        return bits_.data() + static_cast<size_t>(v) * words_;
    }

    void check_value(ValueId v) const {
        if (v < 0 || v >= m_) throw UnknownValue("value id out of domain");
    }

    void set(ValueId x, ValueId y) {
        row(x)[static_cast<size_t>(y) >> 6] |= std::uint64_t{1} << (static_cast<unsigned>(y) & 63);
    }

    // Warshall closing over bit rows: if (x,k) then row(x) |= row(k).
    void close() {
        for (ValueId k = 0; k < m_; ++k) {
            const std::uint64_t* rk = row(k);
            for (ValueId x = 0; x < m_; ++x) {
                if (!holds(x, k)) continue;
                std::uint64_t* rx = row(x);
                for (size_t w = 0; w < words_; ++w) rx[w] |= rk[w];
            }
        }
    }

    bool strict_partial_order() const {
        for (ValueId x = 0; x < m_; ++x) {
            if (holds(x, x)) return false;
            for (ValueId y = static_cast<ValueId>(x + 1); y < m_; ++y)
                if (holds(x, y) && holds(y, x)) return false;
        }
        return true;
    }

    void validate() const {
        if (!strict_partial_order())
            throw CycleError("preference edges close into a cycle");
    }

    AttributeId attribute_;
    int m_;
    size_t words_;
    std::vector<std::uint64_t> bits_;
};

// Tuple-set intersection. Intersections of strict partial orders are strict
// partial orders and stay transitively closed, so no re-close is needed.
inline PreferenceRelation intersect_relations(const std::vector<PreferenceRelation>& rs) {
    if (rs.empty()) throw AttributeMismatch("cannot intersect zero relations");
    PreferenceRelation out = rs.front();
    for (size_t i = 1; i < rs.size(); ++i) {
        const PreferenceRelation& r = rs[i];
        if (r.attribute_ != out.attribute_ || r.m_ != out.m_)
            throw AttributeMismatch("relations cover different attributes");
        for (size_t w = 0; w < out.bits_.size(); ++w) out.bits_[w] &= r.bits_[w];
    }
    return out;
}

// Transitive reduction of a relation: the unique minimal DAG with the same
// closure (the Hasse diagram).
struct HasseView {
    AttributeId attribute;
    std::vector<std::vector<ValueId>> succ;  // succ[x] = direct successors of x

    std::vector<std::pair<ValueId, ValueId>> edges() const {
        std::vector<std::pair<ValueId, ValueId>> out;
        for (ValueId x = 0; x < static_cast<ValueId>(succ.size()); ++x)
            for (ValueId y : succ[static_cast<size_t>(x)]) out.emplace_back(x, y);
        return out;
    }
};

inline HasseView transitive_reduction(const PreferenceRelation& r) {
    const int m = r.domain_size();
    HasseView h{r.attribute(), std::vector<std::vector<ValueId>>(static_cast<size_t>(m))};
    for (ValueId x = 0; x < m; ++x) {
        for (ValueId y = 0; y < m; ++y) {
            if (!r.holds(x, y)) continue;
            bool shortcut = false;
            for (ValueId z = 0; z < m && !shortcut; ++z)
                shortcut = z != x && z != y && r.holds(x, z) && r.holds(z, y);
            if (!shortcut) h.succ[static_cast<size_t>(x)].push_back(y);
        }
    }
    return h;
}

// Values with nothing preferred over them. Never empty on a finite domain.
inline std::vector<ValueId> maximal_values(const PreferenceRelation& r) {
    const int m = r.domain_size();
    std::vector<ValueId> out;
    for (ValueId v = 0; v < m; ++v) {
        bool topped = false;
        for (ValueId u = 0; u < m && !topped; ++u) topped = r.holds(u, v);
        if (!topped) out.push_back(v);
    }
    return out;
}

// Weight of each value: 1 / (shortest Hasse-edge distance from any maximal
// value + 1). Maximal values weigh 1. Distances run over the transitive
// reduction, not the closure, so deeper values weigh less.
inline std::vector<Rational> value_weights(const PreferenceRelation& r) {
    const int m = r.domain_size();
    HasseView h = transitive_reduction(r);
    std::vector<int> dist(static_cast<size_t>(m), -1);
    std::vector<ValueId> queue = maximal_values(r);
    for (ValueId v : queue) dist[static_cast<size_t>(v)] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        ValueId x = queue[head];
        for (ValueId y : h.succ[static_cast<size_t>(x)]) {
            if (dist[static_cast<size_t>(y)] < 0) {
                dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
                queue.push_back(y);
            }
        }
    }
    std::vector<Rational> w(static_cast<size_t>(m));
    for (ValueId v = 0; v < m; ++v) {
        if (dist[static_cast<size_t>(v)] < 0)
            throw UnreachableValue("value unreachable from every maximal value");
        w[static_cast<size_t>(v)] = Rational(1, dist[static_cast<size_t>(v)] + 1);
    }
    return w;
}

inline Rational min_distance_weight(const PreferenceRelation& r, ValueId v) {
    if (v < 0 || v >= r.domain_size()) throw UnknownValue("value id out of domain");
    return value_weights(r)[static_cast<size_t>(v)];
}

}  // namespace prefmon
