#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "similarity.hpp"

namespace prefmon {

struct PairFrequencyRow {
    ValueId better = 0;
    ValueId worse = 0;
    Rational freq{0};
};

// All candidate preference tuples of one attribute, ordered by how many
// members hold them (descending), ties broken lexicographically by value
// ids so the scan below is deterministic.
struct PairFrequencyTable {
    AttributeId attribute = 0;
    int domain_size = 0;
    std::vector<PairFrequencyRow> rows;
};

inline PairFrequencyTable pair_frequency_table(const std::vector<UserProfile>& users,
                                               const std::vector<UserIndex>& members,
                                               AttributeId d) {
    auto freqs = frequency_vector(users, members, d, /*weighted=*/false);
    const auto& rel =
        users.at(static_cast<size_t>(members.front())).relations.at(static_cast<size_t>(d));
    PairFrequencyTable table{d, rel.domain_size(), {}};
    for (ValueId x = 0; x < table.domain_size; ++x)
        for (ValueId y = 0; y < table.domain_size; ++y)
            if (x != y)
                table.rows.push_back({x, y, freqs[pair_index(table.domain_size, x, y)]});
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const PairFrequencyRow& a, const PairFrequencyRow& b) {
                         if (a.freq != b.freq) return a.freq > b.freq;
                         if (a.better != b.better) return a.better < b.better;
                         return a.worse < b.worse;
                     });
    return table;
}

// What happened to each scanned pair while building an approximate relation.
struct ApproxTraceEvent {
    enum Kind {
        IncludedCommon,      // held by every member, admitted unconditionally
        Included,            // admitted, relation re-closed
        RejectedOrder,       // would break asymmetry, skipped
        StoppedSize,         // scan ended: relation reached the size cap
        StoppedFrequency,    // scan ended: frequency fell to the threshold
    } kind;
    ValueId better = 0;
    ValueId worse = 0;
};

// Build an approximate common relation from a pair frequency table. Pairs
// held by all members enter first and unconditionally, so the result always
// contains the members' common relation. Remaining pairs are admitted in
// frequency order while the relation stays below theta1 tuples and the
// frequency stays above theta2, and only if admission keeps the relation a
// strict partial order; each admission is transitively closed.
inline PreferenceRelation get_approx_preference_tuples(
    const PairFrequencyTable& table, size_t theta1, Rational theta2,
    std::vector<ApproxTraceEvent>* trace = nullptr) {
    PreferenceRelation rel(table.attribute, table.domain_size);
    for (const auto& row : table.rows) {
        if (row.freq == Rational(1)) {
            // common pairs; the set of them is already transitively closed
            auto added = rel.try_add(row.better, row.worse);
            if (added) rel = std::move(*added);
            if (trace) trace->push_back({ApproxTraceEvent::IncludedCommon, row.better, row.worse});
            continue;
        }
        if (rel.tuple_count() >= theta1) {
            if (trace) trace->push_back({ApproxTraceEvent::StoppedSize, row.better, row.worse});
            break;
        }
        if (row.freq <= theta2) {
            if (trace)
                trace->push_back({ApproxTraceEvent::StoppedFrequency, row.better, row.worse});
            break;
        }
        auto added = rel.try_add(row.better, row.worse);
        if (added) {
            rel = std::move(*added);
            if (trace) trace->push_back({ApproxTraceEvent::Included, row.better, row.worse});
        } else {
            if (trace) trace->push_back({ApproxTraceEvent::RejectedOrder, row.better, row.worse});
        }
    }
    return rel;
}

// Default size cap: proportional to the common relation, with headroom for
// the same number of extra tuples the worked fixtures use.
inline size_t default_theta1(size_t common_tuples) { return 7 * common_tuples + 7; }

inline std::vector<PreferenceRelation> approximate_relations(
    const std::vector<UserProfile>& users, const std::vector<UserIndex>& members,
    int attribute_count, long long theta1, Rational theta2) {
    std::vector<PreferenceRelation> out;
    out.reserve(static_cast<size_t>(attribute_count));
    for (AttributeId d = 0; d < attribute_count; ++d) {
        auto table = pair_frequency_table(users, members, d);
        size_t cap;
        if (theta1 > 0) {
            cap = static_cast<size_t>(theta1);
        } else {
            std::vector<PreferenceRelation> rels;
            for (UserIndex c : members)
                rels.push_back(users.at(static_cast<size_t>(c)).relations.at(static_cast<size_t>(d)));
            cap = default_theta1(intersect_relations(rels).tuple_count());
        }
        out.push_back(get_approx_preference_tuples(table, cap, theta2));
    }
    return out;
}

// Result-quality comparison of approximate frontiers against exact ones.
struct AccuracyRow {
    std::string user;
    size_t exact_size = 0;
    size_t approx_size = 0;
    size_t common = 0;
    Rational precision{1};
    Rational recall{1};
    Rational f_measure{1};
};

struct AccuracyReport {
    std::vector<AccuracyRow> per_user;
    Rational precision{1};
    Rational recall{1};
    Rational accuracy{1};
    Rational f_measure{1};
};

namespace detail {

inline Rational ratio_or_one(long long num, long long den) {
    return den == 0 ? Rational(1) : Rational(num, den);
}

inline Rational f_of(Rational p, Rational r) {
    Rational s = p + r;
    return s == Rational(0) ? Rational(0) : Rational(2) * p * r / s;
}

}  // namespace detail

// exact/approx: per user, the final frontier as an object set. Universe size
// is the total number of distinct objects streamed (for the accuracy term's
// true negatives). Empty denominators count as vacuously perfect.
inline AccuracyReport accuracy_metrics(
    const std::vector<std::string>& user_ids,
    const std::vector<std::set<ObjectIndex>>& exact,
    const std::vector<std::set<ObjectIndex>>& approx, size_t universe_size) {
    if (exact.size() != approx.size() || exact.size() != user_ids.size())
        throw ConfigError("accuracy inputs cover different user sets");
    AccuracyReport report;
    long long sum_common = 0, sum_exact = 0, sum_approx = 0;
    Rational acc_sum(0);
    for (size_t c = 0; c < exact.size(); ++c) {
        std::vector<ObjectIndex> inter;
        std::set_intersection(exact[c].begin(), exact[c].end(), approx[c].begin(),
                              approx[c].end(), std::back_inserter(inter));
        AccuracyRow row;
        row.user = user_ids[c];
        row.exact_size = exact[c].size();
        row.approx_size = approx[c].size();
        row.common = inter.size();
        long long tp = static_cast<long long>(inter.size());
        long long fp = static_cast<long long>(approx[c].size()) - tp;
        long long fn = static_cast<long long>(exact[c].size()) - tp;
        long long tn = static_cast<long long>(universe_size) - tp - fp - fn;
        row.precision = detail::ratio_or_one(tp, tp + fp);
        row.recall = detail::ratio_or_one(tp, tp + fn);
        row.f_measure = detail::f_of(row.precision, row.recall);
        acc_sum += detail::ratio_or_one(tp + tn, static_cast<long long>(universe_size));
        report.per_user.push_back(std::move(row));
        sum_common += tp;
        sum_exact += static_cast<long long>(exact[c].size());
        sum_approx += static_cast<long long>(approx[c].size());
    }
    report.precision = detail::ratio_or_one(sum_common, sum_approx);
    report.recall = detail::ratio_or_one(sum_common, sum_exact);
    report.f_measure = detail::f_of(report.precision, report.recall);
    report.accuracy = exact.empty() ? Rational(1)
                                    : acc_sum / Rational(static_cast<long long>(exact.size()));
    return report;
}

}  // namespace prefmon
