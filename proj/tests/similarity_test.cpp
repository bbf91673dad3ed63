#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace prefmon;

namespace {

struct Trio {
    Dataset data;
    ClusterProfile u1, u2, u3;
};

Trio trio() {
    Trio t;
    t.data = fixtures::customer4();
    t.u1 = fixtures::make_cluster(t.data, {0, 1}, 0);
    t.u2 = fixtures::make_cluster(t.data, {2, 3}, 1);
    t.u3 = fixtures::make_cluster(t.data, {4, 5}, 2);
    return t;
}

}  // namespace

TEST_CASE("exact similarity worked values") {
    auto t = trio();
    const auto& users = t.data.users;
    CHECK(similarity(SimilarityKind::IntersectionSize, t.u1, t.u3, 0, users) == Rational(2));
    CHECK(similarity(SimilarityKind::IntersectionSize, t.u1, t.u2, 0, users) == Rational(0));
    CHECK(similarity(SimilarityKind::Jaccard, t.u1, t.u3, 0, users) == Rational(2, 6));
    CHECK(similarity(SimilarityKind::Jaccard, t.u2, t.u3, 0, users) == Rational(2, 7));
    CHECK(similarity(SimilarityKind::WeightedIntersection, t.u1, t.u3, 0, users) ==
          Rational(3, 2));
    CHECK(similarity(SimilarityKind::WeightedIntersection, t.u2, t.u3, 0, users) ==
          Rational(3, 2));
    CHECK(similarity(SimilarityKind::WeightedJaccard, t.u1, t.u3, 0, users) == Rational(3, 11));
    CHECK(similarity(SimilarityKind::WeightedJaccard, t.u2, t.u3, 0, users) == Rational(3, 12));
}

TEST_CASE("frequency-vector similarity worked values") {
    auto t = trio();
    const auto& users = t.data.users;
    Rational aj = similarity(SimilarityKind::ApproxJaccard, t.u1, t.u3, 0, users);
    CHECK(aj == Rational(5, 14));
    CHECK(std::abs(boost::rational_cast<double>(aj) - 0.36) <= 0.005);
    Rational awj = similarity(SimilarityKind::ApproxWeightedJaccard, t.u1, t.u3, 0, users);
    CHECK(awj == Rational(5, 27));
    CHECK(std::abs(boost::rational_cast<double>(awj) - 0.19) <= 0.005);
}

TEST_CASE("frequency vector entries") {
    auto t = trio();
    const int m = t.data.schema.domain_size(0);
    auto id = [&](const char* n) { return t.data.schema.value_id(0, n); };
    auto at = [&](const std::vector<Rational>& v, const char* x, const char* y) {
        return v[pair_index(m, id(x), id(y))];
    };
    auto u1 = frequency_vector(t.data.users, t.u1.members, 0, false);
    CHECK(at(u1, "Apple", "Lenovo") == Rational(1));
    CHECK(at(u1, "Apple", "Samsung") == Rational(1));
    CHECK(at(u1, "Lenovo", "Samsung") == Rational(1));
    CHECK(at(u1, "Toshiba", "Samsung") == Rational(1));
    CHECK(at(u1, "Toshiba", "Lenovo") == Rational(1, 2));
    CHECK(at(u1, "Apple", "Toshiba") == Rational(0));
    CHECK(at(u1, "Samsung", "Apple") == Rational(0));

    auto u3w = frequency_vector(t.data.users, t.u3.members, 0, true);
    CHECK(at(u3w, "Apple", "Toshiba") == Rational(1, 4));  // held by one member at weight 1/2
    CHECK(at(u3w, "Lenovo", "Apple") == Rational(1));
    CHECK(at(u3w, "Apple", "Samsung") == Rational(1, 2));
    CHECK(at(u3w, "Toshiba", "Samsung") == Rational(1, 4));

    // one member holding a full chain gives 0/1 entries
    auto solo = frequency_vector(t.data.users, {0}, 0, false);
    for (const auto& e : solo) CHECK((e == Rational(0) || e == Rational(1)));
}

TEST_CASE("similarity algebraic properties") {
    std::mt19937_64 rng(31);
    auto kinds = {SimilarityKind::IntersectionSize, SimilarityKind::Jaccard,
                  SimilarityKind::WeightedIntersection, SimilarityKind::WeightedJaccard,
                  SimilarityKind::ApproxJaccard, SimilarityKind::ApproxWeightedJaccard};
    for (int round = 0; round < 30; ++round) {
        auto inst = fixtures::random_instance(rng(), 5);
        if (inst.clusters.size() < 2) continue;
        auto clusters = fixtures::exact_clusters(inst);
        const auto& users = inst.data.users;
        const int attrs = inst.data.schema.attribute_count();
        const auto& a = clusters[0];
        const auto& b = clusters[1];
        for (auto kind : kinds) {
            for (AttributeId d = 0; d < attrs; ++d) {
                Rational ab = similarity(kind, a, b, d, users);
                CHECK(ab == similarity(kind, b, a, d, users));
                CHECK(ab >= Rational(0));
                if (kind == SimilarityKind::Jaccard || kind == SimilarityKind::WeightedJaccard ||
                    kind == SimilarityKind::ApproxJaccard ||
                    kind == SimilarityKind::ApproxWeightedJaccard)
                    CHECK(ab <= Rational(1));
            }
        }
        for (AttributeId d = 0; d < attrs; ++d) {
            // Jaccard is the intersection count over the union count
            const auto& ra = a.relations[static_cast<size_t>(d)];
            const auto& rb = b.relations[static_cast<size_t>(d)];
            long long uni = static_cast<long long>(ra.tuple_count() + rb.tuple_count()) -
                            boost::rational_cast<long long>(
                                similarity(SimilarityKind::IntersectionSize, a, b, d, users));
            Rational expect = uni == 0
                                  ? Rational(0)
                                  : similarity(SimilarityKind::IntersectionSize, a, b, d, users) /
                                        Rational(uni);
            CHECK(similarity(SimilarityKind::Jaccard, a, b, d, users) == expect);
        }
        // self-similarity
        for (AttributeId d = 0; d < attrs; ++d) {
            if (a.relations[static_cast<size_t>(d)].tuple_count() > 0) {
                CHECK(similarity(SimilarityKind::Jaccard, a, a, d, users) == Rational(1));
                CHECK(similarity(SimilarityKind::ApproxJaccard, a, a, d, users) == Rational(1));
            }
        }
    }
}

TEST_CASE("weighted similarity reduces to unweighted on flat relations") {
    // all values maximal: a relation of disjoint edges... impossible; use
    // empty-overlap structure where every better value is maximal
    auto a = PreferenceRelation::from_edges(0, 4, {{0, 2}, {1, 2}});
    auto b = PreferenceRelation::from_edges(0, 4, {{0, 2}, {1, 3}});
    ClusterProfile ca, cb;
    ca.relations = {a};
    cb.relations = {b};
    std::vector<UserProfile> none;
    CHECK(similarity(SimilarityKind::WeightedIntersection, ca, cb, 0, none) ==
          similarity(SimilarityKind::IntersectionSize, ca, cb, 0, none));
}

TEST_CASE("empty relations have zero Jaccard similarity") {
    ClusterProfile a, b;
    a.relations = {PreferenceRelation::from_edges(0, 3, {})};
    b.relations = {PreferenceRelation::from_edges(0, 3, {})};
    std::vector<UserProfile> none;
    CHECK(similarity(SimilarityKind::Jaccard, a, b, 0, none) == Rational(0));
    CHECK(similarity(SimilarityKind::WeightedJaccard, a, b, 0, none) == Rational(0));
}

TEST_CASE("agglomeration of the six brand shoppers") {
    auto data = fixtures::customer4();
    AgglomerateOptions opt;
    opt.kind = SimilarityKind::WeightedJaccard;
    opt.h = Rational(1, 4);  // anywhere in (0, 3/11]
    auto result = agglomerate(data.users, opt);

    REQUIRE(result.clusters.size() == 2);
    CHECK(fixtures::user_names(data, result.clusters[0].members) ==
          std::set<std::string>{"c1", "c2", "c5", "c6"});
    CHECK(fixtures::user_names(data, result.clusters[1].members) ==
          std::set<std::string>{"c3", "c4"});

    REQUIRE(result.dendrogram.merges.size() == 4);
    CHECK(result.dendrogram.merges[0].similarity == Rational(12, 13));
    CHECK(result.dendrogram.merges[1].similarity == Rational(7, 9));
    CHECK(result.dendrogram.merges[2].similarity == Rational(7, 9));
    CHECK(result.dendrogram.merges[3].similarity == Rational(3, 11));
    for (size_t i = 1; i < result.dendrogram.merges.size(); ++i)
        CHECK(result.dendrogram.merges[i].similarity <=
              result.dendrogram.merges[i - 1].similarity);
    // the 7/9 tie resolves to the pair containing the smallest user
    CHECK(result.dendrogram.merges[1].left == 0);
    CHECK(result.dendrogram.merges[1].right == 1);
}

TEST_CASE("agglomeration edge cases") {
    auto data = fixtures::customer4();
    AgglomerateOptions opt;
    opt.kind = SimilarityKind::WeightedJaccard;
    opt.h = Rational(2);  // above every similarity
    auto result = agglomerate(data.users, opt);
    CHECK(result.clusters.size() == data.users.size());
    CHECK(result.dendrogram.merges.empty());

    std::vector<UserProfile> twins = {data.users[0], data.users[0]};
    twins[1].id = "c1b";
    AgglomerateOptions opt2;
    opt2.kind = SimilarityKind::Jaccard;
    opt2.h = Rational(1);
    auto merged = agglomerate(twins, opt2);
    CHECK(merged.clusters.size() == 1);
    CHECK(merged.dendrogram.merges.size() == 1);
    CHECK(merged.dendrogram.merges[0].similarity == Rational(1));
}
