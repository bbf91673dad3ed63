#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace prefmon;

namespace {

ClusterProfile table2_approx_cluster(const Dataset& data) {
    // The approximate virtual shopper for {c1, c2}: a superset of their
    // common relations, given here as Hasse edges.
    const Schema& s = data.schema;
    auto edge = [&](AttributeId d, const char* x, const char* y) {
        return std::pair<ValueId, ValueId>(s.value_id(d, x), s.value_id(d, y));
    };
    AttributeId disp = s.attribute_id("display");
    AttributeId brand = s.attribute_id("brand");
    AttributeId cpu = s.attribute_id("CPU");
    ClusterProfile p;
    p.id = 0;
    p.members = {data.user_index("c1"), data.user_index("c2")};
    p.kind = ClusterKind::Approximate;
    p.relations = {
        PreferenceRelation::from_edges(
            disp, s.domain_size(disp),
            {edge(disp, "13-15.9", "10-12.9"), edge(disp, "10-12.9", "16-18.9"),
             edge(disp, "16-18.9", "19-up"), edge(disp, "19-up", "9.9-under")}),
        PreferenceRelation::from_edges(
            brand, s.domain_size(brand),
            {edge(brand, "Apple", "Samsung"), edge(brand, "Apple", "Sony"),
             edge(brand, "Lenovo", "Samsung"), edge(brand, "Lenovo", "Sony"),
             edge(brand, "Samsung", "Toshiba")}),
        PreferenceRelation::from_edges(
            cpu, s.domain_size(cpu),
            {edge(cpu, "dual", "single"), edge(cpu, "triple", "single"),
             edge(cpu, "quad", "triple")}),
    };
    return p;
}

}  // namespace

TEST_CASE("filter then verify on the laptop stream") {
    auto data = fixtures::laptops();
    auto cluster = fixtures::make_cluster(data, {data.user_index("c1"), data.user_index("c2")});
    FilterVerifyEngine engine(data, {cluster});
    for (ObjectIndex o = 0; o < 14; ++o) engine.step(o);
    CHECK(fixtures::names(data, engine.cluster_frontier(0).members) ==
          std::set<std::string>{"o2", "o3", "o7", "o10"});

    auto targets = engine.step(fixtures::object_index(data, "o15"));
    CHECK(fixtures::user_names(data, targets) == std::set<std::string>{"c2"});
    CHECK(fixtures::names(data, engine.cluster_frontier(0).members) ==
          std::set<std::string>{"o2", "o3", "o10", "o15"});
    // o7 left the cluster frontier, so c2's frontier dropped it too
    CHECK(fixtures::names(data, engine.frontier(data.user_index("c2")).members) ==
          std::set<std::string>{"o2", "o3", "o15"});

    auto before = engine.stats().comparisons;
    CHECK(engine.step(fixtures::object_index(data, "o16")).empty());
    // rejected by the first cluster-frontier member; members never consulted
    CHECK(engine.stats().comparisons == before + 1);
}

TEST_CASE("approximate filter then verify on the laptop stream") {
    auto data = fixtures::laptops();
    FilterVerifyEngine engine(data, {table2_approx_cluster(data)});
    for (ObjectIndex o = 0; o < 14; ++o) engine.step(o);
    CHECK(fixtures::names(data, engine.cluster_frontier(0).members) ==
          std::set<std::string>{"o2", "o7"});

    auto targets = engine.step(fixtures::object_index(data, "o15"));
    CHECK(fixtures::user_names(data, targets) == std::set<std::string>{"c2"});
    CHECK(fixtures::names(data, engine.cluster_frontier(0).members) ==
          std::set<std::string>{"o2", "o15"});
    CHECK_FALSE(engine.frontier(data.user_index("c2"))
                    .contains(fixtures::object_index(data, "o7")));
}

TEST_CASE("singleton clusters behave like the baseline") {
    std::mt19937_64 rng(53);
    for (int round = 0; round < 10; ++round) {
        auto inst = fixtures::random_instance(rng(), 40);
        BaselineEngine base(inst.data);
        FilterVerifyEngine ftv(inst.data, singleton_clusters(inst.data));
        for (ObjectIndex o = 0; o < inst.data.objects.size(); ++o)
            CHECK(base.step(o) == ftv.step(o));
    }
}

TEST_CASE("exact mode matches baseline per step under random clusterings") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 30; ++round) {
        auto inst = fixtures::random_instance(rng(), 40);
        BaselineEngine base(inst.data);
        FilterVerifyEngine ftv(inst.data, fixtures::exact_clusters(inst));
        std::vector<ObjectIndex> seen;
        for (ObjectIndex o = 0; o < inst.data.objects.size(); ++o) {
            seen.push_back(o);
            CHECK(base.step(o) == ftv.step(o));
            // member frontiers always sit inside their cluster frontier
            for (size_t u = 0; u < ftv.cluster_count(); ++u)
                for (UserIndex c : ftv.cluster(u).members)
                    for (ObjectIndex m : ftv.frontier(c).members)
                        CHECK(ftv.cluster_frontier(u).contains(m));
        }
        for (size_t c = 0; c < inst.data.users.size(); ++c) {
            auto expect = frontier_oracle(inst.data.objects, seen,
                                          inst.data.users[c].relations);
            CHECK(fixtures::names(inst.data, ftv.frontier(static_cast<UserIndex>(c)).members) ==
                  fixtures::names(inst.data, expect));
        }
    }
}

TEST_CASE("approximate frontiers stay inside exact ones") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 30; ++round) {
        auto inst = fixtures::random_instance(rng(), 40);
        BaselineEngine base(inst.data);
        FilterVerifyEngine exact(inst.data, fixtures::exact_clusters(inst));
        FilterVerifyEngine approx(inst.data, fixtures::approx_clusters(inst, 0, Rational(3, 5)));
        for (ObjectIndex o = 0; o < inst.data.objects.size(); ++o) {
            base.step(o);
            exact.step(o);
            approx.step(o);
            for (size_t u = 0; u < exact.cluster_count(); ++u) {
                const auto& pu = exact.cluster_frontier(u);
                const auto& pu_hat = approx.cluster_frontier(u);
                for (ObjectIndex m : pu_hat.members) CHECK(pu.contains(m));
                for (UserIndex c : exact.cluster(u).members) {
                    const auto& pc = base.frontier(c);
                    const auto& pc_hat = approx.frontier(c);
                    for (ObjectIndex m : pc.members) CHECK(pu.contains(m));
                    for (ObjectIndex m : pc_hat.members) CHECK(pu_hat.contains(m));
                    // cluster-approved objects that are truly Pareto-optimal
                    // for the member are always reported for it
                    for (ObjectIndex m : pu_hat.members)
                        if (pc.contains(m)) CHECK(pc_hat.contains(m));
                }
            }
        }
    }
}

TEST_CASE("degenerate thresholds reproduce exact mode") {
    std::mt19937_64 rng(67);
    for (int round = 0; round < 10; ++round) {
        auto inst = fixtures::random_instance(rng(), 30);
        FilterVerifyEngine exact(inst.data, fixtures::exact_clusters(inst));
        FilterVerifyEngine approx(inst.data,
                                  fixtures::approx_clusters(inst, 0, Rational(99, 100)));
        for (ObjectIndex o = 0; o < inst.data.objects.size(); ++o)
            CHECK(exact.step(o) == approx.step(o));
    }
}
