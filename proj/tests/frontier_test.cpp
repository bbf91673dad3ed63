#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "fixtures.hpp"

using namespace prefmon;

namespace {

std::vector<ObjectIndex> first_n(size_t n) {
    std::vector<ObjectIndex> v(n);
    std::iota(v.begin(), v.end(), 0u);
    return v;
}

void check_consistency(const Dataset& data, const BaselineEngine& engine) {
    DominanceStats scratch;
    for (size_t c = 0; c < data.users.size(); ++c) {
        const auto& f = engine.frontier(static_cast<UserIndex>(c));
        for (ObjectIndex a : f.members) {
            CHECK(engine.index().holds(a, static_cast<UserIndex>(c)));
            for (ObjectIndex b : f.members) {
                if (a == b) continue;
                CHECK(compare_objects(data.objects[a], data.objects[b],
                                      data.users[c].relations,
                                      scratch) != Outcome::Dominates);
            }
        }
    }
}

}  // namespace

TEST_CASE("frontier update on the laptop stream") {
    auto data = fixtures::laptops();
    UserIndex c2 = data.user_index("c2");
    Frontier f;
    TargetIndex index;
    DominanceStats stats;
    const auto& rels = data.users[static_cast<size_t>(c2)].relations;
    for (ObjectIndex o = 0; o < 14; ++o)
        update_pareto_frontier(data.objects, rels, c2, o, f, &index, stats);
    CHECK(fixtures::names(data, f.members) == std::set<std::string>{"o2", "o3", "o7"});
    CHECK(update_pareto_frontier(data.objects, rels, c2, fixtures::object_index(data, "o15"),
                                 f, &index, stats));
    CHECK(fixtures::names(data, f.members) == std::set<std::string>{"o2", "o3", "o15"});

    UserIndex c1 = data.user_index("c1");
    Frontier f1;
    const auto& rels1 = data.users[static_cast<size_t>(c1)].relations;
    for (ObjectIndex o = 0; o < 14; ++o)
        update_pareto_frontier(data.objects, rels1, c1, o, f1, &index, stats);
    CHECK(fixtures::names(data, f1.members) == std::set<std::string>{"o2"});
    CHECK_FALSE(update_pareto_frontier(data.objects, rels1, c1,
                                       fixtures::object_index(data, "o15"), f1, &index, stats));
    CHECK(fixtures::names(data, f1.members) == std::set<std::string>{"o2"});

    Frontier fresh;
    CHECK(update_pareto_frontier(data.objects, rels, c2, 0, fresh, nullptr, stats));
    CHECK(fresh.members == std::vector<ObjectIndex>{0});
}

TEST_CASE("baseline steps report target users") {
    auto data = fixtures::laptops();
    BaselineEngine engine(data);
    auto first = engine.step(0);
    CHECK(first.size() == data.users.size());  // empty frontiers accept anything
    for (ObjectIndex o = 1; o < 14; ++o) engine.step(o);
    CHECK(fixtures::user_names(data, engine.step(fixtures::object_index(data, "o15"))) ==
          std::set<std::string>{"c2"});
    CHECK(engine.step(fixtures::object_index(data, "o16")).empty());
    check_consistency(data, engine);
}

TEST_CASE("oracle over the laptop stream") {
    auto data = fixtures::laptops();
    auto subset = first_n(15);
    UserIndex c2 = data.user_index("c2");
    auto pc2 = frontier_oracle(data.objects, subset,
                               data.users[static_cast<size_t>(c2)].relations);
    CHECK(fixtures::names(data, pc2) == std::set<std::string>{"o2", "o3", "o15"});

    auto u = fixtures::make_cluster(data, {data.user_index("c1"), c2});
    auto pu = frontier_oracle(data.objects, subset, u.relations);
    CHECK(fixtures::names(data, pu) == std::set<std::string>{"o2", "o3", "o10", "o15"});

    auto lone = frontier_oracle(data.objects, {3}, u.relations);
    CHECK(lone == std::vector<ObjectIndex>{3});
}

TEST_CASE("identical objects are both Pareto-optimal") {
    Dataset data;
    data.schema.add_categorical("a", {"x", "y"});
    UserProfile u;
    u.id = "u";
    u.relations.push_back(PreferenceRelation::from_edges(0, 2, {{0, 1}}));
    data.users.push_back(u);
    data.objects = {{"p", {0}, 0}, {"q", {0}, 1}, {"r", {1}, 2}};
    BaselineEngine engine(data);
    CHECK(engine.step(0) == std::vector<UserIndex>{0});
    CHECK(engine.step(1) == std::vector<UserIndex>{0});  // identical twin kept
    CHECK(engine.step(2).empty());
    CHECK(fixtures::names(data, engine.frontier(0).members) ==
          std::set<std::string>{"p", "q"});
}

TEST_CASE("stream equals oracle under permuted arrivals") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 40; ++round) {
        auto inst = fixtures::random_instance(rng(), 50);
        auto& data = inst.data;
        std::vector<ObjectIndex> order = first_n(data.objects.size());
        if (round % 2 == 1) std::shuffle(order.begin(), order.end(), rng);

        BaselineEngine engine(data);
        for (ObjectIndex o : order) engine.step(o);
        for (size_t c = 0; c < data.users.size(); ++c) {
            auto expect = frontier_oracle(data.objects, order, data.users[c].relations);
            CHECK(fixtures::names(data, engine.frontier(static_cast<UserIndex>(c)).members) ==
                  fixtures::names(data, expect));
        }
        check_consistency(data, engine);
    }
}
