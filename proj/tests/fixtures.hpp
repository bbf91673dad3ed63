#pragma once

#include <prefmon/prefmon.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

namespace fixtures {

inline std::string data_dir() { return PREFMON_DATA_DIR; }

// Laptop catalog with shoppers c1 and c2 (the running worked example).
inline prefmon::Dataset laptops() {
    return prefmon::load_dataset(data_dir() + "/laptops/schema.txt",
                                 data_dir() + "/laptops/objects.csv",
                                 data_dir() + "/laptops/prefs.csv");
}

// Six brand-only shoppers used by the similarity worked examples.
inline prefmon::Dataset customer4() {
    prefmon::Dataset d;
    d.schema = prefmon::load_schema(data_dir() + "/customer4/schema.txt");
    d.users = prefmon::load_profiles(data_dir() + "/customer4/prefs.csv", d.schema);
    return d;
}

// Three brand-only users driving the approximate-relation walkthrough.
inline prefmon::Dataset brand3() {
    prefmon::Dataset d;
    d.schema = prefmon::load_schema(data_dir() + "/brand3/schema.txt");
    d.users = prefmon::load_profiles(data_dir() + "/brand3/prefs.csv", d.schema);
    return d;
}

// Laptop schema and shoppers with the seven-object windowed stream.
inline prefmon::Dataset product_window() {
    prefmon::Dataset d = laptops();
    d.objects = prefmon::load_objects(data_dir() + "/product_window/objects.csv", d.schema);
    return d;
}

// Exact-common cluster over a subset of a dataset's users.
inline prefmon::ClusterProfile make_cluster(const prefmon::Dataset& data,
                                            std::vector<prefmon::UserIndex> members,
                                            int id = 0) {
    prefmon::ClusterProfile p;
    p.id = id;
    p.members = std::move(members);
    for (prefmon::AttributeId d = 0; d < data.schema.attribute_count(); ++d) {
        std::vector<prefmon::PreferenceRelation> rels;
        for (prefmon::UserIndex c : p.members)
            rels.push_back(data.users[static_cast<size_t>(c)].relations[static_cast<size_t>(d)]);
        p.relations.push_back(prefmon::intersect_relations(rels));
    }
    return p;
}

inline prefmon::ObjectIndex object_index(const prefmon::Dataset& data, const std::string& id) {
    for (size_t i = 0; i < data.objects.size(); ++i)
        if (data.objects[i].id == id) return static_cast<prefmon::ObjectIndex>(i);
    throw std::runtime_error("no such object: " + id);
}

inline std::set<std::string> names(const prefmon::Dataset& data,
                                   const std::vector<prefmon::ObjectIndex>& objs) {
    std::set<std::string> out;
    for (auto o : objs) out.insert(data.objects[o].id);
    return out;
}

inline std::set<std::string> user_names(const prefmon::Dataset& data,
                                        const std::vector<prefmon::UserIndex>& users) {
    std::set<std::string> out;
    for (auto c : users) out.insert(data.users[static_cast<size_t>(c)].id);
    return out;
}

// Small random instance for property suites: a workload plus a random
// partition of its users into clusters.
struct RandomInstance {
    prefmon::Dataset data;
    std::vector<std::vector<prefmon::UserIndex>> clusters;
};

inline RandomInstance random_instance(std::uint64_t seed, int max_objects = 60) {
    std::mt19937_64 rng(seed);
    prefmon::WorkloadSpec spec;
    spec.seed = rng();
    spec.users = std::uniform_int_distribution<int>(2, 20)(rng);
    spec.archetypes = std::uniform_int_distribution<int>(1, std::min(4, spec.users))(rng);
    spec.objects = std::uniform_int_distribution<int>(5, max_objects)(rng);
    spec.attributes = std::uniform_int_distribution<int>(1, 4)(rng);
    spec.domain_size = std::uniform_int_distribution<int>(2, 8)(rng);
    spec.edge_density = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
    spec.noise_drop = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
    spec.noise_add = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
    RandomInstance inst;
    inst.data = prefmon::generate_workload(spec).data;
    int k = std::uniform_int_distribution<int>(1, spec.users)(rng);
    inst.clusters.assign(static_cast<size_t>(k), {});
    for (int c = 0; c < spec.users; ++c)
        inst.clusters[static_cast<size_t>(
                          std::uniform_int_distribution<int>(0, k - 1)(rng))]
            .push_back(c);
    std::erase_if(inst.clusters, [](const auto& v) { return v.empty(); });
    return inst;
}

inline std::vector<prefmon::ClusterProfile> exact_clusters(const RandomInstance& inst) {
    std::vector<prefmon::ClusterProfile> out;
    for (size_t i = 0; i < inst.clusters.size(); ++i)
        out.push_back(make_cluster(inst.data, inst.clusters[i], static_cast<int>(i)));
    return out;
}

inline std::vector<prefmon::ClusterProfile> approx_clusters(const RandomInstance& inst,
                                                            long long theta1,
                                                            prefmon::Rational theta2) {
    std::vector<prefmon::ClusterProfile> out;
    for (size_t i = 0; i < inst.clusters.size(); ++i) {
        prefmon::ClusterProfile p;
        p.id = static_cast<int>(i);
        p.members = inst.clusters[i];
        p.kind = prefmon::ClusterKind::Approximate;
        p.relations = prefmon::approximate_relations(
            inst.data.users, p.members, inst.data.schema.attribute_count(), theta1, theta2);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace fixtures
