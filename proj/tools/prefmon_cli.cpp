// Command-line front end: cluster users, stream objects through any of the
// dissemination algorithms, dump brute-force oracles, score approximate runs,
// and generate synthetic workloads.

#include <CLI11.hpp>

#include <prefmon/prefmon.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

namespace {

using namespace prefmon;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitInvariant = 3;

struct InvariantViolation : Error {
    using Error::Error;
};

SimilarityKind parse_sim(const std::string& name) {
    static const std::map<std::string, SimilarityKind> kinds = {
        {"i", SimilarityKind::IntersectionSize},
        {"j", SimilarityKind::Jaccard},
        {"wi", SimilarityKind::WeightedIntersection},
        {"wj", SimilarityKind::WeightedJaccard},
        {"aj", SimilarityKind::ApproxJaccard},
        {"awj", SimilarityKind::ApproxWeightedJaccard},
    };
    auto it = kinds.find(name);
    if (it == kinds.end()) throw ConfigError("unknown similarity kind: " + name);
    return it->second;
}

Rational parse_rational(const std::string& text) {
    // accepts "a/b" or a decimal with up to six places
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos)
            return Rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
        double x = std::stod(text);
        return Rational(static_cast<long long>(std::llround(x * 1e6)), 1000000);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number: " + text);
    }
}

std::string format_rational(Rational r, int places = 4) {
    double x = boost::rational_cast<double>(r);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, x);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write " + p.string());
    return out;
}

std::string join_users(const Dataset& data, const std::vector<UserIndex>& users) {
    std::string out;
    for (UserIndex c : users) {
        if (!out.empty()) out += ';';
        out += data.users[static_cast<size_t>(c)].id;
    }
    return out;
}

std::string join_objects(const Dataset& data, const std::vector<ObjectIndex>& objs) {
    std::string out;
    for (ObjectIndex o : objs) {
        if (!out.empty()) out += ';';
        out += data.objects[o].id;
    }
    return out;
}

struct Options {
    std::string algo = "baseline";
    std::string sim = "wj";
    std::string h;
    long long theta1 = 0;
    std::string theta2 = "0.6";
    size_t window = 0;
    std::uint64_t seed = 1;
    std::string schema, objects, prefs, out;
    bool assert_oracle = false;
    bool normalize = false;
};

bool algo_windowed(const std::string& a) {
    return a == "baseline-sw" || a == "ftv-sw" || a == "ftv-approx-sw";
}
bool algo_clustered(const std::string& a) { return a != "baseline" && a != "baseline-sw"; }
bool algo_approx(const std::string& a) {
    return a == "ftv-approx" || a == "ftv-approx-sw";
}

std::vector<ClusterProfile> build_clusters(const Dataset& data, const Options& opt) {
    if (opt.h.empty())
        throw ConfigError("--h is required for clustered algorithms");
    AgglomerateOptions ao;
    ao.kind = parse_sim(opt.sim);
    ao.h = parse_rational(opt.h);
    ao.theta1 = opt.theta1;
    ao.theta2 = parse_rational(opt.theta2);
    ao.normalize = opt.normalize;
    auto result = agglomerate(data.users, ao);
    // relations must match the run mode regardless of the similarity used
    for (auto& cl : result.clusters) {
        if (algo_approx(opt.algo)) {
            cl.kind = ClusterKind::Approximate;
            cl.relations = approximate_relations(data.users, cl.members,
                                                 data.schema.attribute_count(), opt.theta1,
                                                 parse_rational(opt.theta2));
        } else {
            cl.kind = ClusterKind::ExactCommon;
            cl.relations = detail::common_relations(data.users, cl.members,
                                                    data.schema.attribute_count());
        }
    }
    return result.clusters;
}

void write_frontiers(const Dataset& data,
                     const std::vector<std::vector<ObjectIndex>>& frontiers,
                     const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "user,object\n";
    for (size_t c = 0; c < frontiers.size(); ++c) {
        auto sorted = frontiers[c];
        std::sort(sorted.begin(), sorted.end());
        for (ObjectIndex o : sorted) out << data.users[c].id << ',' << data.objects[o].id << '\n';
    }
}

// Per-step trace of every holder's frontier (and buffer, when windowed).
struct TraceWriter {
    std::ofstream out;
    const Dataset* data;

    void begin(const Dataset& d, const std::filesystem::path& path) {
        data = &d;
        out = open_out(path);
        out << "step,holder,set,members\n";
    }
    void row(size_t step, const std::string& holder, const char* set,
             const std::vector<ObjectIndex>& members) {
        out << step << ',' << holder << ',' << set << ',' << join_objects(*data, members)
            << '\n';
    }
};

int cmd_cluster(const Options& opt) {
    Dataset data;
    data.schema = load_schema(opt.schema);
    data.users = load_profiles(opt.prefs, data.schema);
    if (opt.h.empty()) throw ConfigError("--h is required");
    AgglomerateOptions ao;
    ao.kind = parse_sim(opt.sim);
    ao.h = parse_rational(opt.h);
    ao.theta1 = opt.theta1;
    ao.theta2 = parse_rational(opt.theta2);
    ao.normalize = opt.normalize;
    auto result = agglomerate(data.users, ao);

    std::filesystem::path dir(opt.out);
    auto clusters = open_out(dir / "clusters.csv");
    clusters << "cluster,user\n";
    for (const auto& cl : result.clusters)
        for (UserIndex c : cl.members)
            clusters << cl.id << ',' << data.users[static_cast<size_t>(c)].id << '\n';
    auto merges = open_out(dir / "merges.csv");
    merges << "left,right,merged,similarity\n";
    for (const auto& m : result.dendrogram.merges)
        merges << m.left << ',' << m.right << ',' << m.merged << ','
               << format_rational(m.similarity, 6) << '\n';
    return kExitOk;
}

// Wraps the four engines behind one stepping interface so the run loop,
// reporting, and trace export are written once.
struct Runner {
    Dataset data;
    Options opt;
    std::unique_ptr<BaselineEngine> base;
    std::unique_ptr<FilterVerifyEngine> ftv;
    std::unique_ptr<BaselineSWEngine> base_sw;
    std::unique_ptr<FilterVerifySWEngine> ftv_sw;

    std::vector<UserIndex> step(ObjectIndex o) {
        if (base) return base->step(o);
        if (ftv) return ftv->step(o);
        if (base_sw) return base_sw->step(o);
        return ftv_sw->step(o);
    }
    std::uint64_t comparisons() const {
        if (base) return base->stats().comparisons;
        if (ftv) return ftv->stats().comparisons;
        if (base_sw) return base_sw->stats().comparisons;
        return ftv_sw->stats().comparisons;
    }
    const Frontier& frontier(UserIndex c) const {
        if (base) return base->frontier(c);
        if (ftv) return ftv->frontier(c);
        if (base_sw) return base_sw->frontier(c);
        return ftv_sw->frontier(c);
    }
};

int cmd_run(const Options& opt) {
    Runner r;
    r.data = load_dataset(opt.schema, opt.objects, opt.prefs);
    r.opt = opt;
    const Dataset& data = r.data;
    if (algo_windowed(opt.algo)) {
        if (opt.window == 0) throw ConfigError("--window is required for windowed algorithms");
    } else if (opt.window != 0) {
        throw ConfigError("--window only applies to windowed algorithms");
    }
    if (opt.algo == "baseline") {
        r.base = std::make_unique<BaselineEngine>(data);
    } else if (opt.algo == "ftv" || opt.algo == "ftv-approx") {
        r.ftv = std::make_unique<FilterVerifyEngine>(data, build_clusters(data, opt));
    } else if (opt.algo == "baseline-sw") {
        r.base_sw = std::make_unique<BaselineSWEngine>(data, opt.window);
    } else if (opt.algo == "ftv-sw" || opt.algo == "ftv-approx-sw") {
        r.ftv_sw =
            std::make_unique<FilterVerifySWEngine>(data, build_clusters(data, opt), opt.window);
    } else {
        throw ConfigError("unknown algorithm: " + opt.algo);
    }

    std::filesystem::path dir(opt.out);
    auto steps = open_out(dir / "steps.csv");
    steps << "step,object,targets,step_comparisons,cum_comparisons,step_micros,cum_micros\n";
    TraceWriter trace;
    bool tracing = algo_windowed(opt.algo);
    if (tracing) trace.begin(data, dir / "trace.csv");

    bool exact_algo = opt.algo == "baseline" || opt.algo == "ftv" ||
                      opt.algo == "baseline-sw" || opt.algo == "ftv-sw";
    std::uint64_t prev_cmp = 0;
    long long cum_us = 0;
    std::vector<ObjectIndex> seen;
    for (ObjectIndex o = 0; o < data.objects.size(); ++o) {
        auto t0 = std::chrono::steady_clock::now();
        auto targets = r.step(o);
        auto t1 = std::chrono::steady_clock::now();
        long long us =
            std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
        cum_us += us;
        std::uint64_t cmp = r.comparisons();
        steps << (o + 1) << ',' << data.objects[o].id << ',' << join_users(data, targets)
              << ',' << (cmp - prev_cmp) << ',' << cmp << ',' << us << ',' << cum_us << '\n';
        prev_cmp = cmp;
        seen.push_back(o);
        if (tracing) {
            for (size_t c = 0; c < data.users.size(); ++c) {
                trace.row(o + 1, data.users[c].id, "frontier",
                          r.frontier(static_cast<UserIndex>(c)).members);
                if (r.base_sw)
                    trace.row(o + 1, data.users[c].id, "buffer",
                              r.base_sw->buffer(static_cast<UserIndex>(c)).members);
            }
            if (r.ftv_sw) {
                for (size_t u = 0; u < r.ftv_sw->cluster_count(); ++u) {
                    std::string holder = "cluster:" + std::to_string(r.ftv_sw->cluster(u).id);
                    trace.row(o + 1, holder, "frontier", r.ftv_sw->cluster_frontier(u).members);
                    trace.row(o + 1, holder, "buffer", r.ftv_sw->buffer(u).members);
                }
            }
        }
        if (opt.assert_oracle && exact_algo) {
            std::vector<ObjectIndex> scope = seen;
            if (algo_windowed(opt.algo) && seen.size() > opt.window)
                scope.assign(seen.end() - static_cast<long>(opt.window), seen.end());
            for (size_t c = 0; c < data.users.size(); ++c) {
                auto expect =
                    frontier_oracle(data.objects, scope, data.users[c].relations);
                std::set<ObjectIndex> got(r.frontier(static_cast<UserIndex>(c)).members.begin(),
                                          r.frontier(static_cast<UserIndex>(c)).members.end());
                if (std::set<ObjectIndex>(expect.begin(), expect.end()) != got)
                    throw InvariantViolation("frontier of " + data.users[c].id +
                                             " diverged from the oracle at step " +
                                             std::to_string(o + 1));
            }
        }
    }

    std::vector<std::vector<ObjectIndex>> finals;
    for (size_t c = 0; c < data.users.size(); ++c)
        finals.push_back(r.frontier(static_cast<UserIndex>(c)).members);
    write_frontiers(data, finals, dir / "frontiers.csv");
    return kExitOk;
}

std::map<std::string, std::set<std::string>> read_frontier_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::map<std::string, std::set<std::string>> out;
    std::string line;
    std::getline(in, line);  // header
    size_t ln = 1;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(path + ":" + std::to_string(ln) + ": expected user,object");
        out[line.substr(0, comma)].insert(line.substr(comma + 1));
    }
    return out;
}

int cmd_evaluate(const std::string& exact_path, const std::string& approx_path,
                 const std::string& out_path) {
    auto exact = read_frontier_file(exact_path);
    auto approx = read_frontier_file(approx_path);
    std::set<std::string> users;
    std::set<std::string> universe;
    for (const auto& [u, objs] : exact) {
        users.insert(u);
        universe.insert(objs.begin(), objs.end());
    }
    for (const auto& [u, objs] : approx) {
        users.insert(u);
        universe.insert(objs.begin(), objs.end());
    }
    // object names to dense ids
    std::map<std::string, ObjectIndex> ids;
    for (const auto& name : universe) ids.emplace(name, static_cast<ObjectIndex>(ids.size()));
    std::vector<std::string> user_ids(users.begin(), users.end());
    std::vector<std::set<ObjectIndex>> e, a;
    for (const auto& u : user_ids) {
        std::set<ObjectIndex> se, sa;
        if (auto it = exact.find(u); it != exact.end())
            for (const auto& n : it->second) se.insert(ids.at(n));
        if (auto it = approx.find(u); it != approx.end())
            for (const auto& n : it->second) sa.insert(ids.at(n));
        e.push_back(std::move(se));
        a.push_back(std::move(sa));
    }
    auto report = accuracy_metrics(user_ids, e, a, universe.size());
    auto out = open_out(out_path);
    out << "user,exact,approx,common,precision,recall,f\n";
    for (const auto& row : report.per_user)
        out << row.user << ',' << row.exact_size << ',' << row.approx_size << ','
            << row.common << ',' << format_rational(row.precision) << ','
            << format_rational(row.recall) << ',' << format_rational(row.f_measure) << '\n';
    out << "ALL,,,," << format_rational(report.precision) << ','
        << format_rational(report.recall) << ',' << format_rational(report.f_measure) << '\n';
    std::cout << "precision " << format_rational(report.precision) << " recall "
              << format_rational(report.recall) << " f " << format_rational(report.f_measure)
              << " accuracy " << format_rational(report.accuracy) << '\n';
    return kExitOk;
}

int cmd_oracle(const Options& opt) {
    Dataset data = load_dataset(opt.schema, opt.objects, opt.prefs);
    std::filesystem::path dir(opt.out);
    if (opt.window == 0) {
        std::vector<ObjectIndex> all(data.objects.size());
        std::iota(all.begin(), all.end(), 0u);
        std::vector<std::vector<ObjectIndex>> finals;
        for (size_t c = 0; c < data.users.size(); ++c)
            finals.push_back(frontier_oracle(data.objects, all, data.users[c].relations));
        write_frontiers(data, finals, dir / "frontiers.csv");
        return kExitOk;
    }
    TraceWriter trace;
    trace.begin(data, dir / "trace.csv");
    std::vector<ObjectIndex> alive;
    for (ObjectIndex o = 0; o < data.objects.size(); ++o) {
        alive.push_back(o);
        if (alive.size() > opt.window) alive.erase(alive.begin());
        for (size_t c = 0; c < data.users.size(); ++c)
            trace.row(o + 1, data.users[c].id, "frontier",
                      frontier_oracle(data.objects, alive, data.users[c].relations));
    }
    return kExitOk;
}

int cmd_gen(const WorkloadSpec& spec, const std::string& out_dir) {
    auto w = generate_workload(spec);
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    save_schema(w.data.schema, (dir / "schema.txt").string());
    save_objects(w.data.objects, w.data.schema, (dir / "objects.csv").string());
    save_profiles(w.data.users, w.data.schema, (dir / "prefs.csv").string());
    auto labels = open_out(dir / "archetypes.csv");
    labels << "user,archetype\n";
    for (size_t c = 0; c < w.data.users.size(); ++c)
        labels << w.data.users[c].id << ',' << w.archetype_of[c] << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming Pareto-frontier monitoring for many users"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_objects) {
        cmd->add_option("--schema", opt.schema, "schema file")->required();
        cmd->add_option("--prefs", opt.prefs, "preference edge file")->required();
        if (needs_objects)
            cmd->add_option("--objects", opt.objects, "object stream file")->required();
        cmd->add_option("--out", opt.out, "output directory")->required();
    };

    auto* cluster = app.add_subcommand("cluster", "agglomerate users into clusters");
    cluster->set_help_flag("--help", "print help");  // frees --h for the threshold
    add_common(cluster, false);
    cluster->add_option("--sim", opt.sim, "similarity kind: i|j|wi|wj|aj|awj");
    cluster->add_option("--h", opt.h, "merge threshold (rational a/b or decimal)");
    cluster->add_option("--theta1", opt.theta1, "approximate relation size cap (0 = auto)");
    cluster->add_option("--theta2", opt.theta2, "approximate frequency floor");

    auto* run = app.add_subcommand("run", "stream objects through an algorithm");
    run->set_help_flag("--help", "print help");
    add_common(run, true);
    run->add_option("--algo", opt.algo,
                    "baseline|ftv|ftv-approx|baseline-sw|ftv-sw|ftv-approx-sw");
    run->add_option("--sim", opt.sim, "similarity kind for clustering");
    run->add_option("--h", opt.h, "merge threshold");
    run->add_option("--theta1", opt.theta1, "approximate relation size cap (0 = auto)");
    run->add_option("--theta2", opt.theta2, "approximate frequency floor");
    run->add_option("--window", opt.window, "sliding window size (windowed algorithms)");
    run->add_option("--seed", opt.seed, "random seed (reserved for generated inputs)");
    run->add_flag("--assert-oracle", opt.assert_oracle,
                  "verify exact frontiers against the brute-force oracle each step");

    std::string eval_exact, eval_approx, eval_out;
    auto* evaluate = app.add_subcommand("evaluate", "score an approximate run");
    evaluate->add_option("--exact", eval_exact, "frontiers.csv of the exact run")->required();
    evaluate->add_option("--approx", eval_approx, "frontiers.csv of the approximate run")
        ->required();
    evaluate->add_option("--out", eval_out, "accuracy csv path")->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force frontier dump");
    add_common(oracle, true);
    oracle->add_option("--window", opt.window, "sliding window size (0 = append-only)");

    WorkloadSpec spec;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a synthetic workload");
    gen->add_option("--seed", spec.seed, "random seed");
    gen->add_option("--users", spec.users, "number of users");
    gen->add_option("--archetypes", spec.archetypes, "number of archetype profiles");
    gen->add_option("--objects", spec.objects, "number of objects");
    gen->add_option("--attrs", spec.attributes, "number of attributes");
    gen->add_option("--domain", spec.domain_size, "values per attribute");
    gen->add_option("--edge-density", spec.edge_density, "archetype edge density");
    gen->add_option("--noise-drop", spec.noise_drop, "per-edge drop probability");
    gen->add_option("--noise-add", spec.noise_add, "per-edge add probability");
    gen->add_option("--out", gen_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (cluster->parsed()) return cmd_cluster(opt);
        if (run->parsed()) return cmd_run(opt);
        if (evaluate->parsed()) return cmd_evaluate(eval_exact, eval_approx, eval_out);
        if (oracle->parsed()) return cmd_oracle(opt);
        if (gen->parsed()) return cmd_gen(spec, gen_out);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitConfig;
}
