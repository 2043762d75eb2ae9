// Command-line front end: detect, enhance-ga, enhance-se, attack,
// extract-sub, evaluate, benchmark. Every stochastic subcommand takes a
// mandatory --seed and writes byte-deterministic outputs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "recd/bench.hpp"
#include "recd/error.hpp"

namespace {

using namespace recd;

Graph require_graph(const std::string& path) { return load_edge_list_file(path); }

DetectorSpec make_detector(const std::string& name, int walktrap_steps,
                           const std::string& external) {
    auto kind = detector_from_string(name);
    if (!kind) throw ConfigError("unknown detector: " + name);
    DetectorSpec spec;
    spec.kind = *kind;
    spec.walktrap_steps = walktrap_steps;
    spec.external_path = external;
    if (spec.kind == DetectorKind::External && external.empty())
        throw ConfigError("external detector needs --external-partition");
    return spec;
}

std::vector<SimilarityKind> parse_indices(const std::string& csv) {
    std::vector<SimilarityKind> kinds;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto kind = similarity_from_string(item);
        if (!kind) throw ConfigError("unknown similarity index: " + item);
        kinds.push_back(*kind);
    }
    if (kinds.empty()) throw ConfigError("no similarity indices given");
    return kinds;
}

void write_partition_file(const Partition& p, const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write partition file: " + path);
    write_labels(p, g, out);
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write graph file: " + path);
    write_edge_list(g, out);
}

void print_scores(const Graph& g, const Partition& found, const Partition* truth) {
    std::cout << "communities " << found.community_count() << "\n";
    std::cout << "q " << modularity(g, found) << "\n";
    if (truth) {
        std::cout << "nmi " << nmi(found, *truth) << "\n";
        std::cout << "ari " << ari(found, *truth) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"network structure enhancement for community detection"};
    app.require_subcommand(1);

    // ---- detect
    std::string d_graph, d_labels, d_detector = "louvain", d_external, d_out;
    int d_steps = 4;
    std::uint64_t d_seed = 0;
    auto* detect_cmd = app.add_subcommand("detect", "run a community detector");
    detect_cmd->add_option("--graph", d_graph, "edge list file")->required();
    detect_cmd->add_option("--labels", d_labels, "ground-truth label file");
    detect_cmd->add_option("--detector", d_detector, "louvain|label_propagation|greedy_modularity|walktrap|external");
    detect_cmd->add_option("--walktrap-steps", d_steps, "walk length for walktrap");
    detect_cmd->add_option("--external-partition", d_external, "partition file for the external plug");
    detect_cmd->add_option("--seed", d_seed, "rng seed")->required();
    detect_cmd->add_option("--out-partition", d_out, "write the partition here");

    // ---- enhance-ga
    std::string g_graph, g_labels, g_detector = "louvain", g_out_part, g_out_graph;
    int g_pop = 120, g_gens = 1000, g_steps = 4;
    double g_pc = 0.8, g_pm = 0.02, g_pe = 0.2, g_ba = 0.1, g_bd = 0.05;
    std::uint64_t g_seed = 0;
    auto* ga_cmd = app.add_subcommand("enhance-ga", "genetic rewiring enhancement");
    ga_cmd->add_option("--graph", g_graph)->required();
    ga_cmd->add_option("--labels", g_labels, "ground-truth labels (enables the count-aware fitness)");
    ga_cmd->add_option("--detector", g_detector);
    ga_cmd->add_option("--walktrap-steps", g_steps);
    ga_cmd->add_option("--pop", g_pop, "population size");
    ga_cmd->add_option("--pc", g_pc, "crossover rate");
    ga_cmd->add_option("--pm", g_pm, "mutation rate");
    ga_cmd->add_option("--pe", g_pe, "elitism fraction");
    ga_cmd->add_option("--gens", g_gens, "generations");
    ga_cmd->add_option("--beta-a", g_ba, "addition budget (fraction of m)");
    ga_cmd->add_option("--beta-d", g_bd, "deletion budget (fraction of m)");
    ga_cmd->add_option("--seed", g_seed)->required();
    ga_cmd->add_option("--out-partition", g_out_part);
    ga_cmd->add_option("--out-graph", g_out_graph);

    // ---- enhance-se
    std::string s_graph, s_labels, s_detector = "louvain", s_out_part;
    std::string s_indices = "cn,salton,jaccard,hpi,aa,ra,lp,rwr", s_mode = "consensus";
    int s_samples = 10, s_smin = 3, s_steps = 4;
    double s_ba = 1.5, s_alpha = 0.01, s_c = 0.85;
    std::uint64_t s_seed = 0;
    auto* se_cmd = app.add_subcommand("enhance-se", "similarity-ensemble enhancement");
    se_cmd->add_option("--graph", s_graph)->required();
    se_cmd->add_option("--labels", s_labels, "ground-truth labels (needed for approx threshold mode)");
    se_cmd->add_option("--detector", s_detector);
    se_cmd->add_option("--walktrap-steps", s_steps);
    se_cmd->add_option("--beta-a", s_ba, "addition budget (fraction of m)");
    se_cmd->add_option("--samples", s_samples, "samples per similarity index");
    se_cmd->add_option("--indices", s_indices, "comma-separated index list");
    se_cmd->add_option("--threshold-mode", s_mode, "consensus|approx");
    se_cmd->add_option("--smin", s_smin, "core-size floor");
    se_cmd->add_option("--lp-alpha", s_alpha, "local-path third-order weight");
    se_cmd->add_option("--rwr-c", s_c, "restart-walk continue probability");
    se_cmd->add_option("--seed", s_seed)->required();
    se_cmd->add_option("--out-partition", s_out_part);

    // ---- attack
    std::string a_method = "q", a_graph, a_labels, a_detector = "louvain", a_out;
    int a_budget = 1, a_target = -1, a_steps = 4;
    std::uint64_t a_seed = 0;
    auto* attack_cmd = app.add_subcommand("attack", "adversarial network generation");
    attack_cmd->add_option("--method", a_method, "q|dm");
    attack_cmd->add_option("--graph", a_graph)->required();
    attack_cmd->add_option("--labels", a_labels)->required();
    attack_cmd->add_option("--budget", a_budget)->required();
    attack_cmd->add_option("--detector", a_detector);
    attack_cmd->add_option("--walktrap-steps", a_steps);
    attack_cmd->add_option("--target", a_target, "target community label (dm)");
    attack_cmd->add_option("--seed", a_seed)->required();
    attack_cmd->add_option("--out", a_out, "write the attacked edge list here")->required();

    // ---- extract-sub
    std::string x_graph, x_labels, x_prefix;
    int x_x = 1, x_h = 1;
    std::uint64_t x_seed = 0;
    auto* extract_cmd = app.add_subcommand("extract-sub", "degree-weighted subgraph extraction");
    extract_cmd->add_option("--graph", x_graph)->required();
    extract_cmd->add_option("--labels", x_labels)->required();
    extract_cmd->add_option("--x", x_x, "seed-vertex count")->required();
    extract_cmd->add_option("--h", x_h, "ego-network radius")->required();
    extract_cmd->add_option("--seed", x_seed)->required();
    extract_cmd->add_option("--out-prefix", x_prefix, "writes <prefix>.edges and <prefix>.labels")->required();

    // ---- evaluate
    std::string e_graph, e_labels, e_partition;
    auto* eval_cmd = app.add_subcommand("evaluate", "score a partition against ground truth");
    eval_cmd->add_option("--graph", e_graph)->required();
    eval_cmd->add_option("--labels", e_labels)->required();
    eval_cmd->add_option("--partition", e_partition)->required();

    // ---- benchmark
    std::string b_config;
    auto* bench_cmd = app.add_subcommand("benchmark", "run a JSON experiment config");
    bench_cmd->add_option("--config", b_config)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect_cmd->parsed()) {
            Graph g = require_graph(d_graph);
            DetectorSpec spec = make_detector(d_detector, d_steps, d_external);
            Rng rng(d_seed);
            Partition part = detect(spec, g, rng);
            if (!d_out.empty()) write_partition_file(part, g, d_out);
            std::optional<Partition> truth;
            if (!d_labels.empty()) truth = load_labels_file(d_labels, &g);
            print_scores(g, part, truth ? &*truth : nullptr);
        } else if (ga_cmd->parsed()) {
            Graph g = require_graph(g_graph);
            DetectorSpec spec = make_detector(g_detector, g_steps, "");
            GaConfig cfg;
            cfg.population_size = g_pop;
            cfg.crossover_rate = g_pc;
            cfg.mutation_rate = g_pm;
            cfg.elitism_fraction = g_pe;
            cfg.generations = g_gens;
            cfg.beta_add = g_ba;
            cfg.beta_del = g_bd;
            std::optional<Partition> truth;
            if (!g_labels.empty()) {
                truth = load_labels_file(g_labels, &g);
                cfg.ground_truth_k = truth->community_count();
            }
            Rng rng(g_seed);
            GaResult result = run_ga(g, spec, cfg, rng);
            for (const auto& w : result.warnings) std::cerr << "[warn] " << w << '\n';
            if (!g_out_part.empty()) write_partition_file(result.partition, g, g_out_part);
            if (!g_out_graph.empty()) write_graph_file(result.enhanced, g_out_graph);
            std::cout << "best_fitness " << result.best_fitness << "\n";
            std::cout << "generations " << result.generations_run << "\n";
            std::cout << "added " << result.best.add.size() << " deleted " << result.best.del.size() << "\n";
            print_scores(g, result.partition, truth ? &*truth : nullptr);
        } else if (se_cmd->parsed()) {
            Graph g = require_graph(s_graph);
            DetectorSpec spec = make_detector(s_detector, s_steps, "");
            SeConfig cfg;
            cfg.beta_add = s_ba;
            cfg.samples_per_index = s_samples;
            cfg.indices = parse_indices(s_indices);
            cfg.min_core_size = s_smin;
            cfg.sim_params.lp_alpha = s_alpha;
            cfg.sim_params.rwr_continue = s_c;
            std::optional<Partition> truth;
            if (!s_labels.empty()) {
                truth = load_labels_file(s_labels, &g);
                cfg.ground_truth_k = truth->community_count();
            }
            if (s_mode == "consensus")
                cfg.threshold_mode = ThresholdMode::Consensus;
            else if (s_mode == "approx")
                cfg.threshold_mode = ThresholdMode::Approx;
            else
                throw ConfigError("unknown threshold mode: " + s_mode);
            Rng rng(s_seed);
            SeResult result = run_se(g, spec, cfg, rng);
            for (const auto& w : result.warnings) std::cerr << "[warn] " << w << '\n';
            if (!s_out_part.empty()) write_partition_file(result.partition, g, s_out_part);
            std::cout << "threshold " << result.threshold << (result.fallback ? " (fallback)" : "") << "\n";
            print_scores(g, result.partition, truth ? &*truth : nullptr);
        } else if (attack_cmd->parsed()) {
            Graph g = require_graph(a_graph);
            Partition truth = load_labels_file(a_labels, &g);
            AttackConfig cfg;
            cfg.budget = a_budget;
            cfg.detector = make_detector(a_detector, a_steps, "");
            if (a_method == "q" || a_method == "q_attack") {
                cfg.method = AttackConfig::Method::QAttack;
            } else if (a_method == "dm") {
                cfg.method = AttackConfig::Method::DmDeception;
                if (a_target < 0) throw ConfigError("dm attack needs --target");
                cfg.target_community = a_target;
            } else {
                throw ConfigError("unknown attack method: " + a_method);
            }
            Rng rng(a_seed);
            std::vector<std::string> warnings;
            Graph attacked = cfg.method == AttackConfig::Method::QAttack
                                 ? q_attack(g, truth, cfg, rng)
                                 : dm_deception(g, truth, cfg, rng, &warnings);
            for (const auto& w : warnings) std::cerr << "[warn] " << w << '\n';
            write_graph_file(attacked, a_out);
            std::cout << "m " << attacked.edge_count() << "\n";
            std::cout << "q_truth " << modularity(attacked, truth) << "\n";
        } else if (extract_cmd->parsed()) {
            Graph g = require_graph(x_graph);
            Partition truth = load_labels_file(x_labels, &g);
            ExtractionConfig cfg{x_x, x_h};
            Rng rng(x_seed);
            auto [sub, labels] = extract_missing_data_subgraph(g, truth, cfg, rng);
            write_graph_file(sub, x_prefix + ".edges");
            write_partition_file(labels, sub, x_prefix + ".labels");
            std::cout << "n " << sub.vertex_count() << " m " << sub.edge_count() << " k "
                      << labels.community_count() << "\n";
        } else if (eval_cmd->parsed()) {
            Graph g = require_graph(e_graph);
            Partition truth = load_labels_file(e_labels, &g);
            Partition part = load_labels_file(e_partition, &g);
            print_scores(g, part, &truth);
        } else if (bench_cmd->parsed()) {
            BenchmarkConfig cfg = load_benchmark_config(b_config);
            run_benchmark(cfg, &std::cerr);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
