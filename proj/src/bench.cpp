#include "recd/bench.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "recd/error.hpp"

namespace recd {

std::string to_string(EnhanceMethod m) {
    switch (m) {
        case EnhanceMethod::None: return "none";
        case EnhanceMethod::Ga: return "ga";
        case EnhanceMethod::Se: return "se";
    }
    return "?";
}

std::optional<EnhanceMethod> method_from_string(std::string_view name) {
    if (name == "none") return EnhanceMethod::None;
    if (name == "ga") return EnhanceMethod::Ga;
    if (name == "se") return EnhanceMethod::Se;
    return std::nullopt;
}

namespace {

struct TrialMetrics {
    double q, nmi_v, ari_v;
};

TrialMetrics score(const Graph& g, const Partition& found, const Partition& truth) {
    return {modularity(g, found), nmi(found, truth), ari(found, truth)};
}

} // namespace

ExperimentResult run_experiment(const Graph& g, const Partition& truth,
                                const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("trial count must be at least 1");
    if (truth.size() != g.vertex_count())
        throw ConfigError("ground-truth labels do not cover the graph");

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult result;
    Summary ref_q, ref_nmi, ref_ari;
    Summary enh_q, enh_nmi, enh_ari;

    int failures = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t ti = static_cast<std::uint64_t>(trial);
        try {
            const Graph* base = &g;
            Graph attacked;
            if (cfg.attack) {
                Rng attack_rng(derive_seed(cfg.base_seed, seed_tag("attack"), ti));
                if (cfg.attack->method == AttackConfig::Method::QAttack)
                    attacked = q_attack(g, truth, *cfg.attack, attack_rng);
                else
                    attacked = dm_deception(g, truth, *cfg.attack, attack_rng);
                base = &attacked;
            }

            Rng detect_rng(derive_seed(cfg.base_seed, seed_tag("detect"), ti));
            Partition plain = detect(cfg.detector, *base, detect_rng);
            TrialMetrics ref = score(*base, plain, truth);
            ref_q.values.push_back(ref.q);
            ref_nmi.values.push_back(ref.nmi_v);
            ref_ari.values.push_back(ref.ari_v);

            if (cfg.method != EnhanceMethod::None) {
                Rng enhance_rng(derive_seed(cfg.base_seed, seed_tag("enhance"), ti));
                Partition enhanced;
                if (cfg.method == EnhanceMethod::Ga) {
                    GaConfig ga = cfg.ga;
                    if (!ga.ground_truth_k) ga.ground_truth_k = truth.community_count();
                    enhanced = run_ga(*base, cfg.detector, ga, enhance_rng).partition;
                } else {
                    SeConfig se = cfg.se;
                    if (se.threshold_mode == ThresholdMode::Approx && !se.ground_truth_k)
                        se.ground_truth_k = truth.community_count();
                    enhanced = run_se(*base, cfg.detector, se, enhance_rng).partition;
                }
                TrialMetrics enh = score(*base, enhanced, truth);
                enh_q.values.push_back(enh.q);
                enh_nmi.values.push_back(enh.nmi_v);
                enh_ari.values.push_back(enh.ari_v);
            }
        } catch (const Error& e) {
            ++failures;
            result.trial_errors.push_back("trial " + std::to_string(trial) + ": " + e.what());
        }
    }
    if (failures * 2 > cfg.trials) {
        std::string detail;
        for (const auto& s : result.trial_errors) detail += "\n  " + s;
        throw Error("more than half of the trials failed:" + detail);
    }

    MetricsReport reference;
    reference.dataset = cfg.dataset_name;
    reference.detector = to_string(cfg.detector.kind);
    reference.method = cfg.attack ? "none(post-attack)" : "none";
    reference.q = std::move(ref_q);
    reference.nmi = std::move(ref_nmi);
    reference.ari = std::move(ref_ari);
    reference.base_seed = cfg.base_seed;

    if (cfg.method == EnhanceMethod::None) {
        result.report = std::move(reference);
    } else {
        MetricsReport report;
        report.dataset = cfg.dataset_name;
        report.detector = to_string(cfg.detector.kind);
        report.method = to_string(cfg.method);
        report.q = std::move(enh_q);
        report.nmi = std::move(enh_nmi);
        report.ari = std::move(enh_ari);
        report.base_seed = cfg.base_seed;
        if (reference.q.mean() >= 0.0) report.rimp_q = rimp(reference.q.mean(), report.q.mean());
        report.rimp_nmi = rimp(reference.nmi.mean(), report.nmi.mean());
        if (reference.ari.mean() >= 0.0)
            report.rimp_ari = rimp(reference.ari.mean(), report.ari.mean());
        result.report = std::move(report);
        result.reference = std::move(reference);
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

const DatasetEntry& DatasetRegistry::register_dataset(const std::string& name,
                                                      const std::string& graph_path,
                                                      const std::string& labels_path) {
    if (entries_.contains(name)) throw ConfigError("duplicate dataset name: " + name);
    Graph g = load_edge_list_file(graph_path);
    Partition truth = load_labels_file(labels_path, &g);
    DatasetEntry entry{graph_path, labels_path, g.vertex_count(), g.edge_count(),
                       truth.community_count()};
    return entries_.emplace(name, std::move(entry)).first->second;
}

const DatasetEntry& DatasetRegistry::at(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw ConfigError("unknown dataset: " + name);
    return it->second;
}

namespace {

using nlohmann::json;

DetectorSpec parse_detector(const json& j) {
    DetectorSpec spec;
    std::string kind = j.value("kind", "louvain");
    auto parsed = detector_from_string(kind);
    if (!parsed) throw ConfigError("unknown detector kind: " + kind);
    spec.kind = *parsed;
    spec.walktrap_steps = j.value("walktrap_steps", 4);
    spec.external_path = j.value("external_path", "");
    if (spec.kind == DetectorKind::Walktrap && spec.walktrap_steps < 1)
        throw ConfigError("walktrap walk length must be >= 1");
    if (spec.kind == DetectorKind::External && spec.external_path.empty())
        throw ConfigError("external detector needs a partition path");
    return spec;
}

GaConfig parse_ga(const json& j) {
    GaConfig ga;
    ga.population_size = j.value("population_size", ga.population_size);
    ga.crossover_rate = j.value("crossover_rate", ga.crossover_rate);
    ga.mutation_rate = j.value("mutation_rate", ga.mutation_rate);
    ga.elitism_fraction = j.value("elitism_fraction", ga.elitism_fraction);
    ga.generations = j.value("generations", ga.generations);
    ga.beta_add = j.value("beta_a", ga.beta_add);
    ga.beta_del = j.value("beta_d", ga.beta_del);
    ga.stagnation_limit = j.value("stagnation_limit", ga.stagnation_limit);
    if (j.contains("ground_truth_k")) ga.ground_truth_k = j.at("ground_truth_k").get<int>();
    return ga;
}

SeConfig parse_se(const json& j) {
    SeConfig se;
    se.beta_add = j.value("beta_a", se.beta_add);
    se.samples_per_index = j.value("samples_per_index", se.samples_per_index);
    se.min_core_size = j.value("min_core_size", se.min_core_size);
    se.sim_params.lp_alpha = j.value("lp_alpha", se.sim_params.lp_alpha);
    se.sim_params.rwr_continue = j.value("rwr_continue", se.sim_params.rwr_continue);
    if (j.contains("indices")) {
        se.indices.clear();
        for (const auto& name : j.at("indices")) {
            auto kind = similarity_from_string(name.get<std::string>());
            if (!kind) throw ConfigError("unknown similarity index: " + name.get<std::string>());
            se.indices.push_back(*kind);
        }
    }
    std::string mode = j.value("threshold_mode", "consensus");
    if (mode == "consensus")
        se.threshold_mode = ThresholdMode::Consensus;
    else if (mode == "approx")
        se.threshold_mode = ThresholdMode::Approx;
    else
        throw ConfigError("unknown threshold mode: " + mode);
    if (j.contains("ground_truth_k")) se.ground_truth_k = j.at("ground_truth_k").get<int>();
    return se;
}

AttackConfig parse_attack(const json& j) {
    AttackConfig attack;
    std::string method = j.value("method", "q");
    if (method == "q" || method == "q_attack")
        attack.method = AttackConfig::Method::QAttack;
    else if (method == "dm")
        attack.method = AttackConfig::Method::DmDeception;
    else
        throw ConfigError("unknown attack method: " + method);
    attack.budget = j.value("budget", 1);
    if (j.contains("detector")) attack.detector = parse_detector(j.at("detector"));
    if (j.contains("target_community"))
        attack.target_community = j.at("target_community").get<int>();
    if (j.contains("ga")) attack.ga = parse_ga(j.at("ga"));
    return attack;
}

} // namespace

BenchmarkConfig load_benchmark_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open benchmark config: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("benchmark config is not valid JSON: ") + e.what());
    }

    BenchmarkConfig cfg;
    if (!doc.contains("datasets")) throw ConfigError("benchmark config has no datasets section");
    for (const auto& [name, spec] : doc.at("datasets").items())
        cfg.registry.register_dataset(name, spec.at("graph").get<std::string>(),
                                      spec.at("labels").get<std::string>());

    for (const auto& ej : doc.value("experiments", json::array())) {
        ExperimentConfig e;
        e.dataset_name = ej.at("dataset").get<std::string>();
        if (!cfg.registry.contains(e.dataset_name))
            throw ConfigError("experiment references unknown dataset: " + e.dataset_name);
        e.detector = parse_detector(ej.value("detector", json::object()));
        std::string method = ej.value("method", "none");
        auto parsed = method_from_string(method);
        if (!parsed) throw ConfigError("unknown enhancement method: " + method);
        e.method = *parsed;
        if (ej.contains("ga")) e.ga = parse_ga(ej.at("ga"));
        if (ej.contains("se")) e.se = parse_se(ej.at("se"));
        if (ej.contains("attack")) e.attack = parse_attack(ej.at("attack"));
        e.trials = ej.value("trials", 50);
        e.base_seed = ej.value("seed", 1ULL);
        cfg.experiments.push_back(std::move(e));
    }
    cfg.csv_path = doc.value("csv", "");
    cfg.json_path = doc.value("json", "");
    return cfg;
}

std::vector<ExperimentResult> run_benchmark(const BenchmarkConfig& cfg, std::ostream* log) {
    std::vector<ExperimentResult> results;
    std::vector<MetricsReport> reports;
    for (const ExperimentConfig& e : cfg.experiments) {
        const DatasetEntry& entry = cfg.registry.at(e.dataset_name);
        Graph g = load_edge_list_file(entry.graph_path);
        Partition truth = load_labels_file(entry.labels_path, &g);
        ExperimentResult r = run_experiment(g, truth, e);
        if (log) {
            *log << e.dataset_name << " " << to_string(e.detector.kind) << " "
                 << to_string(e.method) << ": nmi " << r.report.nmi.mean() << " +- "
                 << r.report.nmi.stddev() << " (" << r.wall_seconds << " s)\n";
            for (const auto& err : r.trial_errors) *log << "  [trial error] " << err << '\n';
        }
        if (r.reference) reports.push_back(*r.reference);
        reports.push_back(r.report);
        results.push_back(std::move(r));
    }
    if (!cfg.csv_path.empty()) {
        std::ofstream out(cfg.csv_path);
        if (!out) throw ConfigError("cannot write csv report: " + cfg.csv_path);
        write_report_csv(reports, out);
    }
    if (!cfg.json_path.empty()) {
        std::ofstream out(cfg.json_path);
        if (!out) throw ConfigError("cannot write json report: " + cfg.json_path);
        write_report_json(reports, out);
    }
    return results;
}

} // namespace recd
