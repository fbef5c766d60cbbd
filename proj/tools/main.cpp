// Command line front end: encode, features, cluster, evaluate, synth and
// the end-to-end pipeline. Exit codes: 0 ok, 1 usage, 2 data error,
// 3 internal error.

#include "scripta/cluster.hpp"
#include "scripta/coder.hpp"
#include "scripta/config.hpp"
#include "scripta/errors.hpp"
#include "scripta/eval.hpp"
#include "scripta/formats.hpp"
#include "scripta/image.hpp"
#include "scripta/synth.hpp"
#include "scripta/texture.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace scripta;

namespace {

// Expands directories to their image / JSON files, sorted for determinism.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs,
                                       const std::vector<std::string>& extensions) {
    std::vector<std::string> files;
    for (const auto& input : inputs) {
        if (fs::is_directory(input)) {
            for (const auto& entry : fs::directory_iterator(input)) {
                if (!entry.is_regular_file()) continue;
                std::string ext = entry.path().extension().string();
                if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end())
                    files.push_back(entry.path().string());
            }
        } else {
            files.push_back(input);
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("no input files found");
    return files;
}

BinarizeOptions parse_binarize_flag(const std::string& flag) {
    BinarizeOptions opts;
    if (flag == "otsu") {
        opts.method = BinarizeMethod::Otsu;
    } else if (flag.rfind("fixed:", 0) == 0) {
        opts.method = BinarizeMethod::Fixed;
        try {
            opts.fixed_threshold = std::stoi(flag.substr(6));
        } catch (const std::exception&) {
            throw DataError("bad --binarize value '" + flag + "'");
        }
        if (opts.fixed_threshold < 0 || opts.fixed_threshold > 256)
            throw DataError("--binarize fixed threshold out of range 0..256");
    } else {
        throw DataError("bad --binarize value '" + flag + "' (expect otsu or fixed:<t>)");
    }
    return opts;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t]() {
            try {
                for (int i = next++; i < n; i = next++) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<CodedText> encode_images(const std::vector<std::string>& files,
                                     const BinarizeOptions& bin, const CoderParams& coder,
                                     int jobs) {
    std::vector<CodedText> coded(files.size());
    parallel_for(static_cast<int>(files.size()), jobs, [&](int i) {
        auto gray = load_document(files[i]);
        auto mask = binarize(gray, bin);
        coded[i] = encode_document(mask.image, coder).text;
    });
    return coded;
}

std::vector<FeatureVector> corpus_features(const std::vector<CodedText>& coded, FeatureMode mode,
                                           bool normalize, int jobs) {
    std::vector<FeatureVector> features(coded.size());
    parallel_for(static_cast<int>(coded.size()), jobs,
                 [&](int i) { features[i] = extract_features(coded[i], mode); });
    return normalize ? normalize_corpus(features) : features;
}

// --- subcommands -----------------------------------------------------------

struct SynthArgs {
    std::string spec_path, out_dir, format = "pgm";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run_synth(const SynthArgs& args) {
    SynthSpec spec =
        args.spec_path.empty() ? separable_benchmark_spec() : read_synth_spec(args.spec_path);
    if (args.seed_set) spec.seed = args.seed;
    auto docs = generate_coded_corpus(spec);

    fs::create_directories(fs::path(args.out_dir) / "coded");
    GroundTruth truth;
    for (const auto& doc : docs) {
        truth[doc.text.doc_id] = doc.class_label;
        auto page = render_page(doc.text, spec.layout);
        fs::path img = fs::path(args.out_dir) / (doc.text.doc_id + "." + args.format);
        if (args.format == "png")
            save_png(page, img.string());
        else
            save_pgm(page, img.string());
        write_coded_json(doc.text,
                         (fs::path(args.out_dir) / "coded" / (doc.text.doc_id + ".json")).string());
    }
    write_truth_csv(truth, (fs::path(args.out_dir) / "truth.csv").string());
    std::cout << "wrote " << docs.size() << " documents to " << args.out_dir << "\n";
    return 0;
}

struct EncodeArgs {
    std::vector<std::string> inputs;
    std::string out_dir;
    std::string binarize_flag = "otsu";
    CoderParams coder;
    int jobs = 1;
};

int run_encode(const EncodeArgs& args) {
    auto files = expand_inputs(args.inputs, {".pgm", ".png"});
    auto coded = encode_images(files, parse_binarize_flag(args.binarize_flag), args.coder,
                               args.jobs);
    fs::create_directories(args.out_dir);
    for (const auto& text : coded) {
        write_coded_json(text, (fs::path(args.out_dir) / (text.doc_id + ".json")).string());
        write_coded_digits(text, (fs::path(args.out_dir) / (text.doc_id + ".txt")).string());
    }
    std::cout << "encoded " << coded.size() << " documents to " << args.out_dir << "\n";
    return 0;
}

struct FeaturesArgs {
    std::vector<std::string> inputs;
    std::string mode = "concat";
    std::string out_path = "features.csv";
    bool raw = false;
    int jobs = 1;
};

int run_features(const FeaturesArgs& args) {
    auto files = expand_inputs(args.inputs, {".json"});
    std::vector<CodedText> coded;
    coded.reserve(files.size());
    for (const auto& f : files) coded.push_back(read_coded_json(f));
    auto features = corpus_features(coded, parse_feature_mode(args.mode), !args.raw, args.jobs);
    write_feature_csv(features, args.out_path);
    std::cout << "wrote " << features.size() << " feature vectors to " << args.out_path << "\n";
    return 0;
}

struct ClusterArgs {
    std::string features_path, out_path = "clusters.json";
    ClusterConfig config;
    int runs = 1;
    std::uint64_t seed = 1;
};

int run_cluster(const ClusterArgs& args) {
    auto features = read_feature_csv(args.features_path);
    ClusterConfig config = args.config;
    // Repeated runs with consecutive seeds; the written assignment is the
    // base-seed run.
    ClusterResult result;
    for (int r = 0; r < args.runs; ++r) {
        config.ga.seed = args.seed + static_cast<std::uint64_t>(r);
        auto res = cluster_documents(features, config);
        if (r == 0) result = std::move(res);
    }
    std::vector<std::string> doc_ids;
    for (const auto& fv : features) doc_ids.push_back(fv.doc_id);
    ClusterRunMeta meta{args.seed,          config.k, config.h, config.alpha,
                        result.threshold_used, result.fitness_trace};
    write_cluster_json(doc_ids, result.partition, meta, args.out_path);
    std::cout << "clustered " << doc_ids.size() << " documents into " << result.partition.k
              << " clusters -> " << args.out_path << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string truth_path, pred_path, features_path;
    std::string method = "gaicda";
    std::string out_path, csv_path;
    ClusterConfig config;
    int runs = 1;
    std::uint64_t seed = 1;
    int restarts = 5;
};

EvalReport eval_method(const std::string& method, const std::vector<FeatureVector>& features,
                       const TruthLabels& truth, const ClusterConfig& base_config, int runs,
                       std::uint64_t seed, int restarts) {
    SeededMethod fn;
    if (method == "gaicda") {
        fn = [&](std::uint64_t s) {
            ClusterConfig c = base_config;
            c.ga.seed = s;
            return cluster_documents(features, c).partition;
        };
    } else if (method == "kmeans") {
        fn = [&](std::uint64_t s) { return kmeans_baseline(features, base_config.k, s, restarts); };
    } else if (method == "clink") {
        fn = [&](std::uint64_t) { return complete_linkage_baseline(features, base_config.k); };
    } else {
        throw DataError("unknown method '" + method + "' (expect gaicda|kmeans|clink)");
    }
    return repeated_eval(fn, truth, runs, seed, method);
}

int run_evaluate(const EvaluateArgs& args) {
    GroundTruth truth = read_truth_csv(args.truth_path);
    std::vector<EvalReport> reports;

    if (!args.pred_path.empty()) {
        auto pred = read_cluster_json(args.pred_path);
        std::vector<std::string> doc_ids;
        std::vector<int> labels;
        for (const auto& [id, label] : pred) {
            doc_ids.push_back(id);
            labels.push_back(label);
        }
        reports.push_back(evaluate_once(labels, align_truth(truth, doc_ids), "pred"));
    } else if (!args.features_path.empty()) {
        auto features = read_feature_csv(args.features_path);
        std::vector<std::string> doc_ids;
        for (const auto& fv : features) doc_ids.push_back(fv.doc_id);
        auto aligned = align_truth(truth, doc_ids);
        reports.push_back(eval_method(args.method, features, aligned, args.config, args.runs,
                                      args.seed, args.restarts));
    } else {
        throw DataError("evaluate: need --pred or --features");
    }

    std::cout << format_report_table(reports);
    if (!args.out_path.empty()) write_report_json(reports, args.out_path);
    if (!args.csv_path.empty()) write_report_metrics_csv(reports, args.csv_path);
    return 0;
}

struct PipelineArgs {
    std::string config_path, input_dir, coded_dir, truth_path, out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run_pipeline(const PipelineArgs& args) {
    PipelineConfig cfg = args.config_path.empty() ? PipelineConfig{} : parse_config(args.config_path);
    if (args.seed_set) cfg.seed = args.seed;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;

    // Stage 1: coded texts, from images or precomputed coded JSON.
    std::vector<CodedText> coded;
    if (!args.input_dir.empty()) {
        auto files = expand_inputs({args.input_dir}, {".pgm", ".png"});
        coded = encode_images(files, cfg.binarize, cfg.coder, cfg.jobs);
    } else if (!args.coded_dir.empty()) {
        auto files = expand_inputs({args.coded_dir}, {".json"});
        for (const auto& f : files) coded.push_back(read_coded_json(f));
    } else {
        throw DataError("pipeline: need --input (images) or --coded (coded JSON)");
    }

    fs::create_directories(fs::path(cfg.out_dir) / "coded");
    for (const auto& text : coded)
        write_coded_json(text, (fs::path(cfg.out_dir) / "coded" / (text.doc_id + ".json")).string());

    // Stage 2: features.
    auto features = corpus_features(coded, cfg.feature_mode, true, cfg.jobs);
    std::string features_path = (fs::path(cfg.out_dir) / "features.csv").string();
    write_feature_csv(features, features_path);

    // Stage 3: clustering.
    ClusterConfig cc = cfg.cluster;
    cc.ga.seed = cfg.seed;
    auto result = cluster_documents(features, cc);
    std::vector<std::string> doc_ids;
    for (const auto& fv : features) doc_ids.push_back(fv.doc_id);
    ClusterRunMeta meta{cfg.seed, cc.k, cc.h, cc.alpha, result.threshold_used,
                        result.fitness_trace};
    write_cluster_json(doc_ids, result.partition, meta,
                       (fs::path(cfg.out_dir) / "clusters.json").string());

    // Stage 4: evaluation against truth, all methods through one harness.
    if (!args.truth_path.empty()) {
        auto truth = align_truth(read_truth_csv(args.truth_path), doc_ids);
        std::vector<EvalReport> reports;
        for (const std::string& method : {"gaicda", "kmeans", "clink"})
            reports.push_back(eval_method(method, features, truth, cc, cfg.runs, cfg.seed, 5));
        write_report_json(reports, (fs::path(cfg.out_dir) / "report.json").string());
        std::cout << format_report_table(reports);
    }
    std::cout << "pipeline artifacts in " << cfg.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"script discrimination by typographic coding and texture clustering"};
    app.require_subcommand(1);
    // -h is taken by the neighborhood-size option; help is --help only.
    app.set_help_flag("--help", "print help");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a ground-truthed synthetic corpus");
    synth->add_option("--spec", synth_args.spec_path, "synth spec JSON (default: built-in 5/10/5)");
    synth->add_option("--out", synth_args.out_dir, "output directory")->required();
    synth->add_option("--format", synth_args.format, "image format: pgm|png")
        ->check(CLI::IsMember({"pgm", "png"}));
    synth->add_option("--seed", synth_args.seed, "override spec seed")
        ->each([&](const std::string&) { synth_args.seed_set = true; });

    EncodeArgs encode_args;
    auto* encode = app.add_subcommand("encode", "code page images into {0,1,2,3} sequences");
    encode->add_option("inputs", encode_args.inputs, "image files or directories")->required();
    encode->add_option("--out", encode_args.out_dir, "output directory")->required();
    encode->add_option("--binarize", encode_args.binarize_flag, "otsu | fixed:<t>");
    encode->add_option("--tau", encode_args.coder.tau, "band slack fraction");
    encode->add_option("--min-gap", encode_args.coder.min_gap, "row gap bridging");
    encode->add_option("--min-ink", encode_args.coder.min_ink, "min foreground per inked row");
    encode->add_option("--min-area", encode_args.coder.min_area, "min blob box area");
    encode->add_option("--jobs", encode_args.jobs, "parallel documents");

    FeaturesArgs features_args;
    auto* features = app.add_subcommand("features", "texture features from coded texts");
    features->add_option("inputs", features_args.inputs, "coded JSON files or directories")
        ->required();
    features->add_option("--mode", features_args.mode, "rl | albp | concat");
    features->add_option("--out", features_args.out_path, "output CSV");
    features->add_flag("--raw", features_args.raw, "skip corpus min-max normalization");
    features->add_option("--jobs", features_args.jobs, "parallel documents");

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "group documents by script");
    cluster->add_option("--features", cluster_args.features_path, "feature CSV")->required();
    cluster->add_option("--k", cluster_args.config.k, "final cluster count")->required();
    cluster->add_option("--alpha", cluster_args.config.alpha, "similarity exponent");
    cluster->add_option("--h", cluster_args.config.h, "neighborhood size");
    cluster->add_option("--T", cluster_args.config.threshold, "label threshold, 0 = auto");
    cluster->add_option("--seed", cluster_args.seed, "base seed");
    cluster->add_option("--runs", cluster_args.runs, "repeat count");
    cluster->add_option("--out", cluster_args.out_path, "output JSON");

    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand("evaluate", "score clusterings against ground truth");
    evaluate->add_option("--truth", eval_args.truth_path, "truth CSV")->required();
    evaluate->add_option("--pred", eval_args.pred_path, "clustering JSON to score");
    evaluate->add_option("--features", eval_args.features_path, "feature CSV (run a method)");
    evaluate->add_option("--method", eval_args.method, "gaicda | kmeans | clink");
    evaluate->add_option("--k", eval_args.config.k, "cluster count");
    evaluate->add_option("--alpha", eval_args.config.alpha, "similarity exponent");
    evaluate->add_option("--h", eval_args.config.h, "neighborhood size");
    evaluate->add_option("--T", eval_args.config.threshold, "label threshold, 0 = auto");
    evaluate->add_option("--runs", eval_args.runs, "repeat count");
    evaluate->add_option("--seed", eval_args.seed, "base seed");
    evaluate->add_option("--out", eval_args.out_path, "report JSON path");
    evaluate->add_option("--csv", eval_args.csv_path, "per-metric CSV path");

    PipelineArgs pipeline_args;
    auto* pipeline = app.add_subcommand("pipeline", "run the full pipeline");
    pipeline->add_option("--config", pipeline_args.config_path, "config file");
    pipeline->add_option("--input", pipeline_args.input_dir, "directory of page images");
    pipeline->add_option("--coded", pipeline_args.coded_dir, "directory of coded JSON");
    pipeline->add_option("--truth", pipeline_args.truth_path, "truth CSV for evaluation");
    pipeline->add_option("--out", pipeline_args.out_dir, "output directory");
    pipeline->add_option("--seed", pipeline_args.seed, "override config seed")
        ->each([&](const std::string&) { pipeline_args.seed_set = true; });

    for (auto* sub : app.get_subcommands(nullptr))
        sub->set_help_flag("--help", "print help");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return run_synth(synth_args);
        if (encode->parsed()) return run_encode(encode_args);
        if (features->parsed()) return run_features(features_args);
        if (cluster->parsed()) return run_cluster(cluster_args);
        if (evaluate->parsed()) return run_evaluate(eval_args);
        if (pipeline->parsed()) return run_pipeline(pipeline_args);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
