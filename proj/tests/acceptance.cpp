// End-to-end acceptance checks. Each criterion prints a single PASS/FAIL
// line; the exit status is the number of failed criteria.
//
// Usage: scripta_acceptance --cli /path/to/scripta

#include "scripta/cluster.hpp"
#include "scripta/coder.hpp"
#include "scripta/eval.hpp"
#include "scripta/formats.hpp"
#include "scripta/synth.hpp"
#include "scripta/texture.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace scripta;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1: run-length features vs an independent oracle -------------

std::array<double, 11> oracle_rl(const std::vector<int>& codes) {
    struct Run {
        int gray, length;
    };
    std::vector<Run> runs;
    std::size_t t = 0;
    while (t < codes.size()) {
        std::size_t start = t;
        while (t < codes.size() && codes[t] == codes[start]) ++t;
        runs.push_back({codes[start] + 1, static_cast<int>(t - start)});
    }
    double nr = static_cast<double>(runs.size());
    double np = static_cast<double>(codes.size());
    double sre = 0, lre = 0, lgre = 0, hgre = 0, srlge = 0, srhge = 0, lrlge = 0, lrhge = 0;
    std::map<int, double> per_gray, per_length;
    for (const auto& r : runs) {
        double i2 = static_cast<double>(r.gray) * r.gray;
        double j2 = static_cast<double>(r.length) * r.length;
        sre += 1.0 / j2;
        lre += j2;
        lgre += 1.0 / i2;
        hgre += i2;
        srlge += 1.0 / (i2 * j2);
        srhge += i2 / j2;
        lrlge += j2 / i2;
        lrhge += i2 * j2;
        per_gray[r.gray] += 1.0;
        per_length[r.length] += 1.0;
    }
    double gln = 0, rln = 0;
    for (const auto& [g, c] : per_gray) gln += c * c;
    for (const auto& [l, c] : per_length) rln += c * c;
    return {sre / nr,  lre / nr,   gln / nr,   rln / nr,   nr / np,  lgre / nr,
            hgre / nr, srlge / nr, srhge / nr, lrlge / nr, lrhge / nr};
}

bool criterion_feature_oracle(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        int len = 4 + static_cast<int>(rng() % 1997); // 4..2000
        std::vector<int> codes(len);
        for (auto& c : codes) c = static_cast<int>(rng() % 4);
        auto got = run_length_features(run_length_matrix(codes)).as_array();
        auto want = oracle_rl(codes);
        for (int i = 0; i < 11; ++i) {
            double rel = std::abs(got[i] - want[i]) / std::max(1.0, std::abs(want[i]));
            if (rel > 1e-12) {
                detail = "oracle mismatch at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    auto f = run_length_features(run_length_matrix(std::vector<int>{0, 0, 1}));
    std::array<double, 11> want{0.625, 2.5,   1.0,        1.0,        2.0 / 3.0, 0.625,
                                2.5,   0.25,  2.0 + 1.0 / 8.0, 2.0 + 1.0 / 8.0, 4.0};
    auto got = f.as_array();
    for (int i = 0; i < 11; ++i)
        if (got[i] != want[i]) {
            detail = "hand-derived vector mismatch at index " + std::to_string(i);
            return false;
        }
    double secs = elapsed_s(start);
    if (secs >= 10.0) {
        detail = "too slow: " + std::to_string(secs) + " s";
        return false;
    }
    detail = "1000 sequences, " + std::to_string(secs) + " s";
    return true;
}

// --- criterion 2: ALBP histogram contract ----------------------------------

bool criterion_albp(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 500; ++trial) {
        int len = 4 + static_cast<int>(rng() % 500);
        std::vector<int> codes(len);
        for (auto& c : codes) c = static_cast<int>(rng() % 4);
        auto h = albp_histogram(codes);
        double sum = 0;
        for (double b : h.bins) sum += b;
        if (std::abs(sum - 1.0) > 1e-12) {
            detail = "bins do not sum to 1";
            return false;
        }
    }
    auto constant = albp_histogram(std::vector<int>(50, 2));
    if (std::abs(constant.bins[15] - 1.0) > 1e-12) {
        detail = "constant sequence mass not in bin 15";
        return false;
    }
    auto alt = albp_histogram(std::vector<int>{1, 2, 1, 2, 1});
    if (std::abs(alt.bins[3] - 0.5) > 1e-12 || std::abs(alt.bins[12] - 0.5) > 1e-12) {
        detail = "[1,2,1,2,1] bins not {3: 0.5, 12: 0.5}";
        return false;
    }
    double secs = elapsed_s(start);
    if (secs >= 1.0) {
        detail = "too slow: " + std::to_string(secs) + " s";
        return false;
    }
    detail = "500 sequences, " + std::to_string(secs) + " s";
    return true;
}

// --- criterion 3: render -> encode round trip over a layout grid -----------

bool criterion_roundtrip(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(107);
    const double probs[4] = {0.55, 0.17, 0.17, 0.11};
    long long total_codes = 0, correct_codes = 0;
    int exact_docs = 0, docs = 0;
    for (int band : {8, 12, 16}) {
        for (int extent_mode : {0, 1}) {
            PageLayout layout;
            layout.band_height = band;
            int extent = extent_mode == 0 ? band / 2 + 2 : band;
            layout.ascender_extent = extent;
            layout.descender_extent = extent;
            // Glyphs that fit on one rendered line at the default page width.
            int pitch = layout.glyph_width + layout.glyph_gap;
            int per_line = 0;
            for (int x = layout.margin; x + layout.glyph_width <= layout.page_width - layout.margin;
                 x += pitch)
                ++per_line;
            for (int d = 0; d < 100; ++d) {
                // One or two lines; the last line keeps >= 60 glyphs so the
                // median band estimate has enough support.
                int len = per_line * static_cast<int>(rng() % 2) + 60 +
                          static_cast<int>(rng() % (per_line - 61));
                CodedText text;
                text.doc_id = "doc";
                text.codes.resize(len);
                for (auto& c : text.codes) {
                    double u = (rng() >> 11) * 0x1p-53;
                    int k = 0;
                    double acc = probs[0];
                    while (k < 3 && u >= acc) acc += probs[++k];
                    c = k;
                }
                auto page = render_page(text, layout);
                auto result = encode_document(page);
                ++docs;
                bool exact = result.text.codes == text.codes;
                if (exact) ++exact_docs;
                total_codes += len;
                std::size_t m = std::min(result.text.codes.size(), text.codes.size());
                for (std::size_t i = 0; i < m; ++i)
                    if (result.text.codes[i] == text.codes[i]) ++correct_codes;
            }
        }
    }
    double accuracy = static_cast<double>(correct_codes) / static_cast<double>(total_codes);
    double secs = elapsed_s(start);
    if (exact_docs != docs) {
        detail = std::to_string(docs - exact_docs) + "/" + std::to_string(docs) +
                 " documents failed exact round trip";
        return false;
    }
    if (accuracy < 0.99) {
        detail = "blob accuracy " + std::to_string(accuracy);
        return false;
    }
    if (secs >= 30.0) {
        detail = "too slow: " + std::to_string(secs) + " s";
        return false;
    }
    detail = std::to_string(docs) + " documents exact, accuracy " + std::to_string(accuracy) +
             ", " + std::to_string(secs) + " s";
    return true;
}

// --- shared corpus for criteria 4-6 ----------------------------------------

struct Corpus {
    std::vector<FeatureVector> features; // normalized, doc order
    TruthLabels truth;
};

Corpus benchmark_corpus() {
    auto spec = separable_benchmark_spec(1);
    auto docs = generate_coded_corpus(spec);
    std::vector<FeatureVector> raw;
    GroundTruth gt;
    std::vector<std::string> ids;
    for (const auto& doc : docs) {
        raw.push_back(extract_features(doc.text, FeatureMode::Concat));
        gt[doc.text.doc_id] = doc.class_label;
        ids.push_back(doc.text.doc_id);
    }
    Corpus c;
    c.features = normalize_corpus(raw);
    c.truth = align_truth(gt, ids);
    return c;
}

bool criterion_perfect_clustering(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    auto corpus = benchmark_corpus();
    ClusterConfig config;
    config.k = 3;
    config.h = 4; // below the smallest class size, so classes stay disconnected
    config.alpha = 1.0;
    auto report = repeated_eval(
        [&](std::uint64_t seed) {
            ClusterConfig c = config;
            c.ga.seed = seed;
            return cluster_documents(corpus.features, c).partition;
        },
        corpus.truth, 100, 1, "gaicda");
    bool ok = std::abs(report.nmi.mean - 1.0) < 1e-12 && report.nmi.stddev < 1e-12;
    for (std::size_t c = 0; c < report.class_names.size(); ++c)
        ok = ok && std::abs(report.f_measure[c].mean - 1.0) < 1e-12 &&
             report.f_measure[c].stddev < 1e-12;
    double secs = elapsed_s(start);
    if (!ok) {
        std::ostringstream os;
        os << "NMI " << report.nmi.mean << " +- " << report.nmi.stddev;
        detail = os.str();
        return false;
    }
    if (secs >= 120.0) {
        detail = "too slow: " + std::to_string(secs) + " s";
        return false;
    }
    detail = "100 runs, NMI 1.0 +- 0.0, per-class F 1.0 +- 0.0, " + std::to_string(secs) + " s";
    return true;
}

// --- criterion 5: alpha = 1 helps when distances exceed 1 ------------------

Corpus noisy_corpus() {
    SynthSpec spec;
    auto add = [&](const std::string& name, std::array<double, 4> probs) {
        ScriptProfile p;
        p.name = name;
        p.class_probs = probs;
        spec.profiles.push_back(p);
    };
    add("a", {0.85, 0.07, 0.05, 0.03});
    add("b", {0.40, 0.40, 0.12, 0.08});
    add("c", {0.40, 0.12, 0.40, 0.08});
    spec.docs_per_profile = {4, 4, 4};
    spec.seq_len_min = 80;
    spec.seq_len_max = 110;
    spec.seed = 9;
    auto docs = generate_coded_corpus(spec);
    std::vector<FeatureVector> raw;
    GroundTruth gt;
    std::vector<std::string> ids;
    for (const auto& doc : docs) {
        raw.push_back(extract_features(doc.text, FeatureMode::Concat));
        gt[doc.text.doc_id] = doc.class_label;
        ids.push_back(doc.text.doc_id);
    }
    Corpus c;
    c.features = normalize_corpus(raw);
    c.truth = align_truth(gt, ids);
    return c;
}

bool criterion_alpha_benefit(std::string& detail) {
    auto corpus = noisy_corpus();
    auto dist = pairwise_distances(corpus.features);
    double min_dist = 1e300;
    for (std::size_t i = 0; i < dist.size(); ++i)
        for (std::size_t j = i + 1; j < dist.size(); ++j) min_dist = std::min(min_dist, dist[i][j]);
    if (min_dist <= 1.0) {
        detail = "corpus precondition failed: min pairwise distance " + std::to_string(min_dist);
        return false;
    }

    auto mean_nmi = [&](double alpha) {
        double sum = 0;
        for (int run = 0; run < 20; ++run) {
            ClusterConfig config;
            config.k = 3;
            config.h = 3;
            config.alpha = alpha;
            config.ga.seed = static_cast<std::uint64_t>(run + 1);
            auto result = cluster_documents(corpus.features, config);
            sum += nmi(result.partition.labels, corpus.truth.labels);
        }
        return sum / 20.0;
    };
    double nmi1 = mean_nmi(1.0);
    double nmi2 = mean_nmi(2.0);
    if (nmi1 + 1e-12 < nmi2) {
        detail = "alpha=1 NMI " + std::to_string(nmi1) + " < alpha=2 NMI " + std::to_string(nmi2);
        return false;
    }

    // Pointwise: for d >= 1 the alpha=1 similarity is at least the alpha=2 one.
    for (double d : {1.0, 1.3, 2.0, 3.7, 10.0})
        for (double su : {0.5, 1.0, 2.5})
            for (double sv : {0.5, 1.0, 2.5})
                if (similarity_weight(d, 1.0, su, sv) + 1e-15 <
                    similarity_weight(d, 2.0, su, sv)) {
                    detail = "pointwise similarity property violated at d=" + std::to_string(d);
                    return false;
                }

    std::ostringstream os;
    os << "min distance " << min_dist << ", mean NMI alpha=1 " << nmi1 << " >= alpha=2 " << nmi2;
    detail = os.str();
    return true;
}

// --- criterion 6: baselines through the same harness -----------------------

bool criterion_baselines(std::string& detail) {
    auto corpus = benchmark_corpus();
    std::vector<EvalReport> reports;
    reports.push_back(repeated_eval(
        [&](std::uint64_t seed) { return kmeans_baseline(corpus.features, 3, seed, 5); },
        corpus.truth, 10, 1, "kmeans"));
    reports.push_back(repeated_eval(
        [&](std::uint64_t) { return complete_linkage_baseline(corpus.features, 3); },
        corpus.truth, 10, 1, "clink"));
    for (const auto& r : reports) {
        if (r.runs != 10 || r.class_names.size() != 3 || r.precision.size() != 3 ||
            r.recall.size() != 3 || r.f_measure.size() != 3) {
            detail = "report for " + r.method + " is incomplete";
            return false;
        }
        for (std::size_t c = 0; c < 3; ++c) {
            for (const MetricStats* m :
                 {&r.precision[c], &r.recall[c], &r.f_measure[c]}) {
                if (m->mean < 0.0 || m->mean > 1.0 + 1e-12 || m->stddev < 0.0) {
                    detail = "metric out of range for " + r.method;
                    return false;
                }
            }
        }
        if (r.nmi.mean < 0.0 || r.nmi.mean > 1.0 + 1e-12) {
            detail = "NMI out of range for " + r.method;
            return false;
        }
    }
    auto table = format_report_table(reports);
    if (table.find("kmeans") == std::string::npos || table.find("clink") == std::string::npos ||
        table.find("NMI") == std::string::npos) {
        detail = "report table missing method or NMI rows";
        return false;
    }
    std::ostringstream os;
    os << "kmeans NMI " << reports[0].nmi.mean << " +- " << reports[0].nmi.stddev << ", clink NMI "
       << reports[1].nmi.mean << " +- " << reports[1].nmi.stddev;
    detail = os.str();
    return true;
}

// --- criterion 7: metric correctness ---------------------------------------

long long table_brute_force(const std::vector<std::vector<long long>>& table) {
    int ku = static_cast<int>(table.size());
    int kv = static_cast<int>(table[0].size());
    long long best = 0;
    std::function<void(int, unsigned, long long)> rec = [&](int row, unsigned used, long long acc) {
        if (row == ku) {
            best = std::max(best, acc);
            return;
        }
        rec(row + 1, used, acc);
        for (int c = 0; c < kv; ++c)
            if (!(used & (1u << c))) rec(row + 1, used | (1u << c), acc + table[row][c]);
    };
    rec(0, 0, 0);
    return best;
}

bool check_table(const std::vector<std::vector<long long>>& table) {
    std::vector<int> labels, truth;
    for (std::size_t u = 0; u < table.size(); ++u)
        for (std::size_t v = 0; v < table[u].size(); ++v)
            for (long long c = 0; c < table[u][v]; ++c) {
                labels.push_back(static_cast<int>(u));
                truth.push_back(static_cast<int>(v));
            }
    if (labels.empty()) return true;
    auto assignment = match_clusters(labels, truth);
    long long got = 0;
    for (std::size_t u = 0; u < table.size(); ++u)
        if (u < assignment.size() && assignment[u] >= 0) got += table[u][assignment[u]];
    return got == table_brute_force(table);
}

bool criterion_metrics(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    if (std::abs(nmi({0, 0, 1, 1, 2}, {0, 0, 1, 1, 2}) - 1.0) > 1e-12) {
        detail = "NMI(identical) != 1";
        return false;
    }
    if (std::abs(nmi({0, 1, 0, 1}, {0, 0, 1, 1})) > 1e-12) {
        detail = "NMI(independent 2x2) != 0";
        return false;
    }

    // Exhaustive sweep over small tables, then randomized coverage of the
    // larger shapes (a full 4x4 sweep with entries <= 5 has 6^16 tables,
    // which is out of reach; randomized sampling covers it instead).
    long long checked = 0;
    for (int ku = 1; ku <= 3; ++ku)
        for (int kv = 1; kv <= 3; ++kv) {
            int cells = ku * kv;
            long long combos = 1;
            for (int i = 0; i < cells; ++i) combos *= 4; // entries 0..3
            for (long long code = 0; code < combos; ++code) {
                std::vector<std::vector<long long>> table(ku, std::vector<long long>(kv));
                long long rest = code;
                for (int i = 0; i < cells; ++i) {
                    table[i / kv][i % kv] = rest % 4;
                    rest /= 4;
                }
                if (!check_table(table)) {
                    detail = "exhaustive mismatch at " + std::to_string(ku) + "x" +
                             std::to_string(kv) + " code " + std::to_string(code);
                    return false;
                }
                ++checked;
            }
        }
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 200000; ++trial) {
        int ku = 1 + static_cast<int>(rng() % 4);
        int kv = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<long long>> table(ku, std::vector<long long>(kv));
        for (auto& row : table)
            for (auto& cell : row) cell = static_cast<long long>(rng() % 6);
        if (!check_table(table)) {
            detail = "random mismatch at trial " + std::to_string(trial);
            return false;
        }
        ++checked;
    }
    double secs = elapsed_s(start);
    if (secs >= 60.0) {
        detail = "too slow: " + std::to_string(secs) + " s";
        return false;
    }
    detail = std::to_string(checked) + " tables, " + std::to_string(secs) + " s";
    return true;
}

// --- criterion 8: CLI determinism ------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path.string() + ">";
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool criterion_cli_determinism(const std::string& cli, std::string& detail) {
    if (cli.empty()) {
        detail = "no --cli path given";
        return false;
    }
    fs::path tmp = fs::temp_directory_path() / "scripta_acceptance";
    std::error_code ec;
    fs::remove_all(tmp, ec);
    fs::create_directories(tmp);

    auto run = [&](const std::string& cmdline) {
        std::string full = cmdline + " > " + (tmp / "log.txt").string() + " 2>&1";
        return std::system(full.c_str()) == 0;
    };
    std::string corpus = (tmp / "corpus").string();
    if (!run("\"" + cli + "\" synth --out " + corpus + " --seed 5")) {
        detail = "synth invocation failed";
        return false;
    }
    for (const std::string& name : {"runA", "runB"}) {
        if (!run("\"" + cli + "\" pipeline --input " + corpus + " --out " +
                 (tmp / name).string() + " --seed 9")) {
            detail = "pipeline invocation failed (" + name + ")";
            return false;
        }
    }
    for (const std::string& artifact : {"features.csv", "clusters.json"}) {
        auto a = slurp(tmp / "runA" / artifact);
        auto b = slurp(tmp / "runB" / artifact);
        if (a.empty() || a != b) {
            detail = artifact + " differs between same-seed runs";
            return false;
        }
    }
    fs::remove_all(tmp, ec);
    detail = "features.csv and clusters.json byte-identical";
    return true;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    std::vector<Criterion> criteria{
        {"run-length feature oracle equivalence", criterion_feature_oracle},
        {"albp histogram contract", criterion_albp},
        {"coder render/encode round trip", criterion_roundtrip},
        {"perfect clustering on the separable benchmark", criterion_perfect_clustering},
        {"alpha=1 similarity benefit", criterion_alpha_benefit},
        {"baseline methods through the shared harness", criterion_baselines},
        {"metric correctness vs brute force", criterion_metrics},
        {"cli pipeline determinism",
         [&](std::string& d) { return criterion_cli_determinism(cli, d); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << "criterion " << (i + 1) << " [" << criteria[i].name << "]: "
                  << (ok ? "PASS" : "FAIL") << " (" << detail << ")" << std::endl;
        if (!ok) ++failures;
    }
    return failures;
}
