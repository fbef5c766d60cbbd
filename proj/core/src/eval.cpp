#include "scripta/eval.hpp"
#include "scripta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace scripta {

namespace {

int label_count(const std::vector<int>& labels) {
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    return k;
}

double entropy(const std::vector<long long>& sizes, long long n) {
    double h = 0.0;
    for (long long s : sizes) {
        if (s == 0) continue;
        double p = static_cast<double>(s) / n;
        h -= p * std::log(p);
    }
    return h;
}

MetricStats stats_of(const std::vector<double>& xs) {
    MetricStats s;
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / xs.size());
    return s;
}

} // namespace

TruthLabels align_truth(const GroundTruth& truth, const std::vector<std::string>& doc_ids) {
    TruthLabels out;
    out.labels.reserve(doc_ids.size());
    std::map<std::string, int> index;
    for (const auto& id : doc_ids) {
        auto it = truth.find(id);
        if (it == truth.end()) throw DataError("ground truth missing doc_id '" + id + "'");
        auto [pos, inserted] = index.try_emplace(it->second, static_cast<int>(out.class_names.size()));
        if (inserted) out.class_names.push_back(it->second);
        out.labels.push_back(pos->second);
    }
    return out;
}

std::vector<std::vector<long long>> contingency_table(const std::vector<int>& labels,
                                                      const std::vector<int>& truth) {
    if (labels.size() != truth.size())
        throw DataError("contingency_table: label/truth size mismatch");
    int ku = label_count(labels), kv = label_count(truth);
    std::vector<std::vector<long long>> table(ku, std::vector<long long>(kv, 0));
    for (std::size_t i = 0; i < labels.size(); ++i) ++table[labels[i]][truth[i]];
    return table;
}

std::vector<int> match_clusters(const std::vector<int>& labels, const std::vector<int>& truth) {
    auto table = contingency_table(labels, truth);
    int ku = static_cast<int>(table.size());
    int kv = ku > 0 ? static_cast<int>(table[0].size()) : 0;
    std::vector<int> assignment(ku, -1);
    if (ku == 0 || kv == 0) return assignment;

    // DP over class subsets: clusters are rows, classes the bitmask.
    // dp[mask] = best overlap using the processed rows with classes in
    // `mask` consumed; rows may stay unassigned.
    std::size_t nmask = std::size_t{1} << kv;
    const long long kNeg = std::numeric_limits<long long>::min() / 4;
    std::vector<long long> dp(nmask, kNeg);
    std::vector<std::vector<int>> choice(ku, std::vector<int>(nmask, -2));
    dp[0] = 0;
    for (int row = 0; row < ku; ++row) {
        std::vector<long long> next(nmask, kNeg);
        for (std::size_t mask = 0; mask < nmask; ++mask) {
            if (dp[mask] == kNeg) continue;
            if (dp[mask] > next[mask]) {
                next[mask] = dp[mask];
                choice[row][mask] = -1; // row unassigned
            }
            for (int c = 0; c < kv; ++c) {
                if (mask & (std::size_t{1} << c)) continue;
                std::size_t m2 = mask | (std::size_t{1} << c);
                long long val = dp[mask] + table[row][c];
                if (val > next[m2]) {
                    next[m2] = val;
                    choice[row][m2] = c;
                }
            }
        }
        dp = std::move(next);
    }
    std::size_t best_mask = 0;
    for (std::size_t mask = 1; mask < nmask; ++mask)
        if (dp[mask] > dp[best_mask]) best_mask = mask;

    std::size_t mask = best_mask;
    for (int row = ku - 1; row >= 0; --row) {
        int c = choice[row][mask];
        assignment[row] = c >= 0 ? c : -1;
        if (c >= 0) mask &= ~(std::size_t{1} << c);
    }
    return assignment;
}

std::vector<ClassScore> prf_per_class(const std::vector<int>& labels,
                                      const std::vector<int>& truth) {
    auto table = contingency_table(labels, truth);
    auto assignment = match_clusters(labels, truth);
    int ku = static_cast<int>(table.size());
    int kv = ku > 0 ? static_cast<int>(table[0].size()) : 0;

    std::vector<long long> cluster_size(ku, 0), class_size(kv, 0);
    for (int u = 0; u < ku; ++u)
        for (int v = 0; v < kv; ++v) {
            cluster_size[u] += table[u][v];
            class_size[v] += table[u][v];
        }

    std::vector<ClassScore> scores(kv);
    for (int u = 0; u < ku; ++u) {
        int c = assignment[u];
        if (c < 0) continue;
        double tp = static_cast<double>(table[u][c]);
        ClassScore& s = scores[c];
        s.precision = cluster_size[u] > 0 ? tp / cluster_size[u] : 0.0;
        s.recall = class_size[c] > 0 ? tp / class_size[c] : 0.0;
        s.f_measure = (s.precision + s.recall) > 0.0
                          ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
                          : 0.0;
    }
    return scores;
}

double nmi(const std::vector<int>& labels, const std::vector<int>& truth) {
    auto table = contingency_table(labels, truth);
    long long n = static_cast<long long>(labels.size());
    if (n == 0) return 1.0;
    int ku = static_cast<int>(table.size());
    int kv = static_cast<int>(table[0].size());

    std::vector<long long> row(ku, 0), col(kv, 0);
    for (int u = 0; u < ku; ++u)
        for (int v = 0; v < kv; ++v) {
            row[u] += table[u][v];
            col[v] += table[u][v];
        }
    double hu = entropy(row, n), hv = entropy(col, n);
    if (hu == 0.0 && hv == 0.0) return 1.0; // both single-cluster: identical
    if (hu == 0.0 || hv == 0.0) return 0.0;

    double mi = 0.0;
    for (int u = 0; u < ku; ++u) {
        for (int v = 0; v < kv; ++v) {
            if (table[u][v] == 0) continue;
            double pij = static_cast<double>(table[u][v]) / n;
            mi += pij * std::log(static_cast<double>(n) * table[u][v] /
                                 (static_cast<double>(row[u]) * col[v]));
        }
    }
    return 2.0 * mi / (hu + hv);
}

Partition kmeans_baseline(const std::vector<FeatureVector>& features, int k,
                          std::uint64_t seed, int restarts) {
    int n = static_cast<int>(features.size());
    if (k < 1 || k > n) throw DataError("kmeans_baseline: k out of range");
    std::size_t dims = features.front().values.size();
    std::mt19937_64 rng(seed);

    auto sq_dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t d = 0; d < dims; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
        return s;
    };

    Partition best;
    double best_wcss = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, restarts); ++r) {
        // k-means++ seeding.
        std::vector<std::vector<double>> centroids;
        centroids.push_back(features[rng() % n].values);
        std::vector<double> d2(n);
        while (static_cast<int>(centroids.size()) < k) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                double m = std::numeric_limits<double>::infinity();
                for (const auto& c : centroids) m = std::min(m, sq_dist(features[i].values, c));
                d2[i] = m;
                total += m;
            }
            int pick;
            if (total > 0.0) {
                double target = std::uniform_real_distribution<double>(0.0, total)(rng);
                double acc = 0.0;
                pick = n - 1;
                for (int i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (acc >= target) {
                        pick = i;
                        break;
                    }
                }
            } else {
                pick = static_cast<int>(rng() % n); // all points coincide with a centroid
            }
            centroids.push_back(features[pick].values);
        }

        std::vector<int> assign(n, 0);
        for (int iter = 0; iter < 100; ++iter) {
            bool changed = false;
            for (int i = 0; i < n; ++i) {
                int best_c = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (int c = 0; c < k; ++c) {
                    double d = sq_dist(features[i].values, centroids[c]);
                    if (d < best_d) {
                        best_d = d;
                        best_c = c;
                    }
                }
                if (assign[i] != best_c) {
                    assign[i] = best_c;
                    changed = true;
                }
            }
            std::vector<std::vector<double>> sums(k, std::vector<double>(dims, 0.0));
            std::vector<int> counts(k, 0);
            for (int i = 0; i < n; ++i) {
                ++counts[assign[i]];
                for (std::size_t d = 0; d < dims; ++d) sums[assign[i]][d] += features[i].values[d];
            }
            for (int c = 0; c < k; ++c)
                if (counts[c] > 0)
                    for (std::size_t d = 0; d < dims; ++d) centroids[c][d] = sums[c][d] / counts[c];
            if (!changed) break;
        }

        double wcss = 0.0;
        for (int i = 0; i < n; ++i) wcss += sq_dist(features[i].values, centroids[assign[i]]);
        if (wcss < best_wcss) {
            best_wcss = wcss;
            best.labels = assign;
        }
    }
    best.k = label_count(best.labels);
    return canonicalize(best);
}

Partition complete_linkage_baseline(const std::vector<FeatureVector>& features, int k) {
    int n = static_cast<int>(features.size());
    if (k < 1 || k > n) throw DataError("complete_linkage_baseline: k out of range");
    Partition singletons;
    singletons.labels.resize(n);
    std::iota(singletons.labels.begin(), singletons.labels.end(), 0);
    singletons.k = n;
    return merge_clusters(singletons, features, k);
}

EvalReport evaluate_once(const std::vector<int>& labels, const TruthLabels& truth,
                         const std::string& method_name) {
    return repeated_eval([&](std::uint64_t) {
        Partition p;
        p.labels = labels;
        p.k = label_count(labels);
        return p;
    }, truth, 1, 0, method_name);
}

EvalReport repeated_eval(const SeededMethod& method, const TruthLabels& truth, int n_runs,
                         std::uint64_t base_seed, const std::string& method_name) {
    if (n_runs < 1) throw DataError("repeated_eval: n_runs must be >= 1");
    int kv = static_cast<int>(truth.class_names.size());

    std::vector<double> nmis;
    std::vector<std::vector<double>> ps(kv), rs(kv), fs(kv);
    for (int run = 0; run < n_runs; ++run) {
        Partition p = method(base_seed + static_cast<std::uint64_t>(run));
        if (p.labels.size() != truth.labels.size())
            throw DataError("repeated_eval: clustering size mismatch");
        nmis.push_back(nmi(p.labels, truth.labels));
        auto scores = prf_per_class(p.labels, truth.labels);
        for (int c = 0; c < kv; ++c) {
            ps[c].push_back(scores[c].precision);
            rs[c].push_back(scores[c].recall);
            fs[c].push_back(scores[c].f_measure);
        }
    }

    EvalReport rep;
    rep.method = method_name;
    rep.runs = n_runs;
    rep.class_names = truth.class_names;
    rep.nmi = stats_of(nmis);
    for (int c = 0; c < kv; ++c) {
        rep.precision.push_back(stats_of(ps[c]));
        rep.recall.push_back(stats_of(rs[c]));
        rep.f_measure.push_back(stats_of(fs[c]));
    }
    return rep;
}

} // namespace scripta
