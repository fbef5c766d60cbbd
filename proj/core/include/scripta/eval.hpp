#ifndef SCRIPTA_EVAL_HPP
#define SCRIPTA_EVAL_HPP

#include "scripta/cluster.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace scripta {

/// doc_id -> script class name.
using GroundTruth = std::map<std::string, std::string>;

/// Ground truth aligned with a document ordering: class indices plus names.
struct TruthLabels {
    std::vector<int> labels;
    std::vector<std::string> class_names; // index -> name, first-seen order
};

/// Resolves truth for the given doc order; throws DataError on missing ids.
TruthLabels align_truth(const GroundTruth& truth, const std::vector<std::string>& doc_ids);

/// Contingency counts: cell (cluster, class).
std::vector<std::vector<long long>> contingency_table(const std::vector<int>& labels,
                                                      const std::vector<int>& truth);

/// Optimal one-to-one cluster-to-class assignment maximizing total overlap.
/// Returns per-cluster class index, -1 for unassigned clusters.
std::vector<int> match_clusters(const std::vector<int>& labels, const std::vector<int>& truth);

struct ClassScore {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

/// Per-class precision/recall/F under the optimal assignment. A class with
/// no assigned cluster scores 0.
std::vector<ClassScore> prf_per_class(const std::vector<int>& labels,
                                      const std::vector<int>& truth);

/// NMI = 2 I(U;V) / (H(U) + H(V)), natural-log entropies. Both entropies
/// zero with identical partitions -> 1; a single zero entropy -> 0.
double nmi(const std::vector<int>& labels, const std::vector<int>& truth);

/// Euclidean K-means with k-means++ seeding, best of `restarts` by WCSS.
Partition kmeans_baseline(const std::vector<FeatureVector>& features, int k,
                          std::uint64_t seed, int restarts = 5);

/// Agglomerative clustering, complete linkage on L1 distances, cut at k.
Partition complete_linkage_baseline(const std::vector<FeatureVector>& features, int k);

struct MetricStats {
    double mean = 0.0;
    double stddev = 0.0; // population standard deviation
};

struct EvalReport {
    std::string method;
    int runs = 0;
    MetricStats nmi;
    std::vector<std::string> class_names;
    std::vector<MetricStats> precision; // per class
    std::vector<MetricStats> recall;
    std::vector<MetricStats> f_measure;
};

/// A clustering method parameterized only by its seed.
using SeededMethod = std::function<Partition(std::uint64_t seed)>;

/// Runs `method` with seeds base_seed + 0..n_runs-1 and aggregates the
/// metrics (mean, population std).
EvalReport repeated_eval(const SeededMethod& method, const TruthLabels& truth, int n_runs,
                         std::uint64_t base_seed, const std::string& method_name = "");

/// Scores a single fixed clustering (runs = 1, std = 0).
EvalReport evaluate_once(const std::vector<int>& labels, const TruthLabels& truth,
                         const std::string& method_name = "");

} // namespace scripta

#endif
