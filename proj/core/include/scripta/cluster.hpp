#ifndef SCRIPTA_CLUSTER_HPP
#define SCRIPTA_CLUSTER_HPP

#include "scripta/texture.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace scripta {

/// Dense cluster labeling of n documents; labels in 0..k-1.
struct Partition {
    std::vector<int> labels;
    int k = 0;
};

/// Relabels so cluster ids appear in first-occurrence order.
Partition canonicalize(const Partition& p);

struct GAParams {
    int population_size = 100;
    int generations = 30;
    double crossover_rate = 0.8;
    double mutation_rate = 0.2; // per-gene probability
    int elite_count = 2;
    std::uint64_t seed = 0;
};

/// Weighted h-NN document graph with self-tuning local scales.
struct SimilarityGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj; // sorted by neighbor index
    std::vector<double> local_scale;                      // a_u = h-th NN distance
    int h = 0;
    double alpha = 1.0;
    bool h_clamped = false; // h >= n was requested

    bool has_edge(int u, int v) const;
    std::size_t edge_count() const; // undirected
};

using DistanceMatrix = std::vector<std::vector<double>>;

/// L1 distances between feature vectors; symmetric with zero diagonal.
DistanceMatrix pairwise_distances(const std::vector<FeatureVector>& features);

/// Similarity w = exp(-d^alpha / (scale_u * scale_v)); alpha = 2 recovers
/// the unmodified squared-distance form.
double similarity_weight(double distance, double alpha, double scale_u, double scale_v);

/// Each node links toward its h nearest neighbors (ties by lower index);
/// w(u,v) = exp(-d(u,v)^alpha / (a_u * a_v)). Edges symmetrized by union
/// (intersection when symmetrize_union = false).
SimilarityGraph build_graph(const DistanceMatrix& dist, int h, double alpha,
                            bool symmetrize_union = true);

/// Reverse Cuthill-McKee ordering of the edge structure. Deterministic:
/// minimum-degree start, ties by index; isolated nodes appended in index
/// order. Returns f with f[node] = label.
std::vector<int> order_nodes(const SimilarityGraph& graph);

/// Keeps edge (u,v) iff |f(u) - f(v)| < T.
SimilarityGraph prune_edges(const SimilarityGraph& graph, const std::vector<int>& f, int T);

/// Weighted modularity of a labeling; 0 for an edgeless graph.
double weighted_modularity(const SimilarityGraph& graph, const std::vector<int>& labels);

struct EvolveResult {
    Partition partition;
    std::vector<double> fitness_trace; // best modularity per generation
    double best_fitness = 0.0;
};

/// Locus-based adjacency GA: each gene assigns a node one of its neighbors
/// (or itself); clusters are the connected components of those links.
/// Fitness is weighted modularity. Deterministic given params.seed.
EvolveResult evolve_partition(const SimilarityGraph& graph, const GAParams& params);

/// Complete-linkage merging: repeatedly merge the cluster pair with minimum
/// farthest-member L1 distance until k = K. Ties by smallest (i,j).
Partition merge_clusters(const Partition& partition, const std::vector<FeatureVector>& features,
                         int target_k, std::vector<double>* merge_distances = nullptr);

struct ClusterConfig {
    int k = 2;
    int h = 5;
    double alpha = 1.0; // similarity exponent
    int threshold = 0;  // label-difference threshold T; 0 = ceil(n/2)
    bool symmetrize_union = true;
    GAParams ga;
};

struct ClusterResult {
    Partition partition;
    std::vector<double> fitness_trace;
    double best_fitness = 0.0;
    int threshold_used = 0;
    int ga_cluster_count = 0; // before merge refinement
};

/// Full pipeline: distances -> h-NN graph -> RCM ordering -> threshold
/// pruning -> evolutionary partitioning -> merge to k clusters. Documents
/// are processed in doc_id order internally, so the result is invariant
/// under input permutation (up to relabeling).
ClusterResult cluster_documents(const std::vector<FeatureVector>& normalized_features,
                                const ClusterConfig& config);

} // namespace scripta

#endif
