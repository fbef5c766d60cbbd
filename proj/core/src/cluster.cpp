#include "scripta/cluster.hpp"
#include "scripta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

namespace scripta {

namespace {

constexpr double kScaleEpsilon = 1e-9;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

Partition decode_genome(const std::vector<int>& genome) {
    int n = static_cast<int>(genome.size());
    UnionFind uf(n);
    for (int v = 0; v < n; ++v) uf.unite(v, genome[v]);
    Partition p;
    p.labels.resize(n);
    for (int v = 0; v < n; ++v) p.labels[v] = uf.find(v);
    return canonicalize(p);
}

} // namespace

Partition canonicalize(const Partition& p) {
    Partition out;
    out.labels.resize(p.labels.size());
    std::vector<int> remap(p.labels.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        int l = p.labels[i];
        if (remap[l] < 0) remap[l] = next++;
        out.labels[i] = remap[l];
    }
    out.k = next;
    return out;
}

bool SimilarityGraph::has_edge(int u, int v) const {
    for (const auto& [w, _] : adj[u])
        if (w == v) return true;
    return false;
}

std::size_t SimilarityGraph::edge_count() const {
    std::size_t deg = 0;
    for (const auto& nb : adj) deg += nb.size();
    return deg / 2;
}

DistanceMatrix pairwise_distances(const std::vector<FeatureVector>& features) {
    if (features.size() < 2) throw DataError("pairwise_distances: need at least 2 documents");
    std::size_t dims = features.front().values.size();
    for (const auto& fv : features)
        if (fv.values.size() != dims)
            throw DataError("pairwise_distances: feature length mismatch");

    std::size_t n = features.size();
    DistanceMatrix d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < dims; ++t)
                s += std::abs(features[i].values[t] - features[j].values[t]);
            d[i][j] = d[j][i] = s;
        }
    }
    return d;
}

double similarity_weight(double distance, double alpha, double scale_u, double scale_v) {
    return std::exp(-std::pow(distance, alpha) / (scale_u * scale_v));
}

SimilarityGraph build_graph(const DistanceMatrix& dist, int h, double alpha,
                            bool symmetrize_union) {
    int n = static_cast<int>(dist.size());
    if (n < 1) throw DataError("build_graph: empty distance matrix");
    if (h < 1) throw DataError("build_graph: h must be >= 1");
    if (alpha <= 0.0) throw DataError("build_graph: alpha must be > 0");

    SimilarityGraph g;
    g.n = n;
    g.alpha = alpha;
    g.h_clamped = h >= n;
    g.h = std::min(h, n - 1);
    g.adj.assign(n, {});
    g.local_scale.assign(n, kScaleEpsilon);
    if (g.h < 1) return g; // single node

    std::vector<std::vector<int>> nearest(n);
    for (int u = 0; u < n; ++u) {
        std::vector<int> order;
        order.reserve(n - 1);
        for (int v = 0; v < n; ++v)
            if (v != u) order.push_back(v);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return dist[u][a] < dist[u][b]; });
        order.resize(g.h);
        double a_u = dist[u][order.back()];
        g.local_scale[u] = a_u > 0.0 ? a_u : kScaleEpsilon;
        nearest[u] = std::move(order);
    }

    std::vector<std::uint8_t> out_edge(static_cast<std::size_t>(n) * n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : nearest[u]) out_edge[static_cast<std::size_t>(u) * n + v] = 1;

    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            bool uv = out_edge[static_cast<std::size_t>(u) * n + v] != 0;
            bool vu = out_edge[static_cast<std::size_t>(v) * n + u] != 0;
            bool keep = symmetrize_union ? (uv || vu) : (uv && vu);
            if (!keep) continue;
            double w = similarity_weight(dist[u][v], alpha, g.local_scale[u], g.local_scale[v]);
            g.adj[u].push_back({v, w});
            g.adj[v].push_back({u, w});
        }
    }
    for (auto& nb : g.adj)
        std::sort(nb.begin(), nb.end());
    return g;
}

std::vector<int> order_nodes(const SimilarityGraph& graph) {
    int n = graph.n;
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(graph.adj[v].size());

    std::vector<std::uint8_t> visited(n, 0);
    std::vector<int> order;
    order.reserve(n);

    auto pick_start = [&]() {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (visited[v] || degree[v] == 0) continue;
            if (best < 0 || degree[v] < degree[best]) best = v;
        }
        return best;
    };

    // Cuthill-McKee per component, then reverse.
    for (int start = pick_start(); start >= 0; start = pick_start()) {
        std::deque<int> queue{start};
        visited[start] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            std::vector<int> next;
            for (const auto& [w, _] : graph.adj[v])
                if (!visited[w]) next.push_back(w);
            std::sort(next.begin(), next.end(), [&](int a, int b) {
                return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
            });
            for (int w : next) {
                visited[w] = 1;
                queue.push_back(w);
            }
        }
    }
    std::reverse(order.begin(), order.end());
    for (int v = 0; v < n; ++v)
        if (degree[v] == 0) order.push_back(v);

    std::vector<int> f(n);
    for (int label = 0; label < n; ++label) f[order[label]] = label;
    return f;
}

SimilarityGraph prune_edges(const SimilarityGraph& graph, const std::vector<int>& f, int T) {
    if (T < 1) throw DataError("prune_edges: T must be >= 1");
    SimilarityGraph g = graph;
    for (int u = 0; u < g.n; ++u) {
        auto& nb = g.adj[u];
        nb.erase(std::remove_if(nb.begin(), nb.end(),
                                [&](const std::pair<int, double>& e) {
                                    return std::abs(f[u] - f[e.first]) >= T;
                                }),
                 nb.end());
    }
    return g;
}

double weighted_modularity(const SimilarityGraph& graph, const std::vector<int>& labels) {
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    std::vector<double> internal(k, 0.0), strength(k, 0.0);
    double m2 = 0.0;
    for (int u = 0; u < graph.n; ++u) {
        for (const auto& [v, w] : graph.adj[u]) {
            m2 += w;
            strength[labels[u]] += w;
            if (labels[u] == labels[v]) internal[labels[u]] += w;
        }
    }
    if (m2 <= 0.0) return 0.0;
    double q = 0.0;
    for (int c = 0; c < k; ++c)
        q += internal[c] / m2 - (strength[c] / m2) * (strength[c] / m2);
    return q;
}

EvolveResult evolve_partition(const SimilarityGraph& graph, const GAParams& params) {
    int n = graph.n;
    if (n < 1) throw DataError("evolve_partition: empty graph");
    if (params.population_size < 2)
        throw DataError("evolve_partition: population_size must be >= 2");
    if (params.elite_count >= params.population_size)
        throw DataError("evolve_partition: elite_count must be < population_size");

    std::mt19937_64 rng(params.seed);
    auto rand_gene = [&](int v) {
        // Gene value: the node itself or one of its neighbors.
        std::size_t m = graph.adj[v].size();
        std::uint64_t r = rng() % (m + 1);
        return r == m ? v : graph.adj[v][r].first;
    };
    auto rand01 = [&]() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };

    int pop_size = params.population_size;
    std::vector<std::vector<int>> pop(pop_size, std::vector<int>(n));
    for (auto& genome : pop)
        for (int v = 0; v < n; ++v) genome[v] = rand_gene(v);

    auto fitness_of = [&](const std::vector<int>& genome) {
        return weighted_modularity(graph, decode_genome(genome).labels);
    };

    std::vector<double> fitness(pop_size);
    for (int i = 0; i < pop_size; ++i) fitness[i] = fitness_of(pop[i]);

    auto rank = [&]() {
        std::vector<int> idx(pop_size);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return fitness[a] > fitness[b]; });
        return idx;
    };
    auto tournament = [&]() {
        int a = static_cast<int>(rng() % pop_size);
        int b = static_cast<int>(rng() % pop_size);
        return fitness[a] >= fitness[b] ? a : b;
    };

    EvolveResult res;
    res.fitness_trace.reserve(params.generations);
    for (int gen = 0; gen < params.generations; ++gen) {
        auto ranked = rank();
        res.fitness_trace.push_back(fitness[ranked.front()]);

        std::vector<std::vector<int>> next;
        next.reserve(pop_size);
        for (int e = 0; e < params.elite_count; ++e) next.push_back(pop[ranked[e]]);
        while (static_cast<int>(next.size()) < pop_size) {
            const auto& p1 = pop[tournament()];
            const auto& p2 = pop[tournament()];
            std::vector<int> child(n);
            if (rand01() < params.crossover_rate) {
                for (int v = 0; v < n; ++v) child[v] = (rng() & 1) ? p1[v] : p2[v];
            } else {
                child = p1;
            }
            for (int v = 0; v < n; ++v)
                if (rand01() < params.mutation_rate) child[v] = rand_gene(v);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        for (int i = 0; i < pop_size; ++i) fitness[i] = fitness_of(pop[i]);
    }

    auto ranked = rank();
    res.best_fitness = fitness[ranked.front()];
    res.fitness_trace.push_back(res.best_fitness);
    res.partition = decode_genome(pop[ranked.front()]);
    return res;
}

Partition merge_clusters(const Partition& partition, const std::vector<FeatureVector>& features,
                         int target_k, std::vector<double>* merge_distances) {
    if (target_k < 1) throw DataError("merge_clusters: target_k must be >= 1");
    if (target_k > partition.k)
        throw DataError("merge_clusters: target_k exceeds current cluster count");
    Partition p = canonicalize(partition);
    if (merge_distances) merge_distances->clear();
    if (p.k == target_k) return p;

    auto dist = pairwise_distances(features);
    std::vector<std::vector<int>> members(p.k);
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        members[p.labels[i]].push_back(static_cast<int>(i));

    while (static_cast<int>(members.size()) > target_k) {
        int best_i = -1, best_j = -1;
        double best_d = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                double d = 0.0; // complete linkage: farthest member pair
                for (int a : members[i])
                    for (int b : members[j]) d = std::max(d, dist[a][b]);
                if (best_i < 0 || d < best_d) {
                    best_d = d;
                    best_i = static_cast<int>(i);
                    best_j = static_cast<int>(j);
                }
            }
        }
        if (merge_distances) merge_distances->push_back(best_d);
        auto& dst = members[best_i];
        dst.insert(dst.end(), members[best_j].begin(), members[best_j].end());
        std::sort(dst.begin(), dst.end());
        members.erase(members.begin() + best_j);
    }

    Partition out;
    out.labels.assign(p.labels.size(), 0);
    out.k = static_cast<int>(members.size());
    for (std::size_t c = 0; c < members.size(); ++c)
        for (int doc : members[c]) out.labels[doc] = static_cast<int>(c);
    return canonicalize(out);
}

ClusterResult cluster_documents(const std::vector<FeatureVector>& normalized_features,
                                const ClusterConfig& config) {
    int n = static_cast<int>(normalized_features.size());
    if (n < config.k) throw DataError("cluster_documents: fewer documents than clusters");
    if (config.k < 1) throw DataError("cluster_documents: k must be >= 1");

    // Canonical processing order by doc_id, so input order does not matter.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        return normalized_features[a].doc_id < normalized_features[b].doc_id;
    });
    std::vector<FeatureVector> ordered(n);
    for (int i = 0; i < n; ++i) ordered[i] = normalized_features[perm[i]];

    ClusterResult res;
    res.threshold_used = config.threshold > 0 ? config.threshold : (n + 1) / 2;

    auto dist = pairwise_distances(ordered);
    auto graph = build_graph(dist, config.h, config.alpha, config.symmetrize_union);
    auto f = order_nodes(graph);
    auto pruned = prune_edges(graph, f, res.threshold_used);
    auto ev = evolve_partition(pruned, config.ga);
    res.fitness_trace = std::move(ev.fitness_trace);
    res.best_fitness = ev.best_fitness;
    res.ga_cluster_count = ev.partition.k;

    Partition merged;
    if (ev.partition.k >= config.k) {
        merged = merge_clusters(ev.partition, ordered, config.k);
    } else {
        // GA produced fewer clusters than requested: restart the merge from
        // singletons, which degenerates to plain complete linkage.
        Partition singletons;
        singletons.labels.resize(n);
        std::iota(singletons.labels.begin(), singletons.labels.end(), 0);
        singletons.k = n;
        merged = merge_clusters(singletons, ordered, config.k);
    }

    // Map labels back to the caller's document order.
    res.partition.labels.assign(n, 0);
    res.partition.k = merged.k;
    for (int i = 0; i < n; ++i) res.partition.labels[perm[i]] = merged.labels[i];
    res.partition = canonicalize(res.partition);
    return res;
}

} // namespace scripta
