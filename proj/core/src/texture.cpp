#include "scripta/texture.hpp"
#include "scripta/errors.hpp"

#include <algorithm>
#include <limits>

namespace scripta {

RunLengthMatrix run_length_matrix(std::span<const int> codes) {
    if (codes.empty()) throw DataError("run_length_matrix: empty code sequence");
    for (int c : codes)
        if (c < 0 || c > 3) throw DataError("run_length_matrix: code outside {0..3}");

    // First pass: longest run, to size the matrix.
    std::size_t longest = 1, cur = 1;
    for (std::size_t t = 1; t < codes.size(); ++t) {
        cur = (codes[t] == codes[t - 1]) ? cur + 1 : 1;
        longest = std::max(longest, cur);
    }

    RunLengthMatrix m;
    for (auto& row : m.counts) row.assign(longest, 0);
    m.n_symbols = static_cast<long long>(codes.size());

    std::size_t t = 0;
    while (t < codes.size()) {
        std::size_t start = t;
        while (t < codes.size() && codes[t] == codes[start]) ++t;
        ++m.counts[codes[start]][t - start - 1];
        ++m.n_runs;
    }
    return m;
}

RLFeatures run_length_features(const RunLengthMatrix& m) {
    if (m.n_runs < 1) throw DataError("run_length_features: zero runs");
    const double nr = static_cast<double>(m.n_runs);
    const double np = static_cast<double>(m.n_symbols);

    RLFeatures f;
    std::array<double, 4> gray_sum{};                       // sum_j p(i,j)
    std::vector<double> len_sum(m.max_run_length(), 0.0);   // sum_i p(i,j)
    for (int gi = 0; gi < 4; ++gi) {
        double i2 = static_cast<double>(gi + 1) * (gi + 1);
        for (int lj = 0; lj < m.max_run_length(); ++lj) {
            double p = static_cast<double>(m.counts[gi][lj]);
            if (p == 0.0) continue;
            double j2 = static_cast<double>(lj + 1) * (lj + 1);
            gray_sum[gi] += p;
            len_sum[lj] += p;
            f.sre += p / j2;
            f.lre += p * j2;
            f.lgre += p / i2;
            f.hgre += p * i2;
            f.srlge += p / (i2 * j2);
            f.srhge += p * i2 / j2;
            f.lrlge += p * j2 / i2;
            f.lrhge += p * i2 * j2;
        }
    }
    for (double s : gray_sum) f.gln += s * s;
    for (double s : len_sum) f.rln += s * s;

    f.sre /= nr;
    f.lre /= nr;
    f.gln /= nr;
    f.rln /= nr;
    f.rp = nr / np;
    f.lgre /= nr;
    f.hgre /= nr;
    f.srlge /= nr;
    f.srhge /= nr;
    f.lrlge /= nr;
    f.lrhge /= nr;
    return f;
}

std::vector<int> lbp_codes(std::span<const int> codes) {
    if (codes.size() < 3) throw DataError("lbp_codes: need at least 3 symbols");
    std::vector<int> out;
    out.reserve(codes.size() - 2);
    for (std::size_t t = 1; t + 1 < codes.size(); ++t) {
        int bit_left = codes[t - 1] >= codes[t] ? 1 : 0;
        int bit_right = codes[t + 1] >= codes[t] ? 1 : 0;
        out.push_back(2 * bit_left + bit_right);
    }
    return out;
}

AlbpHistogram albp_histogram(std::span<const int> codes) {
    if (codes.size() < 4) throw DataError("albp_histogram: need at least 4 symbols");
    auto lbp = lbp_codes(codes);
    AlbpHistogram h;
    for (std::size_t t = 0; t + 1 < lbp.size(); ++t)
        h.bins[4 * lbp[t] + lbp[t + 1]] += 1.0;
    double total = static_cast<double>(lbp.size() - 1);
    for (auto& b : h.bins) b /= total;
    return h;
}

FeatureVector assemble_feature_vector(const std::string& doc_id, const RLFeatures& rl,
                                      const AlbpHistogram& albp, FeatureMode mode) {
    FeatureVector fv;
    fv.doc_id = doc_id;
    fv.mode = mode;
    if (mode == FeatureMode::RunLength || mode == FeatureMode::Concat) {
        auto a = rl.as_array();
        fv.values.insert(fv.values.end(), a.begin(), a.end());
    }
    if (mode == FeatureMode::Albp || mode == FeatureMode::Concat)
        fv.values.insert(fv.values.end(), albp.bins.begin(), albp.bins.end());
    return fv;
}

FeatureVector extract_features(const CodedText& text, FeatureMode mode) {
    RLFeatures rl;
    AlbpHistogram albp;
    if (mode == FeatureMode::RunLength || mode == FeatureMode::Concat)
        rl = run_length_features(run_length_matrix(text));
    if (mode == FeatureMode::Albp || mode == FeatureMode::Concat)
        albp = albp_histogram(text);
    return assemble_feature_vector(text.doc_id, rl, albp, mode);
}

std::vector<FeatureVector> normalize_corpus(const std::vector<FeatureVector>& corpus) {
    if (corpus.size() < 2) throw DataError("normalize_corpus: need at least 2 documents");
    std::size_t dims = corpus.front().values.size();
    for (const auto& fv : corpus)
        if (fv.values.size() != dims)
            throw DataError("normalize_corpus: inconsistent feature vector lengths");

    std::vector<double> lo(dims, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dims, -std::numeric_limits<double>::infinity());
    for (const auto& fv : corpus) {
        for (std::size_t d = 0; d < dims; ++d) {
            lo[d] = std::min(lo[d], fv.values[d]);
            hi[d] = std::max(hi[d], fv.values[d]);
        }
    }
    std::vector<FeatureVector> out = corpus;
    for (auto& fv : out) {
        for (std::size_t d = 0; d < dims; ++d) {
            double range = hi[d] - lo[d];
            fv.values[d] = range > 0.0 ? (fv.values[d] - lo[d]) / range : 0.0;
        }
    }
    return out;
}

FeatureMode parse_feature_mode(const std::string& name) {
    if (name == "rl") return FeatureMode::RunLength;
    if (name == "albp") return FeatureMode::Albp;
    if (name == "concat") return FeatureMode::Concat;
    throw DataError("unknown feature mode '" + name + "' (expect rl|albp|concat)");
}

std::string feature_mode_name(FeatureMode mode) {
    switch (mode) {
        case FeatureMode::RunLength: return "rl";
        case FeatureMode::Albp: return "albp";
        case FeatureMode::Concat: return "concat";
    }
    return "concat";
}

} // namespace scripta
