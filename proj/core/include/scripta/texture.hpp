#ifndef SCRIPTA_TEXTURE_HPP
#define SCRIPTA_TEXTURE_HPP

#include "scripta/coder.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace scripta {

/// Run-length matrix of a 4-gray-level 1-D image. Gray level i is code+1,
/// so i ranges over 1..4 and run length j over 1..max_run_length().
struct RunLengthMatrix {
    std::array<std::vector<long long>, 4> counts; // counts[i-1][j-1] = p(i,j)
    long long n_runs = 0;    // N_r
    long long n_symbols = 0; // N_p

    long long at(int gray, int length) const { return counts[gray - 1][length - 1]; }
    int max_run_length() const { return static_cast<int>(counts[0].size()); }
};

/// The 11 run-length statistics, in canonical order.
struct RLFeatures {
    double sre = 0, lre = 0, gln = 0, rln = 0, rp = 0;
    double lgre = 0, hgre = 0;
    double srlge = 0, srhge = 0, lrlge = 0, lrhge = 0;

    std::array<double, 11> as_array() const {
        return {sre, lre, gln, rln, rp, lgre, hgre, srlge, srhge, lrlge, lrhge};
    }
};

/// Normalized 16-bin histogram of adjacent LBP code pairs ('0000'..'1111').
struct AlbpHistogram {
    std::array<double, 16> bins{};
};

enum class FeatureMode { RunLength, Albp, Concat };

struct FeatureVector {
    std::string doc_id;
    std::vector<double> values;
    FeatureMode mode = FeatureMode::Concat;
};

RunLengthMatrix run_length_matrix(std::span<const int> codes);
inline RunLengthMatrix run_length_matrix(const CodedText& text) {
    return run_length_matrix(std::span<const int>(text.codes));
}

RLFeatures run_length_features(const RunLengthMatrix& m);

/// 2-bit LBP codes for interior positions: bit 1 = left neighbor >= center,
/// bit 0 = right neighbor >= center. Needs at least 3 symbols.
std::vector<int> lbp_codes(std::span<const int> codes);
inline std::vector<int> lbp_codes(const CodedText& text) {
    return lbp_codes(std::span<const int>(text.codes));
}

/// Histogram of adjacent LBP pairs, index 4*left + right, normalized to 1.
/// Needs at least 4 symbols.
AlbpHistogram albp_histogram(std::span<const int> codes);
inline AlbpHistogram albp_histogram(const CodedText& text) {
    return albp_histogram(std::span<const int>(text.codes));
}

FeatureVector assemble_feature_vector(const std::string& doc_id, const RLFeatures& rl,
                                      const AlbpHistogram& albp, FeatureMode mode);

/// Convenience: full per-document extraction for the given mode.
FeatureVector extract_features(const CodedText& text, FeatureMode mode);

/// Per-dimension min-max scaling to [0,1]; constant dimensions map to 0.
std::vector<FeatureVector> normalize_corpus(const std::vector<FeatureVector>& corpus);

FeatureMode parse_feature_mode(const std::string& name); // "rl" | "albp" | "concat"
std::string feature_mode_name(FeatureMode mode);

} // namespace scripta

#endif
