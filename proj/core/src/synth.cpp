#include "scripta/synth.hpp"
#include "scripta/errors.hpp"

#include <cmath>
#include <random>

namespace scripta {

namespace {

void check_probs(const std::array<double, 4>& p, const std::string& what) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw DataError(what + ": negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DataError(what + ": probabilities must sum to 1");
}

int sample_class(const std::array<double, 4>& probs, std::mt19937_64& rng) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    for (int c = 0; c < 4; ++c) {
        acc += probs[c];
        if (u < acc) return c;
    }
    return 3;
}

} // namespace

void validate_spec(const SynthSpec& spec) {
    if (spec.profiles.empty()) throw DataError("synth spec: no profiles");
    if (spec.docs_per_profile.size() != spec.profiles.size())
        throw DataError("synth spec: docs_per_profile size mismatch");
    for (int c : spec.docs_per_profile)
        if (c < 1) throw DataError("synth spec: docs_per_profile entries must be >= 1");
    if (spec.seq_len_min < 4 || spec.seq_len_max < spec.seq_len_min)
        throw DataError("synth spec: need 4 <= seq_len_min <= seq_len_max");
    for (const auto& p : spec.profiles) {
        check_probs(p.class_probs, "profile '" + p.name + "'");
        if (p.transition)
            for (const auto& row : *p.transition)
                check_probs(row, "profile '" + p.name + "' transition row");
    }
    const PageLayout& l = spec.layout;
    if (l.band_height < 3) throw DataError("layout: band_height must be >= 3");
    if (l.glyph_gap < 1) throw DataError("layout: glyph_gap must be >= 1");
    if (l.glyph_width < 1 || l.ascender_extent < 1 || l.descender_extent < 1 ||
        l.line_gap < 1 || l.margin < 0)
        throw DataError("layout: geometry out of range");
    if (2 * l.margin + l.glyph_width > l.page_width)
        throw DataError("layout: page_width too small for one glyph");
}

std::vector<SynthDocument> generate_coded_corpus(const SynthSpec& spec) {
    validate_spec(spec);
    std::mt19937_64 rng(spec.seed);
    std::vector<SynthDocument> docs;
    for (std::size_t pi = 0; pi < spec.profiles.size(); ++pi) {
        const ScriptProfile& prof = spec.profiles[pi];
        for (int d = 0; d < spec.docs_per_profile[pi]; ++d) {
            int len = spec.seq_len_min;
            if (spec.seq_len_max > spec.seq_len_min)
                len += static_cast<int>(rng() % (spec.seq_len_max - spec.seq_len_min + 1));
            SynthDocument doc;
            doc.class_label = prof.name;
            doc.text.doc_id = prof.name + "_" + std::to_string(d);
            doc.text.codes.reserve(len);
            int prev = -1;
            for (int t = 0; t < len; ++t) {
                int c = (prev >= 0 && prof.transition)
                            ? sample_class((*prof.transition)[prev], rng)
                            : sample_class(prof.class_probs, rng);
                doc.text.codes.push_back(c);
                prev = c;
            }
            docs.push_back(std::move(doc));
        }
    }
    return docs;
}

BinaryImage render_page(const CodedText& text, const PageLayout& l) {
    for (int c : text.codes)
        if (c < 0 || c > 3) throw DataError("render_page: code outside {0..3}");

    int per_line = (l.page_width - 2 * l.margin + l.glyph_gap) / (l.glyph_width + l.glyph_gap);
    if (per_line < 1) throw DataError("render_page: page_width too small for one glyph");
    int n = static_cast<int>(text.codes.size());
    int lines = (n + per_line - 1) / per_line;
    int line_height = l.ascender_extent + l.band_height + l.descender_extent;

    BinaryImage img;
    img.doc_id = text.doc_id;
    img.width = l.page_width;
    img.height = lines > 0 ? 2 * l.margin + lines * line_height + (lines - 1) * l.line_gap
                           : 2 * l.margin + 1;
    img.mask.assign(static_cast<std::size_t>(img.width) * img.height, 0);

    for (int g = 0; g < n; ++g) {
        int li = g / per_line;
        int ci = g % per_line;
        int x0 = l.margin + ci * (l.glyph_width + l.glyph_gap);
        int band_top = l.margin + li * (line_height + l.line_gap) + l.ascender_extent;
        int band_bottom = band_top + l.band_height - 1;
        int y0 = band_top, y1 = band_bottom;
        switch (static_cast<LetterClass>(text.codes[g])) {
            case LetterClass::Base: break;
            case LetterClass::Ascender: y0 -= l.ascender_extent; break;
            case LetterClass::Descender: y1 += l.descender_extent; break;
            case LetterClass::Full:
                y0 -= l.ascender_extent;
                y1 += l.descender_extent;
                break;
        }
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x < x0 + l.glyph_width; ++x) img.set(x, y, true);
    }
    return img;
}

SynthSpec separable_benchmark_spec(std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.seq_len_min = 2000;
    spec.seq_len_max = 3000;
    spec.profiles = {
        {"uncial", {0.84, 0.08, 0.06, 0.02}, std::nullopt},
        {"angular", {0.50, 0.34, 0.10, 0.06}, std::nullopt},
        {"round", {0.50, 0.06, 0.34, 0.10}, std::nullopt},
    };
    spec.docs_per_profile = {5, 10, 5};
    return spec;
}

} // namespace scripta
