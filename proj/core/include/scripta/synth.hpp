#ifndef SCRIPTA_SYNTH_HPP
#define SCRIPTA_SYNTH_HPP

#include "scripta/coder.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scripta {

/// Per-script distribution over the four letter classes; an optional
/// row-stochastic transition matrix adds first-order dependence.
struct ScriptProfile {
    std::string name;
    std::array<double, 4> class_probs{0.25, 0.25, 0.25, 0.25};
    std::optional<std::array<std::array<double, 4>, 4>> transition;
};

/// Geometry for rendering coded letters as filled rectangles.
struct PageLayout {
    int glyph_width = 5;
    int glyph_gap = 3;       // background columns between glyphs
    int band_height = 12;    // x-height band, pixels
    int ascender_extent = 16; // rows above the band (Ascender / Full)
    int descender_extent = 16; // rows below the band (Descender / Full)
    int line_gap = 6;        // background rows between line extents
    int margin = 8;
    int page_width = 800;
};

struct SynthSpec {
    std::vector<ScriptProfile> profiles;
    std::vector<int> docs_per_profile;
    int seq_len_min = 100;
    int seq_len_max = 200;
    PageLayout layout;
    std::uint64_t seed = 1;
};

struct SynthDocument {
    CodedText text;
    std::string class_label;
};

/// Draws each document's code sequence from its profile; deterministic
/// given spec.seed. doc_ids are "<profile>_<index>".
std::vector<SynthDocument> generate_coded_corpus(const SynthSpec& spec);

/// Renders a code sequence as rectangles on a page, wrapping at the page
/// width. Empty codes give a blank page.
BinaryImage render_page(const CodedText& text, const PageLayout& layout);

/// Throws DataError when probabilities, counts, or layout are invalid.
void validate_spec(const SynthSpec& spec);

/// Three separable profiles with 5/10/5 documents, the default benchmark.
SynthSpec separable_benchmark_spec(std::uint64_t seed = 1);

} // namespace scripta

#endif
