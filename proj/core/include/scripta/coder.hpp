#ifndef SCRIPTA_CODER_HPP
#define SCRIPTA_CODER_HPP

#include "scripta/image.hpp"

#include <string>
#include <vector>

namespace scripta {

/// Connected component of ink treated as one letter.
struct Blob {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0; // inclusive bounding box

    int height() const { return y1 - y0 + 1; }
    int width() const { return x1 - x0 + 1; }
    long long box_area() const { return static_cast<long long>(width()) * height(); }
    double cx() const { return 0.5 * (x0 + x1); }
    double cy() const { return 0.5 * (y0 + y1); }
};

/// x-height band of a text line, estimated from blob medians.
struct ReferenceBand {
    double center = 0.0; // central line of reference
    double top = 0.0;    // band upper y (smaller value = higher on page)
    double bottom = 0.0; // band lower y
};

/// Typographic letter classes and their numeric codes.
enum class LetterClass : int { Base = 0, Ascender = 1, Descender = 2, Full = 3 };

struct RowSpan {
    int top = 0;
    int bottom = 0; // inclusive
};

struct TextLine {
    RowSpan rows;
    ReferenceBand band;
    std::vector<Blob> blobs; // left-to-right
};

/// One document as a 1-D sequence over {0,1,2,3}, reading order.
struct CodedText {
    std::string doc_id;
    std::vector<int> codes;
};

struct CoderParams {
    double tau = 0.25;  // band slack as a fraction of band height
    int min_gap = 2;    // row gaps shorter than this are bridged
    int min_ink = 1;    // minimum foreground pixels for an inked row
    int min_area = 4;   // blobs with smaller box area are discarded as specks
};

struct EncodeResult {
    CodedText text;
    std::vector<TextLine> lines;
    int discarded_blobs = 0;
};

/// Per-row foreground pixel counts.
std::vector<int> horizontal_projection(const BinaryImage& img);

/// Maximal runs of rows with profile >= min_ink; gaps shorter than min_gap
/// are bridged. Spans are disjoint and ordered top to bottom.
std::vector<RowSpan> segment_lines(const std::vector<int>& profile, int min_gap, int min_ink);

/// 8-connected components of the strip rows [span.top, span.bottom].
/// Components with box area < min_area are dropped. Sorted by left edge.
std::vector<Blob> extract_blobs(const BinaryImage& img, RowSpan span, int min_area = 4);

/// Band estimate: center = median blob center-y; top/bottom = medians of the
/// box edges of blobs whose center-y lies within half the median height of
/// the center. Throws DataError on an empty blob list.
ReferenceBand reference_band(const std::vector<Blob>& blobs);

LetterClass classify_blob(const Blob& blob, const ReferenceBand& band, double tau);

/// Full coding pipeline: projection -> lines -> blobs -> band -> classes.
EncodeResult encode_document(const BinaryImage& img, const CoderParams& params = {});

} // namespace scripta

#endif
