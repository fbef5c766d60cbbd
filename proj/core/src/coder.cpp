#include "scripta/coder.hpp"
#include "scripta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace scripta {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::vector<int> horizontal_projection(const BinaryImage& img) {
    std::vector<int> profile(img.height, 0);
    for (int y = 0; y < img.height; ++y) {
        int count = 0;
        const std::uint8_t* row = &img.mask[static_cast<std::size_t>(y) * img.width];
        for (int x = 0; x < img.width; ++x) count += row[x];
        profile[y] = count;
    }
    return profile;
}

std::vector<RowSpan> segment_lines(const std::vector<int>& profile, int min_gap, int min_ink) {
    if (min_gap < 1 || min_ink < 1)
        throw DataError("segment_lines: min_gap and min_ink must be >= 1");
    std::vector<RowSpan> runs;
    int n = static_cast<int>(profile.size());
    int y = 0;
    while (y < n) {
        if (profile[y] >= min_ink) {
            int start = y;
            while (y < n && profile[y] >= min_ink) ++y;
            runs.push_back({start, y - 1});
        } else {
            ++y;
        }
    }
    // Bridge gaps shorter than min_gap.
    std::vector<RowSpan> spans;
    for (const auto& run : runs) {
        if (!spans.empty() && run.top - spans.back().bottom - 1 < min_gap)
            spans.back().bottom = run.bottom;
        else
            spans.push_back(run);
    }
    return spans;
}

std::vector<Blob> extract_blobs(const BinaryImage& img, RowSpan span, int min_area) {
    std::vector<Blob> blobs;
    if (span.top > span.bottom || img.width == 0) return blobs;
    int y_lo = std::max(0, span.top);
    int y_hi = std::min(img.height - 1, span.bottom);
    int rows = y_hi - y_lo + 1;
    if (rows <= 0) return blobs;

    std::vector<std::uint8_t> seen(static_cast<std::size_t>(rows) * img.width, 0);
    auto idx = [&](int x, int y) { return static_cast<std::size_t>(y - y_lo) * img.width + x; };

    std::vector<std::pair<int, int>> stack;
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!img.at(x, y) || seen[idx(x, y)]) continue;
            Blob b{x, y, x, y};
            stack.push_back({x, y});
            seen[idx(x, y)] = 1;
            while (!stack.empty()) {
                auto [px, py] = stack.back();
                stack.pop_back();
                b.x0 = std::min(b.x0, px);
                b.x1 = std::max(b.x1, px);
                b.y0 = std::min(b.y0, py);
                b.y1 = std::max(b.y1, py);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = px + dx, ny = py + dy;
                        if (nx < 0 || nx >= img.width || ny < y_lo || ny > y_hi) continue;
                        if (!img.at(nx, ny) || seen[idx(nx, ny)]) continue;
                        seen[idx(nx, ny)] = 1;
                        stack.push_back({nx, ny});
                    }
                }
            }
            if (b.box_area() >= min_area) blobs.push_back(b);
        }
    }
    std::sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) {
        return a.x0 != b.x0 ? a.x0 < b.x0 : a.y0 < b.y0;
    });
    return blobs;
}

ReferenceBand reference_band(const std::vector<Blob>& blobs) {
    if (blobs.empty()) throw DataError("reference_band: no blobs");

    std::vector<double> centers, heights;
    centers.reserve(blobs.size());
    heights.reserve(blobs.size());
    for (const auto& b : blobs) {
        centers.push_back(b.cy());
        heights.push_back(static_cast<double>(b.height()));
    }
    ReferenceBand band;
    band.center = median(centers);
    double half_h = 0.5 * median(heights);

    // Blobs sitting on the central line drive the band-edge estimate; tall
    // outliers whose centers are off the line are excluded.
    std::vector<double> tops, bottoms;
    for (const auto& b : blobs) {
        if (std::abs(b.cy() - band.center) <= half_h) {
            tops.push_back(static_cast<double>(b.y0));
            bottoms.push_back(static_cast<double>(b.y1));
        }
    }
    band.top = median(tops);
    band.bottom = median(bottoms);
    return band;
}

LetterClass classify_blob(const Blob& blob, const ReferenceBand& band, double tau) {
    double slack = tau * (band.bottom - band.top);
    bool exceed_up = blob.y0 < band.top - slack;
    bool exceed_down = blob.y1 > band.bottom + slack;
    if (exceed_up && exceed_down) return LetterClass::Full;
    if (exceed_up) return LetterClass::Ascender;
    if (exceed_down) return LetterClass::Descender;
    return LetterClass::Base;
}

EncodeResult encode_document(const BinaryImage& img, const CoderParams& params) {
    EncodeResult res;
    res.text.doc_id = img.doc_id;

    auto profile = horizontal_projection(img);
    for (const auto& span : segment_lines(profile, params.min_gap, params.min_ink)) {
        auto all = extract_blobs(img, span, 1);
        std::vector<Blob> blobs;
        for (const auto& b : all) {
            if (b.box_area() >= params.min_area)
                blobs.push_back(b);
            else
                ++res.discarded_blobs;
        }
        if (blobs.empty()) continue;

        TextLine line;
        line.rows = span;
        line.band = reference_band(blobs);
        line.blobs = blobs;
        for (const auto& b : blobs)
            res.text.codes.push_back(static_cast<int>(classify_blob(b, line.band, params.tau)));
        res.lines.push_back(std::move(line));
    }
    return res;
}

} // namespace scripta
