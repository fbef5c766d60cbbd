#ifndef SCRIPTA_IMAGE_HPP
#define SCRIPTA_IMAGE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace scripta {

/// 8-bit grayscale page raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples; // width*height entries
    std::string doc_id;

    std::uint8_t at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
};

/// Binarized page, true = ink (foreground).
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask; // width*height entries, 0 or 1
    std::string doc_id;

    bool at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { mask[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
};

enum class BinarizeMethod { Otsu, Fixed };

struct BinarizeOptions {
    BinarizeMethod method = BinarizeMethod::Otsu;
    int fixed_threshold = 128; // used when method == Fixed
};

struct BinarizeResult {
    BinaryImage image;
    int threshold = 0;
    bool degenerate = false; // constant image under Otsu: all background
};

/// Loads a PGM (P2/P5) or PNG file. Color PNGs are converted to luminance
/// with weights 0.299/0.587/0.114. doc_id is the file stem.
/// Throws IoError (unreadable), FormatError (unsupported/corrupt),
/// DataError (zero-size image).
GrayImage load_document(const std::string& path);

/// Foreground = samples strictly below the threshold.
/// Otsu picks the threshold in [0,255] maximizing between-class variance.
BinarizeResult binarize(const GrayImage& img, const BinarizeOptions& opts = {});

/// Otsu threshold from a 256-bin intensity histogram. Returns the lowest
/// maximizer; 0 (empty foreground class) when the histogram is constant.
int otsu_threshold(const std::vector<std::uint64_t>& histogram);

void save_pgm(const GrayImage& img, const std::string& path);
void save_pgm(const BinaryImage& img, const std::string& path); // ink = 0, background = 255
void save_png(const GrayImage& img, const std::string& path);
void save_png(const BinaryImage& img, const std::string& path);

/// Renders a mask back to gray (ink = 0, background = 255).
GrayImage to_gray(const BinaryImage& img);

} // namespace scripta

#endif
