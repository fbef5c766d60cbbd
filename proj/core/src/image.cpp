#include "scripta/image.hpp"
#include "scripta/errors.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace scripta {

namespace {

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

// --- PGM -------------------------------------------------------------------

int pnm_next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) break;
    }
    if (c == EOF) return -1;
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return 0;
}

int pnm_int(std::istream& in, const std::string& path) {
    std::string tok;
    if (pnm_next_token(in, tok) != 0) throw FormatError(path + ": truncated PGM header");
    try {
        return std::stoi(tok);
    } catch (const std::exception&) {
        throw FormatError(path + ": bad PGM header token '" + tok + "'");
    }
}

GrayImage load_pgm(std::istream& in, const std::string& path, bool binary) {
    GrayImage img;
    img.width = pnm_int(in, path);
    img.height = pnm_int(in, path);
    int maxval = pnm_int(in, path);
    if (img.width < 1 || img.height < 1)
        throw DataError(path + ": zero-size image");
    if (maxval < 1 || maxval > 255)
        throw FormatError(path + ": unsupported PGM maxval " + std::to_string(maxval));
    std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.samples.resize(n);
    if (binary) {
        // The token reader consumed the single whitespace after maxval, so
        // the stream is already positioned at the first pixel byte.
        in.read(reinterpret_cast<char*>(img.samples.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw FormatError(path + ": truncated PGM pixel data");
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            int v = pnm_int(in, path);
            if (v < 0 || v > maxval) throw FormatError(path + ": PGM sample out of range");
            img.samples[i] = static_cast<std::uint8_t>(v);
        }
    }
    if (maxval != 255) {
        for (auto& s : img.samples)
            s = static_cast<std::uint8_t>(s * 255 / maxval);
    }
    return img;
}

// --- PNG -------------------------------------------------------------------

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        if (fp) std::fclose(fp);
    }
};

GrayImage load_png(const std::string& path) {
    PngReader r;
    r.fp = std::fopen(path.c_str(), "rb");
    if (!r.fp) throw IoError(path + ": cannot open file");
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    r.info = png_create_info_struct(r.png);
    if (!r.png || !r.info) throw Error("libpng initialization failed");
    if (setjmp(png_jmpbuf(r.png)))
        throw FormatError(path + ": corrupt PNG data");
    png_init_io(r.png, r.fp);
    png_read_info(r.png, r.info);

    png_uint_32 w = png_get_image_width(r.png, r.info);
    png_uint_32 h = png_get_image_height(r.png, r.info);
    if (w == 0 || h == 0) throw DataError(path + ": zero-size image");

    // Normalize everything to 8-bit RGB, then take luminance.
    png_set_expand(r.png);
    png_set_strip_16(r.png);
    png_set_strip_alpha(r.png);
    png_set_gray_to_rgb(r.png);
    png_read_update_info(r.png, r.info);

    std::vector<std::uint8_t> row(png_get_rowbytes(r.png, r.info));
    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.samples.resize(static_cast<std::size_t>(w) * h);
    for (png_uint_32 y = 0; y < h; ++y) {
        png_read_row(r.png, row.data(), nullptr);
        for (png_uint_32 x = 0; x < w; ++x) {
            double lum = 0.299 * row[3 * x] + 0.587 * row[3 * x + 1] + 0.114 * row[3 * x + 2];
            img.samples[static_cast<std::size_t>(y) * w + x] =
                static_cast<std::uint8_t>(std::lround(lum));
        }
    }
    png_read_end(r.png, nullptr);
    return img;
}

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, &info);
        if (fp) std::fclose(fp);
    }
};

} // namespace

GrayImage load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2) throw FormatError(path + ": file too short");

    GrayImage img;
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        img = load_pgm(in, path, magic[1] == '5');
    } else if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') {
        in.close();
        img = load_png(path);
    } else {
        throw FormatError(path + ": unsupported image format (expect PGM or PNG)");
    }
    img.doc_id = file_stem(path);
    return img;
}

int otsu_threshold(const std::vector<std::uint64_t>& histogram) {
    std::uint64_t total = 0;
    double sum_all = 0.0;
    for (int v = 0; v < 256; ++v) {
        total += histogram[v];
        sum_all += static_cast<double>(v) * histogram[v];
    }
    // Threshold t puts [0, t) in the foreground class.
    int best_t = 0;
    double best_var = -1.0;
    std::uint64_t n_fg = 0;
    double sum_fg = 0.0;
    for (int t = 0; t < 256; ++t) {
        if (n_fg > 0 && n_fg < total) {
            std::uint64_t n_bg = total - n_fg;
            double mu_fg = sum_fg / n_fg;
            double mu_bg = (sum_all - sum_fg) / n_bg;
            double var = static_cast<double>(n_fg) * n_bg * (mu_fg - mu_bg) * (mu_fg - mu_bg);
            if (var > best_var) {
                best_var = var;
                best_t = t;
            }
        }
        n_fg += histogram[t];
        sum_fg += static_cast<double>(t) * histogram[t];
    }
    return best_var > 0.0 ? best_t : 0;
}

BinarizeResult binarize(const GrayImage& img, const BinarizeOptions& opts) {
    BinarizeResult res;
    if (opts.method == BinarizeMethod::Fixed) {
        res.threshold = opts.fixed_threshold;
    } else {
        std::vector<std::uint64_t> hist(256, 0);
        for (auto s : img.samples) ++hist[s];
        res.threshold = otsu_threshold(hist);
        res.degenerate = (res.threshold == 0); // constant image: nothing below 0
    }
    res.image.width = img.width;
    res.image.height = img.height;
    res.image.doc_id = img.doc_id;
    res.image.mask.resize(img.samples.size());
    for (std::size_t i = 0; i < img.samples.size(); ++i)
        res.image.mask[i] = img.samples[i] < res.threshold ? 1 : 0;
    return res;
}

GrayImage to_gray(const BinaryImage& img) {
    GrayImage g;
    g.width = img.width;
    g.height = img.height;
    g.doc_id = img.doc_id;
    g.samples.resize(img.mask.size());
    for (std::size_t i = 0; i < img.mask.size(); ++i)
        g.samples[i] = img.mask[i] ? 0 : 255;
    return g;
}

void save_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.samples.data()),
              static_cast<std::streamsize>(img.samples.size()));
    if (!out) throw IoError(path + ": write failed");
}

void save_pgm(const BinaryImage& img, const std::string& path) {
    save_pgm(to_gray(img), path);
}

void save_png(const GrayImage& img, const std::string& path) {
    PngWriter w;
    w.fp = std::fopen(path.c_str(), "wb");
    if (!w.fp) throw IoError(path + ": cannot open for writing");
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    w.info = png_create_info_struct(w.png);
    if (!w.png || !w.info) throw Error("libpng initialization failed");
    if (setjmp(png_jmpbuf(w.png)))
        throw IoError(path + ": PNG write failed");
    png_init_io(w.png, w.fp);
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(w.png, const_cast<png_bytep>(&img.samples[static_cast<std::size_t>(y) * img.width]));
    png_write_end(w.png, nullptr);
}

void save_png(const BinaryImage& img, const std::string& path) {
    save_png(to_gray(img), path);
}

} // namespace scripta
