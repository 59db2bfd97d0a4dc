#include "arlabel/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "arlabel/error.hpp"

namespace arlabel {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool has_extension(const std::filesystem::path& path, const char* ext) {
    std::string e = path.extension().string();
    for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return e == ext;
}

// Decodes any PNG into tightly packed rows of `channels` bytes per pixel.
std::vector<uint8_t> read_png(const std::filesystem::path& path, int channels, int& width,
                              int& height) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode " + path.string());
    }

    png_init_io(png, fp.get());
    png_read_info(png, info);

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);

    if (channels == 3) {
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(png);
    } else {
        if (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
            color_type == PNG_COLOR_TYPE_PALETTE)
            png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    }
    png_read_update_info(png, info);

    std::vector<uint8_t> pixels(static_cast<size_t>(width) * height * channels);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = pixels.data() + static_cast<size_t>(y) * width * channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return pixels;
}

void write_png(const std::filesystem::path& path, const uint8_t* pixels, int width, int height,
               int channels) {
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode " + path.string());
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(pixels + static_cast<size_t>(y) * width * channels);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::vector<uint8_t> read_pgm(const std::filesystem::path& path, int& width, int& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    auto next_token = [&in, &path]() -> std::string {
        std::string tok;
        while (in) {
            int c = in.get();
            if (c == '#') {
                std::string line;
                std::getline(in, line);
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            if (c == EOF) break;
            tok.push_back(static_cast<char>(c));
        }
        if (tok.empty()) throw IoError("truncated pgm header in " + path.string());
        return tok;
    };

    const std::string magic = next_token();
    if (magic != "P5") throw IoError("unsupported pgm magic '" + magic + "' in " + path.string());
    width = std::stoi(next_token());
    height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (width <= 0 || height <= 0 || maxval != 255)
        throw IoError("unsupported pgm geometry in " + path.string());

    std::vector<uint8_t> pixels(static_cast<size_t>(width) * height);
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(pixels.size()))
        throw IoError("truncated pgm payload in " + path.string());
    return pixels;
}

void write_pgm(const std::filesystem::path& path, const uint8_t* pixels, int width, int height) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels), static_cast<std::streamsize>(width) * height);
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<uint8_t> read_gray8(const std::filesystem::path& path, int& width, int& height) {
    if (has_extension(path, ".pgm")) return read_pgm(path, width, height);
    if (has_extension(path, ".png")) return read_png(path, 1, width, height);
    throw IoError("unsupported grayscale format: " + path.string());
}

void write_gray8(const std::filesystem::path& path, const uint8_t* pixels, int width, int height) {
    if (has_extension(path, ".pgm")) {
        write_pgm(path, pixels, width, height);
    } else if (has_extension(path, ".png")) {
        write_png(path, pixels, width, height, 1);
    } else {
        throw IoError("unsupported grayscale format: " + path.string());
    }
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
    RgbImage image;
    image.data = read_png(path, 3, image.width, image.height);
    return image;
}

void save_image(const RgbImage& image, const std::filesystem::path& path) {
    write_png(path, image.data.data(), image.width, image.height, 3);
}

GrayMap load_graymap(const std::filesystem::path& path) {
    int w = 0, h = 0;
    const std::vector<uint8_t> bytes = read_gray8(path, w, h);
    GrayMap map(w, h);
    for (size_t i = 0; i < bytes.size(); ++i) map.data[i] = bytes[i] / 255.0;
    return map;
}

void save_graymap(const GrayMap& map, const std::filesystem::path& path) {
    std::vector<uint8_t> bytes(map.size());
    for (size_t i = 0; i < bytes.size(); ++i) {
        const double v = std::clamp(map.data[i], 0.0, 1.0);
        bytes[i] = static_cast<uint8_t>(std::lround(v * 255.0));
    }
    write_gray8(path, bytes.data(), map.width, map.height);
}

SemanticMap load_semantic_map(const std::filesystem::path& path) {
    int w = 0, h = 0;
    std::vector<uint8_t> bytes = read_gray8(path, w, h);
    SemanticMap map(w, h);
    map.ids = std::move(bytes);
    return map;
}

void save_semantic_map(const SemanticMap& map, const std::filesystem::path& path) {
    write_gray8(path, map.ids.data(), map.width, map.height);
}

}  // namespace arlabel
