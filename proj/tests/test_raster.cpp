#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "arlabel/error.hpp"
#include "arlabel/image_io.hpp"
#include "arlabel/raster.hpp"
#include "oracles.hpp"

using namespace arlabel;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "arlabel_test_raster";
    fs::create_directories(dir);
    return dir;
}

long long popcount(const GrayMap& mask) {
    long long count = 0;
    for (double v : mask.data) count += v != 0.0 ? 1 : 0;
    return count;
}

}  // namespace

TEST_SUITE_BEGIN("raster");

TEST_CASE("rect centered in image covers exactly width*height pixels") {
    const GrayMap mask = rasterize_rect({{2, 2}, 2, 2}, 4, 4);
    CHECK(popcount(mask) == 4);
    CHECK(mask.at(1, 1) == 1.0);
    CHECK(mask.at(2, 2) == 1.0);
    CHECK(mask.at(3, 3) == 0.0);
}

TEST_CASE("rect fully outside the image rasterizes to zeros") {
    const GrayMap mask = rasterize_rect({{100, 100}, 3, 3}, 4, 4);
    CHECK(popcount(mask) == 0);
}

TEST_CASE("clipped rect popcount matches the per-pixel inside-test oracle") {
    const LabelRect rect{{1, 1}, 3, 3};
    const GrayMap mask = rasterize_rect(rect, 4, 4);
    CHECK(popcount(mask) == oracle::rect_popcount(rect, 4, 4));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pos(-6.0, 22.0);
    std::uniform_int_distribution<int> side(1, 9);
    for (int i = 0; i < 200; ++i) {
        const LabelRect r{{pos(rng), pos(rng)}, side(rng), side(rng)};
        const GrayMap m = rasterize_rect(r, 16, 16);
        CAPTURE(r.center.x);
        CAPTURE(r.center.y);
        REQUIRE(popcount(m) == oracle::rect_popcount(r, 16, 16));
    }
}

TEST_CASE("zero-area rect is rejected") {
    CHECK_THROWS_AS(rasterize_rect({{2, 2}, 0, 3}, 4, 4), DegenerateRect);
    CHECK_THROWS_AS(rasterize_rect({{2, 2}, 3, -1}, 4, 4), DegenerateRect);
}

TEST_CASE("rect popcount is bounded by the label area, equal iff fully inside") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> pos(-10.0, 26.0);
    for (int i = 0; i < 200; ++i) {
        const LabelRect r{{pos(rng), pos(rng)}, 6, 4};
        const GrayMap m = rasterize_rect(r, 16, 16);
        const long long count = popcount(m);
        REQUIRE(count <= r.area());
        REQUIRE((count == r.area()) == r.inside(16, 16));
    }
}

TEST_CASE("horizontal segment sets one pixel per column") {
    const GrayMap mask = rasterize_segment({{0, 0}, {3, 0}}, nullptr, 8, 8);
    CHECK(popcount(mask) == 4);
    for (int x = 0; x <= 3; ++x) CHECK(mask.at(x, 0) == 1.0);
}

TEST_CASE("zero-length segment rasterizes to zeros") {
    const GrayMap mask = rasterize_segment({{0, 0}, {0, 0}}, nullptr, 8, 8);
    CHECK(popcount(mask) == 0);
}

TEST_CASE("random segment pixel count matches the DDA walk oracle") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> pos(0.0, 15.0);
    for (int i = 0; i < 300; ++i) {
        const Segment seg{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}};
        const GrayMap mask = rasterize_segment(seg, nullptr, 16, 16);
        CAPTURE(seg.from.x);
        CAPTURE(seg.to.x);
        REQUIRE(popcount(mask) == oracle::dda_pixel_count(seg, 16, 16));
    }
}

TEST_CASE("segment trace is 8-connected between its endpoints") {
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> pos(0.0, 31.0);
    for (int i = 0; i < 100; ++i) {
        const Segment seg{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}};
        const std::vector<PixelCoord> trace = trace_segment(seg, nullptr, 32, 32);
        if (trace.empty()) continue;
        // Every trace pixel except one has an 8-neighbor successor; walk via
        // adjacency from the start pixel and require full coverage.
        std::vector<bool> visited(trace.size(), false);
        std::vector<size_t> stack;
        for (size_t t = 0; t < trace.size(); ++t)
            if (trace[t] ==
                PixelCoord{static_cast<int>(std::llround(seg.from.x)),
                           static_cast<int>(std::llround(seg.from.y))}) {
                stack.push_back(t);
                visited[t] = true;
            }
        REQUIRE(!stack.empty());
        while (!stack.empty()) {
            const PixelCoord cur = trace[stack.back()];
            stack.pop_back();
            for (size_t t = 0; t < trace.size(); ++t)
                if (!visited[t] && std::abs(trace[t].x - cur.x) <= 1 &&
                    std::abs(trace[t].y - cur.y) <= 1) {
                    visited[t] = true;
                    stack.push_back(t);
                }
        }
        for (size_t t = 0; t < trace.size(); ++t) REQUIRE(visited[t]);
    }
}

TEST_CASE("segment pixels inside the exclude rect are removed") {
    const LabelRect exclude{{8, 8}, 4, 4};
    const GrayMap with = rasterize_segment({{0, 8}, {15, 8}}, &exclude, 16, 16);
    const GrayMap without = rasterize_segment({{0, 8}, {15, 8}}, nullptr, 16, 16);
    CHECK(popcount(without) == 16);
    CHECK(popcount(with) == 12);
    for (int x = exclude.x_lo(); x <= exclude.x_hi(); ++x) CHECK(with.at(x, 8) == 0.0);
}

TEST_CASE("mask product sum equals pixel-set intersection size") {
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> pos(0.0, 15.0);
    std::uniform_int_distribution<int> side(1, 8);
    for (int i = 0; i < 100; ++i) {
        const GrayMap a = rasterize_rect({{pos(rng), pos(rng)}, side(rng), side(rng)}, 16, 16);
        const GrayMap b = rasterize_segment({{pos(rng), pos(rng)}, {pos(rng), pos(rng)}},
                                            nullptr, 16, 16);
        long long both = 0;
        for (size_t p = 0; p < a.data.size(); ++p)
            if (a.data[p] != 0.0 && b.data[p] != 0.0) ++both;
        REQUIRE(std::llround(oracle::mask_product_sum(a, b)) == both);
    }
}

TEST_CASE("all-black and all-white pgm round to 0 and 1") {
    const fs::path dir = temp_dir();
    GrayMap black(5, 4, 0.0);
    save_graymap(black, dir / "black.pgm");
    const GrayMap black2 = load_graymap(dir / "black.pgm");
    for (double v : black2.data) CHECK(v == 0.0);

    GrayMap white(5, 4, 1.0);
    save_graymap(white, dir / "white.pgm");
    const GrayMap white2 = load_graymap(dir / "white.pgm");
    for (double v : white2.data) CHECK(v == 1.0);
}

TEST_CASE("random graymap round-trips byte-identically through pgm and png") {
    const fs::path dir = temp_dir();
    std::mt19937 rng(16);
    std::uniform_int_distribution<int> byte(0, 255);
    GrayMap map(13, 9);
    for (double& v : map.data) v = byte(rng) / 255.0;

    for (const char* name : {"roundtrip.pgm", "roundtrip.png"}) {
        save_graymap(map, dir / name);
        const GrayMap loaded = load_graymap(dir / name);
        REQUIRE(loaded.width == map.width);
        REQUIRE(loaded.height == map.height);
        // Input values are already multiples of 1/255, so the round trip is exact.
        for (size_t i = 0; i < map.data.size(); ++i) REQUIRE(loaded.data[i] == map.data[i]);
        // Quantized payloads are identical bytes.
        save_graymap(loaded, dir / (std::string("again_") + name));
        std::ifstream a(dir / name, std::ios::binary), b(dir / (std::string("again_") + name),
                                                          std::ios::binary);
        const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
        const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
        REQUIRE(bytes_a == bytes_b);
    }
}

TEST_CASE("rgb png round-trips") {
    const fs::path dir = temp_dir();
    RgbImage image(7, 5);
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> byte(0, 255);
    for (uint8_t& v : image.data) v = static_cast<uint8_t>(byte(rng));
    save_image(image, dir / "rgb.png");
    const RgbImage loaded = load_image(dir / "rgb.png");
    REQUIRE(loaded.width == image.width);
    REQUIRE(loaded.height == image.height);
    REQUIRE(loaded.data == image.data);
}

TEST_CASE("semantic map ids survive png round-trip unscaled") {
    const fs::path dir = temp_dir();
    SemanticMap map(6, 3);
    std::mt19937 rng(18);
    std::uniform_int_distribution<int> id(0, 14);
    for (uint8_t& v : map.ids) v = static_cast<uint8_t>(id(rng));
    save_semantic_map(map, dir / "sem.png");
    const SemanticMap loaded = load_semantic_map(dir / "sem.png");
    REQUIRE(loaded.ids == map.ids);
}

TEST_CASE("unreadable files raise IoError") {
    CHECK_THROWS_AS(load_graymap("/nonexistent/foo.pgm"), IoError);
    CHECK_THROWS_AS(load_image("/nonexistent/foo.png"), IoError);
    CHECK_THROWS_AS(load_graymap(temp_dir() / "bad.tiff"), IoError);
}

TEST_SUITE_END();
