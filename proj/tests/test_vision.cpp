#include <doctest.h>

#include <filesystem>
#include <random>

#include "arlabel/error.hpp"
#include "arlabel/vision.hpp"
#include "oracles.hpp"

using namespace arlabel;
namespace fs = std::filesystem;

namespace {

RgbImage uniform_image(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
    RgbImage image(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            uint8_t* px = image.pixel(x, y);
            px[0] = r;
            px[1] = g;
            px[2] = b;
        }
    return image;
}

}  // namespace

TEST_SUITE_BEGIN("vision");

TEST_CASE("saliency of a uniform image is zero everywhere") {
    const GrayMap s = saliency_ft(uniform_image(16, 12, 90, 120, 150));
    for (double v : s.data) CHECK(v == 0.0);
}

TEST_CASE("saliency is equivariant under horizontal flips") {
    RgbImage image = uniform_image(20, 14, 128, 128, 128);
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width / 2; ++x) {
            uint8_t* a = image.pixel(x, y);
            uint8_t* b = image.pixel(image.width - 1 - x, y);
            for (int c = 0; c < 3; ++c) a[c] = b[c] = static_cast<uint8_t>(byte(rng));
        }
    const GrayMap s = saliency_ft(image);
    for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x)
            REQUIRE(s.at(x, y) == doctest::Approx(s.at(s.width - 1 - x, y)).epsilon(1e-12));
}

TEST_CASE("saliency matches the direct nested-loop formula evaluation") {
    RgbImage image = uniform_image(32, 32, 110, 110, 110);
    for (int y = 10; y < 18; ++y)
        for (int x = 12; x < 20; ++x) {
            uint8_t* px = image.pixel(x, y);
            px[0] = 240;
            px[1] = 235;
            px[2] = 90;
        }
    const GrayMap got = saliency_ft(image);
    const GrayMap want = oracle::saliency_ft_naive(image);
    REQUIRE(got.width == want.width);
    for (size_t i = 0; i < got.data.size(); ++i)
        REQUIRE(got.data[i] == doctest::Approx(want.data[i]).epsilon(1e-10));
}

TEST_CASE("saliency parallel and serial paths agree bitwise") {
    RgbImage image = uniform_image(33, 21, 60, 80, 100);
    std::mt19937 rng(22);
    std::uniform_int_distribution<int> byte(0, 255);
    for (uint8_t& v : image.data) v = static_cast<uint8_t>(byte(rng));
    const GrayMap parallel = saliency_ft(image);
    const GrayMap serial = saliency_ft_serial(image);
    REQUIRE(parallel.data == serial.data);
}

TEST_CASE("saliency is translation invariant away from the borders") {
    auto with_square = [](int ox, int oy) {
        RgbImage image = uniform_image(40, 40, 100, 100, 100);
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 6; ++x) {
                uint8_t* px = image.pixel(ox + x, oy + y);
                px[0] = 220;
                px[1] = 40;
                px[2] = 40;
            }
        return saliency_ft(image);
    };
    const GrayMap a = with_square(10, 12);
    const GrayMap b = with_square(15, 19);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x)
            REQUIRE(a.at(10 + x, 12 + y) == doctest::Approx(b.at(15 + x, 19 + y)).epsilon(1e-9));
}

TEST_CASE("canny of a uniform image finds no edges") {
    const GrayMap e = canny(uniform_image(24, 24, 77, 77, 77));
    for (double v : e.data) CHECK(v == 0.0);
}

TEST_CASE("canny thins a perfect vertical step edge to a single line") {
    RgbImage image = uniform_image(32, 24, 40, 40, 40);
    for (int y = 0; y < image.height; ++y)
        for (int x = 16; x < image.width; ++x) {
            uint8_t* px = image.pixel(x, y);
            px[0] = px[1] = px[2] = 220;
        }
    const GrayMap e = canny(image);
    // Away from the top/bottom borders each row crosses exactly one edge pixel.
    for (int y = 4; y < image.height - 4; ++y) {
        int count = 0;
        for (int x = 0; x < image.width; ++x) count += e.at(x, y) != 0.0 ? 1 : 0;
        CAPTURE(y);
        REQUIRE(count == 1);
    }
}

TEST_CASE("canny output is binary") {
    RgbImage image = uniform_image(30, 30, 128, 128, 128);
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> byte(0, 255);
    for (uint8_t& v : image.data) v = static_cast<uint8_t>(byte(rng));
    const GrayMap e = canny(image);
    for (double v : e.data) REQUIRE((v == 0.0 || v == 1.0));
}

TEST_CASE("canny agrees with a textbook oracle within 2% of pixels") {
    RgbImage image = uniform_image(48, 40, 90, 90, 90);
    for (int y = 8; y < 30; ++y)
        for (int x = 10; x < 38; ++x)
            if (y == 8 || y == 29 || x == 10 || x == 37) {
                uint8_t* px = image.pixel(x, y);
                px[0] = px[1] = px[2] = 230;
            }
    const EdgeParams params;
    const GrayMap got = canny(image, params);
    const GrayMap want = oracle::canny_naive(image, params);
    long long disagree = 0;
    for (size_t i = 0; i < got.data.size(); ++i) disagree += got.data[i] != want.data[i] ? 1 : 0;
    REQUIRE(disagree <= static_cast<long long>(got.data.size() * 0.02));
}

TEST_CASE("canny parallel and serial paths agree bitwise") {
    RgbImage image = uniform_image(37, 29, 100, 100, 100);
    std::mt19937 rng(24);
    std::uniform_int_distribution<int> byte(0, 255);
    for (uint8_t& v : image.data) v = static_cast<uint8_t>(byte(rng));
    CHECK(canny(image).data == canny_serial(image).data);
}

TEST_CASE("resolve_saliency builtin on a uniform image is zero") {
    const GrayMap s =
        resolve_saliency({SaliencyKind::builtin_ft, {}}, uniform_image(10, 10, 50, 60, 70));
    for (double v : s.data) CHECK(v == 0.0);
}

TEST_CASE("resolve_saliency renormalizes file maps to max 1") {
    const fs::path dir = fs::temp_directory_path() / "arlabel_test_vision";
    fs::create_directories(dir);
    GrayMap half(8, 6, 0.5);
    half.at(3, 2) = 0.25;
    save_graymap(half, dir / "half.pgm");
    const GrayMap s =
        resolve_saliency({SaliencyKind::file, dir / "half.pgm"}, uniform_image(8, 6, 0, 0, 0));
    CHECK(s.max_value() == 1.0);
    CHECK(s.at(3, 2) == doctest::Approx(0.5));
}

TEST_CASE("resolve_saliency keeps an all-zero file map at zero") {
    const fs::path dir = fs::temp_directory_path() / "arlabel_test_vision";
    fs::create_directories(dir);
    save_graymap(GrayMap(8, 6, 0.0), dir / "zero.pgm");
    const GrayMap s =
        resolve_saliency({SaliencyKind::file, dir / "zero.pgm"}, uniform_image(8, 6, 0, 0, 0));
    for (double v : s.data) CHECK(v == 0.0);
}

TEST_CASE("resolve_saliency rejects mismatched file dimensions") {
    const fs::path dir = fs::temp_directory_path() / "arlabel_test_vision";
    fs::create_directories(dir);
    save_graymap(GrayMap(4, 4, 0.5), dir / "small.pgm");
    CHECK_THROWS_AS(
        resolve_saliency({SaliencyKind::file, dir / "small.pgm"}, uniform_image(8, 6, 0, 0, 0)),
        DimensionMismatch);
}

TEST_SUITE_END();
