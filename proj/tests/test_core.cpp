#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "fzw/core/field.hpp"
#include "fzw/core/io.hpp"
#include "fzw/core/params.hpp"
#include "fzw/core/smooth.hpp"

using namespace fzw;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("fzw_core_" + name)).string();
}

Field random_field(std::mt19937_64& rng, std::size_t nt, std::size_t nx) {
    std::uniform_real_distribution<double> u(-10, 10);
    Grid1D g = make_grid(nx, std::abs(u(rng)) + 0.5, u(rng));
    std::vector<double> t(nt);
    double acc = u(rng);
    for (auto& v : t) v = (acc += std::abs(u(rng)) + 1e-3);
    Field f(g, t);
    for (auto& v : f.data) v = {u(rng) * std::exp(u(rng)), u(rng)};
    f.metadata["tag"] = "value";
    f.metadata["n"] = static_cast<int>(nt);
    return f;
}

} // namespace

TEST(ModelParams, ValidatesRanges) {
    EXPECT_NO_THROW(ModelParams(0.0, 1.0, 1.0, 2.0));
    EXPECT_THROW(ModelParams(1.0, 0.5, 1.0, 2.0), ParameterError);
    EXPECT_THROW(ModelParams(-0.1, 0.5, 1.0, 2.0), ParameterError);
    EXPECT_THROW(ModelParams(0.5, 0.0, 1.0, 2.0), ParameterError);
    EXPECT_THROW(ModelParams(0.5, 1.1, 1.0, 2.0), ParameterError);
    EXPECT_THROW(ModelParams(0.5, 0.5, 2.0, 2.0), ParameterError);
    EXPECT_THROW(ModelParams(0.5, 0.5, 0.0, 2.0), ParameterError);
}

TEST(ModelParams, DerivedConstants) {
    const ModelParams p(0.5, 0.5, 1.0, 2.0);
    EXPECT_NEAR(p.b_beta(), std::sqrt(std::sin(pi / 4)), 1e-15);
    EXPECT_DOUBLE_EQ(p.sigma(), 0.75);
    const ModelParams one(0.0, 1.0, 1.0, 2.0);
    EXPECT_EQ(one.b_beta(), 1.0);
    EXPECT_EQ(one.sigma(), 1.0);
}

TEST(Grid, BasicSpacingAndFrequencies) {
    const auto g = make_grid(8, 8.0, -4.0);
    EXPECT_EQ(g.spacing(), 1.0);
    EXPECT_EQ(g.x(0), -4.0);
    const auto m = monotone_frequencies(g);
    ASSERT_EQ(m.size(), 8u);
    for (int k = -4; k <= 3; ++k) EXPECT_NEAR(m[k + 4], 2 * pi * k / 8.0, 1e-15);
    EXPECT_EQ(make_grid(1024, 64.0, -32.0).spacing(), 0.0625);
}

TEST(Grid, RejectsInvalid) {
    EXPECT_THROW(make_grid(12, 8.0, 0.0), ParameterError);
    EXPECT_THROW(make_grid(4, 8.0, 0.0), ParameterError);
    EXPECT_THROW(make_grid(16, 0.0, 0.0), ParameterError);
    EXPECT_THROW(make_grid(16, -1.0, 0.0), ParameterError);
}

TEST(Grid, SpacingTimesCountIsLength) {
    for (std::size_t n = 8; n <= (1u << 16); n <<= 1)
        for (double L : {1.0, 2 * pi, 3.3, 64.0, 1e-3}) {
            const auto g = make_grid(n, L, 0.0);
            EXPECT_NEAR(g.spacing() * static_cast<double>(n), L, std::nextafter(L, 2 * L) - L);
        }
}

TEST(DualFrequencies, MonotoneExamples) {
    const auto a = monotone_frequencies(make_grid(8, 2 * pi, 0.0));
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(a[k], k - 4.0, 1e-14);
    // n = 4 is below the grid minimum, so check the generic helper directly.
    const auto b = fft_frequencies(4, pi);
    std::vector<double> sorted(b);
    std::sort(sorted.begin(), sorted.end());
    EXPECT_NEAR(sorted[0], -4, 1e-14);
    EXPECT_NEAR(sorted[1], -2, 1e-14);
    EXPECT_NEAR(sorted[2], 0, 1e-14);
    EXPECT_NEAR(sorted[3], 2, 1e-14);
}

TEST(DualFrequencies, NativeOrderAndZeroOnce) {
    for (std::size_t n : {8u, 16u, 256u}) {
        const auto g = make_grid(n, 5.0, 1.0);
        const auto f = dual_frequencies(g);
        EXPECT_EQ(std::count(f.begin(), f.end(), 0.0), 1);
        EXPECT_EQ(f[0], 0.0);
        EXPECT_NEAR(f[1], 2 * pi / 5.0, 1e-14);
        EXPECT_NEAR(f[n / 2], -pi * static_cast<double>(n) / 5.0, 1e-9);
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(native_to_monotone(monotone_to_native(j, n), n), j);
    }
}

TEST(DualFrequencies, SymmetricUpToNyquist) {
    const auto g = make_grid(64, 3.0, 0.0);
    const auto m = monotone_frequencies(g);
    for (std::size_t j = 1; j < 64; ++j) EXPECT_NEAR(m[j], -m[64 - j], 1e-12);
    EXPECT_LT(m[0], 0);
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
}

TEST(Field, Invariants) {
    const auto g = make_grid(8, 1.0, 0.0);
    EXPECT_THROW(Field(g, {0.0, 0.0}), ParameterError);
    EXPECT_THROW(Field(g, {1.0, 0.5}), ParameterError);
    Field f(g, {0.0, 1.0});
    EXPECT_EQ(f.data.size(), 16u);
    f.at(1, 2) = {1.0, 1e-12};
    f.set_real_tag(true);
    EXPECT_TRUE(f.real_tag_consistent());
    f.at(1, 3) = {0.0, 1e-6};
    EXPECT_FALSE(f.real_tag_consistent());
}

TEST(FieldIO, RoundTripTwoByEight) {
    Field f(make_grid(8, 2.0, -1.0), {0.0, 0.25});
    for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] = {0.1 * i, -0.3 * i};
    const auto path = temp_path("rt28.fzwf");
    write_field(f, path);
    const Field g = read_field(path);
    ASSERT_EQ(g.data.size(), f.data.size());
    EXPECT_EQ(std::memcmp(g.data.data(), f.data.data(), f.data.size() * sizeof(cplx)), 0);
    EXPECT_EQ(g.times, f.times);
    EXPECT_TRUE(g.grid == f.grid);
    EXPECT_EQ(encode_field(g), encode_field(f));
    std::remove(path.c_str());
}

TEST(FieldIO, HeaderLayout) {
    Field f(make_grid(8, 2.0, -1.0), {0.5});
    f.data[0] = {1.0, 2.0};
    const auto b = encode_field(f);
    EXPECT_EQ(b.substr(0, 4), "FZWF");
    EXPECT_EQ(static_cast<unsigned char>(b[4]), 1);
    std::uint32_t nt, nx;
    std::memcpy(&nt, b.data() + 5, 4);
    std::memcpy(&nx, b.data() + 9, 4);
    EXPECT_EQ(nt, 1u);
    EXPECT_EQ(nx, 8u);
    double t0, re, im;
    std::memcpy(&t0, b.data() + 13, 8);
    std::memcpy(&re, b.data() + 21, 8);
    std::memcpy(&im, b.data() + 29, 8);
    EXPECT_EQ(t0, 0.5);
    EXPECT_EQ(re, 1.0);
    EXPECT_EQ(im, 2.0);
    std::uint32_t mlen;
    const std::size_t moff = 13 + 8 + 16 * 8;
    std::memcpy(&mlen, b.data() + moff, 4);
    EXPECT_EQ(moff + 4 + mlen, b.size());
    EXPECT_TRUE(nlohmann::json::parse(b.substr(moff + 4)).is_object());
}

TEST(FieldIO, RandomRoundTrips) {
    std::mt19937_64 rng(12345);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t nt = 1 + rng() % 5;
        const std::size_t nx = std::size_t{8} << (rng() % 4);
        const Field f = random_field(rng, nt, nx);
        const Field g = decode_field(encode_field(f));
        ASSERT_EQ(g.times, f.times);
        ASSERT_EQ(std::memcmp(g.data.data(), f.data.data(), f.data.size() * sizeof(cplx)), 0);
        ASSERT_EQ(g.metadata, f.metadata);
        ASSERT_TRUE(g.grid == f.grid);
    }
}

TEST(FieldIO, BitExactSpecialValues) {
    Field f(make_grid(8, 1.0, 0.0), {0.0});
    f.data[0] = {-0.0, std::numeric_limits<double>::denorm_min()};
    f.data[1] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN()};
    const Field g = decode_field(encode_field(f));
    EXPECT_EQ(std::memcmp(g.data.data(), f.data.data(), f.data.size() * sizeof(cplx)), 0);
}

TEST(FieldIO, WrongMagic) {
    Field f(make_grid(8, 1.0, 0.0), {0.0});
    auto b = encode_field(f);
    b[0] = 'X';
    EXPECT_THROW(decode_field(b), FormatError);
    EXPECT_THROW(decode_field("FZ"), FormatError);
    b = encode_field(f);
    b[4] = 2;
    EXPECT_THROW(decode_field(b), FormatError);
}

TEST(FieldIO, DimensionMismatch) {
    Field f(make_grid(8, 1.0, 0.0), {0.0, 1.0});
    auto b = encode_field(f);
    const std::uint32_t three = 3;
    std::memcpy(b.data() + 5, &three, 4);
    EXPECT_THROW(decode_field(b), FormatError);
}

TEST(FieldIO, TruncatedPayload) {
    Field f(make_grid(8, 1.0, 0.0), {0.0, 1.0});
    const auto b = encode_field(f);
    for (std::size_t cut : {b.size() - 1, b.size() - 10, std::size_t{40}, std::size_t{13}})
        EXPECT_THROW(decode_field(b.substr(0, cut)), FormatError);
    EXPECT_THROW(read_field(temp_path("does_not_exist")), FormatError);
}

TEST(FieldIO, CsvExport) {
    Field f(make_grid(8, 1.0, 0.0), {0.0, 0.1});
    f.at(1, 3) = {1.0 / 3.0, -2.0};
    const auto path = temp_path("f.csv");
    write_field_csv(f, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,x,re,im");
    int rows = 0;
    std::string target;
    while (std::getline(in, line)) {
        ++rows;
        if (rows == 12) target = line;
    }
    EXPECT_EQ(rows, 16);
    EXPECT_EQ(target, "0.10000000000000001,0.375,0.33333333333333331,-2");
    std::remove(path.c_str());
}

TEST(SmoothStep, ShapeAndDerivative) {
    EXPECT_EQ(smooth_step(0.0), 0.0);
    EXPECT_EQ(smooth_step(-1.0), 0.0);
    EXPECT_EQ(smooth_step(1.0), 1.0);
    EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-15);
    for (double u = 0.01; u < 1; u += 0.01) {
        EXPECT_NEAR(smooth_step(u) + smooth_step(1 - u), 1.0, 1e-14);
        const double h = 1e-6;
        EXPECT_NEAR(smooth_step_derivative(u), (smooth_step(u + h) - smooth_step(u - h)) / (2 * h), 1e-6);
        EXPECT_GE(smooth_step(u + 0.005), smooth_step(u));
    }
}
