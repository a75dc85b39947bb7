#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles/nearest_point.hpp"
#include "ofdmclip/channel.hpp"
#include "ofdmclip/constellation.hpp"
#include "ofdmclip/error.hpp"

using namespace ofdmclip;

namespace {

Bits random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Bits b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

}  // namespace

TEST_CASE("scheme names round-trip and reject unknown strings") {
    for (const auto& s : all_schemes()) CHECK(ModScheme::parse(s.name()) == s);
    CHECK(ModScheme::parse("qpsk") == ModScheme{Family::Psk, 4});
    CHECK(ModScheme::parse("qam") == ModScheme{Family::Qam, 4});
    CHECK_THROWS_AS(ModScheme::parse("64qam"), ConfigError);
    CHECK_THROWS_AS((ModScheme{Family::Psk, 64}.bits_per_symbol()), ConfigError);
    CHECK_THROWS_AS(constellation_points(ModScheme{Family::Qam, 6}), ConfigError);
}

TEST_CASE("table invariants hold for every scheme") {
    for (const auto& s : all_schemes()) {
        CAPTURE(s.name());
        const auto& t = constellation_points(s);
        REQUIRE(t.points.size() == static_cast<std::size_t>(s.order));
        CHECK(t.bits_per_symbol == s.bits_per_symbol());
        double energy = 0.0;
        for (const auto& p : t.points) energy += std::norm(p);
        CHECK(energy / s.order == doctest::Approx(1.0).epsilon(1e-12));
        std::set<std::uint32_t> labels(t.labels.begin(), t.labels.end());
        CHECK(labels.size() == t.labels.size());
        for (auto l : t.labels) CHECK(l < static_cast<std::uint32_t>(s.order));
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j) CHECK(std::abs(t.points[i] - t.points[j]) > 1e-6);
        if (s.family == Family::Psk)
            for (const auto& p : t.points) CHECK(std::abs(p) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("qpsk sits on the diagonals with a Gray labeling") {
    const auto& t = constellation_points({Family::Psk, 4});
    for (std::size_t i = 0; i < 4; ++i) {
        const double deg = std::arg(t.points[i]) * 180.0 / std::numbers::pi;
        const double expected[] = {45.0, 135.0, -135.0, -45.0};
        CHECK(deg == doctest::Approx(expected[i]));
    }
    // bits 00 map to the point labeled 00
    const Bits zero{0, 0};
    const auto sym = map_bits(zero, {Family::Psk, 4});
    REQUIRE(sym.size() == 1);
    CHECK(std::abs(sym[0] - t.points[0]) < 1e-15);
    CHECK(t.labels[0] == 0u);
}

TEST_CASE("psk neighbours differ in exactly one bit") {
    for (int order : {4, 8, 16, 32}) {
        const auto& t = constellation_points({Family::Psk, order});
        for (std::size_t i = 0; i < t.points.size(); ++i) {
            const auto j = (i + 1) % t.points.size();
            CHECK(std::popcount(t.labels[i] ^ t.labels[j]) == 1);
        }
    }
}

TEST_CASE("16-QAM is the +-1,+-3 grid over sqrt(10)") {
    const auto& t = constellation_points({Family::Qam, 16});
    for (const auto& p : t.points) {
        const double re = p.real() * std::sqrt(10.0);
        const double im = p.imag() * std::sqrt(10.0);
        CHECK(std::abs(std::abs(std::round(re)) - std::abs(re)) < 1e-12);
        CHECK((std::abs(std::round(re)) == 1.0 || std::abs(std::round(re)) == 3.0));
        CHECK((std::abs(std::round(im)) == 1.0 || std::abs(std::round(im)) == 3.0));
    }
}

TEST_CASE("32-QAM cross: 6x6 grid minus corners, normalization 1/sqrt(20)") {
    // Oracle: enumerate the declared cross and compute its mean energy.
    double energy = 0.0;
    int count = 0;
    for (int i = -5; i <= 5; i += 2)
        for (int q = -5; q <= 5; q += 2) {
            if (std::abs(i) == 5 && std::abs(q) == 5) continue;
            energy += i * i + q * q;
            ++count;
        }
    REQUIRE(count == 32);
    const double scale = std::sqrt(energy / count);
    CHECK(scale == doctest::Approx(std::sqrt(20.0)));

    const auto& t = constellation_points({Family::Qam, 32});
    std::set<std::pair<long, long>> grid;
    for (const auto& p : t.points) grid.emplace(std::lround(p.real() * scale), std::lround(p.imag() * scale));
    CHECK(grid.size() == 32);
    for (const auto& [i, q] : grid) {
        CHECK(std::abs(i) % 2 == 1);
        CHECK(std::abs(i) <= 5);
        CHECK(std::abs(q) <= 5);
        CHECK_FALSE((std::abs(i) == 5 && std::abs(q) == 5));
    }
}

TEST_CASE("map_bits shapes and errors") {
    CHECK(map_bits(Bits{}, {Family::Qam, 16}).empty());
    CHECK_THROWS_AS(map_bits(Bits{1, 0, 1}, {Family::Qam, 16}), InputShapeError);
    for (const auto& s : all_schemes()) {
        const auto bits = random_bits(128 * static_cast<std::size_t>(s.bits_per_symbol()), 7);
        const auto sym = map_bits(bits, s);
        REQUIRE(sym.size() == 128);
        const auto& t = constellation_points(s);
        for (const auto& y : sym) {
            bool member = false;
            for (const auto& p : t.points) member = member || std::abs(y - p) == 0.0;
            CHECK(member);
        }
    }
}

TEST_CASE("round trip, determinism and small perturbations") {
    for (const auto& s : all_schemes()) {
        CAPTURE(s.name());
        const auto bits = random_bits(3000 * static_cast<std::size_t>(s.bits_per_symbol()), 11);
        const auto sym = map_bits(bits, s);
        CHECK(demap_symbols(sym, s) == bits);
        CHECK(map_bits(bits, s) == sym);

        const auto& t = constellation_points(s);
        double dmin = 1e9;
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j) dmin = std::min(dmin, std::abs(t.points[i] - t.points[j]));
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        auto noisy = sym;
        for (auto& y : noisy) y += std::polar(0.49 * dmin, angle(rng));
        CHECK(demap_symbols(noisy, s) == bits);
    }
}

TEST_CASE("demap ties resolve to the lowest table index") {
    const auto& t = constellation_points({Family::Psk, 4});
    // Midpoint of points 0 and 1 is equidistant from both.
    const Complex mid = 0.5 * (t.points[0] + t.points[1]);
    const auto bits = demap_symbols(std::vector<Complex>{mid}, {Family::Psk, 4});
    CHECK(bits == Bits{0, 0});
}

TEST_CASE("noisy 16-QAM matches an exhaustive nearest-point oracle") {
    const ModScheme s{Family::Qam, 16};
    const auto bits = random_bits(40000, 5);
    auto sym = map_bits(bits, s);
    Rng rng = make_stream(99, 0);
    std::normal_distribution<double> g(0.0, 0.5);
    for (auto& y : sym) y += Complex(g(rng), g(rng));
    const auto got = demap_symbols(sym, s);
    const auto want = oracle::nearest_point_bits(sym, constellation_points(s));
    CHECK(got == want);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != got[i];
    CHECK(errors > 0);
}

TEST_CASE("empirical symbol energy over 1e5 random symbols is within 1%") {
    for (const auto& s : all_schemes()) {
        const auto bits = random_bits(100000 * static_cast<std::size_t>(s.bits_per_symbol()), 21);
        const auto sym = map_bits(bits, s);
        double e = 0.0;
        for (const auto& y : sym) e += std::norm(y);
        e /= static_cast<double>(sym.size());
        CHECK(e >= 0.99);
        CHECK(e <= 1.01);
    }
}
