#include "ofdmclip/constellation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "ofdmclip/error.hpp"

namespace ofdmclip {

namespace {

std::uint32_t gray(std::uint32_t v) { return v ^ (v >> 1); }

int log2_order(int order) {
    switch (order) {
        case 4: return 2;
        case 8: return 3;
        case 16: return 4;
        case 32: return 5;
        default:
            throw ConfigError("unsupported modulation order " + std::to_string(order) +
                              " (expected 4, 8, 16 or 32)");
    }
}

ConstellationTable make_psk(int order) {
    ConstellationTable t;
    t.bits_per_symbol = log2_order(order);
    // QPSK sits on the diagonals, higher orders start at 0 rad.
    const double offset = order == 4 ? std::numbers::pi / 4.0 : 0.0;
    for (int j = 0; j < order; ++j) {
        const double angle = offset + 2.0 * std::numbers::pi * j / order;
        t.points.push_back(std::polar(1.0, angle));
        t.labels.push_back(gray(static_cast<std::uint32_t>(j)));
    }
    return t;
}

// Rectangular grid with Gray labels per axis: I axis carries the high bits.
ConstellationTable make_rect_qam(int i_levels, int q_levels) {
    ConstellationTable t;
    const int i_bits = static_cast<int>(std::log2(i_levels));
    const int q_bits = static_cast<int>(std::log2(q_levels));
    t.bits_per_symbol = i_bits + q_bits;
    for (int i = 0; i < i_levels; ++i) {
        for (int q = 0; q < q_levels; ++q) {
            const double re = 2.0 * i - (i_levels - 1);
            const double im = 2.0 * q - (q_levels - 1);
            t.points.emplace_back(re, im);
            t.labels.push_back((gray(i) << q_bits) | gray(q));
        }
    }
    return t;
}

// 32-point cross: an 8x4 Gray grid whose outer columns (I = +-7) fold onto
// the rows Q = +-5, giving the 6x6 grid without its corners.
ConstellationTable make_cross32() {
    ConstellationTable t = make_rect_qam(8, 4);
    for (auto& p : t.points) {
        if (std::abs(p.real()) == 7.0) {
            const double side = p.real() > 0 ? 1.0 : -1.0;
            const double q = p.imag();
            p = Complex(side * (std::abs(q) == 1.0 ? 1.0 : 3.0), (q > 0 ? 5.0 : -5.0));
        }
    }
    return t;
}

void normalize(ConstellationTable& t) {
    double energy = 0.0;
    for (const auto& p : t.points) energy += std::norm(p);
    const double scale = 1.0 / std::sqrt(energy / static_cast<double>(t.points.size()));
    for (auto& p : t.points) p *= scale;
}

ConstellationTable build(ModScheme s) {
    ConstellationTable t;
    if (s.family == Family::Psk) {
        t = make_psk(s.order);
    } else {
        switch (s.order) {
            case 4: t = make_rect_qam(2, 2); break;
            case 8: t = make_rect_qam(4, 2); break;
            case 16: t = make_rect_qam(4, 4); break;
            case 32: t = make_cross32(); break;
            default: log2_order(s.order);
        }
    }
    normalize(t);
    return t;
}

struct Tables {
    std::array<ConstellationTable, 8> tables;
    // label -> table index, per scheme
    std::array<std::vector<std::size_t>, 8> by_label;

    Tables() {
        for (std::size_t k = 0; k < 8; ++k) {
            const ModScheme s{k < 4 ? Family::Psk : Family::Qam, 4 << (k % 4)};
            tables[k] = build(s);
            by_label[k].assign(tables[k].points.size(), 0);
            for (std::size_t i = 0; i < tables[k].labels.size(); ++i) {
                by_label[k][tables[k].labels[i]] = i;
            }
        }
    }
};

const Tables& tables() {
    static const Tables instance;
    return instance;
}

std::size_t slot(ModScheme s) {
    const int bits = log2_order(s.order);
    return static_cast<std::size_t>(bits - 2) + (s.family == Family::Qam ? 4 : 0);
}

}  // namespace

int ModScheme::bits_per_symbol() const { return log2_order(order); }

std::string ModScheme::name() const {
    if (order == 4) return family == Family::Psk ? "qpsk" : "qam";
    return std::to_string(order) + (family == Family::Psk ? "psk" : "qam");
}

ModScheme ModScheme::parse(std::string_view text) {
    for (const auto& s : all_schemes()) {
        if (s.name() == text) return s;
    }
    throw ConfigError("unknown modulation scheme '" + std::string(text) +
                      "' (expected one of qpsk, qam, 8psk, 8qam, 16psk, 16qam, 32psk, 32qam)");
}

std::vector<ModScheme> all_schemes() {
    return {{Family::Psk, 4},  {Family::Qam, 4},  {Family::Psk, 8},  {Family::Qam, 8},
            {Family::Psk, 16}, {Family::Qam, 16}, {Family::Psk, 32}, {Family::Qam, 32}};
}

const ConstellationTable& constellation_points(ModScheme scheme) {
    return tables().tables[slot(scheme)];
}

std::vector<Complex> map_bits(std::span<const std::uint8_t> bits, ModScheme scheme) {
    const std::size_t k = slot(scheme);
    const auto& table = tables().tables[k];
    const auto& index = tables().by_label[k];
    const auto bps = static_cast<std::size_t>(table.bits_per_symbol);
    if (bits.size() % bps != 0) {
        throw InputShapeError("bit count " + std::to_string(bits.size()) +
                              " is not a multiple of " + std::to_string(bps) + " bits/symbol");
    }
    std::vector<Complex> out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps) {
        std::uint32_t label = 0;
        for (std::size_t b = 0; b < bps; ++b) label = (label << 1) | (bits[i + b] & 1u);
        out.push_back(table.points[index[label]]);
    }
    return out;
}

Bits demap_symbols(std::span<const Complex> symbols, ModScheme scheme) {
    const auto& table = constellation_points(scheme);
    const auto bps = table.bits_per_symbol;
    Bits out;
    out.reserve(symbols.size() * static_cast<std::size_t>(bps));
    for (const auto& y : symbols) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < table.points.size(); ++i) {
            const double d = std::norm(y - table.points[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        const std::uint32_t label = table.labels[best];
        for (int b = bps - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
    return out;
}

}  // namespace ofdmclip
