#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ofdmclip/channel.hpp"
#include "ofdmclip/csv.hpp"
#include "ofdmclip/error.hpp"
#include "ofdmclip/metrics.hpp"

using namespace ofdmclip;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "ofdmclip_test_metrics";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("papr closed forms") {
    const std::vector<double> flat(64, 0.7);
    CHECK(papr_db(std::span<const double>(flat)) == doctest::Approx(0.0).scale(1.0));

    std::vector<double> spike(64, 0.0);
    spike[5] = 1.0;
    CHECK(papr_db(std::span<const double>(spike)) == doctest::Approx(10.0 * std::log10(64.0)));

    std::vector<Complex> tone(128);
    for (std::size_t m = 0; m < tone.size(); ++m) tone[m] = std::polar(2.0, 0.1 * static_cast<double>(m));
    CHECK(papr_db(std::span<const Complex>(tone)) == doctest::Approx(0.0).scale(1.0));

    const std::vector<double> zero(8, 0.0);
    CHECK_THROWS_AS(papr_db(std::span<const double>(zero)), MetricError);
    CHECK_THROWS_AS(papr_db(std::span<const double>()), InputShapeError);
}

TEST_CASE("papr is scale invariant") {
    Rng rng = make_stream(9, 0);
    std::normal_distribution<double> g;
    std::vector<double> x(500);
    for (auto& v : x) v = g(rng);
    const double ref = papr_db(std::span<const double>(x));
    for (double k : {1e-6, 0.5, 3.0, 1e6}) {
        std::vector<double> y(x);
        for (auto& v : y) v *= k;
        CHECK(papr_db(std::span<const double>(y)) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("ccdf counts strict exceedances") {
    const std::vector<double> v{1.0, 2.0, 2.0, 3.0, 4.0};
    const std::vector<double> t{0.0, 1.0, 2.0, 3.5, 4.0, 5.0};
    const auto c = estimate_ccdf(v, t);
    CHECK(c.sample_count == 5);
    const std::vector<double> want{1.0, 0.8, 0.4, 0.2, 0.0, 0.0};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(c.prob_exceed[i] == doctest::Approx(want[i]));

    CHECK_THROWS_AS(estimate_ccdf(std::span<const double>(), t), InputShapeError);
    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(estimate_ccdf(v, bad), InputShapeError);
}

TEST_CASE("ccdf agrees with brute-force counting on random data") {
    Rng rng = make_stream(3, 3);
    std::uniform_real_distribution<double> u(0.0, 15.0);
    std::vector<double> v(5000);
    for (auto& x : v) x = u(rng);
    const auto t = threshold_grid(0.0, 15.0, 0.1);
    const auto c = estimate_ccdf(v, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::size_t n = 0;
        for (double x : v) n += x > t[i] ? 1 : 0;
        CHECK(c.prob_exceed[i] == static_cast<double>(n) / 5000.0);
    }
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(c.prob_exceed[i] <= c.prob_exceed[i - 1]);
}

TEST_CASE("threshold grid") {
    const auto g = threshold_grid(0.0, 1.0, 0.25);
    REQUIRE(g.size() == 5);
    CHECK(g.back() == doctest::Approx(1.0));
    const auto fine = threshold_grid(0.0, 20.0, 0.01);
    CHECK(fine.size() == 2001);
    CHECK(fine[1234] == doctest::Approx(12.34).epsilon(1e-14));
    CHECK_THROWS_AS(threshold_grid(0.0, 1.0, 0.0), InputShapeError);
    CHECK_THROWS_AS(threshold_grid(1.0, 0.0, 0.1), InputShapeError);
}

TEST_CASE("quantile interpolation and range checks") {
    CcdfCurve c{{0.0, 1.0, 2.0, 3.0}, {1.0, 0.5, 0.1, 0.0}, 10};
    CHECK(ccdf_quantile(c, 0.5) == doctest::Approx(1.0));
    CHECK(ccdf_quantile(c, 0.3) == doctest::Approx(1.5));
    CHECK(ccdf_quantile(c, 0.05) == doctest::Approx(2.5));
    CHECK_THROWS_AS(ccdf_quantile(c, 0.0), OutOfRangeError);
    CHECK_THROWS_AS(ccdf_quantile(c, 1.0), OutOfRangeError);
    CHECK_THROWS_AS(ccdf_quantile(c, 1.5), OutOfRangeError);

    CcdfCurve shallow{{0.0, 1.0}, {0.9, 0.2}, 10};
    CHECK_THROWS_AS(ccdf_quantile(shallow, 0.1), OutOfRangeError);
    CHECK_THROWS_AS(ccdf_quantile(shallow, 0.95), OutOfRangeError);
    CHECK_THROWS_AS(ccdf_quantile(CcdfCurve{}, 0.5), InputShapeError);
}

TEST_CASE("bit error counting") {
    const Bits a{0, 1, 1, 0, 1};
    const Bits b{0, 1, 0, 0, 0};
    const auto e = count_bit_errors(a, b);
    CHECK(e.bit_errors == 2);
    CHECK(e.bits_total == 5);
    CHECK(e.ber() == doctest::Approx(0.4));
    CHECK(count_bit_errors(a, a).bit_errors == 0);
    CHECK_THROWS_AS(count_bit_errors(a, Bits{0, 1}), InputShapeError);
    CHECK_THROWS_AS(count_bit_errors(Bits{}, Bits{}), InputShapeError);

    Rng rng = make_stream(4, 4);
    Bits x(200000), y(200000);
    for (auto& v : x) v = static_cast<std::uint8_t>(rng() & 1u);
    for (auto& v : y) v = static_cast<std::uint8_t>(rng() & 1u);
    CHECK(std::abs(count_bit_errors(x, y).ber() - 0.5) < 0.01);
}

TEST_CASE("curve csv files") {
    const CcdfCurve c{{0.0, 0.5}, {1.0, 0.25}, 4};
    const auto p = scratch("ccdf.csv");
    write_ccdf_csv(c, p);
    CHECK(slurp(p) == "threshold_db,value,sample_count\n0,1,4\n0.5,0.25,4\n");

    const std::vector<BerPoint> pts{{0.0, 5, 100}, {2.0, 1, 100}};
    const auto q = scratch("ber.csv");
    write_ber_csv(pts, q);
    const auto t = csv::read(q);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.header == std::vector<std::string>{"ebn0_db", "value", "sample_count"});
    CHECK(csv::parse_double(t.rows[0][1]) == 0.05);
    CHECK(t.rows[1][2] == "100");

    CHECK_THROWS_AS(write_ccdf_csv(c, fs::path("/proc/no_such_dir/x.csv")), IoError);
}

TEST_CASE("number formatting round-trips exactly") {
    Rng rng = make_stream(2, 2);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        CHECK(csv::parse_double(csv::format(v)) == v);
    }
    CHECK(csv::format(0.1) == "0.1");
    CHECK(csv::format(static_cast<long long>(-42)) == "-42");
    CHECK_THROWS_AS(csv::parse_double("abc"), InputShapeError);
    CHECK_THROWS_AS(csv::parse_double("1.0x"), InputShapeError);
}
