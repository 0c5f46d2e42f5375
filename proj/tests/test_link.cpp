#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "eodl/link.hpp"
#include "eodl/orbit.hpp"

using namespace eodl;

namespace {

LinkBudget table_link(double noise_figure_db = 0.0) {
    LinkBudget link;
    link.tx_gain_linear = db_to_linear(32.13);
    link.rx_gain_linear = db_to_linear(34.2);
    link.noise_figure_db = noise_figure_db;
    return link;
}

OrbitGeometry table_orbit(double min_elevation_deg) {
    OrbitGeometry geom;
    geom.min_elevation_rad = min_elevation_deg * std::numbers::pi / 180.0;
    return geom;
}

double capacity_at(double min_elevation_deg, double noise_figure_db) {
    const PassProfile pass = pass_distance_profile(table_orbit(min_elevation_deg), 1000);
    const RateProfile rates =
        rate_profile(table_link(noise_figure_db), pass, ModcodTable::dvb_s2_default());
    return orbit_capacity(rates);
}

}  // namespace

TEST_CASE("aperture gain matches the independent evaluation and the quoted gateway gain") {
    const double gain = antenna_gain(0.26, 0.55, 26e9);
    const double gain_db = linear_to_db(gain);
    CHECK(gain_db == doctest::Approx(34.41182340874494).epsilon(1e-12));
    CHECK(std::abs(gain_db - 34.2) < 0.3);
}

TEST_CASE("doubling the dish diameter adds about 6 dB") {
    const double g1 = linear_to_db(antenna_gain(0.26, 0.55, 26e9));
    const double g2 = linear_to_db(antenna_gain(0.52, 0.55, 26e9));
    CHECK(g2 - g1 == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("unit aperture term gives unit gain") {
    // pi D f / c = 1 with full efficiency
    const double c = DEFAULT_LIGHT_SPEED_M_S;
    const double f = c / std::numbers::pi;
    CHECK(antenna_gain(1.0, 1.0, f, c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("noise power at 290 K and 500 MHz is kTB") {
    const double n = noise_power(290.0, 500e6, 0.0);
    CHECK(n == doctest::Approx(2.001e-12).epsilon(1e-12));
    const double dbm = 10.0 * std::log10(n * 1000.0);
    CHECK(std::abs(dbm - (-86.99)) < 0.01);
}

TEST_CASE("a 3.0103 dB noise figure doubles the noise power") {
    const double base = noise_power(290.0, 500e6, 0.0);
    CHECK(noise_power(290.0, 500e6, 3.0103) / base == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("noise power is linear in bandwidth") {
    CHECK(noise_power(290.0, 1e9, 1.5) ==
          doctest::Approx(2.0 * noise_power(290.0, 500e6, 1.5)).epsilon(1e-12));
}

TEST_CASE("snr at the 30-degree maximum range matches the dB chain") {
    const double gamma = snr(table_link(), 1075.3e3);
    CHECK(linear_to_db(gamma) == doctest::Approx(11.937006816624045).epsilon(1e-12));
    CHECK(std::abs(linear_to_db(gamma) - 11.9) < 0.2);
}

TEST_CASE("snr follows the inverse-square law exactly") {
    const LinkBudget link = table_link();
    CHECK(snr(link, 500e3) / snr(link, 1000e3) == doctest::Approx(4.0).epsilon(1e-12));
    // snr * d^2 constant across distances
    const double ref = snr(link, 700e3) * 700e3 * 700e3;
    for (double d : {300e3, 900e3, 2100e3}) {
        CHECK(snr(link, d) * d * d == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("snr is linear in transmit power") {
    LinkBudget link = table_link();
    const double base = snr(link, 800e3);
    link.tx_power_w *= 2.0;
    CHECK(snr(link, 800e3) == doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("modcod rate selects by threshold with boundary inclusion") {
    const ModcodTable table = ModcodTable::dvb_s2_default();
    const double B = 500e6;

    // below the lowest threshold: outage
    CHECK(modcod_rate(table, db_to_linear(-2.36), B) == 0.0);

    // exactly at a threshold: that entry is selected
    for (const auto& entry : table.entries()) {
        CHECK(modcod_rate(table, entry.min_snr_linear(), B) ==
              entry.spectral_efficiency * B);
    }

    // far above everything: the top entry
    CHECK(modcod_rate(table, 1e12, B) == doctest::Approx(4.453027 * B).epsilon(1e-12));
}

TEST_CASE("modcod rate is a non-decreasing right-continuous step function") {
    const ModcodTable table = ModcodTable::dvb_s2_default();
    const double B = 1e6;
    double prev = -1.0;
    for (double db = -5.0; db <= 20.0; db += 0.01) {
        const double r = modcod_rate(table, db_to_linear(db), B);
        CHECK(r >= prev);
        prev = r;
    }
    const double thr = table.entries()[7].min_snr_linear();
    CHECK(modcod_rate(table, thr * (1.0 - 1e-12), B) < modcod_rate(table, thr, B));
    CHECK(modcod_rate(table, thr * (1.0 + 1e-12), B) == modcod_rate(table, thr, B));
}

TEST_CASE("default table is a strict staircase below Shannon") {
    const ModcodTable table = ModcodTable::dvb_s2_default();
    CHECK(table.entries().size() == 22);  // 6 of the 28 are dominated
    double prev_snr = -1e9;
    double prev_eff = 0.0;
    for (const auto& e : table.entries()) {
        CHECK(e.min_snr_db > prev_snr);
        CHECK(e.spectral_efficiency > prev_eff);
        // every entry decodable at its own threshold
        CHECK(e.spectral_efficiency < std::log2(1.0 + e.min_snr_linear()));
        prev_snr = e.min_snr_db;
        prev_eff = e.spectral_efficiency;
    }
}

TEST_CASE("modcod csv round-trips and rejects dominated or malformed rows") {
    const auto dir = std::filesystem::temp_directory_path() / "eodl_link_test";
    std::filesystem::create_directories(dir);

    const ModcodTable table = ModcodTable::dvb_s2_default();
    const auto csv = dir / "modcods.csv";
    table.to_csv(csv);
    const ModcodTable loaded = ModcodTable::from_csv(csv);
    REQUIRE(loaded.entries().size() == table.entries().size());
    for (std::size_t i = 0; i < table.entries().size(); ++i) {
        CHECK(loaded.entries()[i].name == table.entries()[i].name);
        CHECK(loaded.entries()[i].spectral_efficiency ==
              table.entries()[i].spectral_efficiency);
        CHECK(loaded.entries()[i].min_snr_db == table.entries()[i].min_snr_db);
    }

    const auto dominated = dir / "dominated.csv";
    {
        std::ofstream out(dominated);
        out << "name,spectral_efficiency_bps_per_hz,min_esn0_db\n";
        out << "good-low,1.0,0.0\n";
        out << "dominated,0.9,1.0\n";
        out << "good-high,2.0,2.0\n";
    }
    const ModcodTable pruned = ModcodTable::from_csv(dominated);
    REQUIRE(pruned.entries().size() == 2);
    CHECK(pruned.entries()[0].name == "good-low");
    CHECK(pruned.entries()[1].name == "good-high");

    const auto malformed = dir / "malformed.csv";
    {
        std::ofstream out(malformed);
        out << "only-one-field\n";
    }
    CHECK_THROWS_AS(ModcodTable::from_csv(malformed), std::runtime_error);
    CHECK_THROWS_AS(ModcodTable(std::vector<ModcodEntry>{}), std::invalid_argument);
}

TEST_CASE("shannon rate closed forms") {
    CHECK(shannon_rate(0.0, 500e6) == 0.0);
    CHECK(shannon_rate(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shannon_rate(3.0, 500e6) == doctest::Approx(1e9).epsilon(1e-12));
}

TEST_CASE("rate profile over a constant-distance window is constant") {
    PassProfile pass;
    for (int k = 0; k <= 10; ++k) {
        pass.sample_times_s.push_back(k * 1.0);
        pass.distances_m.push_back(900e3);
    }
    const RateProfile rates =
        rate_profile(table_link(), pass, ModcodTable::dvb_s2_default());
    REQUIRE(rates.rates_bps.size() == 10);
    for (double r : rates.rates_bps) CHECK(r == rates.rates_bps.front());
}

TEST_CASE("zenith rate profile is symmetric, peaks centrally and stays below Shannon") {
    const LinkBudget link = table_link();
    const PassProfile pass = pass_distance_profile(table_orbit(30.0), 500);
    const ModcodTable table = ModcodTable::dvb_s2_default();
    const RateProfile rates = rate_profile(link, pass, table);
    const std::vector<double> snrs = interval_midpoint_snrs(link, pass);

    const std::size_t n = rates.rates_bps.size();
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(rates.rates_bps[k] == rates.rates_bps[n - 1 - k]);
        CHECK(rates.rates_bps[k] <= shannon_rate(snrs[k], link.bandwidth_hz));
        peak = std::max(peak, rates.rates_bps[k]);
    }
    CHECK(rates.rates_bps[n / 2] == peak);
}

TEST_CASE("orbit capacity closed forms and linearity") {
    RateProfile constant;
    for (int k = 0; k < 10; ++k) {
        constant.durations_s.push_back(10.0);
        constant.rates_bps.push_back(1e9);
    }
    CHECK(orbit_capacity(constant) == doctest::Approx(100e9).epsilon(1e-12));

    RateProfile outage = constant;
    for (double& r : outage.rates_bps) r = 0.0;
    CHECK(orbit_capacity(outage) == 0.0);

    RateProfile doubled = constant;
    for (double& dt : doubled.durations_s) dt *= 2.0;
    CHECK(orbit_capacity(doubled) ==
          doctest::Approx(2.0 * orbit_capacity(constant)).epsilon(1e-12));
}

TEST_CASE("pass capacity matches the independent evaluation") {
    CHECK(capacity_at(30.0, 0.0) == doctest::Approx(502231493647.13824).epsilon(1e-9));
    CHECK(capacity_at(5.0, 0.0) == doctest::Approx(935567382512.3458).epsilon(1e-9));
}

TEST_CASE("capacity decreases strictly in elevation and noise figure") {
    for (double nf : {0.0, 1.0, 1.5, 2.0, 2.5}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double eps : {5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
            const double c = capacity_at(eps, nf);
            CHECK(c < prev);
            prev = c;
        }
    }
    for (double eps : {5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double nf : {0.0, 1.0, 1.5, 2.0, 2.5}) {
            const double c = capacity_at(eps, nf);
            CHECK(c < prev);
            prev = c;
        }
    }
}
