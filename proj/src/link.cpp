#include "eodl/link.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eodl/numeric.hpp"

namespace eodl {

namespace {

constexpr double BOLTZMANN = 1.38e-23;  // J/K

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void LinkBudget::validate() const {
    require(tx_power_w > 0.0, "tx power must be positive");
    require(tx_gain_linear > 0.0 && rx_gain_linear > 0.0, "antenna gains must be positive");
    require(carrier_hz > 0.0, "carrier frequency must be positive");
    require(bandwidth_hz > 0.0, "bandwidth must be positive");
    require(noise_temperature_k > 0.0, "noise temperature must be positive");
    require(noise_figure_db >= 0.0, "noise figure must be non-negative");
    require(light_speed_m_s > 0.0, "light speed must be positive");
}

ModcodTable::ModcodTable(std::vector<ModcodEntry> entries) {
    require(!entries.empty(), "MODCOD table must not be empty");
    for (const auto& e : entries) {
        require(e.spectral_efficiency > 0.0,
                "MODCOD spectral efficiency must be positive: " + e.name);
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ModcodEntry& a, const ModcodEntry& b) {
                         if (a.min_snr_db != b.min_snr_db) return a.min_snr_db < b.min_snr_db;
                         return a.spectral_efficiency > b.spectral_efficiency;
                     });
    // keep only entries that raise the efficiency staircase; anything else
    // costs more SNR for no gain and can never be selected
    for (auto& e : entries) {
        if (!entries_.empty() && e.spectral_efficiency <= entries_.back().spectral_efficiency) {
            continue;
        }
        entries_.push_back(std::move(e));
    }
}

ModcodTable ModcodTable::dvb_s2_default() {
    // EN 302 307 normal-FECFRAME spectral efficiencies and ideal Es/N0
    return ModcodTable({
        {"QPSK 1/4", 0.490243, -2.35},   {"QPSK 1/3", 0.656448, -1.24},
        {"QPSK 2/5", 0.789412, -0.30},   {"QPSK 1/2", 0.988858, 1.00},
        {"QPSK 3/5", 1.188304, 2.23},    {"QPSK 2/3", 1.322253, 3.10},
        {"QPSK 3/4", 1.487473, 4.03},    {"QPSK 4/5", 1.587196, 4.68},
        {"QPSK 5/6", 1.654663, 5.18},    {"QPSK 8/9", 1.766451, 6.20},
        {"QPSK 9/10", 1.788612, 6.42},   {"8PSK 3/5", 1.779991, 5.50},
        {"8PSK 2/3", 1.980636, 6.62},    {"8PSK 3/4", 2.228124, 7.91},
        {"8PSK 5/6", 2.478562, 9.35},    {"8PSK 8/9", 2.646012, 10.69},
        {"8PSK 9/10", 2.679207, 10.98},  {"16APSK 2/3", 2.637201, 8.97},
        {"16APSK 3/4", 2.966728, 10.21}, {"16APSK 4/5", 3.165623, 11.03},
        {"16APSK 5/6", 3.300184, 11.61}, {"16APSK 8/9", 3.523143, 12.89},
        {"16APSK 9/10", 3.567342, 13.13},{"32APSK 3/4", 3.703295, 12.73},
        {"32APSK 4/5", 3.951571, 13.64}, {"32APSK 5/6", 4.119540, 14.28},
        {"32APSK 8/9", 4.397854, 15.69}, {"32APSK 9/10", 4.453027, 16.05},
    });
}

ModcodTable ModcodTable::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MODCOD CSV: " + path.string());
    std::vector<ModcodEntry> entries;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string name, eff_s, snr_s;
        if (!std::getline(row, name, ',') || !std::getline(row, eff_s, ',') ||
            !std::getline(row, snr_s)) {
            throw std::runtime_error("malformed MODCOD CSV row: " + line);
        }
        if (first && name == "name") {  // optional header row
            first = false;
            continue;
        }
        first = false;
        try {
            entries.push_back(ModcodEntry{name, std::stod(eff_s), std::stod(snr_s)});
        } catch (const std::exception&) {
            throw std::runtime_error("malformed MODCOD CSV row: " + line);
        }
    }
    return ModcodTable(std::move(entries));
}

void ModcodTable::to_csv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write MODCOD CSV: " + path.string());
    out << "name,spectral_efficiency_bps_per_hz,min_esn0_db\n";
    char buf[160];
    for (const auto& e : entries_) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g\n", e.name.c_str(),
                      e.spectral_efficiency, e.min_snr_db);
        out << buf;
    }
}

void RateProfile::validate() const {
    require(durations_s.size() == rates_bps.size(),
            "rate profile durations and rates must have equal length");
    for (double dt : durations_s) require(dt > 0.0, "interval durations must be positive");
    for (double r : rates_bps) require(r >= 0.0, "rates must be non-negative");
}

double antenna_gain(double diameter_m, double efficiency, double frequency_hz,
                    double light_speed_m_s) {
    require(diameter_m > 0.0 && frequency_hz > 0.0 && light_speed_m_s > 0.0,
            "antenna gain arguments must be positive");
    require(efficiency > 0.0 && efficiency <= 1.0, "antenna efficiency must lie in (0, 1]");
    const double x = std::numbers::pi * diameter_m * frequency_hz / light_speed_m_s;
    return efficiency * x * x;
}

double noise_power(double noise_temperature_k, double bandwidth_hz, double noise_figure_db) {
    require(noise_temperature_k > 0.0 && bandwidth_hz > 0.0,
            "noise temperature and bandwidth must be positive");
    require(noise_figure_db >= 0.0, "noise figure must be non-negative");
    return BOLTZMANN * noise_temperature_k * bandwidth_hz * db_to_linear(noise_figure_db);
}

double snr(const LinkBudget& link, double distance_m) {
    link.validate();
    require(distance_m > 0.0, "distance must be positive");
    const double wavelength_term =
        link.light_speed_m_s / (4.0 * std::numbers::pi * distance_m * link.carrier_hz);
    const double received =
        link.tx_gain_linear * link.rx_gain_linear * link.tx_power_w * wavelength_term *
        wavelength_term;
    return received /
           noise_power(link.noise_temperature_k, link.bandwidth_hz, link.noise_figure_db);
}

double modcod_rate(const ModcodTable& table, double snr_linear, double bandwidth_hz) {
    require(bandwidth_hz > 0.0, "bandwidth must be positive");
    double best = 0.0;  // outage when no threshold is met
    for (const auto& e : table.entries()) {
        if (snr_linear >= e.min_snr_linear()) {
            best = e.spectral_efficiency * bandwidth_hz;
        } else {
            break;  // entries are sorted by threshold
        }
    }
    return best;
}

double shannon_rate(double snr_linear, double bandwidth_hz) {
    require(snr_linear >= 0.0, "SNR must be non-negative");
    require(bandwidth_hz > 0.0, "bandwidth must be positive");
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

std::vector<double> interval_midpoint_snrs(const LinkBudget& link, const PassProfile& pass) {
    std::vector<double> snrs(pass.interval_count());
    for (std::size_t k = 0; k < snrs.size(); ++k) {
        const double mid = 0.5 * (pass.distances_m[k] + pass.distances_m[k + 1]);
        snrs[k] = snr(link, mid);
    }
    return snrs;
}

RateProfile rate_profile(const LinkBudget& link, const PassProfile& pass,
                         const ModcodTable& table) {
    RateProfile profile;
    const std::size_t n = pass.interval_count();
    profile.durations_s.resize(n);
    profile.rates_bps.resize(n);
    const std::vector<double> snrs = interval_midpoint_snrs(link, pass);
    for (std::size_t k = 0; k < n; ++k) {
        profile.durations_s[k] = pass.sample_times_s[k + 1] - pass.sample_times_s[k];
        profile.rates_bps[k] = modcod_rate(table, snrs[k], link.bandwidth_hz);
    }
    profile.validate();
    return profile;
}

double orbit_capacity(const RateProfile& profile) {
    profile.validate();
    CompensatedSum total;
    for (std::size_t k = 0; k < profile.rates_bps.size(); ++k) {
        total.add(profile.rates_bps[k] * profile.durations_s[k]);
    }
    return total.value();
}

}  // namespace eodl
