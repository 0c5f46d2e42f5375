#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "eodl/orbit.hpp"

namespace eodl {

/// Downlink budget inputs. Gains are stored linear; helpers below
/// convert from dBi or derive them from aperture size.
struct LinkBudget {
    double tx_power_w = 10.0;
    double tx_gain_linear = 1.0;
    double rx_gain_linear = 1.0;
    double carrier_hz = 26e9;
    double bandwidth_hz = 500e6;
    double noise_temperature_k = 290.0;
    double noise_figure_db = 0.0;
    double light_speed_m_s = DEFAULT_LIGHT_SPEED_M_S;

    void validate() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

struct ModcodEntry {
    std::string name;
    double spectral_efficiency = 0.0;  // bits/s/Hz
    double min_snr_db = 0.0;           // required Es/N0

    double min_snr_linear() const { return db_to_linear(min_snr_db); }
};

/// Achievable-rate set: entries sorted strictly ascending by required
/// SNR with strictly increasing spectral efficiency. Entries that offer
/// no efficiency gain over a cheaper entry are dropped at construction.
class ModcodTable {
public:
    explicit ModcodTable(std::vector<ModcodEntry> entries);

    const std::vector<ModcodEntry>& entries() const { return entries_; }

    /// The 28 DVB-S2 MODCODs (QPSK 1/4 .. 32APSK 9/10) with ideal
    /// Es/N0 thresholds.
    static ModcodTable dvb_s2_default();

    /// CSV rows: name,spectral_efficiency_bps_per_hz,min_esn0_db
    static ModcodTable from_csv(const std::filesystem::path& path);
    void to_csv(const std::filesystem::path& path) const;

private:
    std::vector<ModcodEntry> entries_;
};

/// Per-interval rates over one pass (Delta t_k, R_k).
struct RateProfile {
    std::vector<double> durations_s;
    std::vector<double> rates_bps;

    void validate() const;
};

/// Aperture gain eta * (pi D f / c)^2, linear.
double antenna_gain(double diameter_m, double efficiency, double frequency_hz,
                    double light_speed_m_s = DEFAULT_LIGHT_SPEED_M_S);

/// k * T_n * B * 10^(N_f/10), watts.
double noise_power(double noise_temperature_k, double bandwidth_hz, double noise_figure_db);

/// Linear SNR at the given slant distance:
/// G_tx G_rx P_tx (c / (4 pi d f))^2 / noise_power.
double snr(const LinkBudget& link, double distance_m);

/// Highest achievable rate at the given SNR: B times the spectral
/// efficiency of the best entry whose threshold is met; zero in outage.
double modcod_rate(const ModcodTable& table, double snr_linear, double bandwidth_hz);

/// B log2(1 + snr).
double shannon_rate(double snr_linear, double bandwidth_hz);

/// Linear SNR per interval, evaluated at the midpoint distance
/// (arithmetic mean of the interval's endpoint samples).
std::vector<double> interval_midpoint_snrs(const LinkBudget& link, const PassProfile& pass);

/// One achievable rate per interval of the pass.
RateProfile rate_profile(const LinkBudget& link, const PassProfile& pass,
                         const ModcodTable& table);

/// Total bits deliverable over the pass: sum of R_k * Delta t_k.
double orbit_capacity(const RateProfile& profile);

}  // namespace eodl
