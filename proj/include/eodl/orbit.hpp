#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace eodl {

// Table-I physical defaults
inline constexpr double DEFAULT_EARTH_RADIUS_M = 6'371'000.0;
inline constexpr double DEFAULT_GRAVITY_CONSTANT = 6.673e-11;   // m^3 / (kg s^2)
inline constexpr double DEFAULT_EARTH_MASS_KG = 5.9736e24;
inline constexpr double DEFAULT_LIGHT_SPEED_M_S = 2.997e8;

/// Circular-orbit pass geometry around a spherical Earth with the ground
/// station at sea level.
struct OrbitGeometry {
    double altitude_m = 600'000.0;
    double earth_radius_m = DEFAULT_EARTH_RADIUS_M;
    double min_elevation_rad = 30.0 * std::numbers::pi / 180.0;
    double gravitational_parameter = DEFAULT_GRAVITY_CONSTANT * DEFAULT_EARTH_MASS_KG;
    /// Peak elevation reached during the pass. 90 deg is a zenith pass;
    /// smaller values model a cross-track offset trajectory.
    double max_elevation_rad = std::numbers::pi / 2.0;

    void validate() const;
};

/// Time-sampled satellite-to-station distances over one visibility
/// window: interval_count()+1 samples spanning [0, duration]. A
/// zero-duration window (min elevation 90 deg) yields an empty profile.
struct PassProfile {
    std::vector<double> sample_times_s;
    std::vector<double> distances_m;

    std::size_t interval_count() const {
        return sample_times_s.empty() ? 0 : sample_times_s.size() - 1;
    }
    double duration_s() const {
        return sample_times_s.empty() ? 0.0 : sample_times_s.back();
    }
};

/// Circular orbital velocity sqrt(mu / (R + h)).
double orbital_velocity(const OrbitGeometry& geom);

/// Maximum slant range at the minimum elevation angle:
/// sqrt((R+h)^2 - (R cos e)^2) - R sin e.
double max_slant_range(const OrbitGeometry& geom);

/// Visibility window duration 2 (R+h) / v_orb * asin(d_max cos e / (R+h)).
double visibility_duration(const OrbitGeometry& geom);

/// Uniform time discretization of one pass into `intervals` slices.
/// For the zenith default the central angle sweeps [-beta, +beta] with
/// sin beta = d_max cos e / (R+h); slant distance follows the law of
/// cosines, so the endpoints sit at d_max and (for even interval counts)
/// the temporal midpoint sits exactly at the altitude.
PassProfile pass_distance_profile(const OrbitGeometry& geom, std::size_t intervals);

}  // namespace eodl
