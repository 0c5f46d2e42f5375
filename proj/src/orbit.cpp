#include "eodl/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eodl {

namespace {

constexpr double HALF_PI = std::numbers::pi / 2.0;

double slant_distance(double earth_radius, double orbit_radius, double central_angle) {
    // law of cosines in the Earth-center / station / satellite triangle
    return std::sqrt(earth_radius * earth_radius + orbit_radius * orbit_radius -
                     2.0 * earth_radius * orbit_radius * std::cos(central_angle));
}

// Central angle between station and sub-satellite point when the
// satellite is seen at the given elevation.
double central_angle_at_elevation(const OrbitGeometry& geom, double elevation_rad) {
    const double orbit_radius = geom.earth_radius_m + geom.altitude_m;
    return std::acos(geom.earth_radius_m * std::cos(elevation_rad) / orbit_radius) -
           elevation_rad;
}

}  // namespace

void OrbitGeometry::validate() const {
    if (!(altitude_m > 0.0)) throw std::invalid_argument("altitude must be positive");
    if (!(earth_radius_m > 0.0)) throw std::invalid_argument("earth radius must be positive");
    if (!(min_elevation_rad >= 0.0 && min_elevation_rad <= HALF_PI)) {
        throw std::invalid_argument("min elevation must lie in [0, pi/2]");
    }
    if (!(gravitational_parameter > 0.0)) {
        throw std::invalid_argument("gravitational parameter must be positive");
    }
    if (!(max_elevation_rad >= min_elevation_rad && max_elevation_rad <= HALF_PI)) {
        throw std::invalid_argument("max elevation must lie in [min elevation, pi/2]");
    }
}

double orbital_velocity(const OrbitGeometry& geom) {
    geom.validate();
    return std::sqrt(geom.gravitational_parameter / (geom.earth_radius_m + geom.altitude_m));
}

double max_slant_range(const OrbitGeometry& geom) {
    geom.validate();
    const double orbit_radius = geom.earth_radius_m + geom.altitude_m;
    const double cos_e = std::cos(geom.min_elevation_rad);
    const double sin_e = std::sin(geom.min_elevation_rad);
    return std::sqrt(orbit_radius * orbit_radius -
                     geom.earth_radius_m * geom.earth_radius_m * cos_e * cos_e) -
           geom.earth_radius_m * sin_e;
}

double visibility_duration(const OrbitGeometry& geom) {
    geom.validate();
    const double orbit_radius = geom.earth_radius_m + geom.altitude_m;
    const double beta =
        std::asin(max_slant_range(geom) * std::cos(geom.min_elevation_rad) / orbit_radius);
    return 2.0 * orbit_radius / orbital_velocity(geom) * beta;
}

PassProfile pass_distance_profile(const OrbitGeometry& geom, std::size_t intervals) {
    geom.validate();
    if (intervals == 0) throw std::invalid_argument("interval count must be at least 1");

    const double orbit_radius = geom.earth_radius_m + geom.altitude_m;
    const double beta =
        std::asin(max_slant_range(geom) * std::cos(geom.min_elevation_rad) / orbit_radius);

    // cross-track offset: zero for the zenith default
    const double offset = central_angle_at_elevation(geom, geom.max_elevation_rad);
    const double cos_phi_max =
        offset > 0.0 ? std::min(1.0, std::cos(beta) / std::cos(offset)) : std::cos(beta);
    const double phi_max = std::acos(std::clamp(cos_phi_max, -1.0, 1.0));

    const double duration = 2.0 * orbit_radius / orbital_velocity(geom) * phi_max;

    PassProfile profile;
    if (duration <= 0.0) return profile;  // zenith-only visibility: empty profile

    const std::size_t n = intervals;
    profile.sample_times_s.resize(n + 1);
    profile.distances_m.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(n);
        const double phi = -phi_max + 2.0 * phi_max * frac;
        // total central angle combines along-track phi with the fixed offset
        const double cos_alpha = std::cos(offset) * std::cos(phi);
        const double alpha = std::acos(std::clamp(cos_alpha, -1.0, 1.0));
        profile.sample_times_s[k] = frac * duration;
        profile.distances_m[k] = slant_distance(geom.earth_radius_m, orbit_radius, alpha);
    }
    // pin the endpoints; accumulated rounding must not push past duration
    profile.sample_times_s.back() = duration;
    return profile;
}

}  // namespace eodl
