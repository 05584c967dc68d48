#pragma once

#include "noma/constellation.hpp"
#include "noma/rng.hpp"

#include <cstdint>
#include <vector>

namespace noma {

/// One user's downlink: h = g / d with g ~ CN(0, 1), plus the receiver noise variance.
struct LinkState {
    Complex h{};
    double distance = 1.0;
    double noise_var = 1.0;

    double gain() const { return std::norm(h); }
    double snr() const { return std::norm(h) / noise_var; }
};

/// Users sorted by descending channel gain; index 0 is the strongest.
struct UserDrop {
    std::vector<LinkState> links;
    std::uint64_t seed = 0;

    std::size_t size() const { return links.size(); }
};

/// Users closer than this are excluded so the 1/d^2 path loss stays bounded.
inline constexpr double kMinDistance = 1.0;

/// Uniform placement over the annulus kMinDistance <= d <= radius, Rayleigh fading with
/// 1/d^2 path loss. Placement and fading use separate substreams of `seed`.
UserDrop drop_users(int count, double radius, double noise_var, std::uint64_t seed);

/// CN(0, 1) sample.
Complex sample_fading(Rng& rng);

/// i.i.d. CN(0, noise_var): real and imaginary parts each N(0, noise_var / 2).
std::vector<Complex> sample_noise(double noise_var, std::size_t count, Rng& rng);

/// Noise variance for a transmit SNR in dB with unit total transmit power.
double noise_var_from_snr_db(double snr_db);

double db_to_linear(double db);

/// Real channel with |h|^2 / noise_var == snr.
LinkState link_from_snr(double snr, double noise_var = 1.0);

} // namespace noma
