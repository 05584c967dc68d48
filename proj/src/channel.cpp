#include "noma/channel.hpp"

#include "noma/errors.hpp"

#include <algorithm>
#include <cmath>

namespace noma {

Complex sample_fading(Rng& rng)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

std::vector<Complex> sample_noise(double noise_var, std::size_t count, Rng& rng)
{
    if (!(noise_var > 0.0))
        throw ParameterError("noise variance must be positive");
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise_var / 2.0));
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        out.emplace_back(re, im);
    }
    return out;
}

UserDrop drop_users(int count, double radius, double noise_var, std::uint64_t seed)
{
    if (count < 2)
        throw ParameterError("a drop needs at least two users");
    if (!(radius > kMinDistance))
        throw ParameterError("cell radius must exceed the minimum distance");
    if (!(noise_var > 0.0))
        throw ParameterError("noise variance must be positive");

    auto placement = make_rng(seed, Stream::Placement);
    auto fading = make_rng(seed, Stream::Fading);
    // d^2 uniform on [dmin^2, r^2] gives a uniform density over the annulus.
    std::uniform_real_distribution<double> area(kMinDistance * kMinDistance, radius * radius);

    UserDrop drop;
    drop.seed = seed;
    drop.links.reserve(static_cast<std::size_t>(count));
    for (int u = 0; u < count; ++u) {
        const double d = std::sqrt(area(placement));
        const Complex g = sample_fading(fading);
        drop.links.push_back({g / d, d, noise_var});
    }
    std::stable_sort(drop.links.begin(), drop.links.end(),
                     [](const LinkState& a, const LinkState& b) { return a.gain() > b.gain(); });
    return drop;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double noise_var_from_snr_db(double snr_db) { return 1.0 / db_to_linear(snr_db); }

LinkState link_from_snr(double snr, double noise_var)
{
    if (!(snr >= 0.0) || !(noise_var > 0.0))
        throw ParameterError("link needs snr >= 0 and positive noise variance");
    return {Complex(std::sqrt(snr * noise_var), 0.0), 1.0, noise_var};
}

} // namespace noma
