#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace noma {

using Complex = std::complex<double>;

/// Power-weighted square QAM alphabet. Points are the unit-energy grid scaled by
/// sqrt(power_weight), so the mean symbol energy equals power_weight.
struct Constellation {
    std::vector<Complex> points;
    int order = 0;
    double power_weight = 0.0;

    std::size_t size() const { return points.size(); }
    double mean_energy() const;
};

/// Axis-aligned decision cell [re_lo, re_hi) x [im_lo, im_hi). Outer edges are infinite.
struct DecisionRegion {
    double re_lo, re_hi, im_lo, im_hi;

    bool contains(Complex z) const
    {
        return z.real() >= re_lo && z.real() < re_hi && z.imag() >= im_lo && z.imag() < im_hi;
    }
};

/// Superposition set chi_k (+) chi_n. Point m = i * |chi_n| + l is s_k(i) + s_n(l).
struct CompositeConstellation {
    std::vector<Complex> points;
    Constellation parent_k;
    Constellation parent_n;
    std::vector<DecisionRegion> regions;

    std::size_t size() const { return points.size(); }
    std::size_t index(std::size_t i, std::size_t l) const { return i * parent_n.size() + l; }
};

inline constexpr double kGridSnapTolerance = 1e-9;
inline constexpr double kDegeneracyThreshold = 1e-9;

/// Square M-QAM, M in {4, 16, 64}, with mean |s|^2 == power_weight.
Constellation make_qam(int order, double power_weight);

/// Builds the composite set with decision regions. Throws DegenerateConstellationError
/// when two sums coincide.
CompositeConstellation superpose(const Constellation& ck, const Constellation& cn);

/// All pairwise sums a(i) + b(l), ordered i-major.
std::vector<Complex> minkowski_sum(std::span<const Complex> a, std::span<const Complex> b);

/// Nearest-neighbour cells of a Cartesian grid: boundaries sit at midpoints of adjacent
/// coordinate levels. Throws NonRectangularRegionsError for non-grid sets.
std::vector<DecisionRegion> decision_regions(std::span<const Complex> points);

/// Indices of the points strictly inside the first quadrant (M/4 of them for QAM).
std::vector<std::size_t> first_quadrant_indices(const Constellation& c);

double min_pairwise_distance(std::span<const Complex> points);

} // namespace noma
