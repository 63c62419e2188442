#pragma once

#include <cstdint>
#include <vector>

#include "bls/correlators.hpp"
#include "bls/types.hpp"

namespace bls {

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(Complex z) const {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
};

enum class Domain { upper_half_plane, plane_box };

struct SoupConfig {
    double intensity = 1.0;
    Domain domain = Domain::plane_box;
    double t_min = 1e-3;
    double t_max = 10.0;
    int steps_per_loop = 1024;  // power of two, >= 64
    Rect window{-5.0, -5.0, 5.0, 5.0};
    std::uint64_t seed = 0;
    int replicas = 100;
    int fill_grid = 256;

    void validate() const;  // throws config_error
    /// Analytic mean loop count per replica:
    /// intensity * area * (1/t_min - 1/t_max) / (2 pi).
    double expected_loop_count() const;
};

/// One sampled Brownian loop: closed discretized path, duration, root,
/// layering sign, and diameter (max pairwise vertex distance).
struct LoopSample {
    Complex root;
    double duration = 0;
    std::vector<Complex> path;  // path.front() == path.back()
    int sign = +1;
    double diameter = 0;
    Rect bbox;
};

/// Sample one replica of the soup.  Loop count is Poisson with mean
/// expected_loop_count(); upper_half_plane discards loops touching the
/// real axis.
std::vector<LoopSample> sample_soup(const SoupConfig& cfg, std::uint64_t replica = 0);

/// True iff z lies in the filled interior of the loop (complement of the
/// unbounded component), via flood fill on a grid over the bounding box.
/// Throws domain_error when z falls on the discretized path.
bool fill_contains(const LoopSample& loop, Complex z, int grid = 256);

struct Estimate {
    double mean = 0;
    double std_error = 0;
    int n_replicas = 0;
};

/// Loop-measure weight of loops covering every point of S and none of Sc:
/// (count per replica)/intensity, averaged over replicas.  A positive
/// min_diameter restricts the event to loops at least that large, giving an
/// exact diameter-cutoff weight.
Estimate estimate_alpha(const SoupConfig& cfg, const std::vector<Complex>& S,
                        const std::vector<Complex>& Sc, double min_diameter = 0.0);

/// The sphere-paired weight alpha(S|Sc) + alpha(Sc|S).
Estimate estimate_alpha_paired(const SoupConfig& cfg, const std::vector<Complex>& S,
                               const std::vector<Complex>& Sc);

struct CorrelatorEstimate {
    double re_mean = 0, re_std_error = 0;
    double im_mean = 0, im_std_error = 0;
    int n_replicas = 0;
};

/// Empirical average of prod_j exp(i beta_j N(z_j)) over replicas.
CorrelatorEstimate estimate_correlator(const SoupConfig& cfg,
                                       const std::vector<Complex>& points,
                                       const ChargeVector& charges);

/// Per-replica correlator products for several point sets evaluated on the
/// same soup (for ratio estimators with jackknife errors).
std::vector<std::vector<Complex>> correlator_replica_samples(
    const SoupConfig& cfg, const std::vector<std::vector<Complex>>& point_sets,
    const ChargeVector& charges);

/// Weight of loops in H with diameter >= 1 whose filled interior contains i.
Estimate estimate_alpha_bar(const SoupConfig& cfg);

}  // namespace bls
