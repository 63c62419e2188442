#pragma once

#include <array>
#include <vector>

#include "bls/types.hpp"
#include "bls/weights.hpp"

namespace bls {

/// Layering charges beta_i (radians) with the soup intensity lambda.
struct ChargeVector {
    std::vector<double> betas;
    double lambda = 1.0;

    /// True when sum(beta) = 0 mod 2pi within tol radians.
    bool conserves_charge(double tol = 1e-9) const;
};

/// All single and pairwise conformal dimensions plus Delta-tilde
/// (the latter only for four charges).
struct Dimensions {
    std::vector<double> delta;                 // Delta_i = (lambda/10)(1-cos beta_i)
    std::vector<std::vector<double>> delta_pair;  // Delta_ij
    double delta_tilde = 0.0;  // Delta_12+per-first-index pairs minus sum Delta_i
};

Dimensions dims(const ChargeVector& c);

/// <O~_beta(z)>_H = |z - zbar|^(-2 Delta).  Requires Im z > 0.
double one_point_halfplane(Complex z, double beta, double lambda);

/// Canonically normalized two-point function in H (tilde normalization).
double two_point_halfplane(const HalfPlanePair& p, const ChargeVector& c);

/// The unnormalized two-point function at explicit cutoff, i.e. the tilde
/// value times (2 delta e^(-5 alpha_bar))^(2(Delta1+Delta2)).
double two_point_halfplane_unnormalized(const HalfPlanePair& p,
                                        const ChargeVector& c,
                                        const CutoffConstants& k);

/// <O O>_C = |z1-z2|^(-4 Delta1).  Requires beta1+beta2 = 0 mod 2pi.
double two_point_plane(Complex z1, Complex z2, const ChargeVector& c);

/// Three-point function in the plane; overall coefficient exactly 1.
double three_point_plane(Complex z1, Complex z2, Complex z3, const ChargeVector& c);

/// Fully general normalized four-point function in the plane.
double four_point_plane(const std::array<Complex, 4>& z, const ChargeVector& c);

enum class GChannel { g21_34, g41_32, g24_31 };

/// The reduced four-point functions of the cross-ratio obtained by sending
/// one insertion to infinity (z1^(2 Delta1) zbar1^(2 Delta1) compensated).
double g_function(Complex x, const ChargeVector& c, GChannel which);

}  // namespace bls
