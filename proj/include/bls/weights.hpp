#pragma once

#include <array>

#include "bls/types.hpp"

namespace bls {

/// Two distinct points in the open upper half-plane.
struct HalfPlanePair {
    Complex z1, z2;
    HalfPlanePair(Complex a, Complex b);
};

/// The invariants of a half-plane pair: eta (real, <= 0 for points in H)
/// and sigma = |z1-z2|^2/|z1-zbar2|^2 in (0,1), with sigma = eta/(eta-1).
struct GeometryInvariants {
    Complex eta;
    double sigma;
};

/// UV cutoff data.  q = pi/(5 sqrt 3) - (1/5) ln(2 delta) + alpha_bar.
struct CutoffConstants {
    double delta = 1e-3;     // minimum loop diameter
    double alpha_bar = 0.0;  // weight of unit-diameter loops around i in H
    double q() const;
};

/// The seven sphere-paired four-point weights, keyed by partition.
struct AlphaSSet {
    double s1_234, s2_134, s3_124, s4_123;  // one point vs the rest (carry Q)
    double s12_34, s13_24, s14_23;          // two vs two (Q-free)
    std::array<double, 7> as_array() const {
        return {s1_234, s2_134, s3_124, s4_123, s12_34, s13_24, s14_23};
    }
};

GeometryInvariants geometry(const HalfPlanePair& p);

/// alpha_H(z1,z2): loop-measure weight of loops in H covering both points.
/// Computed from the sigma form; strictly positive.
double pair_weight_halfplane(const HalfPlanePair& p);

/// Same weight through the eta-route (3F2 at eta plus the 2F1 and log
/// terms).  Agrees with pair_weight_halfplane; kept as the second route.
double pair_weight_halfplane_eta_form(const HalfPlanePair& p);

/// alpha_H(z1|z2): loops in H covering z1 but not z2, at cutoff c.delta.
/// Requires delta <= min(|z1-z2|, |z1-zbar1|/2).
double one_not_other_halfplane(const HalfPlanePair& p, const CutoffConstants& c);

/// Nacu-Werner thinness function in the plane:
/// alpha(z1|z2) = (1/5) ln|z1-z2| + Q.  Symmetric; requires |z1-z2| >= delta.
double nacu_werner(Complex z1, Complex z2, const CutoffConstants& c);

/// alpha_H(z1|z2) + alpha_H(z2|z1) in the eta form.
double thinness_sum_halfplane(const HalfPlanePair& p, const CutoffConstants& c);

/// Cross-ratio x = z12 z34 / (z13 z24).
Complex cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4);

/// The crossing-symmetric function A(x), real-valued on the cut plane.
double a_of_x(Complex x);

/// The seven paired weights from the closed forms.
AlphaSSet alpha_s_closed_form(Complex z1, Complex z2, Complex z3, Complex z4,
                              const CutoffConstants& c);

/// The same weights from the 7x7 linear system (six pair-comparison
/// equations plus the four-point sum rule).  Dense LU solve.
AlphaSSet alpha_s_linear_system(Complex z1, Complex z2, Complex z3, Complex z4,
                                const CutoffConstants& c);

namespace weights_detail {
/// Singular values of the 6x7 pair-comparison system, descending, padded
/// with a trailing zero for the rank-6 check.  The insertion points enter
/// only the right-hand side, so the matrix is configuration independent.
std::array<double, 7> pair_system_singular_values();
}  // namespace weights_detail

}  // namespace bls
