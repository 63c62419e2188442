#include "bls/weights.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "bls/specfun.hpp"
#include "bls/series.hpp"

namespace bls {

HalfPlanePair::HalfPlanePair(Complex a, Complex b) : z1(a), z2(b) {
    if (z1.imag() <= 0.0 || z2.imag() <= 0.0)
        throw domain_error("HalfPlanePair: points must lie in the open upper half-plane");
    if (z1 == z2) throw domain_error("HalfPlanePair: coincident points");
}

double CutoffConstants::q() const {
    return kPi / (5.0 * std::sqrt(3.0)) - std::log(2.0 * delta) / 5.0 + alpha_bar;
}

GeometryInvariants geometry(const HalfPlanePair& p) {
    Complex num = (p.z1 - p.z2) * (std::conj(p.z1) - std::conj(p.z2));
    Complex den = (p.z1 - std::conj(p.z1)) * (p.z2 - std::conj(p.z2));
    Complex eta = num / den;
    double sigma = std::norm(p.z1 - p.z2) / std::norm(p.z1 - std::conj(p.z2));
    return {eta, sigma};
}

double pair_weight_halfplane(const HalfPlanePair& p) {
    double sigma = geometry(p).sigma;
    Complex f = hyp3f2_special(Complex(1.0 - sigma, 0));
    return -(std::log(sigma) + (1.0 - sigma) * f.real()) / 10.0;
}

double pair_weight_halfplane_eta_form(const HalfPlanePair& p) {
    Complex eta = geometry(p).eta;
    // eta is real and <= 0 here; every factor below is real.
    double e = eta.real();
    double f3 = hyp3f2_special(Complex(e, 0)).real();
    double f2 = hyp2f1(Complex(1, 0), Complex(2.0 / 3.0, 0), Complex(4.0 / 3.0, 0),
                       Complex(e, 0))
                    .real();
    double g23 = gamma(Complex(2.0 / 3.0, 0)).real();
    double g43 = gamma(Complex(4.0 / 3.0, 0)).real();
    double ee1 = e * (e - 1.0);  // positive
    return -kPi / (5.0 * std::sqrt(3.0)) - e * f3 / 10.0 - std::log(ee1) / 10.0 +
           g23 * g23 / (5.0 * g43) * std::cbrt(ee1) * f2;
}

double one_not_other_halfplane(const HalfPlanePair& p, const CutoffConstants& c) {
    double d12 = std::abs(p.z1 - p.z2);
    double h1 = std::abs(p.z1 - std::conj(p.z1));
    if (c.delta > std::min(d12, h1 / 2.0))
        throw domain_error("one_not_other_halfplane: cutoff delta exceeds min(|z1-z2|, |z1-zbar1|/2)");
    return -pair_weight_halfplane(p) + std::log(h1) / 5.0 -
           std::log(2.0 * c.delta) / 5.0 + c.alpha_bar;
}

double nacu_werner(Complex z1, Complex z2, const CutoffConstants& c) {
    double d = std::abs(z1 - z2);
    if (d < c.delta)
        throw domain_error("nacu_werner: |z1-z2| below cutoff delta");
    return std::log(d) / 5.0 + c.q();
}

double thinness_sum_halfplane(const HalfPlanePair& p, const CutoffConstants& c) {
    double d12 = std::abs(p.z1 - p.z2);
    double h1 = std::abs(p.z1 - std::conj(p.z1));
    double h2 = std::abs(p.z2 - std::conj(p.z2));
    if (c.delta > std::min({d12, h1 / 2.0, h2 / 2.0}))
        throw domain_error("thinness_sum_halfplane: cutoff delta too large");
    double e = geometry(p).eta.real();
    double f3 = hyp3f2_special(Complex(e, 0)).real();
    double f2 = hyp2f1(Complex(1, 0), Complex(2.0 / 3.0, 0), Complex(4.0 / 3.0, 0),
                       Complex(e, 0))
                    .real();
    double g23 = gamma(Complex(2.0 / 3.0, 0)).real();
    double g43 = gamma(Complex(4.0 / 3.0, 0)).real();
    double ee1 = e * (e - 1.0);
    // log(eta (z1-zbar2)(z2-zbar1)) = log(-eta |z1-zbar2|^2), positive argument
    double logarg = -e * std::norm(p.z1 - std::conj(p.z2));
    return -(-e * f3 + 2.0 * g23 * g23 / g43 * std::cbrt(ee1) * f2 -
             std::log(logarg)) /
               5.0 +
           2.0 * c.q();
}

Complex cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4) {
    if (z1 == z2 || z1 == z3 || z1 == z4 || z2 == z3 || z2 == z4 || z3 == z4)
        throw domain_error("cross_ratio: coincident points");
    return (z1 - z2) * (z3 - z4) / ((z1 - z3) * (z2 - z4));
}

double a_of_x(Complex x) {
    Complex f3 = hyp3f2_special(x);
    Complex f2 = hyp2f1(Complex(2.0 / 3.0, 0), Complex(1, 0), Complex(4.0 / 3.0, 0), x);
    double first = (x * f3).real() / 2.0;  // (x F3(x) + conj)/4
    double second = a_cross_constant() *
                    std::pow(std::abs(x * (1.0 - x)), 2.0 / 3.0) * std::norm(f2);
    return first - second;
}

namespace {

double log_abs(Complex z) { return std::log(std::abs(z)); }

void check_four_points(Complex z1, Complex z2, Complex z3, Complex z4,
                       const CutoffConstants& c) {
    std::array<Complex, 4> z{z1, z2, z3, z4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (z[i] == z[j]) throw domain_error("alpha_s: coincident points");
            if (std::abs(z[i] - z[j]) < c.delta)
                throw domain_error("alpha_s: point separation below cutoff delta");
        }
}

}  // namespace

AlphaSSet alpha_s_closed_form(Complex z1, Complex z2, Complex z3, Complex z4,
                              const CutoffConstants& c) {
    check_four_points(z1, z2, z3, z4, c);
    Complex x = cross_ratio(z1, z2, z3, z4);
    double A = a_of_x(x);
    double Q = c.q();
    AlphaSSet s{};
    s.s1_234 = (log_abs((z1 - z2) * (z1 - z4) / (z2 - z4)) + A) / 5.0 + Q;
    s.s2_134 = (log_abs((z1 - z2) * (z2 - z3) / (z1 - z3)) + A) / 5.0 + Q;
    s.s3_124 = (log_abs((z2 - z3) * (z3 - z4) / (z2 - z4)) + A) / 5.0 + Q;
    s.s4_123 = (log_abs((z1 - z4) * (z3 - z4) / (z1 - z3)) + A) / 5.0 + Q;
    s.s12_34 = -(std::log(std::abs(x)) + A) / 5.0;
    s.s13_24 = -A / 5.0;
    s.s14_23 = -(std::log(std::abs(1.0 - x)) + A) / 5.0;
    return s;
}

namespace {

// Rows of the pair-comparison system: unknowns ordered
// [s1_234, s2_134, s3_124, s4_123, s12_34, s13_24, s14_23].
// Row for pair (i,j): the two one-vs-rest weights of i and j plus the two
// two-vs-two partitions separating i from j.
const int kPairRows[6][4] = {
    {0, 1, 5, 6},  // (1,2): {13|24}, {14|23}
    {0, 2, 4, 6},  // (1,3): {12|34}, {14|23}
    {0, 3, 4, 5},  // (1,4): {12|34}, {13|24}
    {1, 2, 4, 5},  // (2,3): {12|34}, {13|24}
    {1, 3, 4, 6},  // (2,4): {12|34}, {14|23}
    {2, 3, 5, 6},  // (3,4): {13|24}, {14|23}
};
const int kPairIdx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

Eigen::Matrix<double, 6, 7> pair_system_matrix() {
    Eigen::Matrix<double, 6, 7> M = Eigen::Matrix<double, 6, 7>::Zero();
    for (int r = 0; r < 6; ++r)
        for (int k = 0; k < 4; ++k) M(r, kPairRows[r][k]) = 1.0;
    return M;
}

}  // namespace

AlphaSSet alpha_s_linear_system(Complex z1, Complex z2, Complex z3, Complex z4,
                                const CutoffConstants& c) {
    check_four_points(z1, z2, z3, z4, c);
    std::array<Complex, 4> z{z1, z2, z3, z4};
    Complex x = cross_ratio(z1, z2, z3, z4);
    double A = a_of_x(x);
    double Q = c.q();

    Eigen::Matrix<double, 7, 7> M = Eigen::Matrix<double, 7, 7>::Zero();
    Eigen::Matrix<double, 7, 1> rhs;
    M.topRows<6>() = pair_system_matrix();
    for (int r = 0; r < 6; ++r) {
        Complex zij = z[kPairIdx[r][0]] - z[kPairIdx[r][1]];
        rhs(r) = 2.0 / 5.0 * std::log(std::abs(zij)) + 2.0 * Q;
    }
    // Four-point sum rule with P = 2/5 and R = 0.
    for (int k = 0; k < 4; ++k) M(6, k) = 1.0;
    rhs(6) = 2.0 / 5.0 * (std::log(std::abs(x * (z2 - z3) * (z1 - z4))) + 2.0 * A) +
             4.0 * Q;

    Eigen::PartialPivLU<Eigen::Matrix<double, 7, 7>> lu(M);
    if (std::abs(lu.determinant()) < 1e-12)
        throw domain_error("alpha_s_linear_system: singular system");
    Eigen::Matrix<double, 7, 1> u = lu.solve(rhs);
    return AlphaSSet{u(0), u(1), u(2), u(3), u(4), u(5), u(6)};
}

namespace weights_detail {

std::array<double, 7> pair_system_singular_values() {
    Eigen::Matrix<double, 6, 7> M = pair_system_matrix();
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 7>> svd(M);
    std::array<double, 7> sv{};
    for (int i = 0; i < svd.singularValues().size(); ++i)
        sv[static_cast<size_t>(i)] = svd.singularValues()(i);
    return sv;
}

}  // namespace weights_detail

}  // namespace bls
