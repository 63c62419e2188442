#include "bls/correlators.hpp"

#include <cmath>

#include "bls/specfun.hpp"

namespace bls {

namespace {

double dim_of(double beta, double lambda) {
    double s = std::sin(beta / 2.0);
    return lambda / 5.0 * s * s;  // (lambda/10)(1 - cos beta)
}

void require_conservation(const ChargeVector& c, const char* who) {
    if (!c.conserves_charge())
        throw domain_error(std::string(who) + ": charge conservation violated, "
                           "sum(beta) != 0 mod 2pi");
}

double log_abs(Complex z) { return std::log(std::abs(z)); }

}  // namespace

bool ChargeVector::conserves_charge(double tol) const {
    double s = 0.0;
    for (double b : betas) s += b;
    return std::abs(std::remainder(s, 2.0 * kPi)) <= tol;
}

Dimensions dims(const ChargeVector& c) {
    Dimensions d;
    const size_t n = c.betas.size();
    d.delta.resize(n);
    for (size_t i = 0; i < n; ++i) d.delta[i] = dim_of(c.betas[i], c.lambda);
    d.delta_pair.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j)
                d.delta_pair[i][j] = dim_of(c.betas[i] + c.betas[j], c.lambda);
    if (n == 4) {
        d.delta_tilde = d.delta_pair[0][1] + d.delta_pair[0][2] + d.delta_pair[0][3] -
                        d.delta[0] - d.delta[1] - d.delta[2] - d.delta[3];
    }
    return d;
}

double one_point_halfplane(Complex z, double beta, double lambda) {
    if (z.imag() <= 0.0)
        throw domain_error("one_point_halfplane: point must be interior (Im z > 0)");
    double delta = dim_of(beta, lambda);
    return std::exp(-2.0 * delta * std::log(std::abs(z - std::conj(z))));
}

double two_point_halfplane(const HalfPlanePair& p, const ChargeVector& c) {
    if (c.betas.size() != 2)
        throw domain_error("two_point_halfplane: exactly two charges required");
    double d1 = dim_of(c.betas[0], c.lambda);
    double d2 = dim_of(c.betas[1], c.lambda);
    double d12 = dim_of(c.betas[0] + c.betas[1], c.lambda);
    double sigma = geometry(p).sigma;
    double f = hyp3f2_special(Complex(1.0 - sigma, 0)).real();
    double lg = -2.0 * (d1 + d2 - d12) * log_abs(p.z1 - p.z2) +
                2.0 * (d1 + d2 - d12) * log_abs(p.z1 - std::conj(p.z2)) -
                2.0 * d1 * log_abs(p.z1 - std::conj(p.z1)) -
                2.0 * d2 * log_abs(p.z2 - std::conj(p.z2)) -
                (d1 + d2 - d12) * (1.0 - sigma) * f;
    return std::exp(lg);
}

double two_point_halfplane_unnormalized(const HalfPlanePair& p,
                                        const ChargeVector& c,
                                        const CutoffConstants& k) {
    double d1 = dim_of(c.betas.at(0), c.lambda);
    double d2 = dim_of(c.betas.at(1), c.lambda);
    double norm = 2.0 * (d1 + d2) *
                  (std::log(2.0 * k.delta) - 5.0 * k.alpha_bar);
    return std::exp(norm) * two_point_halfplane(p, c);
}

double two_point_plane(Complex z1, Complex z2, const ChargeVector& c) {
    if (c.betas.size() != 2)
        throw domain_error("two_point_plane: exactly two charges required");
    require_conservation(c, "two_point_plane");
    if (z1 == z2) throw domain_error("two_point_plane: coincident points");
    double d1 = dim_of(c.betas[0], c.lambda);
    return std::exp(-4.0 * d1 * log_abs(z1 - z2));
}

double three_point_plane(Complex z1, Complex z2, Complex z3, const ChargeVector& c) {
    if (c.betas.size() != 3)
        throw domain_error("three_point_plane: exactly three charges required");
    require_conservation(c, "three_point_plane");
    if (z1 == z2 || z1 == z3 || z2 == z3)
        throw domain_error("three_point_plane: coincident points");
    Dimensions d = dims(c);
    const auto& D = d.delta;
    double lg = -2.0 * (D[0] + D[1] - D[2]) * log_abs(z1 - z2) -
                2.0 * (D[0] + D[2] - D[1]) * log_abs(z1 - z3) -
                2.0 * (D[1] + D[2] - D[0]) * log_abs(z2 - z3);
    return std::exp(lg);
}

double four_point_plane(const std::array<Complex, 4>& z, const ChargeVector& c) {
    if (c.betas.size() != 4)
        throw domain_error("four_point_plane: exactly four charges required");
    require_conservation(c, "four_point_plane");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (z[i] == z[j]) throw domain_error("four_point_plane: coincident points");

    Dimensions d = dims(c);
    const auto& D = d.delta;
    const auto& P = d.delta_pair;
    Complex x = cross_ratio(z[0], z[1], z[2], z[3]);
    double A = a_of_x(x);
    double coeff = D[0] + D[1] + D[2] + D[3] - P[0][1] - P[0][2] - P[0][3];

    auto l = [&](int i, int j) { return log_abs(z[i] - z[j]); };
    double lg = -2.0 * A * coeff;
    lg += -2.0 * P[0][1] * (l(0, 2) + l(1, 3) - l(0, 1) - l(2, 3));
    lg += -2.0 * P[0][3] * (l(0, 2) + l(1, 3) - l(0, 3) - l(1, 2));
    lg += -2.0 * D[0] * (l(0, 1) + l(0, 3) - l(1, 3));
    lg += -2.0 * D[1] * (l(0, 1) + l(1, 2) - l(0, 2));
    lg += -2.0 * D[2] * (l(1, 2) + l(2, 3) - l(1, 3));
    lg += -2.0 * D[3] * (l(0, 3) + l(2, 3) - l(0, 2));
    return std::exp(lg);
}

double g_function(Complex x, const ChargeVector& c, GChannel which) {
    if (c.betas.size() != 4)
        throw domain_error("g_function: exactly four charges required");
    if (x == Complex(0, 0) || x == Complex(1, 0))
        throw domain_error("g_function: degenerate cross-ratio (x = 0 or 1)");
    Dimensions d = dims(c);
    const auto& D = d.delta;
    const auto& P = d.delta_pair;
    double A = a_of_x(x);
    double px, pom;  // exponents of |x|^2 and |1-x|^2
    switch (which) {
        case GChannel::g21_34:
            px = P[0][1] - D[2] - D[3];
            pom = P[0][3] - D[1] - D[2];
            break;
        case GChannel::g41_32:
            px = P[0][3] - D[1] - D[2];
            pom = P[0][1] - D[2] - D[3];
            break;
        case GChannel::g24_31:
            px = P[0][2] - D[0] - D[2];
            pom = P[0][3] - D[1] - D[2];
            break;
        default:
            throw domain_error("g_function: bad channel");
    }
    return std::exp(2.0 * px * std::log(std::abs(x)) +
                    2.0 * pom * std::log(std::abs(1.0 - x)) +
                    2.0 * d.delta_tilde * A);
}

}  // namespace bls
