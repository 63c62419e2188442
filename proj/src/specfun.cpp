#include "bls/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace bls {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kTermEps = 1e-17;
constexpr double kSeriesRadius = 0.8;
constexpr double kFallbackRadius = 0.92;

// Lanczos coefficients, N=13, g=6.024680040776729583740234375
// (rational form; max experimental error 1.2e-17 in double).
constexpr double kLanczosNum[13] = {
    23531376880.41075968857200767445163675473,
    42919803642.64909876895789904700198885093,
    35711959237.35566804944018545154716670596,
    17921034426.03720969991975575445893111267,
    6039542586.35202800506429164430729792107,
    1439720407.311721673663223072794912393972,
    248874557.8620541565114603864132294232163,
    31426415.58540019438061423162831820536287,
    2876370.628935372441225409051620849613599,
    186056.2653952234950402949897160456992822,
    8071.672002365816210638002902272250613822,
    210.8242777515793458725097339207133627117,
    2.506628274631000270164908177133837338626};
constexpr double kLanczosDen[13] = {
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
    13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0};
constexpr double kLanczosG = 6.024680040776729583740234375;

Complex lanczos_sum(Complex z) {
    // Rational evaluation; for large |z| evaluate in 1/z to avoid overflow.
    if (std::abs(z) > 1e30) return Complex(kLanczosNum[12], 0.0);
    Complex num(0.0, 0.0), den(0.0, 0.0);
    for (int i = 12; i >= 0; --i) {
        num = num * z + kLanczosNum[i];
        den = den * z + kLanczosDen[i];
    }
    return num / den;
}

bool near_nonpositive_integer(Complex z, double tol = 1e-13) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol;
}

}  // namespace

Complex gamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw domain_error("gamma pole at non-positive integer z = " +
                           std::to_string(z.real()));
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        Complex s = std::sin(kPi * z);
        return kPi / (s * gamma(1.0 - z));
    }
    Complex zgh = z + (kLanczosG - 0.5);
    return lanczos_sum(z) * std::exp(-zgh) * std::pow(zgh, z - 0.5);
}

namespace specfun_detail {

Complex log_side(Complex z, int side) {
    if (z.imag() == 0.0 && z.real() < 0.0)
        return Complex(std::log(-z.real()), side * kPi);
    return std::log(z);
}

Complex pow_side(Complex z, Complex alpha, int side) {
    if (z.imag() == 0.0 && z.real() < 0.0)
        return std::exp(alpha * Complex(std::log(-z.real()), side * kPi));
    return std::pow(z, alpha);
}

Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex x) {
    Complex sum(1.0, 0.0), term(1.0, 0.0);
    for (int k = 0; k < kMaxTerms; ++k) {
        double kk = static_cast<double>(k);
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * x;
        sum += term;
        if (std::abs(term) < kTermEps * std::abs(sum)) return sum;
    }
    throw convergence_error("2F1 series did not converge, |x| = " +
                            std::to_string(std::abs(x)));
}

Complex hyp3f2_series(Complex x) {
    Complex sum(1.0, 0.0), term(1.0, 0.0);
    for (int k = 0; k < kMaxTerms; ++k) {
        double kk = static_cast<double>(k);
        term *= (4.0 / 3.0 + kk) / (5.0 / 3.0 + kk) * (kk + 1.0) / (kk + 2.0) * x;
        sum += term;
        if (std::abs(term) < kTermEps * std::abs(sum)) return sum;
    }
    throw convergence_error("3F2 series did not converge, |x| = " +
                            std::to_string(std::abs(x)));
}

}  // namespace specfun_detail

namespace {

using specfun_detail::hyp2f1_series;
using specfun_detail::hyp3f2_series;
using specfun_detail::log_side;
using specfun_detail::pow_side;

int side_of(Complex z, int fallback) {
    if (z.imag() > 0.0) return +1;
    if (z.imag() < 0.0) return -1;
    return fallback;
}

bool near_integer(Complex z, double tol = 1e-12) {
    return std::abs(z.imag()) < tol &&
           std::abs(z.real() - std::round(z.real())) < tol;
}

Complex hyp2f1_rec(Complex a, Complex b, Complex c, Complex x, int side, int depth);

// 2F1(a,b;c;x) = (1-x)^(-a) 2F1(a, c-b; c; x/(x-1))
Complex hyp2f1_pfaff(Complex a, Complex b, Complex c, Complex x, int side, int depth) {
    Complex om = 1.0 - x;
    Complex arg = x / (x - 1.0);
    int s_om = side_of(om, -side);
    int s_arg = side_of(arg, -side);
    return pow_side(om, -a, s_om) * hyp2f1_rec(a, c - b, c, arg, s_arg, depth);
}

// Connection at 1-x (requires c-a-b non-integer).
Complex hyp2f1_one_minus(Complex a, Complex b, Complex c, Complex x, int side, int depth) {
    Complex cab = c - a - b;
    if (near_integer(cab))
        throw convergence_error("2F1: c-a-b integer, 1-x transform unavailable");
    Complex om = 1.0 - x;
    int s_om = side_of(om, -side);
    Complex t1 = gamma(c) * gamma(cab) / (gamma(c - a) * gamma(c - b)) *
                 hyp2f1_rec(a, b, a + b - c + 1.0, om, s_om, depth);
    Complex t2 = gamma(c) * gamma(-cab) / (gamma(a) * gamma(b)) *
                 pow_side(om, cab, s_om) *
                 hyp2f1_rec(c - a, c - b, cab + 1.0, om, s_om, depth);
    return t1 + t2;
}

// Connection at 1/x (requires a-b non-integer).
Complex hyp2f1_inverse(Complex a, Complex b, Complex c, Complex x, int side, int depth) {
    if (near_integer(a - b))
        throw convergence_error("2F1: a-b integer, 1/x transform unavailable");
    Complex inv = 1.0 / x;
    int s_inv = side_of(inv, -side);
    int s_mx = side_of(-x, -side);
    Complex t1 = gamma(c) * gamma(b - a) / (gamma(b) * gamma(c - a)) *
                 pow_side(-x, -a, s_mx) *
                 hyp2f1_rec(a, a - c + 1.0, a - b + 1.0, inv, s_inv, depth);
    Complex t2 = gamma(c) * gamma(a - b) / (gamma(a) * gamma(c - b)) *
                 pow_side(-x, -b, s_mx) *
                 hyp2f1_rec(b, b - c + 1.0, b - a + 1.0, inv, s_inv, depth);
    return t1 + t2;
}

Complex hyp2f1_rec(Complex a, Complex b, Complex c, Complex x, int side, int depth) {
    if (near_nonpositive_integer(c))
        throw domain_error("2F1: c is a non-positive integer");
    if (x == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
    if (depth > 3)
        throw convergence_error("2F1: transformation recursion exceeded");

    double ax = std::abs(x);
    double a_pf = std::abs(x / (x - 1.0));
    double a_om = std::abs(1.0 - x);
    double a_inv = 1.0 / ax;

    for (double r : {kSeriesRadius, kFallbackRadius}) {
        if (ax <= r) return hyp2f1_series(a, b, c, x);
        if (a_pf <= r) return hyp2f1_pfaff(a, b, c, x, side, depth + 1);
        if (a_om <= r) return hyp2f1_one_minus(a, b, c, x, side, depth + 1);
        if (a_inv <= r) return hyp2f1_inverse(a, b, c, x, side, depth + 1);
    }
    // Remaining region: |1-x| and |x| both ~1.  The composed maps
    // 1/(1-x) and 1-1/x reach it; recurse through whichever is smaller.
    if (std::abs(1.0 / (1.0 - x)) <= std::abs(1.0 - 1.0 / x))
        return hyp2f1_one_minus(a, b, c, x, side, depth + 1);
    return hyp2f1_inverse(a, b, c, x, side, depth + 1);
}

// K2 = 2 Gamma(2/3)^2 / Gamma(4/3)
double k2_constant() {
    static const double k2 =
        2.0 * std::pow(gamma(Complex(2.0 / 3.0, 0)).real(), 2) /
        gamma(Complex(4.0 / 3.0, 0)).real();
    return k2;
}

// w F3(w) = 2 pi/sqrt(3) + eta F3(eta) + 2 Log(1-eta)
//           - K2 (-eta)^(1/3) (1-eta)^(1/3) 2F1(1,2/3;4/3;eta),
// eta = (w-1)/w.  Branch data: every on-axis factor is evaluated on the
// side opposite to eta's (their imaginary parts flip sign relative to eta).
Complex hyp3f2_phi(Complex w, Complex f3_eta, Complex f2_eta, int side) {
    Complex eta = (w - 1.0) / w;
    int s = side_of(eta, side);
    Complex third(1.0 / 3.0, 0.0);
    Complex cb = pow_side(-eta, third, -s) * pow_side(1.0 - eta, third, -s);
    return (Complex(kTwoPiOverSqrt3, 0.0) + eta * f3_eta +
            2.0 * log_side(1.0 - eta, -s) - k2_constant() * cb * f2_eta) /
           w;
}

Complex hyp2f1_at_eta(Complex eta, int side) {
    return hyp2f1_rec(Complex(1, 0), Complex(2.0 / 3.0, 0), Complex(4.0 / 3.0, 0),
                      eta, side_of(eta, side), 0);
}

}  // namespace

Complex hyp2f1(Complex a, Complex b, Complex c, Complex x, int side) {
    return hyp2f1_rec(a, b, c, x, side, 0);
}

namespace specfun_detail {

Complex hyp3f2_connection(Complex x, int side) {
    Complex eta = (x - 1.0) / x;
    return hyp3f2_phi(x, hyp3f2_series(eta), hyp2f1_series(
                             Complex(1, 0), Complex(2.0 / 3.0, 0),
                             Complex(4.0 / 3.0, 0), eta),
                      side);
}

}  // namespace specfun_detail

Complex hyp3f2_special(Complex x, int side) {
    if (x == Complex(1.0, 0.0))
        throw domain_error("3F2: branch point at x = 1");
    Complex eta = (x - 1.0) / x;        // first connection argument
    Complex u = (eta - 1.0) / eta;      // = 1/(1-x), second connection argument
    double ax = std::abs(x), ae = std::abs(eta), au = std::abs(u);
    for (double r : {kSeriesRadius, kFallbackRadius}) {
        if (ax <= r) return specfun_detail::hyp3f2_series(x);
        if (ae <= r) return specfun_detail::hyp3f2_connection(x, side);
        if (au <= r) {
            Complex f3_eta = hyp3f2_phi(eta, specfun_detail::hyp3f2_series(u),
                                        hyp2f1_series(Complex(1, 0),
                                                      Complex(2.0 / 3.0, 0),
                                                      Complex(4.0 / 3.0, 0), u),
                                        side);
            return hyp3f2_phi(x, f3_eta, hyp2f1_at_eta(eta, side), side);
        }
    }
    throw convergence_error(
        "3F2: argument outside reachable continuation region (near exp(+-i pi/3))");
}

}  // namespace bls
