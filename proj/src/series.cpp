#include "bls/series.hpp"

#include <cmath>

#include "bls/specfun.hpp"

namespace bls {

Puiseux2::Puiseux2(int order) : order_(order) {
    if (order < 0) throw domain_error("Puiseux2: negative truncation order");
    c_.assign(static_cast<size_t>(order + 1) * (order + 1), Complex(0, 0));
}

Puiseux2 Puiseux2::one(int order) {
    Puiseux2 s(order);
    s.set(0, 0, Complex(1, 0));
    return s;
}

Puiseux2 Puiseux2::monomial(int order, int m, int n, Complex c) {
    Puiseux2 s(order);
    s.set(m, n, c);
    return s;
}

Complex Puiseux2::coeff(int m, int n) const {
    if (m < 0 || n < 0 || m > order_ || n > order_)
        throw domain_error("Puiseux2: exponent outside truncation order");
    return c_[static_cast<size_t>(m) * (order_ + 1) + n];
}

void Puiseux2::set(int m, int n, Complex c) {
    if (m < 0 || n < 0 || m > order_ || n > order_)
        throw domain_error("Puiseux2: exponent outside truncation order");
    c_[static_cast<size_t>(m) * (order_ + 1) + n] = c;
}

Puiseux2& Puiseux2::operator+=(const Puiseux2& rhs) {
    if (rhs.order_ != order_) throw domain_error("Puiseux2: order mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

Puiseux2& Puiseux2::operator*=(Complex s) {
    for (auto& c : c_) c *= s;
    return *this;
}

Complex Puiseux2::eval(Complex x, Complex xbar) const {
    Complex cx = std::pow(x, 1.0 / 3.0);
    Complex cxb = std::pow(xbar, 1.0 / 3.0);
    // Horner in m, inner Horner in n.
    Complex acc(0, 0);
    for (int m = order_; m >= 0; --m) {
        Complex row(0, 0);
        for (int n = order_; n >= 0; --n) row = row * cxb + coeff(m, n);
        acc = acc * cx + row;
    }
    return acc;
}

Puiseux2 series_add(const Puiseux2& a, const Puiseux2& b) {
    Puiseux2 r = a;
    r += b;
    return r;
}

Puiseux2 series_mul(const Puiseux2& a, const Puiseux2& b) {
    if (a.order() != b.order()) throw domain_error("Puiseux2: order mismatch");
    const int N = a.order();
    Puiseux2 r(N);
    for (int m1 = 0; m1 <= N; ++m1)
        for (int n1 = 0; n1 <= N; ++n1) {
            Complex c1 = a.coeff(m1, n1);
            if (c1 == Complex(0, 0)) continue;
            for (int m2 = 0; m2 + m1 <= N; ++m2)
                for (int n2 = 0; n2 + n1 <= N; ++n2) {
                    Complex c2 = b.coeff(m2, n2);
                    if (c2 == Complex(0, 0)) continue;
                    r.set(m1 + m2, n1 + n2,
                          r.coeff(m1 + m2, n1 + n2) + c1 * c2);
                }
        }
    return r;
}

Puiseux2 series_exp(const Puiseux2& a) {
    if (std::abs(a.coeff(0, 0)) != 0.0)
        throw domain_error("series_exp: nonzero constant term");
    const int N = a.order();
    Puiseux2 r = Puiseux2::one(N);
    Puiseux2 term = Puiseux2::one(N);
    double fact = 1.0;
    for (int k = 1; k <= 2 * N; ++k) {
        term = series_mul(term, a);
        fact *= k;
        bool empty = true;
        Puiseux2 contrib = term;
        contrib *= Complex(1.0 / fact, 0.0);
        for (int m = 0; m <= N && empty; ++m)
            for (int n = 0; n <= N; ++n)
                if (contrib.coeff(m, n) != Complex(0, 0)) {
                    empty = false;
                    break;
                }
        if (empty) break;
        r += contrib;
    }
    return r;
}

Puiseux2 series_log(const Puiseux2& a) {
    if (std::abs(a.coeff(0, 0) - Complex(1, 0)) != 0.0)
        throw domain_error("series_log: constant term must be 1");
    const int N = a.order();
    Puiseux2 u = a;
    u.set(0, 0, Complex(0, 0));
    Puiseux2 r(N);
    Puiseux2 term = Puiseux2::one(N);
    for (int k = 1; k <= 2 * N; ++k) {
        term = series_mul(term, u);
        Puiseux2 contrib = term;
        contrib *= Complex(((k % 2) ? 1.0 : -1.0) / k, 0.0);
        bool empty = true;
        for (int m = 0; m <= N && empty; ++m)
            for (int n = 0; n <= N; ++n)
                if (contrib.coeff(m, n) != Complex(0, 0)) {
                    empty = false;
                    break;
                }
        if (empty) break;
        r += contrib;
    }
    return r;
}

Puiseux2 one_minus_pow(double alpha, bool bar, int order) {
    Puiseux2 s(order);
    double coef = 1.0;  // (alpha choose k)(-1)^k, iteratively
    for (int k = 0; 3 * k <= order; ++k) {
        if (k > 0) coef *= -(alpha - (k - 1)) / k;
        s.set(bar ? 0 : 3 * k, bar ? 3 * k : 0, Complex(coef, 0));
    }
    return s;
}

Puiseux2 binomial_pow_third(Factor kind, int order) {
    switch (kind) {
        case Factor::x:
            return Puiseux2::monomial(order, 1, 0);
        case Factor::xbar:
            return Puiseux2::monomial(order, 0, 1);
        case Factor::one_minus_x:
            return one_minus_pow(1.0 / 3.0, false, order);
        case Factor::one_minus_xbar:
            return one_minus_pow(1.0 / 3.0, true, order);
    }
    throw domain_error("binomial_pow_third: bad kind");
}

double a_cross_constant() {
    static const double c = [] {
        double g16 = gamma(Complex(1.0 / 6.0, 0)).real();
        double g43 = gamma(Complex(4.0 / 3.0, 0)).real();
        return 2.0 * std::cbrt(2.0) * kPi * kPi /
               (std::sqrt(3.0) * g16 * g16 * g43 * g43);
    }();
    return c;
}

namespace {

// Coefficients of 3F2(1,1,4/3;2,5/3;x) and 2F1(2/3,1;4/3;x).
double coeff_3f2(int k) {
    double v = 1.0;
    for (int j = 0; j < k; ++j)
        v *= (4.0 / 3.0 + j) / (5.0 / 3.0 + j);
    return v / (k + 1);
}

double coeff_2f1(int k) {
    double v = 1.0;
    for (int j = 0; j < k; ++j)
        v *= (2.0 / 3.0 + j) / (4.0 / 3.0 + j);
    return v;
}

// x^(1/3) (1-x)^(1/3) 2F1(2/3,1;4/3;x) as a one-sided Puiseux series.
Puiseux2 cross_factor(bool bar, int order) {
    Puiseux2 f2(order);
    for (int k = 0; 3 * k <= order; ++k)
        f2.set(bar ? 0 : 3 * k, bar ? 3 * k : 0, Complex(coeff_2f1(k), 0));
    Puiseux2 s = series_mul(binomial_pow_third(bar ? Factor::xbar : Factor::x, order),
                            binomial_pow_third(bar ? Factor::one_minus_xbar
                                                   : Factor::one_minus_x,
                                               order));
    return series_mul(s, f2);
}

}  // namespace

Puiseux2 a_series(int order) {
    if (order < 2) throw domain_error("a_series: order must be >= 2");
    Puiseux2 a(order);
    for (int k = 0; 3 * (k + 1) <= order; ++k) {
        double t = coeff_3f2(k) / 4.0;
        a.set(3 * (k + 1), 0, a.coeff(3 * (k + 1), 0) + t);
        a.set(0, 3 * (k + 1), a.coeff(0, 3 * (k + 1)) + t);
    }
    Puiseux2 cross = series_mul(cross_factor(false, order), cross_factor(true, order));
    cross *= Complex(-a_cross_constant(), 0);
    a += cross;
    return a;
}

}  // namespace bls
