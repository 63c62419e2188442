#pragma once

#include <vector>

#include "bls/types.hpp"

namespace bls {

/// Truncated bivariate Puiseux series in x^(1/3) and xbar^(1/3), with x and
/// xbar treated as independent formal variables.  coeff(m, n) multiplies
/// x^(m/3) xbar^(n/3); both exponents are kept up to `order` thirds.
/// Values are immutable in spirit: arithmetic returns new series and never
/// reads beyond the truncation order.
class Puiseux2 {
  public:
    explicit Puiseux2(int order);

    static Puiseux2 one(int order);
    static Puiseux2 monomial(int order, int m, int n, Complex c = {1.0, 0.0});

    int order() const { return order_; }
    Complex coeff(int m, int n) const;
    void set(int m, int n, Complex c);

    Puiseux2& operator+=(const Puiseux2& rhs);
    Puiseux2& operator*=(Complex s);

    /// Evaluate with principal cube roots of x and xbar.
    Complex eval(Complex x, Complex xbar) const;

  private:
    int order_;
    std::vector<Complex> c_;  // (order+1)^2, row-major in m
};

Puiseux2 series_add(const Puiseux2& a, const Puiseux2& b);

/// Cauchy product truncated to the common order.  Throws domain_error on
/// order mismatch.
Puiseux2 series_mul(const Puiseux2& a, const Puiseux2& b);

/// exp of a series with vanishing constant term.
Puiseux2 series_exp(const Puiseux2& a);

/// log of a series with constant term 1.
Puiseux2 series_log(const Puiseux2& a);

enum class Factor { x, one_minus_x, xbar, one_minus_xbar };

/// The Puiseux series of the requested cube-root factor: x (or xbar) is the
/// bare monomial x^(1/3); one_minus_x is the binomial series of (1-x)^(1/3).
Puiseux2 binomial_pow_third(Factor kind, int order);

/// Binomial series of (1-x)^alpha (or the xbar counterpart), integer powers.
Puiseux2 one_minus_pow(double alpha, bool bar, int order);

/// Puiseux expansion of A(x) about x = 0: the quarter-sum of the two 3F2
/// series minus the constant 2*2^(1/3) pi^2 / (sqrt(3) Gamma(1/6)^2
/// Gamma(4/3)^2) times x^(1/3)(1-x)^(1/3) 2F1(2/3,1;4/3;x) and the xbar
/// counterpart.  Constant term 0.
Puiseux2 a_series(int order);

/// The constant prefactor of the cross term in A(x).
double a_cross_constant();

}  // namespace bls
