#pragma once

#include "bls/types.hpp"

namespace bls {

/// Complex gamma function (Lanczos rational approximation, reflection for
/// Re z < 1/2).  Relative error <= ~1e-14 on the real axis for |z| <= 30.
/// Throws domain_error at non-positive integers.
Complex gamma(Complex z);

/// Gauss hypergeometric 2F1(a,b;c;x) on the cut plane (cut along [1,inf)).
/// Direct series for small |x|, standard argument transformations
/// (x -> x/(x-1), 1-x, 1/x and their compositions) otherwise.
/// `side` selects the branch (+1: limit from above) when x lies on the cut
/// of an intermediate transformation; principal branch elsewhere.
Complex hyp2f1(Complex a, Complex b, Complex c, Complex x, int side = +1);

/// 3F2(1,1,4/3;2,5/3;x) on the cut plane.  Series for small |x|; outside,
/// analytic continuation through the connection identity relating the value
/// at x to the value at (x-1)/x, applied once or twice.
/// Throws convergence_error for arguments where no continuation path
/// reaches the series disk (a small neighbourhood of exp(+-i pi/3)).
Complex hyp3f2_special(Complex x, int side = +1);

namespace specfun_detail {

// Exposed for the overlap-consistency tests.
Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex x);
Complex hyp3f2_series(Complex x);
Complex hyp3f2_connection(Complex x, int side);  // forces the single-map path

// Branch-aware power: principal everywhere except on the negative real
// axis, where `side` picks the limit from above (+1) or below (-1).
Complex pow_side(Complex z, Complex alpha, int side);
Complex log_side(Complex z, int side);

}  // namespace specfun_detail

}  // namespace bls
