#pragma once

#include <complex>
#include <vector>

namespace hyperflux {

using cplx = std::complex<double>;

// True when z lies within `tol` of 0, -1, -2, ...
bool is_gamma_pole(cplx z, double tol = 1e-9);

// log Gamma, continued analytically from the positive real axis with the
// cut along the negative real axis. Throws PoleError at non-positive integers.
cplx log_gamma(cplx z);

cplx gamma_fn(cplx z);

// Rising factorial a(a+1)...(a+k-1), by direct product.
cplx pochhammer(cplx a, int k);

// Prod Gamma(num) / Prod Gamma(den).
//
// Numerator and denominator poles are paired off and replaced by the finite
// Pochhammer quotient they tend to under a common perturbation. A leftover
// denominator pole gives exactly 0; a leftover numerator pole throws.
cplx gamma_ratio(const std::vector<cplx>& numerators, const std::vector<cplx>& denominators);

} // namespace hyperflux
