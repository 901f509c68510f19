#include "hyperflux/gamma.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperflux/errors.hpp"

namespace hyperflux {

namespace {

// Lanczos coefficients, g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

cplx lanczos_log_gamma(cplx z)
{
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + double(i));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::string fmt_z(cplx z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

long nearest_int(cplx z) { return std::lround(z.real()); }

} // namespace

bool is_gamma_pole(cplx z, double tol)
{
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z - r) < tol;
}

cplx log_gamma(cplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma: non-finite argument");
    if (is_gamma_pole(z, 1e-14)) throw PoleError("log_gamma: pole at " + fmt_z(z));
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    // Recurrence upward. Each principal log is analytic off the negative
    // real axis, so the sum reproduces the continued branch.
    const int k = int(std::ceil(0.5 - z.real()));
    cplx acc = 0.0;
    for (int j = 0; j < k; ++j) acc += std::log(z + double(j));
    return lanczos_log_gamma(z + double(k)) - acc;
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx pochhammer(cplx a, int k)
{
    if (k < 0) throw DomainError("pochhammer: negative order");
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= a + double(i);
    return r;
}

cplx gamma_ratio(const std::vector<cplx>& numerators, const std::vector<cplx>& denominators)
{
    std::vector<cplx> num_poles, den_poles;
    cplx log_acc = 0.0;
    for (auto z : numerators) {
        if (is_gamma_pole(z))
            num_poles.push_back(z);
        else
            log_acc += log_gamma(z);
    }
    for (auto z : denominators) {
        if (is_gamma_pole(z))
            den_poles.push_back(z);
        else
            log_acc -= log_gamma(z);
    }

    cplx factor = 1.0;
    const std::size_t pairs = std::min(num_poles.size(), den_poles.size());
    for (std::size_t i = 0; i < pairs; ++i) {
        const cplx zn = num_poles[i];
        const cplx zd = den_poles[i];
        // Gamma(zn)/Gamma(zd) at integer offset k = zd - zn.
        const long k = nearest_int(zd) - nearest_int(zn);
        if (k >= 0)
            factor /= pochhammer(zn, int(k));
        else
            factor *= pochhammer(zd, int(-k));
    }
    if (num_poles.size() > pairs)
        throw PoleError("gamma_ratio: uncancelled numerator pole at " + fmt_z(num_poles[pairs]));
    if (den_poles.size() > pairs) return 0.0;
    return factor * std::exp(log_acc);
}

} // namespace hyperflux
