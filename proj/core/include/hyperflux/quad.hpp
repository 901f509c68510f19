#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hyperflux/catalog.hpp"
#include "hyperflux/gamma.hpp"

namespace hyperflux {

// Nodes and weights with sum w_i f(t_i) ~ int_0^1 t^a (1-t)^b f(t) dt, a, b > -1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_jacobi01(int points, double a, double b);

// Same rule for complex exponents, Re a, Re b > -1. Nodes leave the real
// segment, so integrands must be analytic near [0, 1].
struct ComplexGaussRule {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
};

const ComplexGaussRule& gauss_jacobi01(int points, cplx a, cplx b);

struct QuadOptions {
    int start_points = 64;
    int max_points = 512;
    double self_tol = 1e-13; // relative change that counts as converged
};

struct QuadResult {
    cplx value;
    double change;  // |I_N - I_{N/2}|, the self-convergence estimate
    int points;
};

using Fn1 = std::function<cplx(cplx)>;
using Fn2 = std::function<cplx(cplx, cplx)>;

// (1/Gamma(mu)) int_c^x (t-c)^rho f(t) (x-t)^{mu-1} dt for x > c. `rho`
// declares an endpoint power carried by the integrand at t = c (0 for
// regular f), so f itself stays analytic.
QuadResult riemann_liouville(const Fn1& f, double c, cplx mu, double x, cplx rho = 0.0,
                             const QuadOptions& opt = {});

// K^{mu,lambda} f at x as the simplex integral
//   (1/Gamma(mu)) int t^{lambda-1} (1-|t|)^{mu-1} f(t_1 x_1, ..., t_n x_n) dt,  n <= 2.
QuadResult simplex_integral_K(const std::function<cplx(const std::vector<cplx>&)>& f, cplx mu,
                              const std::vector<cplx>& lambda, const std::vector<cplx>& x,
                              const QuadOptions& opt = {});

struct RepresentationCheck {
    std::string name;
    cplx quadrature;
    cplx series;
    double residual;
};

// Every integral representation the catalog knows for the kind, evaluated
// by quadrature and compared with the summed series.
std::vector<RepresentationCheck> verify_representation(const SeriesId& id, const std::vector<cplx>& point,
                                                       const QuadOptions& opt = {});

} // namespace hyperflux
