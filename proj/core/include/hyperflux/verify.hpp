#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hyperflux/kz.hpp"
#include "hyperflux/series.hpp"
#include "hyperflux/transforms.hpp"
#include "hyperflux/weyl.hpp"

namespace hyperflux::verify {

// prod Gamma(num) / prod Gamma(den), used as the reference in the monomial
// and quadrature suites.
using GammaRatioFn = std::function<cplx(const std::vector<cplx>&, const std::vector<cplx>&)>;

struct Options {
    std::uint64_t seed = 20181101;
    // Replaces every numeric tolerance; integer checks stay exact.
    std::optional<double> tol_override;
    // Unset: the monomial suite checks against Pochhammer products and the
    // quadrature suite against the library Gamma.
    GammaRatioFn gamma_ratio;
};

struct Check {
    std::string name;
    double value = 0; // worst residual, or a mismatch count for exact checks
    double tol = 0;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    bool pass() const;
};

// inverse, monomial, catalog, quadrature, connection, annihilation, kz,
// conjugation, ode
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const Options& opt = {});

// Random draws shared by the suites and the unit tests.

// Real part in [0.3, 1.4], imaginary part in [-0.5, 0.5].
cplx draw_param(std::mt19937_64& rng);
// Real and imaginary parts in [0.3, 1.3].
cplx kz_param(std::mt19937_64& rng);

// max |P u| over the reliable range, relative to the largest single-term
// contribution, floored at |P| |u|.
double annihilation_residual(const WeylOperator& p, const TruncatedSeries& u);

struct PklInstance {
    WeylOperator p;
    TruncatedSeries u;
    TransformSpec spec;
    Direction dir = Direction::K;
};

// Annihilated two-variable series with an annihilator, cycling through
// (1-x-y)^{-a}, (1-x)^{-a}(1-y)^{-b}, exp(x+y) and random polynomials.
PklInstance pkl_instance(std::mt19937_64& rng, int k, int D);
// Residual of the transformed annihilator on the transformed series.
double pkl_residual(const PklInstance& inst);

PqrParams pqr_params(std::mt19937_64& rng, int p, int q, int r);
CMatrix random_matrix(std::mt19937_64& rng, int n);
// Homogeneous family with unrelated random matrices (not integrable).
ResidueFamily random_homogeneous(std::mt19937_64& rng, int n);
ResidueFamily random_scalar_family(std::mt19937_64& rng);
// Integrable homogeneous size-3 family: a convolution of a scalar family,
// conjugated by a random similarity.
ResidueFamily random_integrable(std::mt19937_64& rng, KzDirection dir);
// mu making the kernel of e (r1, r2, r3) + mu nontrivial.
cplx resonant_mu(const CMatrix& r1, const CMatrix& r2, const CMatrix& r3);
// Rows whose block kernel enters the invariant subspace of ode_convolve.
std::array<CMatrix, 3> ode_rows(const OdeTriple& t, KzDirection dir);

const std::vector<std::array<int, 3>>& pqr_cases();
int idx_closed_form(int q, int r);

} // namespace hyperflux::verify
