#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperflux/series.hpp"

namespace hyperflux {

enum class SeriesKind {
    FA, FB, FC, FD, F1, F2, F3, F4, Gauss, Kummer, Phi2, Psi1, Psi2, G2, GeneralPQR, GeneralHorn, S211
};

std::string to_string(SeriesKind k);
SeriesKind series_kind_from_string(const std::string& s);

// Named parameters; scalars are vectors of length one.
//
//   FA  l0, mu[n], l[n]     FB  l[n], lp[n], mu     FC  mu, l0, l[n]     FD  l0, l[n], mu
//   F1  a, b, bp, c         F2  a, b, bp, c, cp     F3  a, ap, b, bp, c  F4  a, b, c, cp
//   Gauss a, b, c           Kummer a, c             Phi2 b, bp, c
//   Psi1 a, b, c, cp        Psi2 a, c, cp           G2 a, b, c, d
//   GeneralPQR alpha[p], alphap[p], beta[q], betap[q], gamma[r], gammap[r]
//   GeneralHorn a[K], b[M], c[N], ap[K'], bp[M'], cp[N']
//   S211 a1, a2, b1, b2, g1, g2
struct SeriesId {
    SeriesKind kind = SeriesKind::Gauss;
    int n = 1; // only read for FA..FD; other kinds fix it
    int D = 10;
    std::map<std::string, std::vector<cplx>> params;

    SeriesId() = default;
    SeriesId(SeriesKind kind, int D, std::map<std::string, std::vector<cplx>> params, int n = 1)
        : kind(kind), n(n), D(D), params(std::move(params)) {}

    cplx scalar(const std::string& name) const;
    const std::vector<cplx>& vec(const std::string& name) const;
    int nvars() const;
    void validate() const;
};

// Coefficients from the explicit Pochhammer law.
TruncatedSeries build_direct(const SeriesId& id);

bool has_transform_pipeline(SeriesKind k);

// Elementary factor followed by K/L transforms and Gamma prefactors.
TruncatedSeries build_via_transform(const SeriesId& id);

// Every transform route known for the kind (FA and F2 have a K and an L
// route, FD and F1 also have the monomial-map route).
std::vector<std::pair<std::string, TruncatedSeries>> transform_pipelines(const SeriesId& id);

// (C_a, C_b) of the Gauss connection formula at infinity.
std::pair<cplx, cplx> gauss_connection_coeffs(cplx a, cplx b, cplx c);

// Plain Gauss series at |z| < 1, summed until the terms are negligible.
cplx gauss_sum(cplx a, cplx b, cplx c, cplx z);

// F(a,b,c;x) for x < -1 through the connection formula at infinity.
cplx gauss_via_connection(cplx a, cplx b, cplx c, double x);

struct ConnectionReport {
    cplx lhs;
    cplx rhs;
    double residual;
    double shell; // worst relative truncation shell of the series involved
};

// Left side: sum_n (a)_n (b')_n / ((c)_n n!) y^n F(a+n, b, c+n; x) with each
// Gauss value continued through its connection formula. Right side:
// (-1/x)^a C_a f1a + (-1/x)^b C_b f1b with f1a an F1 series at (1/x, y/x)
// and f1b a G2 series at (-1/x, -y), both truncated at total degree D.
ConnectionReport f1_connection(cplx a, cplx b, cplx bp, cplx c, double x, double y, int D,
                               double shell_budget = 1e-12);

double f1_connection_residual(cplx a, cplx b, cplx bp, cplx c, double x, double y, int D);

} // namespace hyperflux
