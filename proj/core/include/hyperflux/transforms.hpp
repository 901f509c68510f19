#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperflux/series.hpp"

namespace hyperflux {

using IntMatrix = std::vector<std::vector<int>>;

// Unimodular integer matrix acting on exponents: (p m)_i = sum_j p_ij m_j.
class MonomialMap {
public:
    MonomialMap() = default;
    explicit MonomialMap(IntMatrix p);
    static MonomialMap identity(int n);

    int size() const { return int(p_.size()); }
    const IntMatrix& matrix() const { return p_; }
    const IntMatrix& inverse() const { return q_; }
    long determinant() const { return det_; }
    MultiIndex apply(const MultiIndex& m) const;

private:
    IntMatrix p_, q_;
    long det_ = 1;
};

// Data of K^{mu,lambda} / L^{mu,lambda}, restricted to the variables in
// `subset` (0-based), optionally composed with a monomial map.
struct TransformSpec {
    std::vector<int> subset;
    cplx mu = 0.0;
    std::vector<cplx> lambda;
    std::optional<MonomialMap> map;
    // Allow negative entries in the selected rows of the map.
    bool relaxed = false;

    // Full-variable spec with identity map.
    static TransformSpec full(cplx mu, std::vector<cplx> lambda);

    void validate(int n) const;
    // lambda + (p m)_subset
    std::vector<cplx> shifted(const MultiIndex& m) const;
};

cplx multiplier_K(const TransformSpec& spec, const MultiIndex& m);
cplx multiplier_L(const TransformSpec& spec, const MultiIndex& m);

TruncatedSeries apply_K(const TruncatedSeries& u, const TransformSpec& spec);
TruncatedSeries apply_L(const TruncatedSeries& u, const TransformSpec& spec);

enum class FactorKind { binomial_sum, binomial_per_var, exponential_sum, power_monomial };

// binomial_sum:      (1 - x_1 - ... - x_n)^{-params[0]}
// binomial_per_var:  prod (1 - x_i)^{-params[i]}
// exponential_sum:   exp(x_1 + ... + x_n)
// power_monomial:    x^params (integer parts of the real components)
TruncatedSeries elementary_factor(FactorKind kind, const std::vector<cplx>& params, int n, int D);

// u * x^alpha with integer alpha; negative entries drop terms.
TruncatedSeries shift_by_monomial(const TruncatedSeries& u, const std::vector<int>& alpha);

std::string spec_to_json(const TransformSpec& spec);
TransformSpec spec_from_json(const std::string& text);

FactorKind factor_kind_from_string(const std::string& s);

} // namespace hyperflux
