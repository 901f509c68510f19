#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperflux/series.hpp"

namespace hyperflux {

// (x-exponents, d-exponents) of a normal-ordered monomial x^a d^b.
using WeylKey = std::pair<MultiIndex, MultiIndex>;

// Finite sum of c x^a d^b with every x left of every d. Negative x-exponents
// are allowed as an intermediate Laurent form; reduced_representative clears
// them.
class WeylOperator {
public:
    explicit WeylOperator(int n = 1);

    static WeylOperator constant(int n, cplx c);
    static WeylOperator x(int n, int i, int power = 1);
    static WeylOperator d(int n, int i, int power = 1);
    static WeylOperator theta(int n, int i);
    static WeylOperator monomial(int n, const MultiIndex& a, const MultiIndex& b, cplx c = 1.0);

    int nvars() const { return n_; }
    const std::map<WeylKey, cplx>& terms() const { return terms_; }
    cplx coeff(const MultiIndex& a, const MultiIndex& b) const;
    void add(const MultiIndex& a, const MultiIndex& b, cplx c);

    bool is_zero() const { return terms_.empty(); }
    bool is_polynomial() const;
    // Highest total d-order.
    int order() const;
    // Drop coefficients below tol * max |c|.
    WeylOperator pruned(double tol) const;

    WeylOperator& operator+=(const WeylOperator& o);
    WeylOperator& operator-=(const WeylOperator& o);
    WeylOperator& operator*=(cplx s);

    bool operator==(const WeylOperator& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    int n_;
    std::map<WeylKey, cplx> terms_;
};

WeylOperator operator+(WeylOperator a, const WeylOperator& b);
WeylOperator operator-(WeylOperator a, const WeylOperator& b);
WeylOperator operator*(cplx s, WeylOperator a);
// Normal-ordered product.
WeylOperator compose(const WeylOperator& a, const WeylOperator& b);
WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);

// Largest coefficient difference, for approximate comparisons.
double max_abs_diff(const WeylOperator& a, const WeylOperator& b);

// Sum of c d^a theta^b, stored as (d-exponents, theta-exponents) -> c.
class ThetaForm {
public:
    explicit ThetaForm(int n = 1) : n_(n) {}

    int nvars() const { return n_; }
    const std::map<WeylKey, cplx>& terms() const { return terms_; }
    void add(const MultiIndex& a, const MultiIndex& b, cplx c);
    bool is_zero() const { return terms_.empty(); }

    WeylOperator to_weyl() const;

private:
    int n_;
    std::map<WeylKey, cplx> terms_;
};

struct ThetaFormResult {
    MultiIndex gamma;
    ThetaForm form; // d^gamma P
};

// Minimal gamma >= 0 with d^gamma P in the span of d^a theta^b.
ThetaFormResult to_theta_form(const WeylOperator& p);

// Clears the common monomial factor (also negative powers) and scales the
// leading term to 1. The leading term has the highest d-order, ties broken
// by the largest key.
WeylOperator reduced_representative(const WeylOperator& p);

struct MiddleConvolution {
    WeylOperator op;
    int k = 0; // d^k P was put in theta form
    int m = 0; // d^m stripped on the left
    bool degenerate = false; // result has order zero
};

// One-variable middle convolution: theta -> theta - mu in the theta form of
// d^k RP, then the maximal left power of d is removed.
MiddleConvolution middle_convolution(const WeylOperator& p, cplx mu);

enum class AdditionKind { power_at_c, exp_poly };

struct AdditionParams {
    AdditionKind kind = AdditionKind::power_at_c;
    int var = 0;          // power_at_c: f = (x_var - c)^lambda
    cplx c = 0.0;
    cplx lambda = 0.0;
    std::map<MultiIndex, cplx> r; // exp_poly: f = exp(r(x))

    static AdditionParams power_at_c(int var, cplx c, cplx lambda);
    static AdditionParams exp_poly(std::map<MultiIndex, cplx> r);
};

// R Ad(f) P with Ad(f) d_j = d_j - d_j(f)/f.
WeylOperator addition(const WeylOperator& p, const AdditionParams& f);
// Ad(x^lambda) for a full exponent vector, reduced.
WeylOperator monomial_addition(const WeylOperator& p, const std::vector<cplx>& lambda);

// x -> 1/x with d_j -> -x_j (theta_j + 1); an involution, returned unreduced.
WeylOperator tilde(const WeylOperator& p);

enum class Direction { K, L };

// K: d_k -> (1/x_k)(theta_1 + ... + theta_n + mu + n - 1), theta unchanged.
// L: d_k -> -x_k(theta_1 + ... + theta_n + mu + n), theta -> -theta - 1;
//    the form must come from the tilde of the annihilator.
// Result is reduced.
WeylOperator transform_op(const ThetaForm& q, cplx mu, Direction dir);

// Annihilator of K^{mu,lambda} u (or L) from an annihilator P of u, with the
// x^{lambda-1} conjugations and the tilde step done here.
WeylOperator transform_annihilator(const WeylOperator& p, cplx mu, const std::vector<cplx>& lambda,
                                   Direction dir);

// Exact action on stored coefficients; the reliable degree drops by the
// largest (|b| - |a|)^+ over terms.
TruncatedSeries apply_to_series(const WeylOperator& p, const TruncatedSeries& u);

std::string weyl_to_json(const WeylOperator& p);
WeylOperator weyl_from_json(const std::string& text);

// Parses sums of products such as "x1^2*d1 + 3*t2 - (t1 + 0.5i)*(t1 + t2)".
// Factors: numbers (suffix i for imaginary), xk, dk, tk (theta), i, and
// parenthesized expressions, each with an optional ^power. Products are
// composed left to right. n = 0 infers the variable count.
WeylOperator parse_weyl(const std::string& text, int n = 0);
std::string to_string(const WeylOperator& p);

} // namespace hyperflux
