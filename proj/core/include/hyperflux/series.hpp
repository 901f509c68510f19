#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hyperflux/gamma.hpp"

namespace hyperflux {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& m);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

// Enumeration of all multi-indices with |m| <= D in total-degree order, and
// within one degree lexicographically descending: for n=2 the order is
// 1, x, y, x^2, xy, y^2, ...
class IndexSet {
public:
    static std::shared_ptr<const IndexSet> get(int n, int D);

    int nvars() const { return n_; }
    int max_degree() const { return D_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& operator[](std::size_t k) const { return indices_[k]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    // Position of m, or npos if |m| > D or m has a negative entry.
    std::size_t rank(const MultiIndex& m) const;
    // First position of degree d.
    std::size_t degree_offset(int d) const;

    static constexpr std::size_t npos = std::size_t(-1);

    IndexSet(int n, int D);

private:
    int n_, D_;
    std::vector<MultiIndex> indices_;
    std::vector<std::vector<std::size_t>> binom_;
};

// Dense n-variable series with all coefficients of total degree <= D.
class TruncatedSeries {
public:
    TruncatedSeries() : TruncatedSeries(1, 0) {}
    TruncatedSeries(int n, int D);

    static TruncatedSeries constant(int n, int D, cplx c);
    static TruncatedSeries monomial(int n, int D, const MultiIndex& m, cplx c = 1.0);

    int nvars() const { return set_->nvars(); }
    int degree() const { return set_->max_degree(); }
    // Coefficients above this degree are not trustworthy (weyl actions lower it).
    int reliable_degree() const { return reliable_; }
    void set_reliable_degree(int d);

    std::size_t size() const { return c_.size(); }
    const MultiIndex& index(std::size_t k) const { return (*set_)[k]; }
    const IndexSet& index_set() const { return *set_; }

    cplx operator[](std::size_t k) const { return c_[k]; }
    cplx& operator[](std::size_t k) { return c_[k]; }
    // Zero outside the stored range.
    cplx coeff(const MultiIndex& m) const;
    void set(const MultiIndex& m, cplx v);
    void add(const MultiIndex& m, cplx v);
    const std::vector<cplx>& coeffs() const { return c_; }

    TruncatedSeries truncated(int D) const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(cplx s);

private:
    std::shared_ptr<const IndexSet> set_;
    std::vector<cplx> c_;
    int reliable_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(cplx s, TruncatedSeries a);

// Cauchy product truncated at min(a.D, b.D).
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

struct Evaluation {
    cplx value;
    double shell; // |sum of the terms of top degree|
};

Evaluation evaluate(const TruncatedSeries& s, const std::vector<cplx>& point);

// Largest |a_m - b_m| / max(|b_m|, floor) over |m| <= min reliable degrees.
double max_rel_diff(const TruncatedSeries& a, const TruncatedSeries& b, double floor = 1e-300);
double max_abs(const TruncatedSeries& s, int up_to_degree = -1);

std::string series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const std::string& text);

} // namespace hyperflux
