#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperflux/errors.hpp"
#include "hyperflux/gamma.hpp"
#include "hyperflux/series.hpp"
#include "mp_gamma.hpp"

using namespace hyperflux;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TruncatedSeries random_series(std::mt19937_64& rng, int n, int D)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TruncatedSeries s(n, D);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = cplx(u(rng), u(rng));
    return s;
}

} // namespace

TEST_CASE("log_gamma reference values")
{
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(2.0)) < 1e-15);
    CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(std::numbers::pi)) < 1e-14);
    CHECK_THROWS_AS(log_gamma(-1.0), PoleError);
    CHECK_THROWS_AS(log_gamma(0.0), PoleError);
}

TEST_CASE("log_gamma against the arbitrary precision oracle")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-30.0, 60.0), im(-40.0, 40.0);
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
        cplx z(re(rng), im(rng));
        if (std::abs(z) > 100) continue;
        const cplx ours = log_gamma(z);
        const cplx ref = oracle::mp_log_gamma(z);
        // branch: both continue from the positive axis with principal logs
        worst = std::max(worst, std::abs(ours - ref) / std::max(1.0, std::abs(ref)));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("gamma on the real line against tgamma")
{
    for (double x : {0.1, 0.7, 1.5, 3.25, 10.0, 22.5, -0.5, -2.3, -7.9})
        CHECK(rel(gamma_fn(x), std::tgamma(x)) < 1e-13);
}

TEST_CASE("pochhammer")
{
    CHECK(pochhammer(cplx(0.3, 1.0), 0) == cplx(1.0));
    CHECK(pochhammer(2.0, 3) == cplx(24.0));
    CHECK(pochhammer(1.0, 6) == cplx(720.0));
    CHECK(pochhammer(-3.0, 5) == cplx(0.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int t = 0; t < 20; ++t) {
        const cplx a(u(rng), u(rng));
        for (int k = 0; k <= 50; ++k) CHECK(rel(pochhammer(a, k + 1), pochhammer(a, k) * (a + double(k))) < 1e-14);
    }
}

TEST_CASE("gamma_ratio")
{
    CHECK(rel(gamma_ratio({3.0, 3.0}, {7.0}), 1.0 / 180.0) < 1e-14);
    CHECK(rel(gamma_ratio({3.0, 3.0}, {7.0}), oracle::mp_gamma_ratio({3.0, 3.0}, {7.0})) < 1e-14);
    const cplx z(0.37, -1.2);
    CHECK(rel(gamma_ratio({z}, {z}), 1.0) < 1e-15);
    CHECK(gamma_ratio({5.0}, {-1.0}) == cplx(0.0));
    CHECK_THROWS_AS(gamma_ratio({-2.0}, {1.0}), PoleError);

    // Gamma(-3)/Gamma(-1) -> (-1)^3/3! / ((-1)/1!) = 1/6
    CHECK(rel(gamma_ratio({-3.0}, {-1.0}), 1.0 / 6.0) < 1e-15);
    CHECK(rel(gamma_ratio({-1.0}, {-3.0}), 6.0) < 1e-15);
    // matched pair plus a regular part
    CHECK(rel(gamma_ratio({-2.0, 4.0}, {0.0, 2.0}), 0.5 * 6.0) < 1e-14);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int t = 0; t < 100; ++t) {
        const cplx a(u(rng), u(rng));
        for (int k = 0; k <= 30; ++k) CHECK(rel(gamma_ratio({a + double(k)}, {a}), pochhammer(a, k)) < 1e-12);
    }
}

TEST_CASE("index ordering and rank")
{
    const auto set = IndexSet::get(3, 6);
    for (std::size_t k = 0; k < set->size(); ++k) CHECK(set->rank((*set)[k]) == k);
    const auto two = IndexSet::get(2, 2);
    CHECK((*two)[1] == MultiIndex{1, 0});
    CHECK((*two)[2] == MultiIndex{0, 1});
    CHECK((*two)[3] == MultiIndex{2, 0});
    CHECK(two->rank({3, 0}) == IndexSet::npos);
}

TEST_CASE("series_mul")
{
    TruncatedSeries a(1, 2), b(1, 2);
    a.set({0}, 1.0);
    a.set({1}, 1.0);
    b.set({0}, 1.0);
    b.set({1}, -1.0);
    const auto p = series_mul(a, b);
    CHECK(p.coeff({0}) == cplx(1.0));
    CHECK(p.coeff({1}) == cplx(0.0));
    CHECK(p.coeff({2}) == cplx(-1.0));

    TruncatedSeries g(1, 10);
    for (int k = 0; k <= 10; ++k) g.set({k}, 1.0);
    TruncatedSeries one_minus(1, 10);
    one_minus.set({0}, 1.0);
    one_minus.set({1}, -1.0);
    const auto t = series_mul(g, one_minus);
    CHECK(t.coeff({0}) == cplx(1.0));
    for (int k = 1; k <= 10; ++k) CHECK(t.coeff({k}) == cplx(0.0));

    CHECK_THROWS_AS(series_mul(TruncatedSeries(1, 3), TruncatedSeries(2, 3)), DimensionMismatch);

    std::mt19937_64 rng(9);
    for (int n = 1; n <= 3; ++n) {
        const int D = 12 - 2 * n;
        const auto x = random_series(rng, n, D), y = random_series(rng, n, D), z = random_series(rng, n, D);
        CHECK(max_rel_diff(series_mul(x, y), series_mul(y, x), 1.0) < 1e-14);
        CHECK(max_rel_diff(series_mul(series_mul(x, y), z), series_mul(x, series_mul(y, z)), 1.0) < 1e-13);
        CHECK(max_rel_diff(series_mul(x, TruncatedSeries::constant(n, D, 1.0)), x, 1.0) == 0.0);
    }
}

TEST_CASE("min truncation in products")
{
    const auto p = series_mul(TruncatedSeries::constant(2, 5, 2.0), TruncatedSeries::constant(2, 3, 3.0));
    CHECK(p.degree() == 3);
    CHECK(p.coeff({0, 0}) == cplx(6.0));
}

TEST_CASE("evaluate")
{
    TruncatedSeries g(1, 30);
    for (int k = 0; k <= 30; ++k) g.set({k}, 1.0);
    const auto e = evaluate(g, {0.5});
    CHECK(std::abs(e.value - 2.0) < 1e-8);
    CHECK(e.shell == doctest::Approx(std::pow(0.5, 30)));

    std::mt19937_64 rng(1);
    const auto r = random_series(rng, 3, 5);
    CHECK(evaluate(r, {0.0, 0.0, 0.0}).value == r[0]);

    // F(1,1,2;x) = -log(1-x)/x
    TruncatedSeries f(1, 40);
    for (int k = 0; k <= 40; ++k) f.set({k}, 1.0 / (k + 1.0));
    CHECK(std::abs(evaluate(f, {0.3}).value + std::log(0.7) / 0.3) < 1e-9);
}

TEST_CASE("evaluation is multiplicative up to the truncation shell")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (int n = 1; n <= 3; ++n) {
        const auto a = random_series(rng, n, 10), b = random_series(rng, n, 10);
        std::vector<cplx> x(n);
        for (auto& v : x) v = u(rng);
        const auto rhs = evaluate(a, x).value * evaluate(b, x).value;
        // zero padded operands give the exact product of the two polynomials
        const auto full = series_mul(a.truncated(20), b.truncated(20));
        CHECK(std::abs(evaluate(full, x).value - rhs) < 1e-13);
        // the truncated product misses exactly the terms above degree 10
        double dropped = 0.0;
        for (std::size_t k = full.index_set().degree_offset(11); k < full.size(); ++k) {
            cplx t = full[k];
            for (int v = 0; v < n; ++v) t *= std::pow(x[v], full.index(k)[v]);
            dropped += std::abs(t);
        }
        CHECK(std::abs(evaluate(series_mul(a, b), x).value - rhs) <= dropped + 1e-13);
    }
}

TEST_CASE("json round trip")
{
    std::mt19937_64 rng(2);
    auto s = random_series(rng, 2, 4);
    s.set({1, 1}, 0.0);
    const auto back = series_from_json(series_to_json(s));
    CHECK(back.nvars() == 2);
    CHECK(back.degree() == 4);
    CHECK(max_rel_diff(back, s, 1.0) == 0.0);
    CHECK(series_to_json(s).find("[1,1]") == std::string::npos);
    CHECK_THROWS_AS(series_from_json("{\"n\":1}"), ParseError);
}
