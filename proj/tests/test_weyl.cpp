#include <doctest.h>

#include <random>

#include "hyperflux/catalog.hpp"
#include "hyperflux/errors.hpp"
#include "hyperflux/quad.hpp"
#include "hyperflux/transforms.hpp"
#include "hyperflux/weyl.hpp"
#include "weyl_cases.hpp"

using namespace hyperflux;
using hyperflux::testing::annihilation_residual;

namespace {

WeylOperator X(int n, int i, int p = 1) { return WeylOperator::x(n, i, p); }
WeylOperator Dd(int n, int i, int p = 1) { return WeylOperator::d(n, i, p); }
WeylOperator T(int n, int i) { return WeylOperator::theta(n, i); }
WeylOperator C(int n, cplx c) { return WeylOperator::constant(n, c); }

WeylOperator random_op(std::mt19937_64& rng, int n, bool integer = true)
{
    std::uniform_int_distribution<int> deg(0, 3), coef(-4, 4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    WeylOperator r(n);
    const int terms = 1 + int(rng() % 5);
    for (int t = 0; t < terms; ++t) {
        MultiIndex a(n), b(n);
        for (int j = 0; j < n; ++j) a[j] = deg(rng), b[j] = deg(rng);
        r.add(a, b, integer ? cplx(coef(rng), coef(rng)) : cplx(u(rng), u(rng)));
    }
    return r;
}

TruncatedSeries random_series(std::mt19937_64& rng, int n, int D)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TruncatedSeries s(n, D);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = cplx(u(rng), u(rng));
    return s;
}

double series_diff(const TruncatedSeries& a, const TruncatedSeries& b, int upto)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (total_degree(a.index(k)) <= upto) m = std::max(m, std::abs(a[k] - b.coeff(a.index(k))));
    return m;
}

} // namespace

TEST_CASE("normal ordering")
{
    CHECK(compose(Dd(1, 0), X(1, 0)) == T(1, 0) + C(1, 1.0));
    CHECK(compose(X(1, 0), Dd(1, 0)) == T(1, 0));
    // d theta = x d^2 + d
    CHECK(compose(Dd(1, 0), T(1, 0)) == WeylOperator::monomial(1, {1}, {2}) + Dd(1, 0));
    CHECK(compose(T(1, 0) + C(1, 1.0), Dd(1, 0)) == compose(Dd(1, 0), T(1, 0)));
    // variables commute
    CHECK(compose(Dd(2, 0), X(2, 1)) == compose(X(2, 1), Dd(2, 0)));
    CHECK_THROWS_AS(compose(Dd(1, 0), Dd(2, 0)), DimensionMismatch);
}

TEST_CASE("composition is associative and acts faithfully")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 2;
        const auto a = random_op(rng, n), b = random_op(rng, n), c = random_op(rng, n);
        CHECK(compose(a, compose(b, c)) == compose(compose(a, b), c));

        const auto u = random_series(rng, n, 12);
        const auto ab = apply_to_series(compose(a, b), u);
        const auto seq = apply_to_series(a, apply_to_series(b, u));
        const int upto = std::min(ab.reliable_degree(), seq.reliable_degree());
        if (upto >= 0) CHECK(series_diff(ab, seq, upto) <= 1e-13 * std::max(1.0, max_abs(ab)));
    }
}

TEST_CASE("action on series")
{
    TruncatedSeries u(2, 6);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = double(k + 1);
    const auto t = apply_to_series(T(2, 0), u);
    for (std::size_t k = 0; k < u.size(); ++k) CHECK(t[k] == double(u.index(k)[0]) * u[k]);
    CHECK(t.reliable_degree() == 6);
    const auto d = apply_to_series(Dd(2, 1, 2), u);
    CHECK(d.reliable_degree() == 4);
    CHECK(d.coeff({1, 0}) == 2.0 * u.coeff({1, 2}));
    CHECK_THROWS_AS(apply_to_series(Dd(1, 0), u), DimensionMismatch);
    CHECK_THROWS_AS(apply_to_series(X(2, 0, -1), u), DomainError);
}

TEST_CASE("theta forms")
{
    auto r = to_theta_form(T(1, 0));
    CHECK(r.gamma == MultiIndex{0});
    CHECK(r.form.to_weyl() == T(1, 0));

    r = to_theta_form(X(1, 0));
    CHECK(r.gamma == MultiIndex{1});
    CHECK(r.form.to_weyl() == T(1, 0) + C(1, 1.0));

    r = to_theta_form(X(1, 0, 2));
    CHECK(r.gamma == MultiIndex{2});
    CHECK(r.form.to_weyl() == compose(T(1, 0) + C(1, 1.0), T(1, 0) + C(1, 2.0)));

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 2;
        const auto p = random_op(rng, n);
        const auto tf = to_theta_form(p);
        WeylOperator dg = C(n, 1.0);
        for (int j = 0; j < n; ++j) dg = compose(dg, Dd(n, j, tf.gamma[j]));
        CHECK(tf.form.to_weyl() == compose(dg, p));
        for (const auto& [key, c] : tf.form.terms())
            for (int j : key.first) CHECK(j >= 0);
    }
}

TEST_CASE("reduced representative")
{
    const cplx a(0.4, 0.2);
    CHECK(reduced_representative(compose(X(1, 0), T(1, 0) - C(1, a))) == T(1, 0) - C(1, a));
    CHECK(reduced_representative(3.0 * Dd(1, 0)) == Dd(1, 0));
    CHECK(reduced_representative(WeylOperator::monomial(1, {2}, {1}) + X(1, 0)) == T(1, 0) + C(1, 1.0));
    CHECK(reduced_representative(WeylOperator::monomial(1, {-2}, {1}) + X(1, 0, -1)) == Dd(1, 0) + X(1, 0));
    CHECK_THROWS_AS(reduced_representative(WeylOperator(2)), ZeroOperator);
}

TEST_CASE("middle convolution")
{
    const cplx alpha(0.3, 0.1), mu(0.7, -0.2);
    auto mc = middle_convolution(T(1, 0) - C(1, alpha), mu);
    CHECK(max_abs_diff(mc.op, T(1, 0) - C(1, alpha + mu)) < 1e-14);
    CHECK_FALSE(mc.degenerate);

    mc = middle_convolution(Dd(1, 0), mu);
    CHECK(mc.op == C(1, 1.0));
    CHECK(mc.m == 1);
    CHECK(mc.degenerate);

    // Gauss operator x(1-x) d^2 + (c - (a+b+1)x) d - ab
    const cplx a(0.3, 0.2), b(0.6, -0.1), c(1.4, 0.3);
    const WeylOperator gauss = WeylOperator::monomial(1, {1}, {2}) - WeylOperator::monomial(1, {2}, {2}) +
                               c * Dd(1, 0) - (a + b + 1.0) * T(1, 0) - C(1, a * b);
    CHECK(max_abs_diff(middle_convolution(gauss, 0.0).op, reduced_representative(gauss)) < 1e-14);

    const SeriesId gid{SeriesKind::Gauss, 30, {{"a", {a}}, {"b", {b}}, {"c", {c}}}};
    CHECK(annihilation_residual(gauss, build_direct(gid)) < 1e-13);

    // mc_mu(P) kills I_0^mu u for the solution u = x^rho s(x), rho = 1 - c, whose
    // boundary terms at 0 vanish; I_0^mu x^{rho+m} = Gamma(rho+m+1)/Gamma(rho+m+mu+1) x^{rho+m+mu}
    const cplx rho = 1.0 - c;
    const auto s = build_direct({SeriesKind::Gauss, 30, {{"a", {a + rho}}, {"b", {b + rho}}, {"c", {1.0 + rho}}}});
    CHECK(annihilation_residual(monomial_addition(gauss, {-rho}), s) < 1e-13);
    TruncatedSeries v(1, 30);
    for (int m = 0; m <= 30; ++m)
        v.set({m}, s.coeff({m}) * gamma_ratio({rho + double(m) + 1.0}, {rho + double(m) + mu + 1.0}));
    mc = middle_convolution(gauss, mu);
    CHECK(mc.op.order() == 2);
    CHECK(annihilation_residual(monomial_addition(mc.op, {-rho - mu}), v) < 1e-12);
    CHECK_THROWS_AS(middle_convolution(Dd(2, 0), mu), DimensionMismatch);
}

TEST_CASE("riemann-liouville commutes theta to theta - mu")
{
    // I^mu(theta f) = (theta - mu) I^mu f for f = exp, with I^mu exp = x^mu sum x^k / Gamma(k+mu+1)
    for (cplx mu : {cplx(0.5, 0.0), cplx(1.3, 0.4), cplx(0.8, -0.6)})
        for (double x : {0.3, 0.9, 1.7}) {
            const auto lhs = riemann_liouville([](cplx t) { return t * std::exp(t); }, 0.0, mu, x);
            cplx rhs = 0.0;
            for (int k = 1; k < 80; ++k) rhs += double(k) * std::pow(x, k) / gamma_fn(double(k) + mu + 1.0);
            rhs *= std::pow(cplx(x), mu);
            CHECK(std::abs(lhs.value - rhs) / std::abs(rhs) < 1e-8);
        }
}

TEST_CASE("additions")
{
    const cplx lam(0.6, 0.3), a(0.45, -0.2);
    CHECK(max_abs_diff(addition(T(1, 0), AdditionParams::power_at_c(0, 0.0, lam)), T(1, 0) - C(1, lam)) < 1e-15);
    // Ad((x-1)^{-a}) d = d + a/(x-1), reduced: (x-1) d + a, scaled to leading 1
    CHECK(max_abs_diff(addition(Dd(1, 0), AdditionParams::power_at_c(0, 1.0, -a)),
                       T(1, 0) - Dd(1, 0) + C(1, a)) < 1e-15);
    CHECK(addition(Dd(1, 0), AdditionParams::exp_poly({{{1}, 1.0}})) == Dd(1, 0) - C(1, 1.0));

    // product rule oracle: (1-x)^{-a} kills nothing new, Ad(f)P kills f u
    const cplx b(0.7, 0.1);
    const WeylOperator p = Dd(1, 0) - T(1, 0) - C(1, b); // (1-x) d - b kills (1-x)^{-b}
    const auto fu = elementary_factor(FactorKind::binomial_per_var, {a + b}, 1, 25);
    CHECK(annihilation_residual(addition(p, AdditionParams::power_at_c(0, 1.0, -a)), fu) < 1e-13);

    // exp(x + y) from the constant 1 killed by d_x
    const auto e = elementary_factor(FactorKind::exponential_sum, {}, 2, 20);
    const auto r = AdditionParams::exp_poly({{{1, 0}, 1.0}, {{0, 1}, 1.0}});
    CHECK(annihilation_residual(addition(Dd(2, 0), r), e) < 1e-14);
    CHECK(annihilation_residual(addition(Dd(2, 1), r), e) < 1e-14);
    CHECK_THROWS_AS(addition(Dd(2, 0), AdditionParams::power_at_c(3, 0.0, lam)), DimensionMismatch);
}

TEST_CASE("tilde is an involution")
{
    CHECK(tilde(T(1, 0)) == C(1, -1.0) - T(1, 0));
    CHECK(tilde(Dd(1, 0)) == -1.0 * (WeylOperator::monomial(1, {2}, {1}) + X(1, 0)));
    CHECK(tilde(X(1, 0)) == X(1, 0, -1));
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_op(rng, 2);
        CHECK(tilde(tilde(p)) == p);
        const auto q = random_op(rng, 2);
        CHECK(tilde(compose(p, q)) == compose(tilde(p), tilde(q)));
    }
}

TEST_CASE("operator transforms on single terms")
{
    const cplx mu(0.7, 0.25);
    ThetaForm th(1);
    th.add({0}, {1}, 1.0);
    // R clears the left factor x of theta = x d
    CHECK(reduced_representative(T(1, 0)) == Dd(1, 0));
    CHECK(transform_op(th, mu, Direction::K) == Dd(1, 0));
    ThetaForm d(1);
    d.add({1}, {0}, 1.0);
    CHECK(max_abs_diff(transform_op(d, mu, Direction::K), T(1, 0) + C(1, mu)) < 1e-15);
    // L: theta -> -theta - 1, and the tilde of theta is -theta - 1 again
    CHECK(transform_op(th, mu, Direction::L) == T(1, 0) + C(1, 1.0));
    CHECK(transform_annihilator(T(1, 0), mu, {1.0}, Direction::L) == Dd(1, 0));

    // K^mu d = (1/x)(theta + mu) K^mu on monomials
    const auto spec = TransformSpec::full(mu, {1.0});
    for (int m = 1; m < 8; ++m) {
        const auto lhs = apply_K(apply_to_series(Dd(1, 0), TruncatedSeries::monomial(1, 10, {m})), spec);
        const auto k = apply_K(TruncatedSeries::monomial(1, 10, {m}), spec);
        const cplx rhs = (double(m) + mu) * k.coeff({m});
        CHECK(std::abs(lhs.coeff({m - 1}) - rhs) < 1e-13 * std::abs(rhs));
    }
}

TEST_CASE("appell systems annihilate their series")
{
    const int n = 2, D = 30;
    const auto tx = T(n, 0), ty = T(n, 1), dx = Dd(n, 0), dy = Dd(n, 1);
    const auto c = [&](cplx v) { return C(n, v); };
    std::mt19937_64 rng(21);
    auto p = [&] { return hyperflux::testing::draw_param(rng); };
    for (int trial = 0; trial < 5; ++trial) {
        {
            const cplx l0 = p(), l1 = p(), l2 = p(), mu = p() + 1.0;
            const auto u = build_direct({SeriesKind::F1, D, {{"a", {l0}}, {"b", {l1}}, {"bp", {l2}}, {"c", {mu}}}});
            const auto e1 = (tx + c(l1)) * (tx + ty + c(l0)) - dx * (tx + ty + c(mu - 1.0));
            const auto e2 = (ty + c(l2)) * (tx + ty + c(l0)) - dy * (tx + ty + c(mu - 1.0));
            CHECK(annihilation_residual(e1, u) < 1e-12);
            CHECK(annihilation_residual(e2, u) < 1e-12);
        }
        {
            const cplx l0 = p(), m1 = p(), m2 = p(), l1 = p() + 1.0, l2 = p() + 1.0;
            const auto u = build_direct(
                {SeriesKind::F2, D, {{"a", {l0}}, {"b", {m1}}, {"bp", {m2}}, {"c", {l1}}, {"cp", {l2}}}});
            CHECK(annihilation_residual((tx + c(m1)) * (tx + ty + c(l0)) - dx * (tx + c(l1 - 1.0)), u) < 1e-12);
            CHECK(annihilation_residual((ty + c(m2)) * (tx + ty + c(l0)) - dy * (ty + c(l2 - 1.0)), u) < 1e-12);
        }
        {
            const cplx l1 = p(), l2 = p(), l1p = p(), l2p = p(), mu = p() + 1.0;
            const auto u = build_direct(
                {SeriesKind::F3, D, {{"a", {l1}}, {"ap", {l2}}, {"b", {l1p}}, {"bp", {l2p}}, {"c", {mu}}}});
            CHECK(annihilation_residual((tx + c(l1)) * (tx + c(l1p)) - dx * (tx + ty + c(mu - 1.0)), u) < 1e-12);
            CHECK(annihilation_residual((ty + c(l2)) * (ty + c(l2p)) - dy * (tx + ty + c(mu - 1.0)), u) < 1e-12);
            // the second equation with theta_x in the second factor does not hold
            CHECK(annihilation_residual((ty + c(l2)) * (tx + c(l2p)) - dy * (tx + ty + c(mu - 1.0)), u) > 1e-3);
        }
        {
            const cplx mu = p(), l0 = p(), l1 = p() + 1.0, l2 = p() + 1.0;
            const auto u =
                build_direct({SeriesKind::F4, D, {{"a", {mu}}, {"b", {l0}}, {"c", {l1}}, {"cp", {l2}}}});
            const auto s = (tx + ty + c(mu)) * (tx + ty + c(l0));
            CHECK(annihilation_residual(s - dx * (tx + c(l1 - 1.0)), u) < 1e-12);
            CHECK(annihilation_residual(s - dy * (ty + c(l2 - 1.0)), u) < 1e-12);
        }
    }
}

TEST_CASE("F1 system from the K transform of (1-x-y)^{-l0}")
{
    const int n = 2, D = 24;
    const cplx l0(0.4, 0.1), l1(0.7, -0.2), l2(0.9, 0.3), mu(2.6, 0.1);
    const auto one = C(n, 1.0);
    const auto P = (one - X(n, 0) - X(n, 1)) * Dd(n, 0) - l0 * one;
    const auto q = transform_annihilator(P, mu - l1 - l2, {l1, l2}, Direction::K);
    const auto f1 = build_direct({SeriesKind::F1, D, {{"a", {l0}}, {"b", {l1}}, {"bp", {l2}}, {"c", {mu}}}});
    CHECK(annihilation_residual(q, f1) < 1e-12);
}

TEST_CASE("transformed annihilators kill transformed series")
{
    std::mt19937_64 rng(99);
    for (int k = 0; k < 24; ++k) {
        const auto inst = hyperflux::testing::pkl_instance(rng, k, 20);
        CHECK(annihilation_residual(inst.p, inst.u) < 1e-13);
        CHECK(hyperflux::testing::pkl_residual(inst) < 1e-10);
    }
}

TEST_CASE("serialization and parsing")
{
    const auto p = parse_weyl("x1^2*d1 + 3*t2");
    CHECK(p.nvars() == 2);
    CHECK(p == WeylOperator::monomial(2, {2, 0}, {1, 0}) + 3.0 * T(2, 1));
    const auto q = parse_weyl("(t1 + 0.5i)*(t1 - 2) - d2^2 + -1.5e-1*x1", 2);
    CHECK(q == compose(T(2, 0) + C(2, cplx(0, 0.5)), T(2, 0) - C(2, 2.0)) - Dd(2, 1, 2) - 0.15 * X(2, 0));
    CHECK(parse_weyl(to_string(q), 2) == q);
    CHECK(weyl_from_json(weyl_to_json(q)) == q);
    CHECK_THROWS_AS(parse_weyl("x1 + ", 1), ParseError);
    CHECK_THROWS_AS(parse_weyl("x3", 2), ParseError);
    CHECK_THROWS_AS(parse_weyl("y1"), ParseError);
    CHECK_THROWS_AS(weyl_from_json("{\"n\":1}"), ParseError);
}
