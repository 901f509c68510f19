#include <doctest.h>

#include <random>

#include "hyperflux/errors.hpp"
#include "hyperflux/quad.hpp"
#include "hyperflux/transforms.hpp"
#include "mp_gamma.hpp"

using namespace hyperflux;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double worst(const std::vector<RepresentationCheck>& checks)
{
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
}

} // namespace

TEST_CASE("gauss-jacobi moments")
{
    for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, -0.5}, {-0.3, 0.8}, {1.7, -0.9}, {-0.95, 2.5}}) {
        const auto& r = gauss_jacobi01(16, a, b);
        for (int k = 0; k < 32; ++k) {
            double s = 0.0;
            for (int i = 0; i < 16; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            const cplx exact = oracle::mp_gamma_ratio({a + k + 1.0, b + 1.0}, {a + b + k + 2.0});
            CHECK(rel(s, exact) < 1e-13);
        }
        for (double t : r.nodes) CHECK((t > 0.0 && t < 1.0));
    }
    CHECK_THROWS_AS(gauss_jacobi01(8, -1.0, 0.0), DomainError);
    CHECK(&gauss_jacobi01(16, 0.0, 0.0) == &gauss_jacobi01(16, 0.0, 0.0));
}

TEST_CASE("riemann-liouville of monomials")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> re(0.2, 2.0), im(-1.0, 1.0), xs(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx mu(re(rng), im(rng)), rho(re(rng) - 0.5, im(rng));
        const double x = xs(rng);
        const auto r = riemann_liouville([](cplx) { return cplx(1.0); }, 0.0, mu, x, rho);
        const cplx exact = oracle::mp_gamma_ratio({rho + 1.0}, {rho + mu + 1.0}) * std::pow(cplx(x), rho + mu);
        CHECK(rel(r.value, exact) < 1e-8);
        CHECK(r.change <= 1e-13 * std::abs(r.value));
    }
    // shifted base point with regular integrand
    const cplx mu(0.6, 0.2);
    const auto r = riemann_liouville([](cplx t) { return (t - 0.5) * (t - 0.5); }, 0.5, mu, 1.25);
    const cplx exact = 2.0 / gamma_fn(mu + 3.0) * std::pow(cplx(0.75), mu + 2.0);
    CHECK(rel(r.value, exact) < 1e-10);
    CHECK(riemann_liouville([](cplx) { return cplx(1.0); }, 0.0, mu, 0.0).value == 0.0);
    CHECK_THROWS_AS(riemann_liouville([](cplx) { return cplx(1.0); }, 0.0, cplx(0.0, 1.0), 1.0), DomainError);
    CHECK_THROWS_AS(riemann_liouville([](cplx) { return cplx(1.0); }, 1.0, 0.5, 0.5), DomainError);
}

TEST_CASE("simplex integral of monomials matches the K multiplier")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> re(0.3, 1.5), im(-0.7, 0.7), xs(-0.9, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 2;
        const cplx mu(re(rng), im(rng));
        std::vector<cplx> lambda, x;
        MultiIndex m;
        for (int i = 0; i < n; ++i) {
            lambda.emplace_back(re(rng), im(rng));
            x.emplace_back(xs(rng), 0.0);
            m.push_back(int(rng() % 4));
        }
        const auto q = simplex_integral_K(
            [&](const std::vector<cplx>& t) {
                cplx r = 1.0;
                for (int i = 0; i < n; ++i) r *= std::pow(t[i], m[i]);
                return r;
            },
            mu, lambda, x);
        cplx mono = 1.0;
        for (int i = 0; i < n; ++i) mono *= std::pow(x[i], m[i]);
        const cplx expect = multiplier_K(TransformSpec::full(mu, lambda), m) * mono;
        CHECK(rel(q.value, expect) < 1e-6);
        CHECK(q.change <= 1e-13 * std::abs(q.value));
    }
    CHECK_THROWS_AS(simplex_integral_K([](const std::vector<cplx>&) { return cplx(1.0); }, -0.5, {1.0}, {0.5}),
                    DomainError);
    CHECK_THROWS_AS(simplex_integral_K([](const std::vector<cplx>&) { return cplx(1.0); }, 0.5, {1.0, 1.0, 1.0},
                                       {0.1, 0.1, 0.1}),
                    DimensionMismatch);
}

TEST_CASE("gauss euler and riemann-liouville representations")
{
    const SeriesId id{SeriesKind::Gauss, 80, {{"a", {0.7}}, {"b", {cplx(0.4, 0.3)}}, {"c", {1.9}}}};
    for (double x : {0.1, 0.3, 0.5}) {
        const auto checks = verify_representation(id, {x});
        REQUIRE(checks.size() == 2);
        CHECK(worst(checks) < 1e-6);
    }
}

TEST_CASE("two-variable integral representations")
{
    const SeriesId f1{SeriesKind::F1, 60, {{"a", {0.5}}, {"b", {0.7}}, {"bp", {0.9}}, {"c", {2.4}}}};
    const auto c1 = verify_representation(f1, {0.1, 0.2});
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].residual < 1e-6);

    const SeriesId fd{SeriesKind::FD, 60, {{"l0", {cplx(0.3, 0.2)}}, {"l", {0.8, 1.1}}, {"mu", {2.6}}}, 2};
    CHECK(worst(verify_representation(fd, {0.2, -0.3})) < 1e-8);

    const SeriesId f3{SeriesKind::F3, 60,
                      {{"a", {0.6}}, {"ap", {0.8}}, {"b", {0.4}}, {"bp", {cplx(0.5, 0.1)}}, {"c", {2.3}}}};
    CHECK(worst(verify_representation(f3, {0.2, 0.3})) < 1e-8);

    const SeriesId phi{SeriesKind::Phi2, 60, {{"b", {0.9}}, {"bp", {1.2}}, {"c", {cplx(2.8, 0.4)}}}};
    CHECK(worst(verify_representation(phi, {0.5, -0.7})) < 1e-8);

    const SeriesId f2{SeriesKind::F2, 80,
                      {{"a", {0.6}}, {"b", {0.7}}, {"bp", {0.8}}, {"c", {1.9}}, {"cp", {cplx(2.1, 0.3)}}}};
    CHECK(worst(verify_representation(f2, {0.2, 0.25})) < 1e-8);

    const SeriesId kum{SeriesKind::Kummer, 60, {{"a", {0.8}}, {"c", {2.1}}}};
    CHECK(worst(verify_representation(kum, {1.5})) < 1e-8);

    const SeriesId bad{SeriesKind::F1, 20, {{"a", {0.5}}, {"b", {0.7}}, {"bp", {0.9}}, {"c", {1.2}}}};
    CHECK_THROWS_AS(verify_representation(bad, {0.1, 0.2}), DomainError);
}

TEST_CASE("complex gauss-jacobi moments")
{
    for (auto [a, b] : {std::pair{cplx(0.2, 0.7), cplx(-0.4, -0.3)}, {cplx(-0.6, 1.1), cplx(1.3, 0.0)}}) {
        for (int n : {16, 128}) {
            const auto& r = gauss_jacobi01(n, a, b);
            for (int k = 0; k < 24; ++k) {
                cplx s = 0.0;
                for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
                const cplx exact = oracle::mp_gamma_ratio({a + double(k) + 1.0, b + 1.0}, {a + b + double(k) + 2.0});
                CHECK(rel(s, exact) < 1e-13);
            }
        }
    }
    CHECK_THROWS_AS(gauss_jacobi01(8, cplx(-1.2, 0.5), cplx(0.0)), DomainError);
}
