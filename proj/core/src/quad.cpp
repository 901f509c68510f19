#include "hyperflux/quad.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "hyperflux/errors.hpp"

namespace hyperflux {

namespace {

GaussRule build_rule(int points, double a, double b)
{
    // Jacobi weight (1-x)^al (1+x)^be on [-1,1]; t = (1+x)/2 gives t^a (1-t)^b
    const double al = b, be = a;
    Eigen::VectorXd diag(points), sub(std::max(points - 1, 1));
    for (int k = 0; k < points; ++k) {
        const double s = 2.0 * k + al + be;
        diag(k) = (k == 0) ? (be - al) / (al + be + 2.0) : (be * be - al * al) / (s * (s + 2.0));
    }
    for (int k = 1; k < points; ++k) {
        const double s = 2.0 * k + al + be;
        double bk;
        if (k == 1)
            bk = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + al + be) * (2.0 + al + be) * (3.0 + al + be));
        else
            bk = 4.0 * k * (k + al) * (k + be) * (k + al + be) / (s * s * (s + 1.0) * (s - 1.0));
        sub(k - 1) = std::sqrt(bk);
    }
    GaussRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    const double beta_fn = std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
    if (points == 1) {
        rule.nodes[0] = 0.5 * (1.0 + diag(0));
        rule.weights[0] = beta_fn;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(points - 1), Eigen::ComputeEigenvectors);
    for (int i = 0; i < points; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.nodes[i] = 0.5 * (1.0 + es.eigenvalues()(i));
        rule.weights[i] = beta_fn * v0 * v0;
    }
    return rule;
}

ComplexGaussRule build_complex_rule(int points, cplx a, cplx b)
{
    ComplexGaussRule rule;
    if (a.imag() == 0.0 && b.imag() == 0.0) {
        const auto& r = gauss_jacobi01(points, a.real(), b.real());
        rule.nodes.assign(r.nodes.begin(), r.nodes.end());
        rule.weights.assign(r.weights.begin(), r.weights.end());
        return rule;
    }
    const cplx al = b, be = a;
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(points, points);
    for (int k = 0; k < points; ++k) {
        const cplx s = 2.0 * k + al + be;
        J(k, k) = (k == 0) ? (be - al) / (al + be + 2.0) : (be * be - al * al) / (s * (s + 2.0));
    }
    for (int k = 1; k < points; ++k) {
        const cplx s = 2.0 * k + al + be;
        cplx bk;
        if (k == 1)
            bk = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + al + be) * (2.0 + al + be) * (3.0 + al + be));
        else
            bk = 4.0 * double(k) * (double(k) + al) * (double(k) + be) * (double(k) + al + be) /
                 (s * s * (s + 1.0) * (s - 1.0));
        J(k, k - 1) = J(k - 1, k) = std::sqrt(bk);
    }
    const cplx beta_fn = gamma_ratio({a + 1.0, b + 1.0}, {a + b + 2.0});
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(J, true);
    if (es.info() != Eigen::Success) throw ConvergenceError("gauss_jacobi01: eigen solver failed");
    // The eigensolver is not backward stable for complex symmetric J, so each
    // node is polished by Newton on the orthonormal recurrence and the weight
    // taken from the Christoffel sum 1 / sum_k p_k(t)^2.
    std::vector<cplx> diag(points), off(points);
    for (int k = 0; k < points; ++k) diag[k] = 0.5 * (1.0 + J(k, k));
    for (int k = 1; k < points; ++k) off[k] = 0.5 * J(k, k - 1);
    const cplx p0 = 1.0 / std::sqrt(beta_fn);
    auto recur = [&](cplx t, cplx& pn, cplx& dpn, cplx& christoffel) {
        cplx pm = 0.0, p = p0, dpm = 0.0, dp = 0.0;
        christoffel = p * p;
        for (int k = 0; k < points; ++k) {
            const cplx up = (k + 1 < points) ? off[k + 1] : cplx(1.0);
            const cplx pk = ((t - diag[k]) * p - off[k] * pm) / up;
            const cplx dk = (p + (t - diag[k]) * dp - off[k] * dpm) / up;
            pm = p, p = pk, dpm = dp, dp = dk;
            if (k + 1 < points) christoffel += p * p;
        }
        pn = p, dpn = dp;
    };
    rule.nodes.resize(points);
    rule.weights.resize(points);
    for (int i = 0; i < points; ++i) {
        cplx t = 0.5 * (1.0 + es.eigenvalues()(i)), pn, dpn, chr;
        for (int it = 0; it < 3; ++it) {
            recur(t, pn, dpn, chr);
            const cplx step = pn / dpn;
            t -= step;
            if (std::abs(step) < 1e-17) break;
        }
        recur(t, pn, dpn, chr);
        rule.nodes[i] = t;
        rule.weights[i] = 1.0 / chr;
    }
    return rule;
}

template <class Eval>
QuadResult doubling(const QuadOptions& opt, Eval eval)
{
    int n = opt.start_points;
    cplx prev = eval(n);
    QuadResult r{prev, std::numeric_limits<double>::infinity(), n};
    while (n < opt.max_points) {
        n *= 2;
        const cplx cur = eval(n);
        r = {cur, std::abs(cur - prev), n};
        if (r.change <= opt.self_tol * std::max(std::abs(cur), 1e-300)) break;
        prev = cur;
    }
    return r;
}

} // namespace

const GaussRule& gauss_jacobi01(int points, double a, double b)
{
    if (points < 1) throw DomainError("gauss_jacobi01: need at least one point");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi01: exponents must exceed -1");
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{points, a, b}];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(points, a, b));
    return *slot;
}

const ComplexGaussRule& gauss_jacobi01(int points, cplx a, cplx b)
{
    if (points < 1) throw DomainError("gauss_jacobi01: need at least one point");
    if (!(a.real() > -1.0) || !(b.real() > -1.0)) throw DomainError("gauss_jacobi01: exponents must have Re > -1");
    static std::mutex mu;
    static std::map<std::tuple<int, double, double, double, double>, std::unique_ptr<ComplexGaussRule>> cache;
    const std::tuple<int, double, double, double, double> key{points, a.real(), a.imag(), b.real(), b.imag()};
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<ComplexGaussRule>(build_complex_rule(points, a, b));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (!slot) slot = std::move(built);
    return *slot;
}

QuadResult riemann_liouville(const Fn1& f, double c, cplx mu, double x, cplx rho, const QuadOptions& opt)
{
    if (mu.real() <= 0.0) throw DomainError("riemann_liouville: Re mu must be positive");
    if (rho.real() <= -1.0) throw DomainError("riemann_liouville: endpoint power must have Re > -1");
    if (!(x > c)) {
        if (x == c) return {0.0, 0.0, 0};
        throw DomainError("riemann_liouville: need x > c");
    }
    const double h = x - c;
    const cplx pre = std::pow(cplx(h), rho + mu) / gamma_fn(mu);
    return doubling(opt, [&](int n) {
        const auto& rule = gauss_jacobi01(n, rho, mu - 1.0);
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(c + h * rule.nodes[i]);
        return pre * acc;
    });
}

QuadResult simplex_integral_K(const std::function<cplx(const std::vector<cplx>&)>& f, cplx mu,
                              const std::vector<cplx>& lambda, const std::vector<cplx>& x, const QuadOptions& opt)
{
    const std::size_t n = lambda.size();
    if (n < 1 || n > 2) throw DimensionMismatch("simplex_integral_K supports one or two variables");
    if (x.size() != n) throw DimensionMismatch("simplex_integral_K: point length mismatch");
    if (mu.real() <= 0.0) throw DomainError("simplex_integral_K: Re mu must be positive");
    for (auto l : lambda)
        if (l.real() <= 0.0) throw DomainError("simplex_integral_K: Re lambda must be positive");
    const cplx inv_gmu = 1.0 / gamma_fn(mu);

    if (n == 1) {
        return doubling(opt, [&](int pts) {
            const auto& r = gauss_jacobi01(pts, lambda[0] - 1.0, mu - 1.0);
            cplx acc = 0.0;
            std::vector<cplx> arg(1);
            for (int i = 0; i < pts; ++i) {
                arg[0] = r.nodes[i] * x[0];
                acc += r.weights[i] * f(arg);
            }
            return inv_gmu * acc;
        });
    }
    // t2 = (1 - t1) s folds the triangle into the unit square
    const cplx outer_b = lambda[1] + mu - 1.0;
    return doubling(opt, [&](int pts) {
        const auto& ro = gauss_jacobi01(pts, lambda[0] - 1.0, outer_b);
        const auto& ri = gauss_jacobi01(pts, lambda[1] - 1.0, mu - 1.0);
        cplx acc = 0.0;
        std::vector<cplx> arg(2);
        for (int i = 0; i < pts; ++i) {
            const cplx t = ro.nodes[i];
            arg[0] = t * x[0];
            cplx inner = 0.0;
            for (int j = 0; j < pts; ++j) {
                arg[1] = (1.0 - t) * ri.nodes[j] * x[1];
                inner += ri.weights[j] * f(arg);
            }
            acc += ro.weights[i] * inner;
        }
        return inv_gmu * acc;
    });
}

namespace {

cplx series_value(const SeriesId& id, const std::vector<cplx>& point)
{
    return evaluate(build_direct(id), point).value;
}

cplx psum(const std::vector<cplx>& v)
{
    cplx s = 0.0;
    for (auto a : v) s += a;
    return s;
}

RepresentationCheck make(std::string name, cplx quad, cplx series)
{
    return {std::move(name), quad, series, std::abs(quad - series) / std::max(std::abs(series), 1e-300)};
}

} // namespace

std::vector<RepresentationCheck> verify_representation(const SeriesId& id, const std::vector<cplx>& point,
                                                       const QuadOptions& opt)
{
    id.validate();
    if (int(point.size()) != id.nvars()) throw DimensionMismatch("verify_representation: point length mismatch");
    const cplx series = series_value(id, point);
    std::vector<RepresentationCheck> out;
    using V = std::vector<cplx>;

    switch (id.kind) {
    case SeriesKind::Gauss: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), c = id.scalar("c");
        const auto k = simplex_integral_K([&](const V& t) { return std::pow(1.0 - t[0], -b); }, c - a, {a}, point, opt);
        out.push_back(make("euler-integral", gamma_ratio({c}, {a}) * k.value, series));
        // F(a,b,c;x) = Gamma(c)/Gamma(a) x^{1-c} I_0^{c-a} x^{a-1} (1-x)^{-b}
        if (point[0].imag() == 0.0 && point[0].real() > 0.0) {
            const double x = point[0].real();
            const auto rl = riemann_liouville([&](cplx t) { return std::pow(1.0 - t, -b); }, 0.0, c - a, x, a - 1.0, opt);
            out.push_back(make("riemann-liouville", gamma_ratio({c}, {a}) * std::pow(cplx(x), 1.0 - c) * rl.value, series));
        }
        break;
    }
    case SeriesKind::Kummer: {
        const cplx a = id.scalar("a"), c = id.scalar("c");
        const auto k = simplex_integral_K([&](const V& t) { return std::exp(t[0]); }, c - a, {a}, point, opt);
        out.push_back(make("euler-integral", gamma_ratio({c}, {a}) * k.value, series));
        break;
    }
    case SeriesKind::F1:
    case SeriesKind::FD: {
        cplx l0, mu;
        V l;
        if (id.kind == SeriesKind::F1) {
            l0 = id.scalar("a");
            l = {id.scalar("b"), id.scalar("bp")};
            mu = id.scalar("c");
        } else {
            l0 = id.scalar("l0");
            l = id.vec("l");
            mu = id.scalar("mu");
        }
        const auto k = simplex_integral_K([&](const V& t) { return std::pow(1.0 - psum(t), -l0); }, mu - psum(l), l,
                                          point, opt);
        out.push_back(make("simplex-K", gamma_ratio({mu}, l) * k.value, series));
        break;
    }
    case SeriesKind::FB:
    case SeriesKind::F3: {
        V l, lp;
        cplx mu;
        if (id.kind == SeriesKind::F3) {
            l = {id.scalar("a"), id.scalar("ap")};
            lp = {id.scalar("b"), id.scalar("bp")};
            mu = id.scalar("c");
        } else {
            l = id.vec("l");
            lp = id.vec("lp");
            mu = id.scalar("mu");
        }
        const auto k = simplex_integral_K(
            [&](const V& t) {
                cplx r = 1.0;
                for (std::size_t i = 0; i < t.size(); ++i) r *= std::pow(1.0 - t[i], -lp[i]);
                return r;
            },
            mu - psum(l), l, point, opt);
        out.push_back(make("simplex-K", gamma_ratio({mu}, l) * k.value, series));
        break;
    }
    case SeriesKind::Phi2: {
        const cplx b = id.scalar("b"), bp = id.scalar("bp"), c = id.scalar("c");
        const auto k = simplex_integral_K([&](const V& t) { return std::exp(t[0] + t[1]); }, c - b - bp, {b, bp},
                                          point, opt);
        out.push_back(make("simplex-K", gamma_ratio({c}, {b, bp}) * k.value, series));
        break;
    }
    case SeriesKind::FA:
    case SeriesKind::F2: {
        cplx l0;
        V mu, l;
        if (id.kind == SeriesKind::F2) {
            l0 = id.scalar("a");
            mu = {id.scalar("b"), id.scalar("bp")};
            l = {id.scalar("c"), id.scalar("cp")};
        } else {
            l0 = id.scalar("l0");
            mu = id.vec("mu");
            l = id.vec("l");
        }
        if (mu.size() > 2) break;
        // product of one-variable Euler integrals, one per coordinate
        for (std::size_t i = 0; i < mu.size(); ++i)
            if ((l[i] - mu[i]).real() <= 0.0 || mu[i].real() <= 0.0)
                throw DomainError("verify_representation: F_A integral needs Re mu_i > 0 and Re(l_i - mu_i) > 0");
        auto eval = [&](int pts) {
            std::vector<const ComplexGaussRule*> rules;
            for (std::size_t i = 0; i < mu.size(); ++i)
                rules.push_back(&gauss_jacobi01(pts, mu[i] - 1.0, l[i] - mu[i] - 1.0));
            cplx acc = 0.0;
            if (mu.size() == 1) {
                for (int i = 0; i < pts; ++i)
                    acc += rules[0]->weights[i] * std::pow(1.0 - rules[0]->nodes[i] * point[0], -l0);
            } else {
                for (int i = 0; i < pts; ++i)
                    for (int j = 0; j < pts; ++j)
                        acc += rules[0]->weights[i] * rules[1]->weights[j] *
                               std::pow(1.0 - rules[0]->nodes[i] * point[0] - rules[1]->nodes[j] * point[1], -l0);
            }
            V diff;
            for (std::size_t i = 0; i < mu.size(); ++i) diff.push_back(l[i] - mu[i]);
            V num = l;
            V den = mu;
            den.insert(den.end(), diff.begin(), diff.end());
            return gamma_ratio(num, den) * acc;
        };
        const auto r = doubling(opt, eval);
        out.push_back(make("product-K", r.value, series));
        break;
    }
    default:
        break;
    }
    return out;
}

} // namespace hyperflux
