#include "hyperflux/catalog.hpp"

#include <cmath>
#include <functional>

#include "hyperflux/errors.hpp"
#include "hyperflux/transforms.hpp"

namespace hyperflux {

namespace {

struct KindInfo {
    SeriesKind kind;
    const char* name;
    int nvars; // 0: taken from SeriesId::n
};

constexpr KindInfo kinds[] = {
    {SeriesKind::FA, "FA", 0},          {SeriesKind::FB, "FB", 0},
    {SeriesKind::FC, "FC", 0},          {SeriesKind::FD, "FD", 0},
    {SeriesKind::F1, "F1", 2},          {SeriesKind::F2, "F2", 2},
    {SeriesKind::F3, "F3", 2},          {SeriesKind::F4, "F4", 2},
    {SeriesKind::Gauss, "Gauss", 1},    {SeriesKind::Kummer, "Kummer", 1},
    {SeriesKind::Phi2, "Phi2", 2},      {SeriesKind::Psi1, "Psi1", 2},
    {SeriesKind::Psi2, "Psi2", 2},      {SeriesKind::G2, "G2", 2},
    {SeriesKind::GeneralPQR, "GeneralPQR", 2}, {SeriesKind::GeneralHorn, "GeneralHorn", 2},
    {SeriesKind::S211, "S211", 1},
};

const KindInfo& info(SeriesKind k)
{
    for (const auto& i : kinds)
        if (i.kind == k) return i;
    throw ArityError("unknown series kind");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

double mfact(const MultiIndex& m)
{
    double f = 1.0;
    for (int v : m) f *= factorial(v);
    return f;
}

// (c)_k in a denominator; zero means the series does not exist at m
cplx den_poch(cplx c, int k, const MultiIndex& m)
{
    const cplx p = pochhammer(c, k);
    if (p == cplx(0.0) || (is_gamma_pole(c) && k > -std::lround(c.real())))
        throw ResonanceError("series resonance: denominator Pochhammer vanishes", m);
    return p;
}

// (a)_k for any integer k, with (a)_{-k} = 1/(a-k)_k
cplx signed_poch(cplx a, int k, const MultiIndex& m)
{
    if (k >= 0) return pochhammer(a, k);
    return 1.0 / den_poch(a - double(-k), -k, m);
}

cplx prod_poch(const std::vector<cplx>& v, int k)
{
    cplx r = 1.0;
    for (auto a : v) r *= pochhammer(a, k);
    return r;
}

cplx prod_den(const std::vector<cplx>& v, int k, const MultiIndex& m)
{
    cplx r = 1.0;
    for (auto a : v) r *= den_poch(a, k, m);
    return r;
}

cplx sum(const std::vector<cplx>& v)
{
    cplx s = 0.0;
    for (auto a : v) s += a;
    return s;
}

TruncatedSeries from_law(int n, int D, const std::function<cplx(const MultiIndex&)>& law)
{
    TruncatedSeries s(n, D);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = law(s.index(k));
    return s;
}

// one-variable series placed in variable `var` of an n-variable series
TruncatedSeries embed(const TruncatedSeries& one, int var, int n)
{
    TruncatedSeries s(n, one.degree());
    for (int k = 0; k <= one.degree(); ++k) {
        MultiIndex m(n, 0);
        m[var] = k;
        s.set(m, one.coeff({k}));
    }
    return s;
}

std::vector<cplx> pair(cplx a, cplx b) { return {a, b}; }

} // namespace

std::string to_string(SeriesKind k) { return info(k).name; }

SeriesKind series_kind_from_string(const std::string& s)
{
    for (const auto& i : kinds)
        if (s == i.name) return i.kind;
    throw ParseError("unknown series kind: " + s);
}

cplx SeriesId::scalar(const std::string& name) const
{
    const auto& v = vec(name);
    if (v.size() != 1) throw ArityError("parameter " + name + " must be a scalar");
    return v[0];
}

const std::vector<cplx>& SeriesId::vec(const std::string& name) const
{
    const auto it = params.find(name);
    if (it == params.end()) throw ArityError(to_string(kind) + ": missing parameter " + name);
    return it->second;
}

int SeriesId::nvars() const
{
    const int fixed = info(kind).nvars;
    return fixed ? fixed : n;
}

void SeriesId::validate() const
{
    if (D < 0) throw TruncationError("negative truncation degree");
    const int nv = nvars();
    if (nv < 1) throw ArityError("series needs at least one variable");
    auto need = [&](std::initializer_list<const char*> scalars, std::initializer_list<const char*> vectors,
                    std::size_t len) {
        std::size_t expected = scalars.size() + vectors.size();
        for (auto s : scalars) scalar(s);
        for (auto v : vectors)
            if (vec(v).size() != len)
                throw ArityError(to_string(kind) + ": parameter " + v + " needs " + std::to_string(len) + " entries");
        if (params.size() != expected) throw ArityError(to_string(kind) + ": unexpected extra parameters");
    };
    const std::size_t n = std::size_t(nv);
    switch (kind) {
    case SeriesKind::FA: need({"l0"}, {"mu", "l"}, n); break;
    case SeriesKind::FB: need({"mu"}, {"l", "lp"}, n); break;
    case SeriesKind::FC: need({"mu", "l0"}, {"l"}, n); break;
    case SeriesKind::FD: need({"l0", "mu"}, {"l"}, n); break;
    case SeriesKind::F1: need({"a", "b", "bp", "c"}, {}, 0); break;
    case SeriesKind::F2: need({"a", "b", "bp", "c", "cp"}, {}, 0); break;
    case SeriesKind::F3: need({"a", "ap", "b", "bp", "c"}, {}, 0); break;
    case SeriesKind::F4: need({"a", "b", "c", "cp"}, {}, 0); break;
    case SeriesKind::Gauss: need({"a", "b", "c"}, {}, 0); break;
    case SeriesKind::Kummer: need({"a", "c"}, {}, 0); break;
    case SeriesKind::Phi2: need({"b", "bp", "c"}, {}, 0); break;
    case SeriesKind::Psi1: need({"a", "b", "c", "cp"}, {}, 0); break;
    case SeriesKind::Psi2: need({"a", "c", "cp"}, {}, 0); break;
    case SeriesKind::G2: need({"a", "b", "c", "d"}, {}, 0); break;
    case SeriesKind::S211: need({"a1", "a2", "b1", "b2", "g1", "g2"}, {}, 0); break;
    case SeriesKind::GeneralPQR: {
        if (params.size() != 6) throw ArityError("GeneralPQR takes alpha, alphap, beta, betap, gamma, gammap");
        const auto p = vec("alpha").size(), q = vec("beta").size(), r = vec("gamma").size();
        if (p < 1 || q < 1 || r < 1) throw ArityError("GeneralPQR needs p, q, r >= 1");
        if (vec("alphap").size() != p || vec("betap").size() != q || vec("gammap").size() != r)
            throw ArityError("GeneralPQR primed parameter lengths must match");
        if (std::abs(vec("alphap")[0]) > 1e-14 || std::abs(vec("betap")[0]) > 1e-14)
            throw DomainError("GeneralPQR requires alphap_1 = betap_1 = 0");
        break;
    }
    case SeriesKind::GeneralHorn: {
        if (params.size() != 6) throw ArityError("GeneralHorn takes a, b, c, ap, bp, cp");
        const long K = long(vec("a").size()), M = long(vec("b").size()), N = long(vec("c").size());
        const long K1 = long(vec("ap").size()), M1 = long(vec("bp").size()), N1 = long(vec("cp").size());
        if ((K + M) - (K1 + M1) != 1 || (K + N) - (K1 + N1) != 1)
            throw ArityError("GeneralHorn needs (K+M)-(K'+M') = (K+N)-(K'+N') = 1");
        break;
    }
    }
}

TruncatedSeries build_direct(const SeriesId& id)
{
    id.validate();
    const int n = id.nvars();
    const int D = id.D;
    switch (id.kind) {
    case SeriesKind::FA: {
        const cplx l0 = id.scalar("l0");
        const auto &mu = id.vec("mu"), &l = id.vec("l");
        return from_law(n, D, [&](const MultiIndex& m) {
            cplx c = pochhammer(l0, total_degree(m));
            for (int i = 0; i < n; ++i) c *= pochhammer(mu[i], m[i]) / den_poch(l[i], m[i], m);
            return c / mfact(m);
        });
    }
    case SeriesKind::FB: {
        const cplx mu = id.scalar("mu");
        const auto &l = id.vec("l"), &lp = id.vec("lp");
        return from_law(n, D, [&](const MultiIndex& m) {
            cplx c = 1.0 / den_poch(mu, total_degree(m), m);
            for (int i = 0; i < n; ++i) c *= pochhammer(l[i], m[i]) * pochhammer(lp[i], m[i]);
            return c / mfact(m);
        });
    }
    case SeriesKind::FC: {
        const cplx mu = id.scalar("mu"), l0 = id.scalar("l0");
        const auto& l = id.vec("l");
        return from_law(n, D, [&](const MultiIndex& m) {
            const int k = total_degree(m);
            cplx c = pochhammer(mu, k) * pochhammer(l0, k);
            for (int i = 0; i < n; ++i) c /= den_poch(l[i], m[i], m);
            return c / mfact(m);
        });
    }
    case SeriesKind::FD: {
        const cplx l0 = id.scalar("l0"), mu = id.scalar("mu");
        const auto& l = id.vec("l");
        return from_law(n, D, [&](const MultiIndex& m) {
            const int k = total_degree(m);
            cplx c = pochhammer(l0, k) / den_poch(mu, k, m);
            for (int i = 0; i < n; ++i) c *= pochhammer(l[i], m[i]);
            return c / mfact(m);
        });
    }
    case SeriesKind::F1: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), bp = id.scalar("bp"), c = id.scalar("c");
        return from_law(2, D, [&](const MultiIndex& m) {
            const int k = m[0] + m[1];
            return pochhammer(a, k) * pochhammer(b, m[0]) * pochhammer(bp, m[1]) / (den_poch(c, k, m) * mfact(m));
        });
    }
    case SeriesKind::F2: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), bp = id.scalar("bp");
        const cplx c = id.scalar("c"), cp = id.scalar("cp");
        return from_law(2, D, [&](const MultiIndex& m) {
            return pochhammer(a, m[0] + m[1]) * pochhammer(b, m[0]) * pochhammer(bp, m[1]) /
                   (den_poch(c, m[0], m) * den_poch(cp, m[1], m) * mfact(m));
        });
    }
    case SeriesKind::F3: {
        const cplx a = id.scalar("a"), ap = id.scalar("ap"), b = id.scalar("b"), bp = id.scalar("bp");
        const cplx c = id.scalar("c");
        return from_law(2, D, [&](const MultiIndex& m) {
            return pochhammer(a, m[0]) * pochhammer(ap, m[1]) * pochhammer(b, m[0]) * pochhammer(bp, m[1]) /
                   (den_poch(c, m[0] + m[1], m) * mfact(m));
        });
    }
    case SeriesKind::F4: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), c = id.scalar("c"), cp = id.scalar("cp");
        return from_law(2, D, [&](const MultiIndex& m) {
            const int k = m[0] + m[1];
            return pochhammer(a, k) * pochhammer(b, k) / (den_poch(c, m[0], m) * den_poch(cp, m[1], m) * mfact(m));
        });
    }
    case SeriesKind::Gauss: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), c = id.scalar("c");
        return from_law(1, D, [&](const MultiIndex& m) {
            return pochhammer(a, m[0]) * pochhammer(b, m[0]) / (den_poch(c, m[0], m) * factorial(m[0]));
        });
    }
    case SeriesKind::Kummer: {
        const cplx a = id.scalar("a"), c = id.scalar("c");
        return from_law(1, D, [&](const MultiIndex& m) {
            return pochhammer(a, m[0]) / (den_poch(c, m[0], m) * factorial(m[0]));
        });
    }
    case SeriesKind::Phi2: {
        const cplx b = id.scalar("b"), bp = id.scalar("bp"), c = id.scalar("c");
        return from_law(2, D, [&](const MultiIndex& m) {
            return pochhammer(b, m[0]) * pochhammer(bp, m[1]) / (den_poch(c, m[0] + m[1], m) * mfact(m));
        });
    }
    case SeriesKind::Psi1: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), c = id.scalar("c"), cp = id.scalar("cp");
        return from_law(2, D, [&](const MultiIndex& m) {
            return pochhammer(a, m[0] + m[1]) * pochhammer(b, m[0]) /
                   (den_poch(c, m[0], m) * den_poch(cp, m[1], m) * mfact(m));
        });
    }
    case SeriesKind::Psi2: {
        const cplx a = id.scalar("a"), c = id.scalar("c"), cp = id.scalar("cp");
        return from_law(2, D, [&](const MultiIndex& m) {
            return pochhammer(a, m[0] + m[1]) / (den_poch(c, m[0], m) * den_poch(cp, m[1], m) * mfact(m));
        });
    }
    case SeriesKind::G2: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), c = id.scalar("c"), d = id.scalar("d");
        return from_law(2, D, [&](const MultiIndex& m) {
            return pochhammer(a, m[0]) * pochhammer(b, m[1]) * signed_poch(c, m[1] - m[0], m) *
                   signed_poch(d, m[0] - m[1], m) / mfact(m);
        });
    }
    case SeriesKind::GeneralPQR: {
        const auto &al = id.vec("alpha"), &be = id.vec("beta"), &ga = id.vec("gamma");
        std::vector<cplx> al1, be1, ga1;
        for (auto v : id.vec("alphap")) al1.push_back(1.0 - v);
        for (auto v : id.vec("betap")) be1.push_back(1.0 - v);
        for (auto v : id.vec("gammap")) ga1.push_back(1.0 - v);
        return from_law(2, D, [&](const MultiIndex& m) {
            const int k = m[0] + m[1];
            return prod_poch(al, m[0]) * prod_poch(be, m[1]) * prod_poch(ga, k) /
                   (prod_den(al1, m[0], m) * prod_den(be1, m[1], m) * prod_den(ga1, k, m));
        });
    }
    case SeriesKind::GeneralHorn: {
        const auto &a = id.vec("a"), &b = id.vec("b"), &c = id.vec("c");
        const auto &ap = id.vec("ap"), &bp = id.vec("bp"), &cp = id.vec("cp");
        return from_law(2, D, [&](const MultiIndex& m) {
            const int k = m[0] + m[1];
            return prod_poch(a, k) * prod_poch(b, m[0]) * prod_poch(c, m[1]) /
                   (prod_den(ap, k, m) * prod_den(bp, m[0], m) * prod_den(cp, m[1], m) * mfact(m));
        });
    }
    case SeriesKind::S211: {
        // K^{g2-b2,b2} (1-x)^{a2} K^{g1-b1,b1} (1-x)^{-a1}; the middle factor
        // contributes (-a2)_n / n!
        const cplx a1 = id.scalar("a1"), a2 = id.scalar("a2"), b1 = id.scalar("b1"), b2 = id.scalar("b2");
        const cplx g1 = id.scalar("g1"), g2 = id.scalar("g2");
        const cplx pre = gamma_ratio({b1, b2}, {g1, g2});
        return from_law(1, D, [&](const MultiIndex& k) {
            cplx c = 0.0;
            for (int m = 0; m <= k[0]; ++m) {
                const int nn = k[0] - m;
                c += pochhammer(a1, m) * pochhammer(b1, m) * pochhammer(-a2, nn) * pochhammer(b2, k[0]) /
                     (den_poch(g1, m, k) * den_poch(g2, k[0], k) * factorial(m) * factorial(nn));
            }
            return pre * c;
        });
    }
    }
    throw ArityError("unknown series kind");
}

bool has_transform_pipeline(SeriesKind k)
{
    return k != SeriesKind::G2 && k != SeriesKind::GeneralPQR && k != SeriesKind::GeneralHorn;
}

namespace {

TransformSpec single(int var, cplx mu, cplx lambda)
{
    TransformSpec s;
    s.subset = {var};
    s.mu = mu;
    s.lambda = {lambda};
    return s;
}

TruncatedSeries fa_k(int n, int D, cplx l0, const std::vector<cplx>& mu, const std::vector<cplx>& l)
{
    auto u = elementary_factor(FactorKind::binomial_sum, {l0}, n, D);
    for (int i = n - 1; i >= 0; --i) u = apply_K(u, single(i, l[i] - mu[i], mu[i]));
    return gamma_ratio(l, mu) * u;
}

TruncatedSeries fa_l(int n, int D, cplx l0, const std::vector<cplx>& mu, const std::vector<cplx>& l)
{
    const auto u = elementary_factor(FactorKind::binomial_per_var, mu, n, D);
    return gamma_ratio(l, {l0}) * apply_L(u, TransformSpec::full(l0 - sum(l), l));
}

TruncatedSeries fb_k(int n, int D, const std::vector<cplx>& l, const std::vector<cplx>& lp, cplx mu)
{
    const auto u = elementary_factor(FactorKind::binomial_per_var, lp, n, D);
    return gamma_ratio({mu}, l) * apply_K(u, TransformSpec::full(mu - sum(l), l));
}

TruncatedSeries fc_l(int n, int D, cplx mu, cplx l0, const std::vector<cplx>& l)
{
    const auto u = elementary_factor(FactorKind::binomial_sum, {l0}, n, D);
    return gamma_ratio(l, {mu}) * apply_L(u, TransformSpec::full(mu - sum(l), l));
}

TruncatedSeries fd_k(int n, int D, cplx l0, const std::vector<cplx>& l, cplx mu)
{
    const auto u = elementary_factor(FactorKind::binomial_sum, {l0}, n, D);
    return gamma_ratio({mu}, l) * apply_K(u, TransformSpec::full(mu - sum(l), l));
}

// x -> (x_1, x_1/x_2, ..., x_1/x_n) on the first variable
TruncatedSeries fd_map(int n, int D, cplx l0, const std::vector<cplx>& l, cplx mu)
{
    IntMatrix p(n, std::vector<int>(n, 0));
    for (int j = 0; j < n; ++j) p[0][j] = 1;
    for (int i = 1; i < n; ++i) p[i][i] = -1;
    auto spec = single(0, mu - l0, l0);
    spec.map = MonomialMap(p);
    const auto u = elementary_factor(FactorKind::binomial_per_var, l, n, D);
    return gamma_ratio({mu}, {l0}) * apply_K(u, spec);
}

} // namespace

std::vector<std::pair<std::string, TruncatedSeries>> transform_pipelines(const SeriesId& id)
{
    id.validate();
    const int n = id.nvars();
    const int D = id.D;
    std::vector<std::pair<std::string, TruncatedSeries>> out;
    switch (id.kind) {
    case SeriesKind::FA:
        out.emplace_back("K", fa_k(n, D, id.scalar("l0"), id.vec("mu"), id.vec("l")));
        out.emplace_back("L", fa_l(n, D, id.scalar("l0"), id.vec("mu"), id.vec("l")));
        break;
    case SeriesKind::FB:
        out.emplace_back("K", fb_k(n, D, id.vec("l"), id.vec("lp"), id.scalar("mu")));
        break;
    case SeriesKind::FC:
        out.emplace_back("L", fc_l(n, D, id.scalar("mu"), id.scalar("l0"), id.vec("l")));
        break;
    case SeriesKind::FD:
        out.emplace_back("K", fd_k(n, D, id.scalar("l0"), id.vec("l"), id.scalar("mu")));
        out.emplace_back("K-map", fd_map(n, D, id.scalar("l0"), id.vec("l"), id.scalar("mu")));
        break;
    case SeriesKind::F1: {
        const auto l = pair(id.scalar("b"), id.scalar("bp"));
        out.emplace_back("K", fd_k(2, D, id.scalar("a"), l, id.scalar("c")));
        out.emplace_back("K-map", fd_map(2, D, id.scalar("a"), l, id.scalar("c")));
        break;
    }
    case SeriesKind::F2: {
        const auto mu = pair(id.scalar("b"), id.scalar("bp"));
        const auto l = pair(id.scalar("c"), id.scalar("cp"));
        out.emplace_back("K", fa_k(2, D, id.scalar("a"), mu, l));
        out.emplace_back("L", fa_l(2, D, id.scalar("a"), mu, l));
        break;
    }
    case SeriesKind::F3:
        out.emplace_back("K", fb_k(2, D, pair(id.scalar("a"), id.scalar("ap")), pair(id.scalar("b"), id.scalar("bp")),
                                   id.scalar("c")));
        break;
    case SeriesKind::F4:
        out.emplace_back("L", fc_l(2, D, id.scalar("a"), id.scalar("b"), pair(id.scalar("c"), id.scalar("cp"))));
        break;
    case SeriesKind::Gauss: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), c = id.scalar("c");
        const auto u = elementary_factor(FactorKind::binomial_per_var, {b}, 1, D);
        out.emplace_back("K", gamma_ratio({c}, {a}) * apply_K(u, TransformSpec::full(c - a, {a})));
        break;
    }
    case SeriesKind::Kummer: {
        const cplx a = id.scalar("a"), c = id.scalar("c");
        const auto u = elementary_factor(FactorKind::exponential_sum, {}, 1, D);
        out.emplace_back("K", gamma_ratio({c}, {a}) * apply_K(u, TransformSpec::full(c - a, {a})));
        break;
    }
    case SeriesKind::Phi2: {
        const cplx b = id.scalar("b"), bp = id.scalar("bp"), c = id.scalar("c");
        const auto u = elementary_factor(FactorKind::exponential_sum, {}, 2, D);
        out.emplace_back("K", gamma_ratio({c}, {b, bp}) * apply_K(u, TransformSpec::full(c - b - bp, {b, bp})));
        break;
    }
    case SeriesKind::Psi1: {
        const cplx a = id.scalar("a"), b = id.scalar("b"), c = id.scalar("c"), cp = id.scalar("cp");
        const auto ey = embed(elementary_factor(FactorKind::exponential_sum, {}, 1, D), 1, 2);
        const auto u = series_mul(elementary_factor(FactorKind::binomial_per_var, {b, 0.0}, 2, D), ey);
        out.emplace_back("L", gamma_ratio({c, cp}, {a}) * apply_L(u, TransformSpec::full(a - c - cp, {c, cp})));
        break;
    }
    case SeriesKind::Psi2: {
        const cplx a = id.scalar("a"), c = id.scalar("c"), cp = id.scalar("cp");
        const auto u = elementary_factor(FactorKind::exponential_sum, {}, 2, D);
        out.emplace_back("L", gamma_ratio({c, cp}, {a}) * apply_L(u, TransformSpec::full(a - c - cp, {c, cp})));
        break;
    }
    case SeriesKind::S211: {
        const cplx a1 = id.scalar("a1"), a2 = id.scalar("a2"), b1 = id.scalar("b1"), b2 = id.scalar("b2");
        const cplx g1 = id.scalar("g1"), g2 = id.scalar("g2");
        auto u = elementary_factor(FactorKind::binomial_per_var, {a1}, 1, D);
        u = apply_K(u, TransformSpec::full(g1 - b1, {b1}));
        u = series_mul(elementary_factor(FactorKind::binomial_per_var, {-a2}, 1, D), u);
        u = apply_K(u, TransformSpec::full(g2 - b2, {b2}));
        out.emplace_back("K", u);
        break;
    }
    case SeriesKind::G2:
    case SeriesKind::GeneralPQR:
    case SeriesKind::GeneralHorn:
        break;
    }
    return out;
}

TruncatedSeries build_via_transform(const SeriesId& id)
{
    if (!has_transform_pipeline(id.kind)) throw ArityError(to_string(id.kind) + " has no transform pipeline");
    return transform_pipelines(id).front().second;
}

std::pair<cplx, cplx> gauss_connection_coeffs(cplx a, cplx b, cplx c)
{
    const cplx d = b - a;
    if (std::abs(d - std::round(d.real())) < 1e-9)
        throw PoleError("gauss_connection_coeffs: b - a is an integer (logarithmic case)");
    for (cplx z : {a, b, c - a, c - b, c})
        if (is_gamma_pole(z)) throw PoleError("gauss_connection_coeffs: resonant parameters");
    return {gamma_ratio({c, b - a}, {b, c - a}), gamma_ratio({c, a - b}, {a, c - b})};
}

cplx gauss_sum(cplx a, cplx b, cplx c, cplx z)
{
    if (std::abs(z) >= 1.0) throw ConvergenceError("gauss_sum: |z| >= 1");
    cplx term = 1.0, total = 1.0;
    for (int k = 0; k < 5000; ++k) {
        const cplx num = (a + double(k)) * (b + double(k));
        if (num == cplx(0.0)) return total;
        if (is_gamma_pole(c + double(k))) throw ResonanceError("gauss_sum: c is a non-positive integer");
        term *= num / ((c + double(k)) * double(k + 1)) * z;
        total += term;
        if (std::abs(term) <= 1e-18 * std::abs(total) && k > 4) return total;
    }
    throw ConvergenceError("gauss_sum: no convergence");
}

cplx gauss_via_connection(cplx a, cplx b, cplx c, double x)
{
    const auto [ca, cb] = gauss_connection_coeffs(a, b, c);
    const double w = -1.0 / x; // positive for x < 0
    if (!(w > 0)) throw DomainError("gauss_via_connection expects x < 0");
    const cplx z = 1.0 / x;
    return std::pow(cplx(w), a) * ca * gauss_sum(a, a - c + 1.0, a - b + 1.0, z) +
           std::pow(cplx(w), b) * cb * gauss_sum(b, b - c + 1.0, b - a + 1.0, z);
}

ConnectionReport f1_connection(cplx a, cplx b, cplx bp, cplx c, double x, double y, int D, double shell_budget)
{
    if (!(x < -1.0)) throw DomainError("f1_connection: x must be real and below -1");

    cplx lhs = 0.0;
    cplx coef = 1.0; // (a)_n (b')_n / ((c)_n n!) y^n
    double lhs_last = 0.0;
    for (int n = 0; n <= D; ++n) {
        if (n > 0) coef *= (a + double(n - 1)) * (bp + double(n - 1)) / ((c + double(n - 1)) * double(n)) * y;
        const cplx term = coef == cplx(0.0) ? cplx(0.0) : coef * gauss_via_connection(a + double(n), b, c + double(n), x);
        lhs += term;
        lhs_last = std::abs(term);
    }

    const auto [ca, cb] = gauss_connection_coeffs(a, b, c);
    const SeriesId fa(SeriesKind::F1, D, {{"a", {a}}, {"b", {a - c + 1.0}}, {"bp", {bp}}, {"c", {a - b + 1.0}}});
    const SeriesId fb(SeriesKind::G2, D, {{"a", {b}}, {"b", {bp}}, {"c", {a - b}}, {"d", {b - c + 1.0}}});
    const auto ea = evaluate(build_direct(fa), {1.0 / x, y / x});
    const auto eb = evaluate(build_direct(fb), {-1.0 / x, -y});
    const cplx w = -1.0 / x;
    const cplx rhs = std::pow(w, a) * ca * ea.value + std::pow(w, b) * cb * eb.value;

    ConnectionReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = std::abs(lhs - rhs) / std::abs(lhs);
    rep.shell = std::max({lhs_last / std::abs(lhs), ea.shell / std::abs(ea.value), eb.shell / std::abs(eb.value)});
    if (rep.shell > shell_budget)
        throw ConvergenceError("f1_connection: truncation shell exceeds budget, raise D or move the point");
    return rep;
}

double f1_connection_residual(cplx a, cplx b, cplx bp, cplx c, double x, double y, int D)
{
    return f1_connection(a, b, bp, c, x, y, D).residual;
}

} // namespace hyperflux
