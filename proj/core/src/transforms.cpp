#include "hyperflux/transforms.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "hyperflux/errors.hpp"

namespace hyperflux {

namespace {

long det_int(const IntMatrix& a)
{
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    long d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        IntMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<int> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        const long s = (c % 2 == 0) ? 1 : -1;
        d += s * a[0][c] * det_int(minor);
    }
    return d;
}

std::string index_str(const MultiIndex& m)
{
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + ")";
}

} // namespace

MonomialMap::MonomialMap(IntMatrix p) : p_(std::move(p))
{
    const std::size_t n = p_.size();
    for (const auto& row : p_)
        if (row.size() != n) throw DimensionMismatch("monomial map must be square");
    det_ = det_int(p_);
    if (det_ != 1 && det_ != -1) throw DomainError("monomial map is not unimodular");
    // adjugate / det
    q_.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<int> row;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != i) row.push_back(p_[r][k]);
                minor.push_back(std::move(row));
            }
            const long s = ((i + j) % 2 == 0) ? 1 : -1;
            q_[i][j] = int(s * det_int(minor) * det_);
        }
}

MonomialMap MonomialMap::identity(int n)
{
    IntMatrix p(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) p[i][i] = 1;
    return MonomialMap(std::move(p));
}

MultiIndex MonomialMap::apply(const MultiIndex& m) const
{
    if (m.size() != p_.size()) throw DimensionMismatch("monomial map size mismatch");
    MultiIndex r(m.size(), 0);
    for (std::size_t i = 0; i < p_.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i] += p_[i][j] * m[j];
    return r;
}

TransformSpec TransformSpec::full(cplx mu, std::vector<cplx> lambda)
{
    TransformSpec s;
    for (std::size_t i = 0; i < lambda.size(); ++i) s.subset.push_back(int(i));
    s.mu = mu;
    s.lambda = std::move(lambda);
    return s;
}

void TransformSpec::validate(int n) const
{
    if (subset.size() != lambda.size())
        throw DimensionMismatch("transform: subset and lambda lengths differ");
    std::set<int> seen;
    for (int i : subset) {
        if (i < 0 || i >= n) throw DimensionMismatch("transform: subset index out of range");
        if (!seen.insert(i).second) throw DomainError("transform: repeated subset index");
    }
    if (map) {
        if (map->size() != n) throw DimensionMismatch("transform: monomial map size mismatch");
        if (!relaxed)
            for (int i : subset)
                for (int v : map->matrix()[i])
                    if (v < 0) throw DomainError("transform: negative entry in a selected row (strict mode)");
    }
}

std::vector<cplx> TransformSpec::shifted(const MultiIndex& m) const
{
    const MultiIndex pm = map ? map->apply(m) : m;
    std::vector<cplx> r(subset.size());
    for (std::size_t v = 0; v < subset.size(); ++v) r[v] = lambda[v] + double(pm[subset[v]]);
    return r;
}

cplx multiplier_K(const TransformSpec& spec, const MultiIndex& m)
{
    const auto sel = spec.shifted(m);
    cplx total = spec.mu;
    for (auto z : sel) {
        if (is_gamma_pole(z)) throw PoleError("multiplier_K: lambda + (pm) hits a pole at m=" + index_str(m), m);
        total += z;
    }
    return gamma_ratio(sel, {total});
}

cplx multiplier_L(const TransformSpec& spec, const MultiIndex& m)
{
    const auto sel = spec.shifted(m);
    cplx total = spec.mu;
    for (auto z : sel) total += z;
    if (is_gamma_pole(total)) throw PoleError("multiplier_L: |lambda + (pm)| + mu hits a pole at m=" + index_str(m), m);
    return gamma_ratio({total}, sel);
}

namespace {

template <class F>
TruncatedSeries coefficient_map(const TruncatedSeries& u, const TransformSpec& spec, F mult)
{
    spec.validate(u.nvars());
    TruncatedSeries r = u;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (u[k] == cplx(0.0)) continue;
        r[k] = mult(spec, u.index(k)) * u[k];
    }
    return r;
}

} // namespace

TruncatedSeries apply_K(const TruncatedSeries& u, const TransformSpec& spec)
{
    return coefficient_map(u, spec, multiplier_K);
}

TruncatedSeries apply_L(const TruncatedSeries& u, const TransformSpec& spec)
{
    return coefficient_map(u, spec, multiplier_L);
}

TruncatedSeries shift_by_monomial(const TruncatedSeries& u, const std::vector<int>& alpha)
{
    if (int(alpha.size()) != u.nvars()) throw DimensionMismatch("shift: exponent length mismatch");
    TruncatedSeries r(u.nvars(), u.degree());
    bool had_terms = false, kept = false;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == cplx(0.0)) continue;
        had_terms = true;
        const auto target = u.index(k) + alpha;
        const auto pos = r.index_set().rank(target);
        if (pos == IndexSet::npos) continue;
        r[pos] = u[k];
        kept = true;
    }
    if (had_terms && !kept) throw TruncationError("shift: every term left the truncation range");
    // the source of a target index t has degree |t| - |alpha|
    r.set_reliable_degree(std::min(r.degree(), u.reliable_degree() + total_degree(alpha)));
    return r;
}

TruncatedSeries elementary_factor(FactorKind kind, const std::vector<cplx>& params, int n, int D)
{
    TruncatedSeries s(n, D);
    const auto& set = s.index_set();
    switch (kind) {
    case FactorKind::binomial_sum: {
        if (params.size() != 1) throw ArityError("binomial_sum takes one exponent");
        for (std::size_t k = 0; k < s.size(); ++k) {
            const auto& m = set[k];
            cplx c = pochhammer(params[0], total_degree(m));
            for (int v : m) c /= std::tgamma(v + 1.0);
            s[k] = c;
        }
        break;
    }
    case FactorKind::binomial_per_var: {
        if (int(params.size()) != n) throw ArityError("binomial_per_var takes one exponent per variable");
        for (std::size_t k = 0; k < s.size(); ++k) {
            const auto& m = set[k];
            cplx c = 1.0;
            for (int i = 0; i < n; ++i) c *= pochhammer(params[i], m[i]) / std::tgamma(m[i] + 1.0);
            s[k] = c;
        }
        break;
    }
    case FactorKind::exponential_sum: {
        if (!params.empty()) throw ArityError("exponential_sum takes no parameters");
        for (std::size_t k = 0; k < s.size(); ++k) {
            cplx c = 1.0;
            for (int v : set[k]) c /= std::tgamma(v + 1.0);
            s[k] = c;
        }
        break;
    }
    case FactorKind::power_monomial: {
        if (int(params.size()) != n) throw ArityError("power_monomial takes one exponent per variable");
        MultiIndex a(n);
        for (int i = 0; i < n; ++i) {
            const double r = std::round(params[i].real());
            if (std::abs(params[i] - r) > 1e-12 || r < 0)
                throw DomainError("power_monomial exponents must be non-negative integers");
            a[i] = int(r);
        }
        if (total_degree(a) > D) throw TruncationError("power_monomial exponent exceeds truncation degree");
        s.set(a, 1.0);
        break;
    }
    }
    return s;
}

FactorKind factor_kind_from_string(const std::string& s)
{
    if (s == "binomial_sum") return FactorKind::binomial_sum;
    if (s == "binomial_per_var") return FactorKind::binomial_per_var;
    if (s == "exponential_sum") return FactorKind::exponential_sum;
    if (s == "power_monomial") return FactorKind::power_monomial;
    throw ParseError("unknown factor kind: " + s);
}

std::string spec_to_json(const TransformSpec& spec)
{
    nlohmann::json j;
    j["subset"] = spec.subset;
    j["mu"] = {spec.mu.real(), spec.mu.imag()};
    auto lam = nlohmann::json::array();
    for (auto l : spec.lambda) lam.push_back({l.real(), l.imag()});
    j["lambda"] = lam;
    if (spec.map)
        j["p"] = spec.map->matrix();
    else
        j["p"] = nullptr;
    j["relaxed"] = spec.relaxed;
    return j.dump();
}

TransformSpec spec_from_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        auto to_c = [](const nlohmann::json& v) {
            if (v.is_number()) return cplx(v.get<double>(), 0.0);
            return cplx(v.at(0).get<double>(), v.at(1).get<double>());
        };
        TransformSpec s;
        s.subset = j.at("subset").get<std::vector<int>>();
        s.mu = to_c(j.at("mu"));
        for (const auto& l : j.at("lambda")) s.lambda.push_back(to_c(l));
        if (j.contains("p") && !j.at("p").is_null()) s.map = MonomialMap(j.at("p").get<IntMatrix>());
        s.relaxed = j.value("relaxed", false);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("transform spec json: ") + e.what());
    }
}

} // namespace hyperflux
