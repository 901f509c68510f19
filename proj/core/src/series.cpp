#include "hyperflux/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <nlohmann/json.hpp>

#include "hyperflux/errors.hpp"

namespace hyperflux {

int total_degree(const MultiIndex& m)
{
    int s = 0;
    for (int v : m) s += v;
    return s;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("multi-index length mismatch");
    MultiIndex r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

namespace {

void enumerate(int n, int i, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out)
{
    if (i == n - 1) {
        cur[i] = remaining;
        out.push_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[i] = v;
        enumerate(n, i + 1, remaining - v, cur, out);
    }
}

} // namespace

IndexSet::IndexSet(int n, int D) : n_(n), D_(D)
{
    if (n < 1) throw DimensionMismatch("series needs at least one variable");
    if (D < 0) throw TruncationError("negative truncation degree");
    const int top = n + D + 1;
    binom_.assign(top + 1, std::vector<std::size_t>(top + 1, 0));
    for (int a = 0; a <= top; ++a) {
        binom_[a][0] = 1;
        for (int b = 1; b <= a; ++b) binom_[a][b] = binom_[a - 1][b - 1] + binom_[a - 1][b];
    }
    MultiIndex cur(n, 0);
    indices_.reserve(binom_[n + D][n]);
    for (int d = 0; d <= D; ++d) enumerate(n, 0, d, cur, indices_);
}

std::shared_ptr<const IndexSet> IndexSet::get(int n, int D)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const IndexSet>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, D}];
    if (!slot) slot = std::make_shared<const IndexSet>(n, D);
    return slot;
}

std::size_t IndexSet::degree_offset(int d) const
{
    if (d <= 0) return 0;
    if (d > D_) return indices_.size();
    return binom_[d - 1 + n_][n_];
}

std::size_t IndexSet::rank(const MultiIndex& m) const
{
    if (int(m.size()) != n_) throw DimensionMismatch("multi-index length does not match series");
    int d = 0;
    for (int v : m) {
        if (v < 0) return npos;
        d += v;
    }
    if (d > D_) return npos;
    std::size_t r = degree_offset(d);
    int rem = d;
    for (int i = 0; i + 1 < n_; ++i) {
        // tuples of the remaining n-i-1 slots that sit before m because their
        // i-th entry is larger
        const int k = n_ - i - 1;
        const int gap = rem - m[i];
        if (gap > 0) r += binom_[gap - 1 + k][k];
        rem -= m[i];
    }
    return r;
}

TruncatedSeries::TruncatedSeries(int n, int D)
    : set_(IndexSet::get(n, D)), c_(set_->size(), cplx(0.0)), reliable_(D)
{
}

TruncatedSeries TruncatedSeries::constant(int n, int D, cplx c)
{
    TruncatedSeries s(n, D);
    s.c_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int n, int D, const MultiIndex& m, cplx c)
{
    TruncatedSeries s(n, D);
    s.set(m, c);
    return s;
}

void TruncatedSeries::set_reliable_degree(int d) { reliable_ = std::clamp(d, -1, degree()); }

cplx TruncatedSeries::coeff(const MultiIndex& m) const
{
    const auto k = set_->rank(m);
    return k == IndexSet::npos ? cplx(0.0) : c_[k];
}

void TruncatedSeries::set(const MultiIndex& m, cplx v)
{
    const auto k = set_->rank(m);
    if (k == IndexSet::npos) throw TruncationError("index beyond truncation degree");
    c_[k] = v;
}

void TruncatedSeries::add(const MultiIndex& m, cplx v)
{
    const auto k = set_->rank(m);
    if (k != IndexSet::npos) c_[k] += v;
}

TruncatedSeries TruncatedSeries::truncated(int D) const
{
    TruncatedSeries r(nvars(), D);
    const std::size_t common = std::min(r.size(), size());
    std::copy_n(c_.begin(), common, r.c_.begin());
    r.reliable_ = std::min(reliable_, D);
    return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o)
{
    if (o.nvars() != nvars()) throw DimensionMismatch("series variable counts differ");
    if (o.degree() < degree()) *this = truncated(o.degree());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    reliable_ = std::min(reliable_, o.reliable_);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o)
{
    if (o.nvars() != nvars()) throw DimensionMismatch("series variable counts differ");
    if (o.degree() < degree()) *this = truncated(o.degree());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    reliable_ = std::min(reliable_, o.reliable_);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx s)
{
    for (auto& v : c_) v *= s;
    return *this;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator*(cplx s, TruncatedSeries a) { return a *= s; }

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.nvars() != b.nvars()) throw DimensionMismatch("series_mul: variable counts differ");
    const int n = a.nvars();
    const int D = std::min(a.degree(), b.degree());
    TruncatedSeries r(n, D);
    const auto& set = r.index_set();
    MultiIndex sum(n);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const cplx ai = a[i];
        if (ai == cplx(0.0)) continue;
        const int di = total_degree(set[i]);
        const std::size_t jmax = set.degree_offset(D - di + 1);
        for (std::size_t j = 0; j < jmax; ++j) {
            const cplx bj = b[j];
            if (bj == cplx(0.0)) continue;
            for (int v = 0; v < n; ++v) sum[v] = set[i][v] + set[j][v];
            r[set.rank(sum)] += ai * bj;
        }
    }
    r.set_reliable_degree(std::min({D, a.reliable_degree(), b.reliable_degree()}));
    return r;
}

Evaluation evaluate(const TruncatedSeries& s, const std::vector<cplx>& point)
{
    const int n = s.nvars();
    const int D = s.degree();
    if (int(point.size()) != n) throw DimensionMismatch("evaluate: point has wrong length");
    std::vector<std::vector<cplx>> pw(n, std::vector<cplx>(D + 1, 1.0));
    for (int v = 0; v < n; ++v)
        for (int k = 1; k <= D; ++k) pw[v][k] = pw[v][k - 1] * point[v];

    const auto& set = s.index_set();
    cplx total = 0.0;
    cplx shell = 0.0;
    for (int d = D; d >= 0; --d) {
        cplx part = 0.0;
        for (std::size_t k = set.degree_offset(d); k < set.degree_offset(d + 1); ++k) {
            cplx t = s[k];
            if (t == cplx(0.0)) continue;
            for (int v = 0; v < n; ++v) t *= pw[v][set[k][v]];
            part += t;
        }
        if (d == D) shell = part;
        total += part;
    }
    return {total, std::abs(shell)};
}

double max_rel_diff(const TruncatedSeries& a, const TruncatedSeries& b, double floor)
{
    if (a.nvars() != b.nvars()) throw DimensionMismatch("compare: variable counts differ");
    const int d = std::min({a.reliable_degree(), b.reliable_degree()});
    const auto& set = a.index_set();
    double worst = 0.0;
    for (std::size_t k = 0; k < set.degree_offset(d + 1); ++k) {
        const cplx x = a[k];
        const cplx y = b.coeff(set[k]);
        const double scale = std::max(std::abs(y), floor);
        worst = std::max(worst, std::abs(x - y) / scale);
    }
    return worst;
}

double max_abs(const TruncatedSeries& s, int up_to_degree)
{
    const int d = up_to_degree < 0 ? s.reliable_degree() : std::min(up_to_degree, s.degree());
    double w = 0.0;
    for (std::size_t k = 0; k < s.index_set().degree_offset(d + 1); ++k) w = std::max(w, std::abs(s[k]));
    return w;
}

std::string series_to_json(const TruncatedSeries& s)
{
    nlohmann::json j;
    j["n"] = s.nvars();
    j["D"] = s.degree();
    auto arr = nlohmann::json::array();
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == cplx(0.0)) continue;
        arr.push_back({{"m", s.index(k)}, {"re", s[k].real()}, {"im", s[k].imag()}});
    }
    j["coeffs"] = std::move(arr);
    return j.dump();
}

TruncatedSeries series_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("series json: ") + e.what());
    }
    try {
        TruncatedSeries s(j.at("n").get<int>(), j.at("D").get<int>());
        for (const auto& c : j.at("coeffs")) {
            const auto m = c.at("m").get<MultiIndex>();
            s.set(m, cplx(c.at("re").get<double>(), c.value("im", 0.0)));
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("series json: ") + e.what());
    }
}

} // namespace hyperflux
