#include "hyperflux/weyl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <regex>

#include <nlohmann/json.hpp>

#include "hyperflux/errors.hpp"

namespace hyperflux {

namespace {

// a (a-1) ... (a-k+1), also for negative a
double falling(int a, int k)
{
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= double(a - j);
    return r;
}

double binom(int n, int k)
{
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
    return r;
}

void check_same(const WeylOperator& a, const WeylOperator& b)
{
    if (a.nvars() != b.nvars()) throw DimensionMismatch("weyl operators with different variable counts");
}

// One-variable polynomial in theta, low degree first.
using Poly = std::vector<cplx>;

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// prod of (theta + s) over the shifts
Poly linear_product(const std::vector<double>& shifts)
{
    Poly r{1.0};
    for (double s : shifts) r = poly_mul(r, Poly{s, 1.0});
    return r;
}

WeylOperator power(const WeylOperator& base, int k, std::vector<WeylOperator>& cache)
{
    if (cache.empty()) cache.push_back(WeylOperator::constant(base.nvars(), 1.0));
    while (int(cache.size()) <= k) cache.push_back(compose(cache.back(), base));
    return cache[k];
}

// sum c x^a prod_j img_j^{b_j}
WeylOperator substitute_d(const WeylOperator& p, const std::vector<WeylOperator>& img)
{
    const int n = p.nvars();
    std::vector<std::vector<WeylOperator>> cache(n);
    WeylOperator r(n);
    for (const auto& [key, c] : p.terms()) {
        WeylOperator t = WeylOperator::monomial(n, key.first, MultiIndex(n, 0), c);
        for (int j = 0; j < n; ++j)
            if (key.second[j] > 0) t = compose(t, power(img[j], key.second[j], cache[j]));
        r += t;
    }
    return r;
}

// x_j -> x_j + c; needs a polynomial operator
WeylOperator shift_variable(const WeylOperator& p, int j, cplx c)
{
    if (c == 0.0) return p;
    WeylOperator r(p.nvars());
    for (const auto& [key, v] : p.terms()) {
        const int a = key.first[j];
        if (a < 0) throw DomainError("shift_variable: Laurent operator");
        MultiIndex xa = key.first;
        for (int k = 0; k <= a; ++k) {
            xa[j] = k;
            r.add(xa, key.second, v * binom(a, k) * std::pow(c, a - k));
        }
    }
    return r;
}

WeylOperator theta_sum_plus(int n, cplx shift)
{
    WeylOperator s = WeylOperator::constant(n, shift);
    for (int i = 0; i < n; ++i) s += WeylOperator::theta(n, i);
    return s;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

WeylOperator::WeylOperator(int n) : n_(n)
{
    if (n < 1) throw DimensionMismatch("weyl operator needs at least one variable");
}

WeylOperator WeylOperator::constant(int n, cplx c) { return monomial(n, MultiIndex(n, 0), MultiIndex(n, 0), c); }

WeylOperator WeylOperator::x(int n, int i, int power)
{
    MultiIndex a(n, 0);
    a.at(i) = power;
    return monomial(n, a, MultiIndex(n, 0));
}

WeylOperator WeylOperator::d(int n, int i, int power)
{
    if (power < 0) throw DomainError("negative derivative order");
    MultiIndex b(n, 0);
    b.at(i) = power;
    return monomial(n, MultiIndex(n, 0), b);
}

WeylOperator WeylOperator::theta(int n, int i)
{
    MultiIndex a(n, 0);
    a.at(i) = 1;
    return monomial(n, a, a);
}

WeylOperator WeylOperator::monomial(int n, const MultiIndex& a, const MultiIndex& b, cplx c)
{
    WeylOperator r(n);
    r.add(a, b, c);
    return r;
}

cplx WeylOperator::coeff(const MultiIndex& a, const MultiIndex& b) const
{
    const auto it = terms_.find({a, b});
    return it == terms_.end() ? cplx(0.0) : it->second;
}

void WeylOperator::add(const MultiIndex& a, const MultiIndex& b, cplx c)
{
    if (int(a.size()) != n_ || int(b.size()) != n_) throw DimensionMismatch("weyl term has wrong exponent length");
    for (int v : b)
        if (v < 0) throw DomainError("negative derivative order");
    if (c == 0.0) return;
    auto [it, fresh] = terms_.try_emplace({a, b}, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

bool WeylOperator::is_polynomial() const
{
    for (const auto& [key, c] : terms_)
        for (int v : key.first)
            if (v < 0) return false;
    return true;
}

int WeylOperator::order() const
{
    int o = 0;
    for (const auto& [key, c] : terms_) o = std::max(o, total_degree(key.second));
    return o;
}

WeylOperator WeylOperator::pruned(double tol) const
{
    double big = 0.0;
    for (const auto& [key, c] : terms_) big = std::max(big, std::abs(c));
    WeylOperator r(n_);
    for (const auto& [key, c] : terms_)
        if (std::abs(c) > tol * big) r.terms_.emplace(key, c);
    return r;
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& o)
{
    check_same(*this, o);
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
    return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o)
{
    check_same(*this, o);
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
    return *this;
}

WeylOperator& WeylOperator::operator*=(cplx s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
}

WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
WeylOperator operator*(cplx s, WeylOperator a) { return a *= s; }
WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) { return compose(a, b); }

WeylOperator compose(const WeylOperator& A, const WeylOperator& B)
{
    check_same(A, B);
    const int n = A.nvars();
    WeylOperator r(n);
    MultiIndex xa(n), db(n);
    for (const auto& [ka, ca] : A.terms())
        for (const auto& [kb, cb] : B.terms()) {
            // d^b x^c = sum_k C(b,k) c^(k) x^{c-k} d^{b-k}, one variable at a time
            auto rec = [&](auto&& self, int i, cplx acc) -> void {
                if (i == n) {
                    r.add(xa, db, acc);
                    return;
                }
                const int b = ka.second[i], c = kb.first[i];
                for (int k = 0; k <= b; ++k) {
                    const double w = binom(b, k) * falling(c, k);
                    if (w == 0.0) continue;
                    xa[i] = ka.first[i] + c - k;
                    db[i] = b - k + kb.second[i];
                    self(self, i + 1, acc * w);
                }
            };
            rec(rec, 0, ca * cb);
        }
    return r;
}

double max_abs_diff(const WeylOperator& a, const WeylOperator& b)
{
    double m = 0.0;
    for (const auto& [key, c] : (a - b).terms()) m = std::max(m, std::abs(c));
    return m;
}

void ThetaForm::add(const MultiIndex& a, const MultiIndex& b, cplx c)
{
    if (int(a.size()) != n_ || int(b.size()) != n_) throw DimensionMismatch("theta term has wrong exponent length");
    if (c == 0.0) return;
    auto [it, fresh] = terms_.try_emplace({a, b}, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

WeylOperator ThetaForm::to_weyl() const
{
    std::vector<std::vector<WeylOperator>> cache(n_);
    WeylOperator r(n_);
    for (const auto& [key, c] : terms_) {
        WeylOperator t = WeylOperator::monomial(n_, MultiIndex(n_, 0), key.first, c);
        for (int j = 0; j < n_; ++j)
            if (key.second[j] > 0) t = compose(t, power(WeylOperator::theta(n_, j), key.second[j], cache[j]));
        r += t;
    }
    return r;
}

ThetaFormResult to_theta_form(const WeylOperator& p)
{
    if (!p.is_polynomial()) throw DomainError("to_theta_form needs polynomial coefficients");
    const int n = p.nvars();
    ThetaFormResult res{MultiIndex(n, 0), ThetaForm(n)};
    for (const auto& [key, c] : p.terms())
        for (int j = 0; j < n; ++j) res.gamma[j] = std::max(res.gamma[j], key.first[j] - key.second[j]);

    for (const auto& [key, c] : p.terms()) {
        MultiIndex dpow(n);
        std::vector<Poly> g(n);
        for (int j = 0; j < n; ++j) {
            const int a = key.first[j], b = key.second[j], e = a - b;
            dpow[j] = res.gamma[j] - e;
            std::vector<double> shifts;
            if (e >= 0) {
                // d^e x^e = (theta+1)...(theta+e), x^b d^b = theta (theta-1)...(theta-b+1)
                for (int s = 1; s <= e; ++s) shifts.push_back(s);
                for (int s = 0; s < b; ++s) shifts.push_back(-s);
            } else {
                for (int s = 0; s < a; ++s) shifts.push_back(e - s);
            }
            g[j] = linear_product(shifts);
        }
        MultiIndex beta(n);
        auto rec = [&](auto&& self, int j, cplx acc) -> void {
            if (j == n) {
                res.form.add(dpow, beta, acc);
                return;
            }
            for (std::size_t k = 0; k < g[j].size(); ++k) {
                if (g[j][k] == 0.0) continue;
                beta[j] = int(k);
                self(self, j + 1, acc * g[j][k]);
            }
        };
        rec(rec, 0, c);
    }
    return res;
}

WeylOperator reduced_representative(const WeylOperator& p)
{
    const WeylOperator q = p.pruned(1e-14);
    if (q.is_zero()) throw ZeroOperator("reduced_representative of the zero operator");
    const int n = q.nvars();
    MultiIndex low = q.terms().begin()->first.first;
    for (const auto& [key, c] : q.terms())
        for (int j = 0; j < n; ++j) low[j] = std::min(low[j], key.first[j]);
    const WeylKey* lead = nullptr;
    cplx lc = 0.0;
    for (const auto& [key, c] : q.terms()) {
        if (!lead || total_degree(key.second) > total_degree(lead->second) ||
            (total_degree(key.second) == total_degree(lead->second) && key.second > lead->second) ||
            (key.second == lead->second && key.first > lead->first)) {
            lead = &key;
            lc = c;
        }
    }
    WeylOperator r(n);
    for (const auto& [key, c] : q.terms()) {
        MultiIndex a = key.first;
        for (int j = 0; j < n; ++j) a[j] -= low[j];
        r.add(a, key.second, c / lc);
    }
    return r;
}

MiddleConvolution middle_convolution(const WeylOperator& p, cplx mu)
{
    if (p.nvars() != 1) throw DimensionMismatch("middle_convolution is defined for one variable");
    const auto tf = to_theta_form(reduced_representative(p));
    MiddleConvolution res;
    res.k = tf.gamma[0];

    // weight w <= 0 holds d^{-w} g(theta), w > 0 holds x^w g(theta)
    std::map<int, Poly> comp;
    for (const auto& [key, c] : tf.form.terms()) {
        const int i = key.first[0], j = key.second[0];
        Poly& g = comp[-i];
        if (int(g.size()) < j + 1) g.resize(j + 1, 0.0);
        // (theta - mu)^j
        for (int k = 0; k <= j; ++k) g[k] += c * binom(j, k) * std::pow(-mu, j - k);
    }
    auto scale = [](const Poly& g) {
        double s = 0.0;
        for (auto v : g) s = std::max(s, std::abs(v));
        return s;
    };
    for (;;) {
        std::map<int, Poly> next;
        bool ok = !comp.empty();
        for (const auto& [w, g] : comp) {
            if (w < 0) {
                next[w + 1] = g;
                continue;
            }
            // x^w g = d (x^{w+1} h) needs g = (theta + w + 1) h
            const double r = -(w + 1.0);
            Poly h(g.size() > 1 ? g.size() - 1 : 1, 0.0);
            cplx carry = 0.0;
            for (int k = int(g.size()) - 1; k >= 1; --k) {
                carry = g[k] + carry * r;
                h[k - 1] = carry;
            }
            const cplx rem = g[0] + carry * r;
            double mag = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) mag += std::abs(g[k]) * std::pow(std::abs(r), double(k));
            if (g.size() < 2 || std::abs(rem) > 1e-11 * std::max(mag, scale(g))) {
                ok = false;
                break;
            }
            next[w + 1] = h;
        }
        if (!ok) break;
        comp = std::move(next);
        ++res.m;
    }

    WeylOperator op(1);
    std::vector<WeylOperator> tcache;
    for (const auto& [w, g] : comp) {
        WeylOperator gt(1);
        for (std::size_t k = 0; k < g.size(); ++k) gt += g[k] * power(WeylOperator::theta(1, 0), int(k), tcache);
        op += (w <= 0 ? WeylOperator::d(1, 0, -w) : WeylOperator::x(1, 0, w)) * gt;
    }
    res.op = reduced_representative(op);
    res.degenerate = res.op.order() == 0;
    return res;
}

AdditionParams AdditionParams::power_at_c(int var, cplx c, cplx lambda)
{
    AdditionParams p;
    p.kind = AdditionKind::power_at_c;
    p.var = var;
    p.c = c;
    p.lambda = lambda;
    return p;
}

AdditionParams AdditionParams::exp_poly(std::map<MultiIndex, cplx> r)
{
    AdditionParams p;
    p.kind = AdditionKind::exp_poly;
    p.r = std::move(r);
    return p;
}

WeylOperator addition(const WeylOperator& p, const AdditionParams& f)
{
    const int n = p.nvars();
    std::vector<WeylOperator> img;
    for (int j = 0; j < n; ++j) img.push_back(WeylOperator::d(n, j));

    if (f.kind == AdditionKind::power_at_c) {
        if (f.var < 0 || f.var >= n) throw DimensionMismatch("addition: variable out of range");
        // in s = x_j - c the factor is s^lambda
        const WeylOperator shifted = shift_variable(reduced_representative(p), f.var, f.c);
        img[f.var] -= f.lambda * WeylOperator::x(n, f.var, -1);
        const WeylOperator conj = reduced_representative(substitute_d(shifted, img));
        return reduced_representative(shift_variable(conj, f.var, -f.c));
    }
    for (int j = 0; j < n; ++j)
        for (const auto& [m, c] : f.r) {
            if (int(m.size()) != n) throw DimensionMismatch("addition: exponent polynomial has wrong arity");
            if (m[j] == 0) continue;
            MultiIndex dm = m;
            dm[j] -= 1;
            img[j] -= (c * double(m[j])) * WeylOperator::monomial(n, dm, MultiIndex(n, 0));
        }
    return reduced_representative(substitute_d(p, img));
}

WeylOperator monomial_addition(const WeylOperator& p, const std::vector<cplx>& lambda)
{
    const int n = p.nvars();
    if (int(lambda.size()) != n) throw DimensionMismatch("monomial_addition: exponent length mismatch");
    std::vector<WeylOperator> img;
    for (int j = 0; j < n; ++j) img.push_back(WeylOperator::d(n, j) - lambda[j] * WeylOperator::x(n, j, -1));
    return reduced_representative(substitute_d(p, img));
}

WeylOperator tilde(const WeylOperator& p)
{
    const int n = p.nvars();
    WeylOperator inv(n);
    for (const auto& [key, c] : p.terms()) {
        MultiIndex a = key.first;
        for (auto& v : a) v = -v;
        inv.add(a, key.second, c);
    }
    std::vector<WeylOperator> img;
    for (int j = 0; j < n; ++j) {
        MultiIndex two(n, 0), one(n, 0);
        two[j] = 2;
        one[j] = 1;
        WeylOperator t = WeylOperator::monomial(n, two, one, -1.0);
        t.add(one, MultiIndex(n, 0), -1.0);
        img.push_back(t);
    }
    return substitute_d(inv, img);
}

WeylOperator transform_op(const ThetaForm& q, cplx mu, Direction dir)
{
    const int n = q.nvars();
    std::vector<WeylOperator> dimg, timg;
    for (int k = 0; k < n; ++k) {
        if (dir == Direction::K) {
            dimg.push_back(WeylOperator::x(n, k, -1) * theta_sum_plus(n, mu + double(n - 1)));
            timg.push_back(WeylOperator::theta(n, k));
        } else {
            dimg.push_back(-1.0 * (WeylOperator::x(n, k) * theta_sum_plus(n, mu + double(n))));
            timg.push_back(WeylOperator::constant(n, -1.0) - WeylOperator::theta(n, k));
        }
    }
    std::vector<std::vector<WeylOperator>> dc(n), tc(n);
    WeylOperator r(n);
    for (const auto& [key, c] : q.terms()) {
        WeylOperator t = WeylOperator::constant(n, c);
        for (int k = 0; k < n; ++k)
            if (key.first[k] > 0) t = compose(t, power(dimg[k], key.first[k], dc[k]));
        for (int k = 0; k < n; ++k)
            if (key.second[k] > 0) t = compose(t, power(timg[k], key.second[k], tc[k]));
        r += t;
    }
    return reduced_representative(r);
}

WeylOperator transform_annihilator(const WeylOperator& p, cplx mu, const std::vector<cplx>& lambda,
                                   Direction dir)
{
    const int n = p.nvars();
    if (int(lambda.size()) != n) throw DimensionMismatch("transform_annihilator: lambda length mismatch");
    std::vector<cplx> down(n), up(n);
    for (int j = 0; j < n; ++j) {
        down[j] = lambda[j] - 1.0;
        up[j] = 1.0 - lambda[j];
    }
    WeylOperator q = monomial_addition(p, down);
    if (dir == Direction::L) q = reduced_representative(tilde(q));
    const auto tf = to_theta_form(q);
    return monomial_addition(transform_op(tf.form, mu, dir), up);
}

TruncatedSeries apply_to_series(const WeylOperator& p, const TruncatedSeries& u)
{
    if (p.nvars() != u.nvars()) throw DimensionMismatch("apply_to_series: variable count mismatch");
    if (!p.is_polynomial()) throw DomainError("apply_to_series needs polynomial coefficients");
    const int n = u.nvars(), D = u.degree();
    TruncatedSeries r(n, D);
    int loss = 0;
    MultiIndex target(n);
    for (const auto& [key, c] : p.terms()) {
        loss = std::max(loss, total_degree(key.second) - total_degree(key.first));
        for (std::size_t k = 0; k < u.size(); ++k) {
            const MultiIndex& m = u.index(k);
            double w = 1.0;
            int deg = 0;
            for (int j = 0; j < n && w != 0.0; ++j) {
                w *= falling(m[j], key.second[j]);
                target[j] = m[j] - key.second[j] + key.first[j];
                deg += target[j];
            }
            if (w == 0.0 || deg > D) continue;
            r.add(target, c * w * u[k]);
        }
    }
    r.set_reliable_degree(u.reliable_degree() - loss);
    return r;
}

std::string weyl_to_json(const WeylOperator& p)
{
    nlohmann::json j;
    j["n"] = p.nvars();
    j["terms"] = nlohmann::json::array();
    for (const auto& [key, c] : p.terms())
        j["terms"].push_back({{"x", key.first}, {"d", key.second}, {"re", c.real()}, {"im", c.imag()}});
    return j.dump();
}

WeylOperator weyl_from_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        WeylOperator r(j.at("n").get<int>());
        for (const auto& t : j.at("terms"))
            r.add(t.at("x").get<MultiIndex>(), t.at("d").get<MultiIndex>(),
                  {t.at("re").get<double>(), t.value("im", 0.0)});
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("weyl operator json: ") + e.what());
    } catch (const DimensionMismatch& e) {
        throw ParseError(std::string("weyl operator json: ") + e.what());
    }
}

namespace {

class Parser {
public:
    Parser(const std::string& s, int n) : s_(s), n_(n) {}

    WeylOperator run()
    {
        WeylOperator r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    int n_;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("weyl expression: " + what + " at position " + std::to_string(pos_));
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    int integer()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    WeylOperator expr()
    {
        WeylOperator r = term();
        for (;;) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                return r;
        }
    }
    WeylOperator term()
    {
        cplx sign = 1.0;
        while (true) {
            if (eat('-'))
                sign = -sign;
            else if (!eat('+'))
                break;
        }
        WeylOperator r = factor();
        while (eat('*')) r = compose(r, factor());
        return sign * r;
    }
    WeylOperator factor()
    {
        WeylOperator base = primary();
        if (eat('^')) {
            const int k = integer();
            WeylOperator r = WeylOperator::constant(n_, 1.0);
            for (int i = 0; i < k; ++i) r = compose(r, base);
            return r;
        }
        return base;
    }
    WeylOperator primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            WeylOperator r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == 'x' || c == 'd' || c == 't') {
            ++pos_;
            const int k = integer();
            if (k < 1 || k > n_) fail("variable index out of range");
            if (c == 'x') return WeylOperator::x(n_, k - 1);
            if (c == 'd') return WeylOperator::d(n_, k - 1);
            return WeylOperator::theta(n_, k - 1);
        }
        if (c == 'i') {
            ++pos_;
            return WeylOperator::constant(n_, cplx(0.0, 1.0));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += std::size_t(end - begin);
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                ++pos_;
                return WeylOperator::constant(n_, cplx(0.0, v));
            }
            return WeylOperator::constant(n_, v);
        }
        fail("unexpected character");
    }
};

} // namespace

WeylOperator parse_weyl(const std::string& text, int n)
{
    int seen = 1;
    static const std::regex var(R"([xdt](\d+))");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it)
        seen = std::max(seen, std::stoi((*it)[1].str()));
    if (n == 0) n = seen;
    if (seen > n) throw ParseError("weyl expression uses more variables than declared");
    return Parser(text, n).run();
}

std::string to_string(const WeylOperator& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [key, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        if (c.imag() == 0.0)
            out += fmt(c.real());
        else
            out += "(" + fmt(c.real()) + " + " + fmt(c.imag()) + "i)";
        for (int j = 0; j < p.nvars(); ++j) {
            const int a = key.first[j];
            if (a == 0) continue;
            if (a < 0) throw DomainError("to_string: Laurent operator");
            out += "*x" + std::to_string(j + 1) + (a > 1 ? "^" + std::to_string(a) : "");
        }
        for (int j = 0; j < p.nvars(); ++j) {
            const int b = key.second[j];
            if (b == 0) continue;
            out += "*d" + std::to_string(j + 1) + (b > 1 ? "^" + std::to_string(b) : "");
        }
    }
    return out;
}

} // namespace hyperflux
