#include "mp_gamma.hpp"

#include <mpfr.h>

#include <cmath>
#include <vector>

namespace oracle {

namespace {

constexpr mpfr_prec_t prec = 384;
constexpr int spouge_a = 56;

struct Mp {
    mpfr_t v;
    Mp() { mpfr_init2(v, prec); mpfr_set_zero(v, 1); }
    explicit Mp(double d) { mpfr_init2(v, prec); mpfr_set_d(v, d, MPFR_RNDN); }
    Mp(const Mp& o) { mpfr_init2(v, prec); mpfr_set(v, o.v, MPFR_RNDN); }
    Mp& operator=(const Mp& o) { mpfr_set(v, o.v, MPFR_RNDN); return *this; }
    ~Mp() { mpfr_clear(v); }
};

struct Mc {
    Mp re, im;
    Mc() = default;
    Mc(double r, double i) : re(r), im(i) {}
};

Mc add(const Mc& a, const Mc& b)
{
    Mc r;
    mpfr_add(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
    mpfr_add(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
    return r;
}

Mc sub(const Mc& a, const Mc& b)
{
    Mc r;
    mpfr_sub(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
    mpfr_sub(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
    return r;
}

Mc mul(const Mc& a, const Mc& b)
{
    Mc r;
    Mp t1, t2;
    mpfr_mul(t1.v, a.re.v, b.re.v, MPFR_RNDN);
    mpfr_mul(t2.v, a.im.v, b.im.v, MPFR_RNDN);
    mpfr_sub(r.re.v, t1.v, t2.v, MPFR_RNDN);
    mpfr_mul(t1.v, a.re.v, b.im.v, MPFR_RNDN);
    mpfr_mul(t2.v, a.im.v, b.re.v, MPFR_RNDN);
    mpfr_add(r.im.v, t1.v, t2.v, MPFR_RNDN);
    return r;
}

Mc mul_real(const Mc& a, const Mp& s)
{
    Mc r;
    mpfr_mul(r.re.v, a.re.v, s.v, MPFR_RNDN);
    mpfr_mul(r.im.v, a.im.v, s.v, MPFR_RNDN);
    return r;
}

Mc inv(const Mc& a)
{
    Mp den, t;
    mpfr_mul(den.v, a.re.v, a.re.v, MPFR_RNDN);
    mpfr_mul(t.v, a.im.v, a.im.v, MPFR_RNDN);
    mpfr_add(den.v, den.v, t.v, MPFR_RNDN);
    Mc r;
    mpfr_div(r.re.v, a.re.v, den.v, MPFR_RNDN);
    mpfr_div(r.im.v, a.im.v, den.v, MPFR_RNDN);
    mpfr_neg(r.im.v, r.im.v, MPFR_RNDN);
    return r;
}

// principal log
Mc log(const Mc& a)
{
    Mc r;
    mpfr_hypot(r.re.v, a.re.v, a.im.v, MPFR_RNDN);
    mpfr_log(r.re.v, r.re.v, MPFR_RNDN);
    mpfr_atan2(r.im.v, a.im.v, a.re.v, MPFR_RNDN);
    return r;
}

Mc exp(const Mc& a)
{
    Mp m, c, s;
    mpfr_exp(m.v, a.re.v, MPFR_RNDN);
    mpfr_sin_cos(s.v, c.v, a.im.v, MPFR_RNDN);
    Mc r;
    mpfr_mul(r.re.v, m.v, c.v, MPFR_RNDN);
    mpfr_mul(r.im.v, m.v, s.v, MPFR_RNDN);
    return r;
}

Mc from(std::complex<double> z) { return Mc(z.real(), z.imag()); }

std::complex<double> to(const Mc& a)
{
    return {mpfr_get_d(a.re.v, MPFR_RNDN), mpfr_get_d(a.im.v, MPFR_RNDN)};
}

struct SpougeTable {
    std::vector<Mp> c; // c[0] = sqrt(2 pi), c[k] for k = 1..a-1
    SpougeTable()
    {
        c.resize(spouge_a);
        Mp pi;
        mpfr_const_pi(pi.v, MPFR_RNDN);
        mpfr_mul_ui(c[0].v, pi.v, 2, MPFR_RNDN);
        mpfr_sqrt(c[0].v, c[0].v, MPFR_RNDN);
        Mp fact(1.0); // (k-1)!
        for (int k = 1; k < spouge_a; ++k) {
            if (k > 1) mpfr_mul_ui(fact.v, fact.v, k - 1, MPFR_RNDN);
            Mp base(double(spouge_a - k)), e, t;
            mpfr_set_d(e.v, k - 0.5, MPFR_RNDN);
            mpfr_pow(t.v, base.v, e.v, MPFR_RNDN);
            Mp ex;
            mpfr_exp(ex.v, base.v, MPFR_RNDN);
            mpfr_mul(t.v, t.v, ex.v, MPFR_RNDN);
            mpfr_div(t.v, t.v, fact.v, MPFR_RNDN);
            if (k % 2 == 0) mpfr_neg(t.v, t.v, MPFR_RNDN);
            c[k] = t;
        }
    }
};

const SpougeTable& table()
{
    static const SpougeTable t;
    return t;
}

// log Gamma(z + 1), Re z > 0
Mc spouge_log_gamma1(const Mc& z)
{
    const auto& t = table();
    Mc sum;
    mpfr_set(sum.re.v, t.c[0].v, MPFR_RNDN);
    for (int k = 1; k < spouge_a; ++k) {
        Mc zk = z;
        mpfr_add_ui(zk.re.v, zk.re.v, k, MPFR_RNDN);
        sum = add(sum, mul_real(inv(zk), t.c[k]));
    }
    Mc za = z;
    mpfr_add_ui(za.re.v, za.re.v, spouge_a, MPFR_RNDN);
    Mc zh = z;
    Mp half(0.5);
    mpfr_add(zh.re.v, zh.re.v, half.v, MPFR_RNDN);
    return sub(add(mul(zh, log(za)), log(sum)), za);
}

Mc mp_lg(const Mc& w)
{
    // shift so that Re(w) >= 8, then Gamma(w) = Gamma(z + 1) with z = w - 1
    Mc acc;
    Mc cur = w;
    while (mpfr_cmp_d(cur.re.v, 8.0) < 0) {
        acc = add(acc, log(cur));
        mpfr_add_ui(cur.re.v, cur.re.v, 1, MPFR_RNDN);
    }
    // Stirling in double picks the continued branch of the Spouge value
    const std::complex<double> w0 = to(cur);
    const std::complex<double> stirling =
        (w0 - 0.5) * std::log(w0) - w0 + 0.5 * std::log(2.0 * M_PI) + 1.0 / (12.0 * w0);
    mpfr_sub_ui(cur.re.v, cur.re.v, 1, MPFR_RNDN);
    Mc val = spouge_log_gamma1(cur);
    const double turns = std::round((stirling.imag() - mpfr_get_d(val.im.v, MPFR_RNDN)) / (2.0 * M_PI));
    if (turns != 0.0) {
        Mp twopi;
        mpfr_const_pi(twopi.v, MPFR_RNDN);
        mpfr_mul_d(twopi.v, twopi.v, 2.0 * turns, MPFR_RNDN);
        mpfr_add(val.im.v, val.im.v, twopi.v, MPFR_RNDN);
    }
    return sub(val, acc);
}

} // namespace

std::complex<double> mp_log_gamma(std::complex<double> z) { return to(mp_lg(from(z))); }

std::complex<double> mp_gamma(std::complex<double> z) { return to(exp(mp_lg(from(z)))); }

std::complex<double> mp_gamma_ratio(const std::vector<std::complex<double>>& num,
                                    const std::vector<std::complex<double>>& den)
{
    Mc acc;
    for (auto z : num) acc = add(acc, mp_lg(from(z)));
    for (auto z : den) acc = sub(acc, mp_lg(from(z)));
    return to(exp(acc));
}

} // namespace oracle
