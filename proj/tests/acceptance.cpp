// One PASS/FAIL line per acceptance criterion. Tolerances are pinned here and
// compared against the values each suite reports; HYPERFLUX_TOL is ignored.

#include <cstdio>
#include <string>
#include <vector>

#include "hyperflux/verify.hpp"
#include "mp_gamma.hpp"

namespace {

struct Criterion {
    const char* suite;
    const char* title;
    std::vector<double> tol; // one per check; 0 means an exact count
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> c = {
        {"inverse", "transform inverse pair", {1e-11}},
        {"monomial", "monomial laws against the MPFR Gamma oracle", {1e-12, 1e-12}},
        {"catalog", "dual-path catalog equality", {1e-11}},
        {"quadrature", "quadrature oracles", {1e-6, 1e-6, 1e-8}},
        {"connection", "F1 connection formula", {1e-8, 1e-10}},
        {"annihilation", "operator annihilation", {1e-12, 1e-10}},
        {"kz", "KZ pipeline", {0, 1e-9, 1e-7, 0}},
        {"conjugation", "xy / x conjugation consistency", {1e-12}},
        {"ode", "ODE restrictions", {1e-9}},
    };
    return c;
}

} // namespace

int main()
{
    using namespace hyperflux::verify;
    Options opt;
    opt.gamma_ratio = [](const std::vector<hyperflux::cplx>& num, const std::vector<hyperflux::cplx>& den) {
        return oracle::mp_gamma_ratio(num, den);
    };
    std::printf("seed %llu\n", static_cast<unsigned long long>(opt.seed));
    int failed = 0, k = 0;
    for (const auto& cr : criteria()) {
        ++k;
        bool ok = true;
        std::string why;
        try {
            const auto res = run_suite(cr.suite, opt);
            if (res.checks.size() != cr.tol.size()) {
                ok = false;
                why = "unexpected check count";
            }
            for (std::size_t i = 0; i < res.checks.size() && i < cr.tol.size(); ++i) {
                const auto& ch = res.checks[i];
                const bool good = cr.tol[i] == 0 ? ch.value == 0 : ch.value <= cr.tol[i];
                ok = ok && good;
                std::printf("    %-4s %s: %.3g (limit %.0e)%s%s\n", good ? "ok" : "bad", ch.name.c_str(), ch.value,
                            cr.tol[i], ch.detail.empty() ? "" : "  ", ch.detail.c_str());
            }
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        if (!ok) ++failed;
        std::printf("%s %d %s%s%s\n", ok ? "PASS" : "FAIL", k, cr.title, why.empty() ? "" : ": ", why.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
