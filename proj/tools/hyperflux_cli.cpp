#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hyperflux/catalog.hpp"
#include "hyperflux/errors.hpp"
#include "hyperflux/kz.hpp"
#include "hyperflux/transforms.hpp"
#include "hyperflux/verify.hpp"

namespace {

using hyperflux::cplx;

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_tolerance = 3;
constexpr int exit_usage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts 1.5, -2i, 0.4+0.3i, 1e-3-2e-1i.
cplx parse_cplx(const std::string& s)
{
    if (s.empty()) throw UsageError("empty number");
    std::size_t pos = 0;
    try {
        if (s.back() != 'i' && s.back() != 'j') {
            const double re = std::stod(s, &pos);
            if (pos != s.size()) throw UsageError("bad number: " + s);
            return re;
        }
        const std::string body = s.substr(0, s.size() - 1);
        // split at the last sign that is not an exponent sign or the leading one
        std::size_t cut = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;)
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                cut = k;
                break;
            }
        const auto num = [&](const std::string& t) {
            if (t == "" || t == "+") return 1.0;
            if (t == "-") return -1.0;
            std::size_t p = 0;
            const double v = std::stod(t, &p);
            if (p != t.size()) throw UsageError("bad number: " + s);
            return v;
        };
        if (cut == std::string::npos) return {0.0, num(body)};
        const std::string re = body.substr(0, cut);
        std::size_t p = 0;
        const double r = std::stod(re, &p);
        if (p != re.size()) throw UsageError("bad number: " + s);
        return {r, num(body.substr(cut))};
    } catch (const std::logic_error&) {
        throw UsageError("bad number: " + s);
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

// a=0.3,b=0.7,l=0.2:0.4+0.1i  (vector parameters use ':')
std::map<std::string, std::vector<cplx>> parse_params(const std::string& s)
{
    std::map<std::string, std::vector<cplx>> out;
    for (const auto& item : split(s, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("parameter needs name=value: " + item);
        auto& v = out[item.substr(0, eq)];
        const std::string rhs = item.substr(eq + 1);
        if (rhs.empty()) continue;
        for (const auto& x : split(rhs, ':')) v.push_back(parse_cplx(x));
    }
    return out;
}

std::string slurp(const std::string& path)
{
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text << "\n";
}

std::string fmt(cplx z)
{
    std::ostringstream o;
    o.precision(17);
    o << z.real();
    if (z.imag() != 0.0) o << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return o.str();
}

void print_series(const hyperflux::TruncatedSeries& s, std::ostream& os)
{
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << "[";
        const auto& m = s.index(k);
        for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << m[j];
        os << "] " << fmt(s[k]) << "\n";
    }
}

std::optional<double> env_tol()
{
    const char* v = std::getenv("HYPERFLUX_TOL");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (*end || !(t > 0)) throw UsageError(std::string("HYPERFLUX_TOL must be a positive number, got ") + v);
    return t;
}

struct SeriesArgs {
    std::string kind, params, out = "text", via = "direct", file;
    int trunc = 10, n = 1;
};

int run_series(const SeriesArgs& a)
{
    using namespace hyperflux;
    const SeriesId id(series_kind_from_string(a.kind), a.trunc, parse_params(a.params), a.n);
    const auto s = a.via == "direct" ? build_direct(id) : build_via_transform(id);
    if (a.out == "json") {
        write_text(a.file, series_to_json(s));
    } else if (a.file.empty() || a.file == "-") {
        print_series(s, std::cout);
    } else {
        std::ofstream o(a.file);
        print_series(s, o);
    }
    return exit_ok;
}

struct TransformArgs {
    std::string in, spec, mu, lambda, dir = "K", out = "json", file;
};

int run_transform(const TransformArgs& a)
{
    using namespace hyperflux;
    const auto u = series_from_json(slurp(a.in));
    TransformSpec spec;
    if (!a.spec.empty()) {
        spec = spec_from_json(slurp(a.spec));
    } else {
        if (a.mu.empty() || a.lambda.empty()) throw UsageError("transform needs --spec or both --mu and --lambda");
        std::vector<cplx> lam;
        for (const auto& x : split(a.lambda, ',')) lam.push_back(parse_cplx(x));
        spec = TransformSpec::full(parse_cplx(a.mu), lam);
    }
    const auto v = a.dir == "K" ? apply_K(u, spec) : apply_L(u, spec);
    if (a.out == "json") {
        write_text(a.file, series_to_json(v));
    } else {
        print_series(v, std::cout);
    }
    return exit_ok;
}

struct PipelineArgs {
    std::string pqr, emit, family_out, params_in;
    std::uint64_t seed = 42;
    int div = 5;
};

hyperflux::PqrParams read_params(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    const auto vec = [&](const char* key) {
        std::vector<cplx> v;
        for (const auto& e : j.at(key)) {
            if (e.is_array()) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
            else v.emplace_back(e.get<double>());
        }
        return v;
    };
    hyperflux::PqrParams p;
    p.alpha = vec("alpha");
    p.alpha_p = vec("alpha_p");
    p.beta = vec("beta");
    p.beta_p = vec("beta_p");
    p.gamma = vec("gamma");
    p.gamma_p = vec("gamma_p");
    return p;
}

nlohmann::json params_json(const hyperflux::PqrParams& p)
{
    const auto vec = [](const std::vector<cplx>& v) {
        auto a = nlohmann::json::array();
        for (auto z : v) a.push_back({z.real(), z.imag()});
        return a;
    };
    return {{"alpha", vec(p.alpha)}, {"alpha_p", vec(p.alpha_p)}, {"beta", vec(p.beta)},
            {"beta_p", vec(p.beta_p)}, {"gamma", vec(p.gamma)},   {"gamma_p", vec(p.gamma_p)}};
}

int run_pipeline(const PipelineArgs& a)
{
    using namespace hyperflux;
    PqrParams prm;
    if (!a.params_in.empty()) {
        try {
            prm = read_params(slurp(a.params_in));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("parameter json: ") + e.what());
        }
    } else {
        const auto parts = split(a.pqr, ',');
        if (parts.size() != 3) throw UsageError("--pqr expects p,q,r");
        int d[3];
        for (int k = 0; k < 3; ++k) {
            try {
                d[k] = std::stoi(parts[k]);
            } catch (const std::logic_error&) {
                throw UsageError("--pqr expects integers");
            }
            if (d[k] < 1) throw UsageError("--pqr entries must be >= 1");
        }
        std::mt19937_64 rng(a.seed);
        prm = verify::pqr_params(rng, d[0], d[1], d[2]);
        std::cerr << "seed " << a.seed << "\n";
    }
    std::cerr << "params " << params_json(prm).dump() << "\n";
    const double tol = env_tol().value_or(1e-9);
    const auto res = pipeline_pqr(prm, tol);
    const auto& f = res.family;
    for (const auto& st : res.stages)
        std::cout << "stage " << st.step << ": rank " << st.rank << " (expected " << st.expected << ")"
                  << (st.report.pass ? "" : " not integrable") << "\n";
    const int idx = rigidity_index(f, 0);
    std::cout << "p,q,r " << prm.p() << "," << prm.q() << "," << prm.r() << "\n";
    std::cout << "rank " << f.size() << "\n";
    std::cout << "Idx_x " << idx << "\n";
    const auto v = validate(f, tol);
    std::cout << "integrability defect " << std::max(v.commutator_defect, v.triple_defect) << "\n";
    const auto scheme = riemann_scheme(f);
    const double dist = scheme_distance(scheme, pqr_scheme(prm));
    std::cout << "scheme distance " << dist << "\n";
    if (!a.emit.empty()) write_text(a.emit, scheme_to_tex(scheme, a.div));
    if (!a.family_out.empty()) write_text(a.family_out, family_to_json(f));
    if (!v.pass) return exit_validation;
    const int expected_idx = 2 - 2 * (prm.q() - 1) * (prm.r() - 1) * (prm.q() + prm.r() + 1);
    if (idx != expected_idx) return exit_validation;
    const double scheme_tol = env_tol().value_or(1e-7);
    return dist <= scheme_tol ? exit_ok : exit_tolerance;
}

struct SchemeArgs {
    std::string in, out = "json", file;
    int div = 5;
};

int run_scheme(const SchemeArgs& a)
{
    using namespace hyperflux;
    const auto f = family_from_json(slurp(a.in));
    const auto s = riemann_scheme(f, env_tol().value_or(1e-7));
    write_text(a.file, a.out == "tex" ? scheme_to_tex(s, a.div) : scheme_to_json(s));
    return exit_ok;
}

struct VerifyArgs {
    std::string suite = "all";
    bool tol_report = false;
    std::uint64_t seed = hyperflux::verify::Options{}.seed;
};

int run_verify(const VerifyArgs& a)
{
    using namespace hyperflux::verify;
    Options opt;
    opt.seed = a.seed;
    opt.tol_override = env_tol();
    std::vector<std::string> names;
    if (a.suite == "all") {
        names = suite_names();
    } else {
        const auto& all = suite_names();
        if (std::find(all.begin(), all.end(), a.suite) == all.end()) throw UsageError("unknown suite " + a.suite);
        names = {a.suite};
    }
    std::cout << "seed " << opt.seed;
    if (opt.tol_override) std::cout << " tol override " << *opt.tol_override;
    std::cout << "\n";
    bool ok = true;
    for (const auto& name : names) {
        const auto r = run_suite(name, opt);
        ok = ok && r.pass();
        std::cout << (r.pass() ? "PASS " : "FAIL ") << name << "\n";
        for (const auto& c : r.checks) {
            if (!a.tol_report && c.pass) continue;
            std::cout << "  " << (c.pass ? "ok  " : "bad ") << c.name << ": " << c.value;
            if (c.tol > 0) std::cout << " <= " << c.tol;
            else std::cout << " mismatches";
            if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
            std::cout << "\n";
        }
    }
    return ok ? exit_ok : exit_tolerance;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hyperflux: multivariate hypergeometric series, transforms and KZ middle convolution"};
    app.require_subcommand(1);

    SeriesArgs sa;
    auto* series = app.add_subcommand("series", "Build a catalog series");
    series->add_option("--kind", sa.kind, "Series kind (F1, Gauss, FA, ...)")->required();
    series->add_option("--params", sa.params, "name=value list; vectors use ':'")->required();
    series->add_option("--trunc", sa.trunc, "Total-degree truncation")->check(CLI::NonNegativeNumber);
    series->add_option("-n,--nvars", sa.n, "Variable count for FA..FD")->check(CLI::PositiveNumber);
    series->add_option("--out", sa.out, "text or json")->check(CLI::IsMember({"text", "json"}));
    series->add_option("--via", sa.via, "direct or transform")->check(CLI::IsMember({"direct", "transform"}));
    series->add_option("-o,--file", sa.file, "Output path (default stdout)");

    TransformArgs ta;
    auto* transform = app.add_subcommand("transform", "Apply K or L to a series JSON");
    transform->add_option("--in", ta.in, "Series JSON path or -")->required();
    transform->add_option("--spec", ta.spec, "Transform spec JSON path");
    transform->add_option("--mu", ta.mu, "mu for the full-variable spec");
    transform->add_option("--lambda", ta.lambda, "Comma separated lambda");
    transform->add_option("--dir", ta.dir, "K or L")->check(CLI::IsMember({"K", "L"}));
    transform->add_option("--out", ta.out, "text or json")->check(CLI::IsMember({"text", "json"}));
    transform->add_option("-o,--file", ta.file, "Output path (default stdout)");

    PipelineArgs pa;
    auto* pipeline = app.add_subcommand("kz-pipeline", "Build the (p,q,r) KZ family by middle convolutions");
    auto* pqr_opt = pipeline->add_option("--pqr", pa.pqr, "p,q,r");
    auto* prm_opt = pipeline->add_option("--params", pa.params_in, "Parameter JSON instead of random draws");
    pqr_opt->excludes(prm_opt);
    pipeline->add_option("--seed", pa.seed, "Seed for the random parameters");
    pipeline->add_option("--emit", pa.emit, "Write the Riemann scheme as TeX");
    pipeline->add_option("--family", pa.family_out, "Write the residue family as JSON");
    pipeline->add_option("--div", pa.div, "Scheme columns per TeX block")->check(CLI::PositiveNumber);

    SchemeArgs ca;
    auto* scheme = app.add_subcommand("kz-scheme", "Generalized Riemann scheme of a residue family JSON");
    scheme->add_option("--in", ca.in, "Family JSON path or -")->required();
    scheme->add_option("--out", ca.out, "json or tex")->check(CLI::IsMember({"json", "tex"}));
    scheme->add_option("--div", ca.div, "Scheme columns per TeX block")->check(CLI::PositiveNumber);
    scheme->add_option("-o,--file", ca.file, "Output path (default stdout)");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Run verification suites");
    ver->add_option("--suite", va.suite, "all or one suite name");
    ver->add_flag("--tol-report", va.tol_report, "Print every check with its tolerance");
    ver->add_option("--seed", va.seed, "Seed for the random draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    if (pipeline->parsed() && pa.pqr.empty() && pa.params_in.empty()) {
        std::cerr << "kz-pipeline needs --pqr or --params\n";
        return exit_usage;
    }

    try {
        if (series->parsed()) return run_series(sa);
        if (transform->parsed()) return run_transform(ta);
        if (pipeline->parsed()) return run_pipeline(pa);
        if (scheme->parsed()) return run_scheme(ca);
        return run_verify(va);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return exit_usage;
    } catch (const hyperflux::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
}
