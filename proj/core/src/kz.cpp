#include "hyperflux/kz.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "hyperflux/errors.hpp"

namespace hyperflux {

namespace {

CMatrix zero(int n) { return CMatrix::Zero(n, n); }
CMatrix eye(int n) { return CMatrix::Identity(n, n); }

// 3x3 block matrix from row-major blocks.
CMatrix blocks(int n, std::initializer_list<CMatrix> b)
{
    CMatrix m(3 * n, 3 * n);
    int k = 0;
    for (const auto& blk : b) {
        m.block((k / 3) * n, (k % 3) * n, n, n) = blk;
        ++k;
    }
    return m;
}

double entry_scale(const ResidueFamily& f)
{
    double s = 0;
    for (const auto& [i, j] : ResidueFamily::all_pairs())
        s = std::max(s, f.A(i, j).cwiseAbs().maxCoeff());
    return std::max(1.0, s);
}

double op_norm(const CMatrix& m)
{
    if (m.size() == 0) return 0;
    return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

} // namespace

ResidueFamily::ResidueFamily(int N) : N_(N)
{
    if (N < 0) throw InvalidFamily("negative family size");
    for (auto& m : a_) m = zero(N);
}

int ResidueFamily::slot(int i, int j)
{
    if (i > j) std::swap(i, j);
    static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    if (i < 0 || j > 3 || i == j) return -1;
    return table[i][j];
}

CMatrix ResidueFamily::A(int i, int j) const
{
    if (i < 0 || j < 0 || i >= points || j >= points) throw InvalidFamily("residue index out of range");
    if (i == j) return zero(N_);
    if (i == 4) std::swap(i, j);
    if (j == 4) {
        CMatrix s = zero(N_);
        for (int v = 0; v < 4; ++v)
            if (v != i) s -= a_[slot(i, v)];
        return s;
    }
    return a_[slot(i, j)];
}

void ResidueFamily::set(int i, int j, const CMatrix& m)
{
    const int s = slot(i, j);
    if (s < 0) throw InvalidFamily("only pairs inside {0,1,2,3} are stored");
    if (m.rows() != N_ || m.cols() != N_) throw InvalidFamily("residue matrix has the wrong size");
    a_[s] = m;
}

const CMatrix& ResidueFamily::stored(int i, int j) const
{
    const int s = slot(i, j);
    if (s < 0) throw InvalidFamily("only pairs inside {0,1,2,3} are stored");
    return a_[s];
}

CMatrix ResidueFamily::total() const
{
    CMatrix s = zero(N_);
    for (const auto& m : a_) s += m;
    return s;
}

const std::vector<std::pair<int, int>>& ResidueFamily::all_pairs()
{
    static const std::vector<std::pair<int, int>> p = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                                                       {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    return p;
}

const std::vector<std::pair<int, int>>& ResidueFamily::finite_pairs()
{
    static const std::vector<std::pair<int, int>> p = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return p;
}

ValidationReport validate(const ResidueFamily& f, double tol)
{
    ValidationReport r;
    const int N = f.size();
    const double s2 = std::pow(entry_scale(f), 2);
    auto comm = [&](const CMatrix& a, const CMatrix& b) {
        return N == 0 ? 0.0 : (a * b - b * a).cwiseAbs().maxCoeff() / s2;
    };
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                r.triple_defect =
                    std::max(r.triple_defect, comm(f.A(i, j), f.A(i, k) + f.A(j, k)));
                for (int l = k + 1; l < 4; ++l)
                    if (l != i && l != j)
                        r.commutator_defect = std::max(r.commutator_defect, comm(f.A(i, j), f.A(k, l)));
            }
    if (N > 0) {
        const CMatrix t = f.total();
        const double s = entry_scale(f);
        r.kappa = t.trace() / double(N);
        r.homogeneity_defect = t.cwiseAbs().maxCoeff() / s;
        r.scalar_defect = (t - r.kappa * eye(N)).cwiseAbs().maxCoeff() / s;
    }
    r.integrable = r.commutator_defect <= tol && r.triple_defect <= tol;
    r.homogeneous = r.homogeneity_defect <= tol;
    r.pass = r.integrable && r.scalar_defect <= tol;
    return r;
}

ResidueFamily homogenized(const ResidueFamily& f)
{
    ResidueFamily g = f;
    if (f.size() == 0) return g;
    const cplx kappa = f.total().trace() / double(f.size());
    g.set(2, 3, f.stored(2, 3) - kappa * eye(f.size()));
    return g;
}

ResidueFamily s5_transform(const ResidueFamily& f, const Permutation& sigma, double tol)
{
    std::array<bool, 5> seen{};
    for (int s : sigma) {
        if (s < 0 || s > 4 || seen[s]) throw InvalidFamily("not a permutation of {0,...,4}");
        seen[s] = true;
    }
    if (sigma[4] != 4 && !validate(f, tol).homogeneous)
        throw NotHomogeneous("permutation moves the point at infinity of an inhomogeneous family");
    ResidueFamily g(f.size());
    for (const auto& [i, j] : ResidueFamily::finite_pairs()) g.set(i, j, f.A(sigma[i], sigma[j]));
    return g;
}

namespace {

const Permutation swap01 = {1, 0, 2, 3, 4};

ResidueFamily convolve_x(const ResidueFamily& f, cplx mu, cplx lambda)
{
    const int n = f.size();
    const CMatrix O = zero(n), I = eye(n);
    const CMatrix a01 = f.A(0, 1), a02 = f.A(0, 2), a03 = f.A(0, 3);
    const CMatrix a12 = f.A(1, 2), a13 = f.A(1, 3), a23 = f.A(2, 3);
    const CMatrix a03l = a03 + lambda * I;
    ResidueFamily g(3 * n);
    g.set(0, 1, blocks(n, {mu * I + a01, a02, a03l, O, O, O, O, O, O}));
    g.set(0, 2, blocks(n, {O, O, O, a01, mu * I + a02, a03l, O, O, O}));
    g.set(0, 3, blocks(n, {-(mu + lambda) * I, O, O, O, -(mu + lambda) * I, O, a01, a02, a03}));
    g.set(1, 2, blocks(n, {a12 + a02, -a02, O, -a01, a12 + a01, O, O, O, a12}));
    g.set(1, 3, blocks(n, {a13 + a03l, O, -a03l, O, a13, O, -a01, O, a01 + a13}));
    g.set(2, 3, blocks(n, {a23, O, O, O, a23 + a03l, -a03l, O, -a02, a02 + a23}));
    return g;
}

ResidueFamily convolve_xy(const ResidueFamily& f, cplx mu, cplx lambda)
{
    const int n = f.size();
    const ResidueFamily h = homogenized(f);
    const CMatrix O = zero(n), I = eye(n);
    const CMatrix a01 = h.A(0, 1), a02 = h.A(0, 2), a03 = h.A(0, 3);
    const CMatrix a12 = h.A(1, 2), a13 = h.A(1, 3), a04 = h.A(0, 4), a14 = h.A(1, 4);
    const CMatrix a24l = h.A(2, 4) + lambda * I;
    ResidueFamily g(3 * n);
    g.set(0, 1, blocks(n, {a01 + a02, -a02, O, -a12, a01 + a12, O, O, O, a01}));
    g.set(0, 2, blocks(n, {O, O, O, a12, a02 + mu * I, a24l, O, O, O}));
    g.set(0, 3, blocks(n, {a03, a02, O, O, a14 - (mu + lambda) * I, O, O, a02, a03}));
    g.set(1, 2, blocks(n, {a12 + mu * I, a02, a24l, O, O, O, O, O, O}));
    g.set(1, 3, blocks(n, {a04 - (mu + lambda) * I, O, O, a12, a13, O, a12, O, a13}));
    g.set(2, 3, blocks(n, {-a12 + lambda * I, -a02, -a24l, -a12, -a02 + lambda * I, -a24l, -a12, -a02,
                           -h.A(2, 4)}));
    return g;
}

// Kernel blocks stacked diagonally plus the kernel of `m`.
CMatrix combine(const std::array<CMatrix, 3>& k, const CMatrix& m, int n, double tol)
{
    int cols = 0;
    for (const auto& b : k) cols += int(b.cols());
    const CMatrix km = kernel_basis(m, tol);
    CMatrix s = CMatrix::Zero(3 * n, cols + km.cols());
    int c = 0;
    for (int b = 0; b < 3; ++b) {
        s.block(b * n, c, n, k[b].cols()) = k[b];
        c += int(k[b].cols());
    }
    s.rightCols(km.cols()) = km;
    return span_basis(s, tol);
}

std::vector<CMatrix> family_matrices(const ResidueFamily& f)
{
    std::vector<CMatrix> m;
    for (const auto& [i, j] : ResidueFamily::all_pairs()) m.push_back(f.A(i, j));
    return m;
}

} // namespace

ResidueFamily tilde_convolve(const ResidueFamily& f, cplx mu, cplx lambda, KzDirection dir)
{
    if (f.size() == 0) throw InvalidFamily("empty family");
    switch (dir) {
    case KzDirection::x:
        return convolve_x(f, mu, lambda);
    case KzDirection::y:
        return s5_transform(convolve_x(s5_transform(f, swap01), mu, lambda), swap01);
    case KzDirection::xy:
        return convolve_xy(f, mu, lambda);
    }
    throw InvalidFamily("unknown direction");
}

CMatrix kernel_basis(const CMatrix& m, double tol)
{
    const int n = int(m.cols());
    if (m.rows() == 0) return eye(n);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = tol * std::max(s.size() ? s(0) : 0.0, 1.0);
    int rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

CMatrix span_basis(const CMatrix& m, double tol)
{
    if (m.cols() == 0) return CMatrix(m.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double cut = tol * std::max(s(0), 1.0);
    int rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    return svd.matrixU().leftCols(rank);
}

double invariance_defect(const std::vector<CMatrix>& mats, const CMatrix& basis)
{
    if (basis.cols() == 0) return 0;
    const CMatrix P = basis * basis.adjoint();
    double d = 0;
    for (const auto& a : mats) {
        const CMatrix av = a * basis;
        const double r = (av - P * av).colwise().norm().maxCoeff();
        d = std::max(d, r / std::max(1.0, op_norm(a)));
    }
    return d;
}

CMatrix invariant_subspace(const ResidueFamily& ft, const ResidueFamily& f, cplx mu, cplx lambda,
                           KzDirection dir, double tol)
{
    const int n = f.size();
    if (ft.size() != 3 * n) throw InvalidFamily("convolved family must have size 3N");
    const CMatrix I = eye(n);
    const CMatrix shift = (mu + lambda) * eye(3 * n);
    CMatrix L;
    switch (dir) {
    case KzDirection::x:
        L = combine({kernel_basis(f.A(0, 1), tol), kernel_basis(f.A(0, 2), tol),
                     kernel_basis(f.A(0, 3) + lambda * I, tol)},
                    ft.A(0, 4) - shift, n, tol);
        break;
    case KzDirection::y:
        L = combine({kernel_basis(f.A(0, 1), tol), kernel_basis(f.A(1, 2), tol),
                     kernel_basis(f.A(1, 3) + lambda * I, tol)},
                    ft.A(1, 4) - shift, n, tol);
        break;
    case KzDirection::xy:
        L = combine({kernel_basis(f.A(1, 2), tol), kernel_basis(f.A(0, 2), tol),
                     kernel_basis(homogenized(f).A(2, 4) + lambda * I, tol)},
                    ft.A(2, 3) - shift, n, tol);
        break;
    }
    const double d = invariance_defect(family_matrices(ft), L);
    if (d > tol) throw InvarianceViolation("subspace is not invariant, defect " + std::to_string(d));
    return L;
}

CMatrix quotient_projection(const CMatrix& basis, int n)
{
    const int d = int(basis.cols());
    if (d == 0) return eye(n);
    Eigen::HouseholderQR<CMatrix> qr(basis);
    const CMatrix Q = qr.householderQ() * eye(n);
    return Q.rightCols(n - d).adjoint();
}

ResidueFamily quotient(const ResidueFamily& ft, const CMatrix& basis, double tol)
{
    const int n = ft.size();
    if (basis.rows() != n) throw InvalidFamily("basis has the wrong row count");
    const double d = invariance_defect(family_matrices(ft), basis);
    if (d > tol) throw InvarianceViolation("quotient by a non-invariant subspace, defect " + std::to_string(d));
    const CMatrix pi = quotient_projection(basis, n);
    const CMatrix C = pi.adjoint();
    ResidueFamily g(int(pi.rows()));
    for (const auto& [i, j] : ResidueFamily::finite_pairs()) g.set(i, j, pi * ft.A(i, j) * C);
    return g;
}

PipelineResult pipeline_pqr(const PqrParams& prm, double tol)
{
    const int p = prm.p(), q = prm.q(), r = prm.r();
    if (p < 1 || q < 1 || r < 1) throw DomainError("p, q and r must be at least 1");
    if (int(prm.alpha_p.size()) != p || int(prm.beta_p.size()) != q || int(prm.gamma_p.size()) != r)
        throw DimensionMismatch("parameter vectors must have lengths p, q and r");
    if (prm.alpha_p[0] != 0.0 || prm.beta_p[0] != 0.0)
        throw DomainError("alpha'_1 and beta'_1 must vanish");

    PipelineResult out{ResidueFamily(1), {}};
    out.family.set(0, 2, CMatrix::Constant(1, 1, -prm.alpha[0]));
    out.family.set(1, 2, CMatrix::Constant(1, 1, -prm.beta[0]));
    int cp = 1, cq = 1, cr = 0;
    auto step = [&](KzDirection dir, const std::string& name, cplx mu, cplx lambda) {
        const ResidueFamily ft = tilde_convolve(out.family, mu, lambda, dir);
        const CMatrix L = invariant_subspace(ft, out.family, mu, lambda, dir, tol);
        out.family = quotient(ft, L, tol);
        PipelineStage s;
        s.step = name;
        s.rank = out.family.size();
        s.expected = cp * cq + cq * cr + cr * cp;
        s.report = validate(out.family, tol);
        out.stages.push_back(s);
        if (s.rank != s.expected)
            throw GenericityError("stage " + name + " has rank " + std::to_string(s.rank) + ", expected " +
                                  std::to_string(s.expected));
    };
    for (int k = 0; k < r; ++k) {
        ++cr;
        step(KzDirection::xy, "xy" + std::to_string(k + 1), -prm.gamma_p[k] - prm.gamma[k], prm.gamma[k]);
    }
    for (int j = 1; j < q; ++j) {
        ++cq;
        step(KzDirection::y, "y" + std::to_string(j + 1), -prm.beta_p[j] - prm.beta[j], prm.beta[j]);
    }
    for (int i = 1; i < p; ++i) {
        ++cp;
        step(KzDirection::x, "x" + std::to_string(i + 1), -prm.alpha_p[i] - prm.alpha[i], prm.alpha[i]);
    }
    return out;
}

const SchemeColumn& GeneralizedRiemannScheme::column(int i, int j) const
{
    if (i > j) std::swap(i, j);
    for (const auto& c : columns)
        if (c.i == i && c.j == j) return c;
    throw InvalidFamily("no such column in the scheme");
}

std::vector<EigenCluster> cluster_eigenvalues(const Eigen::VectorXcd& ev, double tol)
{
    const int n = int(ev.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (std::abs(ev(a) - ev(b)) < tol) parent[find(a)] = find(b);
    std::map<int, std::pair<cplx, int>> acc;
    for (int a = 0; a < n; ++a) {
        auto& e = acc[find(a)];
        e.first += ev(a);
        ++e.second;
    }
    std::vector<EigenCluster> out;
    for (const auto& [root, e] : acc) {
        // roundoff around a zero eigenvalue is reported as an exact zero
        const cplx v = e.first / double(e.second);
        out.push_back({std::abs(v) < tol ? cplx(0.0) : v, e.second});
    }
    for (size_t a = 0; a < out.size(); ++a)
        for (size_t b = a + 1; b < out.size(); ++b)
            if (std::abs(out[a].value - out[b].value) < 10 * tol)
                throw ClusterError("eigenvalue clusters closer than 10 tol; parameters are not generic");
    std::sort(out.begin(), out.end(), [](const EigenCluster& a, const EigenCluster& b) {
        if (a.mult != b.mult) return a.mult > b.mult;
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

GeneralizedRiemannScheme riemann_scheme(const ResidueFamily& f, double tol)
{
    GeneralizedRiemannScheme s;
    s.N = f.size();
    for (const auto& [i, j] : ResidueFamily::all_pairs()) {
        Eigen::ComplexEigenSolver<CMatrix> es(f.A(i, j), false);
        s.columns.push_back({i, j, cluster_eigenvalues(es.eigenvalues(), tol)});
    }
    return s;
}

GeneralizedRiemannScheme pqr_scheme(const PqrParams& prm, double tol)
{
    const int p = prm.p(), q = prm.q(), r = prm.r();
    const int R = p * q + q * r + r * p;
    auto sum = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx s = 0;
        for (size_t k = 0; k < a.size(); ++k) s += a[k] + b[k];
        return s;
    };
    const cplx A2 = sum(prm.alpha, prm.alpha_p), B2 = sum(prm.beta, prm.beta_p), G2 = sum(prm.gamma, prm.gamma_p);
    using List = std::vector<EigenCluster>;
    auto each = [](const std::vector<cplx>& v, int m) {
        List l;
        for (auto x : v) l.push_back({x, m});
        return l;
    };
    auto pairs = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        List l;
        for (auto x : a)
            for (auto y : b) l.push_back({x + y, 1});
        return l;
    };
    auto join = [](List a, const List& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    std::map<std::pair<int, int>, List> t;
    t[{0, 1}] = {{0.0, p * q + (p + q - 1) * r}, {-A2 - B2, r}};
    t[{0, 2}] = {{0.0, p * r + (p + r - 1) * q}, {-A2 - G2, q}};
    t[{0, 3}] = join(each(prm.alpha_p, q + r), pairs(prm.beta, prm.gamma_p));
    t[{0, 4}] = join(each(prm.alpha, q + r), pairs(prm.beta_p, prm.gamma));
    t[{1, 2}] = {{0.0, q * r + (q + r - 1) * p}, {-B2 - G2, p}};
    t[{1, 3}] = join(each(prm.beta_p, p + r), pairs(prm.alpha, prm.gamma_p));
    t[{2, 3}] = join(each(prm.gamma, p + q), pairs(prm.alpha, prm.beta));
    t[{1, 4}] = join(each(prm.beta, p + r), pairs(prm.alpha_p, prm.gamma));
    t[{2, 4}] = join(each(prm.gamma_p, p + q), pairs(prm.alpha_p, prm.beta_p));
    t[{3, 4}] = {{0.0, R - (p + q + r) + 1}, {-A2 - B2 - G2, 2}, {-A2 - B2, r - 1}, {-B2 - G2, p - 1},
                 {-A2 - G2, q - 1}};

    GeneralizedRiemannScheme s;
    s.N = R;
    for (const auto& [i, j] : ResidueFamily::all_pairs()) {
        List merged;
        for (const auto& e : t[{i, j}]) {
            if (e.mult == 0) continue;
            auto it = std::find_if(merged.begin(), merged.end(),
                                   [&](const EigenCluster& m) { return std::abs(m.value - e.value) < tol; });
            if (it == merged.end())
                merged.push_back(e);
            else
                it->mult += e.mult;
        }
        s.columns.push_back({i, j, merged});
    }
    return s;
}

double scheme_distance(const GeneralizedRiemannScheme& a, const GeneralizedRiemannScheme& b)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.N != b.N || a.columns.size() != b.columns.size()) return inf;
    double d = 0;
    for (const auto& ca : a.columns) {
        const auto& cb = b.column(ca.i, ca.j);
        if (ca.entries.size() != cb.entries.size()) return inf;
        std::vector<bool> used(cb.entries.size(), false);
        for (const auto& e : ca.entries) {
            int best = -1;
            double bd = inf;
            for (size_t k = 0; k < cb.entries.size(); ++k) {
                if (used[k] || cb.entries[k].mult != e.mult) continue;
                const double dk = std::abs(cb.entries[k].value - e.value);
                if (dk < bd) {
                    bd = dk;
                    best = int(k);
                }
            }
            if (best < 0) return inf;
            used[best] = true;
            d = std::max(d, bd);
        }
    }
    return d;
}

int centralizer_dim(const CMatrix& a, double tol)
{
    const int n = int(a.rows());
    if (n == 0) return 0;
    // vec(AX - XA) = (I kron A - A^T kron I) vec(X)
    CMatrix m = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m.block(i * n, j * n, n, n) -= a(j, i) * eye(n);
            if (i == j) m.block(i * n, j * n, n, n) += a;
        }
    // rank-revealing QR; an SVD of the n^2 x n^2 system is too slow past n ~ 10
    Eigen::ColPivHouseholderQR<CMatrix> qr(m);
    qr.setThreshold(tol);
    return n * n - int(qr.rank());
}

int rigidity_index(const std::vector<CMatrix>& residues, double tol)
{
    if (residues.empty()) return 0;
    const int n = int(residues[0].rows());
    int s = 0;
    for (const auto& r : residues) s += centralizer_dim(r, tol);
    return s - 2 * n * n;
}

int rigidity_index(const ResidueFamily& f, int var, double tol)
{
    if (var < 0 || var > 3) throw InvalidFamily("variable index must be in {0,1,2,3}");
    std::vector<CMatrix> res;
    for (int v = 0; v < 5; ++v)
        if (v != var) res.push_back(f.A(var, v));
    return rigidity_index(res, tol);
}

OdeTriple OdeTriple::from_family(const ResidueFamily& f)
{
    return {f.A(0, 1), f.A(0, 2), f.A(0, 3), f.A(1, 3), f.A(1, 2)};
}

OdeConvolution ode_convolve(const OdeTriple& t, cplx mu, KzDirection dir, double tol)
{
    const int n = t.size();
    for (const auto* m : {&t.Ay, &t.A1, &t.A0, &t.B0, &t.B1})
        if (m->rows() != n || m->cols() != n) throw DimensionMismatch("ode triple matrices differ in size");
    const CMatrix O = zero(n), I = eye(n);
    OdeConvolution c;
    c.A14 = -t.Ay - t.B0 - t.B1;
    c.A24 = t.Ay + t.A0 + t.B0;
    // Kernel of e (r1, r2, r3) + mu, e the column of three identities.
    auto row_kernel = [&](const CMatrix& r1, const CMatrix& r2, const CMatrix& r3) {
        return blocks(n, {r1 + mu * I, r2, r3, r1, r2 + mu * I, r3, r1, r2, r3 + mu * I});
    };
    switch (dir) {
    case KzDirection::x:
        c.at_y = blocks(n, {t.Ay + mu * I, t.A1, t.A0, O, O, O, O, O, O});
        c.at_1 = blocks(n, {O, O, O, t.Ay, t.A1 + mu * I, t.A0, O, O, O});
        c.at_0 = blocks(n, {-mu * I, O, O, O, -mu * I, O, t.Ay, t.A1, t.A0});
        c.L = combine({kernel_basis(t.Ay, tol), kernel_basis(t.A1, tol), kernel_basis(t.A0, tol)},
                      row_kernel(t.Ay, t.A1, t.A0), n, tol);
        break;
    case KzDirection::y:
        c.at_y = blocks(n, {t.Ay + mu * I, t.B1, t.B0, O, O, O, O, O, O});
        c.at_1 = blocks(n, {t.A1 + t.B1, -t.B1, O, -t.Ay, t.A1 + t.Ay, O, O, O, t.A1});
        c.at_0 = blocks(n, {t.A0 + t.B0, O, -t.B0, O, t.A0, O, -t.Ay, O, t.A0 + t.Ay});
        c.L = combine({kernel_basis(t.Ay, tol), kernel_basis(t.B1, tol), kernel_basis(t.B0, tol)},
                      row_kernel(t.Ay, t.B1, t.B0), n, tol);
        break;
    case KzDirection::xy:
        c.at_y = blocks(n, {t.Ay + t.A1, -t.A1, O, -t.B1, t.Ay + t.B1, O, O, O, t.Ay});
        c.at_1 = blocks(n, {O, O, O, t.B1, t.A1 + mu * I, c.A24, O, O, O});
        c.at_0 = blocks(n, {t.A0, t.A1, O, O, c.A14 - mu * I, O, O, t.A1, t.A0});
        c.L = combine({kernel_basis(t.B1, tol), kernel_basis(t.A1, tol), kernel_basis(c.A24, tol)},
                      row_kernel(t.B1, t.A1, c.A24), n, tol);
        break;
    }
    return c;
}

namespace {

nlohmann::json matrix_json(const CMatrix& m)
{
    auto rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from_json(const nlohmann::json& j, int n)
{
    if (!j.is_array() || int(j.size()) != n) throw ParseError("residue matrix must have N rows");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        if (!j[r].is_array() || int(j[r].size()) != n) throw ParseError("residue matrix must have N columns");
        for (int c = 0; c < n; ++c) {
            const auto& e = j[r][c];
            if (e.is_number())
                m(r, c) = e.get<double>();
            else
                m(r, c) = {e.at(0).get<double>(), e.at(1).get<double>()};
        }
    }
    return m;
}

std::string pair_key(int i, int j) { return std::to_string(i) + std::to_string(j); }

std::string format_number(cplx v, int digits)
{
    auto fmt = [&](double x) {
        std::ostringstream os;
        os << std::setprecision(digits) << x;
        return os.str();
    };
    const double eps = std::pow(10.0, -digits);
    const double re = std::abs(v.real()) < eps ? 0.0 : v.real();
    const double im = std::abs(v.imag()) < eps ? 0.0 : v.imag();
    if (im == 0.0) return fmt(re);
    if (re == 0.0) return fmt(im) + "i";
    return fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

} // namespace

std::string family_to_json(const ResidueFamily& f)
{
    nlohmann::json j;
    j["q"] = ResidueFamily::q;
    j["N"] = f.size();
    for (const auto& [a, b] : ResidueFamily::finite_pairs()) j["A"][pair_key(a, b)] = matrix_json(f.stored(a, b));
    return j.dump();
}

ResidueFamily family_from_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.value("q", ResidueFamily::q) != ResidueFamily::q) throw ParseError("only q = 3 families are supported");
        const int n = j.at("N").get<int>();
        if (n < 0) throw ParseError("negative family size");
        ResidueFamily f(n);
        for (const auto& [key, val] : j.at("A").items()) {
            if (key.size() != 2 || key[0] < '0' || key[0] > '3' || key[1] < '0' || key[1] > '3' ||
                key[0] == key[1])
                throw ParseError("residue key must name a pair inside {0,1,2,3}: " + key);
            f.set(key[0] - '0', key[1] - '0', matrix_from_json(val, n));
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("residue family json: ") + e.what());
    }
}

std::string scheme_to_json(const GeneralizedRiemannScheme& s)
{
    nlohmann::json j;
    j["N"] = s.N;
    for (const auto& c : s.columns) {
        auto col = nlohmann::json::array();
        for (const auto& e : c.entries) col.push_back({{"value", {e.value.real(), e.value.imag()}}, {"mult", e.mult}});
        j["scheme"][pair_key(c.i, c.j)] = col;
    }
    return j.dump();
}

std::string scheme_to_tex(const GeneralizedRiemannScheme& s, int div, int digits)
{
    if (div < 1) div = 1;
    std::ostringstream os;
    const int nc = int(s.columns.size());
    const int nblocks = std::max(1, (nc + div - 1) / div);
    os << "\\left\\{\\begin{array}{" << std::string(std::min(div, std::max(nc, 1)), 'c') << "}\n";
    for (int b = 0; b < nblocks; ++b) {
        const int lo = b * div, hi = std::min(nc, lo + div);
        size_t rows = 0;
        for (int c = lo; c < hi; ++c) rows = std::max(rows, s.columns[c].entries.size());
        if (b > 0) os << "\\\\[1ex]\n";
        for (int c = lo; c < hi; ++c)
            os << (c > lo ? " & " : "") << "A_{" << s.columns[c].i << s.columns[c].j << "}";
        os << "\\\\\n";
        for (size_t r = 0; r < rows; ++r) {
            for (int c = lo; c < hi; ++c) {
                if (c > lo) os << " & ";
                const auto& e = s.columns[c].entries;
                if (r < e.size()) os << "[" << format_number(e[r].value, digits) << "]_{" << e[r].mult << "}";
            }
            os << (r + 1 < rows ? "\\\\\n" : "\n");
        }
    }
    os << "\\end{array}\\right\\}\n";
    return os.str();
}

} // namespace hyperflux
