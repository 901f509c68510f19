#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperflux/series.hpp"

namespace hyperflux {

using CMatrix = Eigen::MatrixXcd;

// Residue matrices of du = sum A_ij dlog(x_i - x_j) u with points
// (x0, ..., x4) = (x, y, 1, 0, inf). Only the six pairs inside {0..3} are
// stored; A_i4 = -sum_nu A_i,nu is derived.
class ResidueFamily {
public:
    static constexpr int q = 3;
    static constexpr int points = q + 2;

    explicit ResidueFamily(int N = 1);

    int size() const { return N_; }
    // Any pair in {0..4}; A_ii = 0 and A_ij = A_ji.
    CMatrix A(int i, int j) const;
    // Finite pairs only.
    void set(int i, int j, const CMatrix& m);
    const CMatrix& stored(int i, int j) const;

    // Sum of A_ij over the pairs inside {0..3}.
    CMatrix total() const;

    // The ten unordered pairs in {0..4}, lexicographic.
    static const std::vector<std::pair<int, int>>& all_pairs();
    static const std::vector<std::pair<int, int>>& finite_pairs();

private:
    static int slot(int i, int j);
    int N_;
    std::array<CMatrix, 6> a_;
};

struct ValidationReport {
    double commutator_defect = 0; // [A_ij, A_kl], disjoint pairs
    double triple_defect = 0;     // [A_ij, A_ik + A_jk]
    double homogeneity_defect = 0; // |total|
    cplx kappa = 0.0;             // trace(total) / N
    double scalar_defect = 0;     // |total - kappa I|
    bool integrable = false;
    bool homogeneous = false;
    // Integrable and homogeneous up to the scalar gauge kappa.
    bool pass = false;
};

// Defects are relative to max(1, |A|^2) with |A| the largest entry norm.
ValidationReport validate(const ResidueFamily& f, double tol = 1e-9);

// A_23 -> A_23 - kappa I. The (x, y) system is unchanged because x2 - x3 = 1.
ResidueFamily homogenized(const ResidueFamily& f);

using Permutation = std::array<int, 5>;

// A'_ij = A_sigma(i) sigma(j). Requires homogeneity unless sigma fixes 4.
ResidueFamily s5_transform(const ResidueFamily& f, const Permutation& sigma, double tol = 1e-9);

enum class KzDirection { x, y, xy };

// Size 3N family of the convolution in the given direction. For xy the
// index-4 inputs come from the homogenized family.
ResidueFamily tilde_convolve(const ResidueFamily& f, cplx mu, cplx lambda, KzDirection dir);

// Orthonormal basis (3N x d) of the invariant subspace, checked against every
// residue matrix of f_tilde.
CMatrix invariant_subspace(const ResidueFamily& f_tilde, const ResidueFamily& f, cplx mu, cplx lambda,
                           KzDirection dir, double tol = 1e-9);

// Induced family on C^{3N} / span(basis).
ResidueFamily quotient(const ResidueFamily& f_tilde, const CMatrix& basis, double tol = 1e-9);

// Projection pi (rows span the orthogonal complement of the basis).
CMatrix quotient_projection(const CMatrix& basis, int n);

// Largest |A v - P A v| over basis vectors and matrices, relative to |A|.
double invariance_defect(const std::vector<CMatrix>& mats, const CMatrix& basis);

struct PqrParams {
    std::vector<cplx> alpha, alpha_p, beta, beta_p, gamma, gamma_p;
    int p() const { return int(alpha.size()); }
    int q() const { return int(beta.size()); }
    int r() const { return int(gamma.size()); }
};

struct PipelineStage {
    std::string step; // "xy", "y" or "x" with its index
    int rank = 0;
    int expected = 0;
    ValidationReport report;
};

struct PipelineResult {
    ResidueFamily family;
    std::vector<PipelineStage> stages;
};

PipelineResult pipeline_pqr(const PqrParams& prm, double tol = 1e-9);

struct EigenCluster {
    cplx value = 0.0;
    int mult = 0;
};

struct SchemeColumn {
    int i = 0, j = 0;
    std::vector<EigenCluster> entries;
};

struct GeneralizedRiemannScheme {
    int N = 0;
    std::vector<SchemeColumn> columns; // one per pair of {0..4}
    const SchemeColumn& column(int i, int j) const;
};

// Eigenvalues clustered by union-find at distance < tol. Throws ClusterError
// when two clusters are closer than 10 tol.
std::vector<EigenCluster> cluster_eigenvalues(const Eigen::VectorXcd& ev, double tol);
GeneralizedRiemannScheme riemann_scheme(const ResidueFamily& f, double tol = 1e-7);

// The closed-form scheme of the (p, q, r) family, entries merged when equal.
GeneralizedRiemannScheme pqr_scheme(const PqrParams& prm, double tol = 1e-7);

// Largest eigenvalue distance after matching clusters with equal
// multiplicities; infinity when no matching exists.
double scheme_distance(const GeneralizedRiemannScheme& a, const GeneralizedRiemannScheme& b);

// N^2 - rank of X -> AX - XA.
int centralizer_dim(const CMatrix& a, double tol = 1e-9);
// Sum of dim Z over the four residues at x_var minus 2N^2.
int rigidity_index(const ResidueFamily& f, int var = 0, double tol = 1e-9);
int rigidity_index(const std::vector<CMatrix>& residues, double tol = 1e-9);

// du/dx = A_y u/(x - y) + A_1 u/(x - 1) + A_0 u/x, with the y-equation
// partners B_1 at y = 1 and B_0 at y = 0.
struct OdeTriple {
    CMatrix Ay, A1, A0, B0, B1;
    int size() const { return int(Ay.rows()); }
    static OdeTriple from_family(const ResidueFamily& f);
};

struct OdeConvolution {
    CMatrix at_y, at_1, at_0; // 3N x 3N residues in x
    CMatrix A14, A24;
    CMatrix L; // orthonormal basis of the invariant subspace
};

OdeConvolution ode_convolve(const OdeTriple& t, cplx mu, KzDirection dir, double tol = 1e-9);

// Orthonormal basis of the kernel, singular values below
// tol * max(sigma_max, 1) count as zero.
CMatrix kernel_basis(const CMatrix& m, double tol = 1e-9);
// Orthonormal basis of the column span.
CMatrix span_basis(const CMatrix& m, double tol = 1e-9);

std::string family_to_json(const ResidueFamily& f);
ResidueFamily family_from_json(const std::string& text);
std::string scheme_to_json(const GeneralizedRiemannScheme& s);
// Array with one column per pair, entries "[v]_k", split every `div` columns.
std::string scheme_to_tex(const GeneralizedRiemannScheme& s, int div = 5, int digits = 6);

} // namespace hyperflux
