#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gqms {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Hermitian matrix holder. Construction symmetrizes via (H + H*)/2 and
/// records how far the input was from Hermitian, so downstream arithmetic
/// noise never becomes fatal but is still visible.
struct Hermitian {
    ComplexMatrix mat;
    double deviation = 0.0;

    static Hermitian from(const ComplexMatrix& h);
    Eigen::Index dim() const { return mat.rows(); }
};

/// Eigenvalues sorted ascending, clustered into multiplicity groups.
struct Spectrum {
    std::vector<double> eigenvalues;       // one representative per cluster
    std::vector<int> multiplicities;
    double cluster_tolerance = 1e-8;
    RealVector raw;                        // all eigenvalues, ascending
};

struct EigResult {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // unitary, columns are eigenvectors
};

constexpr double kDefaultClusterTol = 1e-8;
constexpr double kDefaultRankTol = 1e-10;

bool is_finite(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron_real(const RealMatrix& a, const RealMatrix& b);

/// Hermitian eigendecomposition. Throws std::runtime_error on solver failure.
EigResult eig_herm(const ComplexMatrix& h);

Spectrum cluster_spectrum(const RealVector& ascending_values,
                          double tol = kDefaultClusterTol);

double min_eig(const ComplexMatrix& h);
bool psd_check(const ComplexMatrix& h, double tol);

/// [[Re H, -Im H], [Im H, Re H]]; PSD-ness and spectra are preserved,
/// traces and inner products double.
RealMatrix real_embed(const ComplexMatrix& h);

/// Inverse of real_embed, averaging over the embedding symmetry first.
ComplexMatrix complex_from_embed(const RealMatrix& s);

/// Orthonormal kernel basis (columns). Rank cut at rank_tol * sigma_max.
ComplexMatrix nullspace(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);
RealMatrix nullspace_real(const RealMatrix& m, double rank_tol = kDefaultRankTol);

/// C = B + B*, D = i(B - B*); both Hermitian, B = (C - iD)/2.
std::pair<ComplexMatrix, ComplexMatrix> hermitize_pair(const ComplexMatrix& b);

double frob(const ComplexMatrix& m);

}  // namespace gqms
