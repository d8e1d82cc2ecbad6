#include "gqms/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace gqms {

bool is_finite(const ComplexMatrix& m) {
    return m.real().allFinite() && m.imag().allFinite();
}

Hermitian Hermitian::from(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("Hermitian::from: matrix not square");
    if (!is_finite(h)) throw std::invalid_argument("Hermitian::from: non-finite entries");
    Hermitian out;
    out.mat = 0.5 * (h + h.adjoint());
    out.deviation = (h - out.mat).norm();
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

RealMatrix kron_real(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

EigResult eig_herm(const ComplexMatrix& h) {
    // One well-tested real symmetric kernel serves every module: embed, solve,
    // then collapse the doubled spectrum. Each embedded eigenvector (u; v)
    // corresponds to the complex eigenvector u + iv; within a degenerate pair
    // the second copy is linearly dependent over C and gets dropped by the
    // Gram-Schmidt pass below.
    if (h.rows() != h.cols()) throw std::invalid_argument("eig_herm: matrix not square");
    const Eigen::Index m = h.rows();
    ComplexMatrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(real_embed(hs));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_herm: eigensolver did not converge");
    const RealVector& ew = solver.eigenvalues();
    const RealMatrix& ev = solver.eigenvectors();

    EigResult out;
    out.values.resize(m);
    out.vectors.resize(m, m);
    Eigen::Index taken = 0;
    for (Eigen::Index k = 0; k < 2 * m && taken < m; ++k) {
        Eigen::VectorXcd w = ev.col(k).head(m).cast<Complex>() +
                             Complex(0, 1) * ev.col(k).tail(m).cast<Complex>();
        for (Eigen::Index q = 0; q < taken; ++q)
            w -= out.vectors.col(q).dot(w) * out.vectors.col(q);
        double nw = w.norm();
        if (nw < 1e-6) continue;
        out.vectors.col(taken) = w / nw;
        out.values(taken) = ew(k);
        ++taken;
    }
    if (taken != m) throw std::runtime_error("eig_herm: failed to deduplicate embedded spectrum");
    return out;
}

Spectrum cluster_spectrum(const RealVector& vals, double tol) {
    Spectrum sp;
    sp.cluster_tolerance = tol;
    sp.raw = vals;
    Eigen::Index i = 0;
    while (i < vals.size()) {
        Eigen::Index j = i;
        while (j + 1 < vals.size() && vals(j + 1) - vals(j) <= tol) ++j;
        sp.eigenvalues.push_back(vals.segment(i, j - i + 1).mean());
        sp.multiplicities.push_back(static_cast<int>(j - i + 1));
        i = j + 1;
    }
    return sp;
}

double min_eig(const ComplexMatrix& h) {
    return eig_herm(h).values(0);
}

bool psd_check(const ComplexMatrix& h, double tol) {
    return min_eig(h) >= -tol;
}

RealMatrix real_embed(const ComplexMatrix& h) {
    const Eigen::Index m = h.rows();
    RealMatrix out(2 * m, 2 * m);
    out.topLeftCorner(m, m) = h.real();
    out.topRightCorner(m, m) = -h.imag();
    out.bottomLeftCorner(m, m) = h.imag();
    out.bottomRightCorner(m, m) = h.real();
    return out;
}

ComplexMatrix complex_from_embed(const RealMatrix& s) {
    const Eigen::Index m = s.rows() / 2;
    // average over the J-conjugation symmetry of the embedding image
    RealMatrix re = 0.5 * (s.topLeftCorner(m, m) + s.bottomRightCorner(m, m));
    RealMatrix im = 0.5 * (s.bottomLeftCorner(m, m) - s.topRightCorner(m, m));
    return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

ComplexMatrix nullspace(const ComplexMatrix& m, double rank_tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? rank_tol * sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cut) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

RealMatrix nullspace_real(const RealMatrix& m, double rank_tol) {
    Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? rank_tol * sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cut) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

std::pair<ComplexMatrix, ComplexMatrix> hermitize_pair(const ComplexMatrix& b) {
    if (b.rows() != b.cols()) throw std::invalid_argument("hermitize_pair: matrix not square");
    ComplexMatrix c = b + b.adjoint();
    ComplexMatrix d = Complex(0, 1) * (b - b.adjoint());
    return {c, d};
}

double frob(const ComplexMatrix& m) { return m.norm(); }

}  // namespace gqms
