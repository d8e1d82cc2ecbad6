#include "gqms/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>
#include <random>

using namespace gqms;

namespace {

ComplexMatrix random_complex(int rows, int cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

ComplexMatrix random_hermitian(int n, unsigned seed) {
    ComplexMatrix m = random_complex(n, n, seed);
    return 0.5 * (m + m.adjoint());
}

// independent Kronecker oracle: four-index entrywise expansion
ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// independent eigenvalue oracle: characteristic polynomial by Faddeev-LeVerrier,
// roots from the companion matrix through the general (non-symmetric) solver
RealVector char_poly_roots(const ComplexMatrix& h) {
    const int n = static_cast<int>(h.rows());
    // c[0] x^n + ... + c[n]; Faddeev-LeVerrier recurrence
    std::vector<Complex> c(n + 1);
    c[0] = 1.0;
    ComplexMatrix mk = ComplexMatrix::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        mk = h * mk + c[k - 1] * ComplexMatrix::Identity(n, n);
        c[k] = -(h * mk).trace() / static_cast<double>(k);
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[n - i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion);
    RealVector roots(n);
    for (int i = 0; i < n; ++i) roots(i) = es.eigenvalues()(i).real();
    std::sort(roots.data(), roots.data() + n);
    return roots;
}

}  // namespace

TEST_CASE("kron identity and basis placement") {
    ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK((kron(i2, i2) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);

    ComplexMatrix e11 = ComplexMatrix::Zero(2, 2);
    e11(0, 0) = 1.0;
    ComplexMatrix m = random_complex(2, 2, 5);
    ComplexMatrix k = kron(e11, m);
    CHECK((k.topLeftCorner(2, 2) - m).norm() == 0.0);
    CHECK(k.bottomRightCorner(2, 2).norm() == 0.0);
    CHECK(k.topRightCorner(2, 2).norm() == 0.0);
}

TEST_CASE("kron agrees with entrywise expansion oracle and mixed-product rule") {
    // the 2x2 Hermitian basis elements with off-diagonal and imaginary entries
    ComplexMatrix s2(2, 2), s3(2, 2);
    s2 << 0, 1, 1, 0;
    s3 << 0, Complex(0, -1), Complex(0, 1), 0;
    CHECK((kron(s2, s3) - kron_oracle(s2, s3)).norm() == 0.0);

    ComplexMatrix a = random_complex(3, 2, 1), b = random_complex(2, 4, 2);
    ComplexMatrix c = random_complex(2, 3, 3), d = random_complex(4, 2, 4);
    CHECK((kron(a, b) * kron(c, d) - kron(a * c, b * d)).norm() < 1e-12);
    CHECK((kron(a, b) - kron_oracle(a, b)).norm() == 0.0);
}

TEST_CASE("eig_herm basics") {
    EigResult r = eig_herm(ComplexMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(r.values(i) == doctest::Approx(1.0));
    Spectrum sp = cluster_spectrum(r.values);
    REQUIRE(sp.eigenvalues.size() == 1);
    CHECK(sp.multiplicities[0] == 3);
}

TEST_CASE("eig_herm on the C4 adjacency gives -2, 0, 0, 2") {
    ComplexMatrix a = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        a(i, (i + 1) % 4) = 1;
        a((i + 1) % 4, i) = 1;
    }
    EigResult r = eig_herm(a);
    CHECK(r.values(0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(r.values(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.values(2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.values(3) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("eig_herm matches companion-matrix root oracle on random 8x8") {
    ComplexMatrix h = random_hermitian(8, 99);
    EigResult r = eig_herm(h);
    RealVector roots = char_poly_roots(h);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(r.values(i) - roots(i)) < 1e-8);
    // reconstruction and unitarity
    ComplexMatrix lam = r.values.cast<Complex>().asDiagonal();
    CHECK((h - r.vectors * lam * r.vectors.adjoint()).norm() < 1e-9 * (1 + h.norm()));
    CHECK((r.vectors.adjoint() * r.vectors - ComplexMatrix::Identity(8, 8)).norm() < 1e-10);
}

TEST_CASE("min_eig and psd_check") {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    CHECK(psd_check(z, 0.0));
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = -1e-3;
    CHECK(!psd_check(d, 1e-9));

    // D - vv* with v the all-ones vector of length 4: the col*col structure
    ComplexMatrix dm = ComplexMatrix::Identity(4, 4);
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(4);
    CHECK(min_eig(dm - v * v.adjoint()) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("real_embed basics and spectra") {
    CHECK((real_embed(ComplexMatrix::Identity(2, 2)) - RealMatrix::Identity(4, 4)).norm() == 0.0);

    ComplexMatrix s3(2, 2);
    s3 << 0, Complex(0, -1), Complex(0, 1), 0;
    RealMatrix e = real_embed(s3);
    CHECK(e.isApprox(e.transpose()));
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(e);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));

    for (unsigned seed = 0; seed < 50; ++seed) {
        ComplexMatrix h = random_hermitian(5, 1000 + seed);
        double me = min_eig(h);
        Eigen::SelfAdjointEigenSolver<RealMatrix> oracle(real_embed(h));
        CHECK(std::abs(oracle.eigenvalues()(0) - me) < 1e-10);
        // trace and inner product conventions
        CHECK(real_embed(h).trace() == doctest::Approx(2 * h.real().trace()));
        ComplexMatrix g = random_hermitian(5, 2000 + seed);
        double lhs = (real_embed(h).array() * real_embed(g).array()).sum();
        double rhs = 2 * (h.adjoint() * g).trace().real();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        // roundtrip
        CHECK((complex_from_embed(real_embed(h)) - h).norm() < 1e-14);
    }
}

TEST_CASE("nullspace basics") {
    CHECK(nullspace(ComplexMatrix::Zero(3, 3)).cols() == 3);
    CHECK(nullspace(ComplexMatrix::Identity(3, 3)).cols() == 0);
}

TEST_CASE("flattened C4 commutator operator has kernel dimension 6") {
    ComplexMatrix a = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        a(i, (i + 1) % 4) = 1;
        a((i + 1) % 4, i) = 1;
    }
    ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    ComplexMatrix op = kron(id, a) - kron(a.transpose(), id);
    ComplexMatrix ker = nullspace(op);
    CHECK(ker.cols() == 6);
    CHECK((ker.adjoint() * ker - ComplexMatrix::Identity(6, 6)).norm() < 1e-12);
    for (int k = 0; k < 6; ++k) CHECK((op * ker.col(k)).norm() < 1e-10 * op.norm());
}

TEST_CASE("hermitize_pair") {
    ComplexMatrix h = random_hermitian(3, 7);
    auto [c, d] = hermitize_pair(h);
    CHECK((c - 2 * h).norm() < 1e-14);
    CHECK(d.norm() < 1e-14);

    ComplexMatrix b = Complex(0, 1) * ComplexMatrix::Identity(3, 3);
    auto [c2, d2] = hermitize_pair(b);
    CHECK(c2.norm() < 1e-14);
    CHECK((d2 + 2 * ComplexMatrix::Identity(3, 3)).norm() < 1e-14);

    ComplexMatrix r = random_complex(4, 4, 11);
    auto [c3, d3] = hermitize_pair(r);
    CHECK((c3 - c3.adjoint()).norm() < 1e-14);
    CHECK((d3 - d3.adjoint()).norm() < 1e-14);
    CHECK((0.5 * (c3 - Complex(0, 1) * d3) - r).norm() < 1e-13);
}

TEST_CASE("hermitian holder records deviation") {
    ComplexMatrix m = random_complex(3, 3, 21);
    Hermitian h = Hermitian::from(m);
    CHECK((h.mat - h.mat.adjoint()).norm() < 1e-15);
    CHECK(h.deviation == doctest::Approx((m - 0.5 * (m + m.adjoint())).norm()));
}

TEST_CASE("cluster_spectrum groups close eigenvalues") {
    RealVector v(5);
    v << -2.0, -2.0 + 1e-10, 0.0, 0.0, 2.0;
    Spectrum sp = cluster_spectrum(v, 1e-8);
    REQUIRE(sp.eigenvalues.size() == 3);
    CHECK(sp.multiplicities[0] == 2);
    CHECK(sp.multiplicities[1] == 2);
    CHECK(sp.multiplicities[2] == 1);
    int total = 0;
    for (int m : sp.multiplicities) total += m;
    CHECK(total == 5);
}
