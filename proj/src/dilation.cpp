#include "gqms/dilation.hpp"

#include "gqms/pencil.hpp"

#include <random>
#include <stdexcept>

namespace gqms {

namespace {

// [[X, beta], [beta*, gamma]] as one 2s x 2s block
ComplexMatrix dilate_block(const ComplexMatrix& x, const ComplexMatrix& beta,
                           const ComplexMatrix& gamma) {
    const int s = static_cast<int>(x.rows());
    ComplexMatrix w(2 * s, 2 * s);
    w.topLeftCorner(s, s) = x;
    w.topRightCorner(s, s) = beta;
    w.bottomLeftCorner(s, s) = beta.adjoint();
    w.bottomRightCorner(s, s) = gamma;
    return w;
}

RealMatrix embedded_grid(const BlockMatrix& x,
                         const std::vector<ComplexMatrix>& beta,
                         const std::vector<ComplexMatrix>& gamma) {
    const int n = x.n, s = x.s;
    const int d = 4 * s;   // real embedding of a 2s x 2s block
    RealMatrix f = RealMatrix::Zero(n * n * d, n * n * d);
    for (int kl = 0; kl < n * n; ++kl)
        f.block(kl * d, kl * d, d, d) =
            real_embed(dilate_block(x.blocks[kl], beta[kl], gamma[kl]));
    return f;
}

}  // namespace

DilationProbeResult arveson_dilation_probe(const BlockMatrix& x, const Graph* g,
                                           int directions, std::uint64_t seed,
                                           const SdpOptions& opt) {
    if (directions < 0)
        throw std::invalid_argument("arveson_dilation_probe: directions >= 0");
    MembershipResult member = membership_test(x, g);
    if (!member.direct)
        throw std::invalid_argument(
            "arveson_dilation_probe: input is not a member of the probed set");

    const int n = x.n, s = x.s;
    // both the Hermitian completion gamma and the off-diagonal strip beta
    // range over the same scalar solution space as the square itself:
    // gamma row/column sums must be I (affine, uniform particular point),
    // beta sums must vanish (the linear part, applied entrywise to a free
    // complex block per independent position)
    AffineBlockParametrization aff = g ? gqms_affine(*g, s) : qms_affine(n, s);
    const int q = static_cast<int>(aff.independent_indices.size());

    DilationProbeResult res;
    res.directions = directions;
    res.dilated = BlockMatrix(n, 2 * s);
    if (directions == 0) return res;

    const std::vector<ComplexMatrix> hb = her_basis(s);
    const ComplexMatrix zero = ComplexMatrix::Zero(s, s);
    const ComplexMatrix uni = (1.0 / n) * ComplexMatrix::Identity(s, s);

    // LMI variables per independent position p: a free complex block b_p
    // (2 s^2 reals, driving beta) and a free Hermitian block Y_p (s^2 reals,
    // driving gamma via the monic shift)
    const int vars_b = 2 * q * s * s;
    const int vars_y = q * s * s;

    auto beta_of = [&](const RealVector& u) {
        std::vector<ComplexMatrix> bp(q, zero);
        int k = 0;
        for (int p = 0; p < q; ++p)
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) {
                    bp[p](i, j) = Complex(u(k), u(k + 1));
                    k += 2;
                }
        std::vector<ComplexMatrix> beta(n * n, zero);
        for (int kl = 0; kl < n * n; ++kl)
            for (int p = 0; p < q; ++p) beta[kl] += aff.d(kl, p) * bp[p];
        return beta;
    };
    auto gamma_of = [&](const RealVector& v) {
        std::vector<ComplexMatrix> gamma(n * n, uni);
        for (int p = 0; p < q; ++p) {
            ComplexMatrix yp = her_from_coords(v.segment(p * s * s, s * s), s);
            for (int kl = 0; kl < n * n; ++kl) gamma[kl] += aff.d(kl, p) * yp;
        }
        return gamma;
    };

    LmiProblem lmi;
    lmi.F0 = embedded_grid(x, std::vector<ComplexMatrix>(n * n, zero),
                           std::vector<ComplexMatrix>(n * n, uni));
    const BlockMatrix xzero(n, s);   // zero grid for homogeneous directions
    for (int k = 0; k < vars_b; ++k) {
        RealVector e = RealVector::Unit(vars_b, k);
        lmi.F.push_back(embedded_grid(xzero, beta_of(e),
                                      std::vector<ComplexMatrix>(n * n, zero)));
    }
    for (int k = 0; k < vars_y; ++k) {
        RealVector e = RealVector::Unit(vars_y, k);
        auto gamma = gamma_of(e);
        for (auto& blk : gamma) blk -= uni;   // homogeneous part only
        lmi.F.push_back(embedded_grid(xzero, std::vector<ComplexMatrix>(n * n, zero),
                                      gamma));
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int dir = 0; dir < directions; ++dir) {
        // random unit-norm probe direction over the full block grid
        std::vector<ComplexMatrix> e(n * n);
        double nrm2 = 0.0;
        for (auto& blk : e) {
            blk = ComplexMatrix(s, s);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) blk(i, j) = Complex(gauss(rng), gauss(rng));
            nrm2 += blk.squaredNorm();
        }
        for (auto& blk : e) blk /= std::sqrt(nrm2);

        // Re<E, beta> expressed over the b_p coordinates
        lmi.c = RealVector::Zero(vars_b + vars_y);
        int k = 0;
        for (int p = 0; p < q; ++p) {
            ComplexMatrix gp = zero;
            for (int kl = 0; kl < n * n; ++kl) gp += aff.d(kl, p) * e[kl];
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) {
                    lmi.c(k++) = gp(i, j).real();
                    lmi.c(k++) = gp(i, j).imag();
                }
        }

        LmiSolution ls = solve_lmi(lmi, opt);
        res.statuses.push_back(ls.status);
        if (ls.status != SdpStatus::Optimal && ls.status != SdpStatus::IterationLimit)
            continue;
        auto beta = beta_of(ls.x.head(vars_b));
        double bnorm2 = 0.0;
        for (const auto& blk : beta) bnorm2 += blk.squaredNorm();
        double bnorm = std::sqrt(bnorm2);
        if (bnorm > res.max_beta_norm) {
            res.max_beta_norm = bnorm;
            res.best_direction = dir;
            auto gamma = gamma_of(ls.x.tail(vars_y));
            for (int kl = 0; kl < n * n; ++kl)
                res.dilated.blocks[kl] = dilate_block(x.blocks[kl], beta[kl], gamma[kl]);
        }
    }
    res.extreme_evidence = res.max_beta_norm <= 1e-6;
    return res;
}

}  // namespace gqms
