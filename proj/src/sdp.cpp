#include "gqms/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace gqms {

std::string to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal: return "optimal";
        case SdpStatus::Infeasible: return "infeasible";
        case SdpStatus::IterationLimit: return "iteration_limit";
        case SdpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// isometric vectorization of symmetric matrices (off-diagonals scaled by sqrt 2)
RealVector svec(const RealMatrix& m) {
    const Eigen::Index d = m.rows();
    RealVector v(d * (d + 1) / 2);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        v(k++) = m(i, i);
        for (Eigen::Index j = i + 1; j < d; ++j) v(k++) = kSqrt2 * m(i, j);
    }
    return v;
}

double min_eig_sym(const RealMatrix& m) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// largest alpha in (0, 1] with M + alpha*D staying PD, via eigenvalues of
// L^-1 D L^-T where M = L L^T
double max_step(const RealMatrix& m, const RealMatrix& d) {
    Eigen::LLT<RealMatrix> llt(m);
    if (llt.info() != Eigen::Success) return 0.0;
    RealMatrix w = llt.matrixL().solve(d);
    w = llt.matrixL().solve(w.transpose()).eval();
    double lam = min_eig_sym(0.5 * (w + w.transpose()));
    if (lam >= 0) return 1.0;
    return std::min(1.0, -1.0 / lam);
}

struct Presolve {
    std::vector<int> kept;    // indices of surviving constraints
    bool inconsistent = false;
};

Presolve presolve_constraints(const std::vector<RealMatrix>& A, const RealVector& b) {
    Presolve out;
    const int p = static_cast<int>(A.size());
    if (p == 0) return out;
    const Eigen::Index dsv = A[0].rows() * (A[0].rows() + 1) / 2;
    RealMatrix avec(p, dsv);
    for (int i = 0; i < p; ++i) avec.row(i) = svec(A[i]).transpose();

    Eigen::JacobiSVD<RealMatrix> svd(avec, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    double cut = (sv.size() ? sv(0) : 0.0) * 1e-12;
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cut) ++rank;

    // left-null vectors nu give sum nu_i A_i = 0; consistency demands nu.b = 0
    for (Eigen::Index k = rank; k < svd.matrixU().cols(); ++k) {
        if (std::abs(svd.matrixU().col(k).dot(b)) > 1e-9 * (1.0 + b.norm())) {
            out.inconsistent = true;
            return out;
        }
    }

    // greedy row selection for an independent subset
    RealMatrix basis(rank, dsv);
    int have = 0;
    for (int i = 0; i < p && have < rank; ++i) {
        RealVector r = avec.row(i).transpose();
        double orig = r.norm();
        for (int q = 0; q < have; ++q) r -= basis.row(q).dot(r) * basis.row(q).transpose();
        if (r.norm() > 1e-10 * (1.0 + orig)) {
            basis.row(have++) = r.transpose() / r.norm();
            out.kept.push_back(i);
        }
    }
    return out;
}

}  // namespace

SdpSolution solve(const SdpProblem& prob, const SdpOptions& opt) {
    const Eigen::Index m = prob.C.rows();
    SdpSolution sol;
    if (prob.C.cols() != m) throw std::invalid_argument("sdp::solve: C not square");
    if (static_cast<Eigen::Index>(prob.A.size()) != prob.b.size())
        throw std::invalid_argument("sdp::solve: constraint/b length mismatch");

    Presolve pre = presolve_constraints(prob.A, prob.b);
    if (pre.inconsistent) {
        sol.status = SdpStatus::Infeasible;
        return sol;
    }
    const int p = static_cast<int>(pre.kept.size());
    std::vector<RealMatrix> A(p);
    RealVector b(p);
    for (int i = 0; i < p; ++i) {
        A[i] = prob.A[pre.kept[i]];
        b(i) = prob.b(pre.kept[i]);
    }

    // vectorized constraints for fast Schur assembly
    const Eigen::Index msq = m * m;
    RealMatrix avec(p, msq);
    for (int i = 0; i < p; ++i)
        avec.row(i) = Eigen::Map<const RealVector>(A[i].data(), msq).transpose();

    double datascale = std::max(1.0, std::max(prob.C.norm(), b.size() ? b.norm() : 0.0));
    RealMatrix X = RealMatrix::Identity(m, m) * datascale;
    RealMatrix S = RealMatrix::Identity(m, m) * datascale;
    RealVector y = RealVector::Zero(p);

    auto fill_residuals = [&](SdpSolution& s) {
        s.objective = (prob.C.array() * s.Y.array()).sum();
        double worst = 0.0;
        for (size_t i = 0; i < prob.A.size(); ++i)
            worst = std::max(worst, std::abs((prob.A[i].array() * s.Y.array()).sum() - prob.b(i)));
        s.max_residual = worst;
        s.min_eig_Y = min_eig_sym(s.Y);
    };

    for (int iter = 1; iter <= opt.max_iter; ++iter) {
        double mu = (X.array() * S.array()).sum() / static_cast<double>(m);

        RealVector rp(p);
        for (int i = 0; i < p; ++i) rp(i) = b(i) - (A[i].array() * X.array()).sum();
        RealMatrix rd = prob.C - S;
        for (int i = 0; i < p; ++i) rd -= y(i) * A[i];

        double pobj = (prob.C.array() * X.array()).sum();
        double dobj = b.dot(y);
        double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        double pres = p ? rp.lpNorm<Eigen::Infinity>() / (1.0 + b.lpNorm<Eigen::Infinity>()) : 0.0;
        double dres = rd.norm() / (1.0 + prob.C.norm());
        // when a factorization breaks down or the step collapses, a feasible
        // iterate is still worth returning: the objective then bounds the
        // optimum from the primal side even though the gap is uncertified
        SdpStatus bail = (pres <= opt.feas_tol && dres <= opt.feas_tol)
                             ? SdpStatus::IterationLimit
                             : SdpStatus::NumericalFailure;

        if (pres <= opt.feas_tol && dres <= opt.feas_tol && gap <= opt.gap_tol) {
            sol.status = SdpStatus::Optimal;
            sol.Y = X;
            sol.y = y;
            sol.S = S;
            sol.dual_objective = dobj;
            sol.iterations = iter - 1;
            fill_residuals(sol);
            return sol;
        }

        // Farkas-type primal infeasibility: an improving dual ray
        if (p > 0 && y.norm() > 10.0 * datascale) {
            RealVector yn = y / y.norm();
            RealMatrix z = RealMatrix::Zero(m, m);
            for (int i = 0; i < p; ++i) z += yn(i) * A[i];
            // the iterates approach the ray at rate 1/||y||; accept once the
            // improving value clearly dominates the residual cone violation
            double viol = std::max(0.0, -min_eig_sym(-z));
            if (b.dot(yn) > 1e-8 && b.dot(yn) > 1e3 * viol) {
                sol.status = SdpStatus::Infeasible;
                sol.Y = X;
                sol.y = y;
                sol.S = S;
                sol.iterations = iter;
                fill_residuals(sol);
                return sol;
            }
        }

        Eigen::LLT<RealMatrix> sllt(S);
        if (sllt.info() != Eigen::Success) {
            sol.status = bail;
            sol.Y = X;
            sol.y = y;
            sol.S = S;
            sol.iterations = iter;
            fill_residuals(sol);
            return sol;
        }
        RealMatrix sinv = sllt.solve(RealMatrix::Identity(m, m));

        // Schur matrix M_ij = Tr(A_i X A_j S^-1) via one big GEMM
        RealMatrix wvec(p, msq);
        for (int j = 0; j < p; ++j) {
            RealMatrix w = X * A[j] * sinv;
            wvec.row(j) = Eigen::Map<const RealVector>(w.data(), msq).transpose();
        }
        RealMatrix schur = avec * wvec.transpose();
        schur = 0.5 * (schur + schur.transpose());
        Eigen::LDLT<RealMatrix> sch(schur);
        if (sch.info() != Eigen::Success) {
            sol.status = bail;
            sol.Y = X;
            sol.y = y;
            sol.S = S;
            sol.iterations = iter;
            fill_residuals(sol);
            return sol;
        }

        auto direction = [&](const RealMatrix& compl_rhs, RealVector& dy, RealMatrix& dX,
                             RealMatrix& dS) {
            // compl_rhs approximates the target for XS; Newton step follows the
            // HKM linearization with post-symmetrization of dX.
            RealVector rhs(p);
            RealMatrix base = compl_rhs * sinv;
            RealMatrix xrd = X * rd * sinv;
            for (int i = 0; i < p; ++i)
                rhs(i) = rp(i) + (A[i].array() * (xrd - base).array()).sum();
            dy = sch.solve(rhs);
            // one round of iterative refinement; the Schur system conditions
            // like 1/mu near the solution and the raw solve loses digits
            dy += sch.solve(rhs - schur * dy);
            dS = rd;
            for (int i = 0; i < p; ++i) dS -= dy(i) * A[i];
            dX = base - X * dS * sinv;
            dX = 0.5 * (dX + dX.transpose()).eval();
        };

        // short-step path following: aim at sigma * mu on the central path.
        // A Mehrotra corrector is faster per iteration but destabilizes once
        // the iterate nears the boundary; the plain direction with a common
        // step length is monotone and fully adequate at these sizes.
        double sigma = 0.3;
        RealMatrix target = sigma * mu * RealMatrix::Identity(m, m) - X * S;
        RealVector dy;
        RealMatrix dx, ds;
        direction(target, dy, dx, ds);

        double tau = 0.98;
        double apc = std::min({tau * max_step(X, dx), tau * max_step(S, ds), 1.0});
        double adc = apc;
        if (apc < 1e-12 && adc < 1e-12) {
            sol.status = bail;
            sol.Y = X;
            sol.y = y;
            sol.S = S;
            sol.iterations = iter;
            fill_residuals(sol);
            return sol;
        }
        X += apc * dx;
        y += adc * dy;
        S += adc * ds;
        X = 0.5 * (X + X.transpose()).eval();
        S = 0.5 * (S + S.transpose()).eval();
    }

    sol.status = SdpStatus::IterationLimit;
    sol.Y = X;
    sol.y = y;
    sol.S = S;
    sol.dual_objective = b.dot(y);
    sol.iterations = opt.max_iter;
    fill_residuals(sol);
    return sol;
}

LmiSolution solve_lmi(const LmiProblem& prob, const SdpOptions& opt) {
    SdpProblem p;
    p.C = prob.F0;
    p.b = prob.c;
    p.A.reserve(prob.F.size());
    for (const RealMatrix& f : prob.F) p.A.push_back(-f);
    SdpSolution s = solve(p, opt);
    LmiSolution out;
    out.iterations = s.iterations;
    if (s.status == SdpStatus::Infeasible) {
        // the primal reading infeasible means the LMI objective is unbounded;
        // surface it as a failure status distinct from Optimal
        out.status = SdpStatus::NumericalFailure;
        return out;
    }
    out.status = s.status;
    if (s.y.size() == static_cast<Eigen::Index>(prob.F.size())) {
        out.x = s.y;
    } else {
        // presolve dropped redundant constraint rows; re-expand
        out.x = RealVector::Zero(static_cast<Eigen::Index>(prob.F.size()));
        Presolve pre = presolve_constraints(p.A, p.b);
        for (size_t i = 0; i < pre.kept.size(); ++i) out.x(pre.kept[i]) = s.y(i);
    }
    RealMatrix slack = prob.F0;
    for (size_t i = 0; i < prob.F.size(); ++i) slack += out.x(i) * prob.F[i];
    out.min_eig = min_eig_sym(slack);
    out.objective = prob.c.dot(out.x);
    return out;
}

SdpSolution feasibility(const SdpProblem& prob, const SdpOptions& opt) {
    const Eigen::Index m = prob.C.rows();
    const int p = static_cast<int>(prob.A.size());

    // affine slice: particular least-squares solution + nullspace directions
    const Eigen::Index dsv = m * (m + 1) / 2;
    RealMatrix avec(p, dsv);
    for (int i = 0; i < p; ++i) avec.row(i) = svec(prob.A[i]).transpose();
    Eigen::JacobiSVD<RealMatrix> svd(avec, Eigen::ComputeThinU | Eigen::ComputeFullV);
    RealVector part = svd.solve(prob.b);
    if ((avec * part - prob.b).lpNorm<Eigen::Infinity>() > 1e-8 * (1.0 + prob.b.norm())) {
        SdpSolution out;
        out.status = SdpStatus::Infeasible;
        return out;
    }
    const auto& sv = svd.singularValues();
    double cut = (sv.size() ? sv(0) : 0.0) * 1e-12;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cut) ++rank;
    RealMatrix null = svd.matrixV().rightCols(dsv - rank);

    auto unsvec = [&](const RealVector& v) {
        RealMatrix out(m, m);
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < m; ++i) {
            out(i, i) = v(k++);
            for (Eigen::Index j = i + 1; j < m; ++j) {
                out(i, j) = out(j, i) = v(k++) / kSqrt2;
            }
        }
        return out;
    };

    LmiProblem lmi;
    lmi.F0 = unsvec(part);
    for (Eigen::Index k = 0; k < null.cols(); ++k) lmi.F.push_back(unsvec(null.col(k)));
    lmi.F.push_back(-RealMatrix::Identity(m, m));   // the -tI variable
    lmi.c = RealVector::Zero(null.cols() + 1);
    lmi.c(null.cols()) = 1.0;

    LmiSolution ls = solve_lmi(lmi, opt);
    SdpSolution out;
    out.iterations = ls.iterations;
    if (ls.status != SdpStatus::Optimal && ls.status != SdpStatus::IterationLimit) {
        out.status = ls.status;
        return out;
    }
    double t = ls.x(null.cols());
    RealMatrix Y = lmi.F0;
    for (Eigen::Index k = 0; k < null.cols(); ++k) Y += ls.x(k) * lmi.F[k];
    out.Y = Y;
    out.objective = (prob.C.array() * Y.array()).sum();
    double worst = 0.0;
    for (int i = 0; i < p; ++i)
        worst = std::max(worst, std::abs((prob.A[i].array() * Y.array()).sum() - prob.b(i)));
    out.max_residual = worst;
    out.min_eig_Y = min_eig_sym(Y);
    out.status = (t >= -opt.feas_tol && ls.status == SdpStatus::Optimal)
                     ? SdpStatus::Optimal
                     : (ls.status == SdpStatus::IterationLimit ? SdpStatus::IterationLimit
                                                               : SdpStatus::Infeasible);
    if (t < -opt.feas_tol && ls.status == SdpStatus::Optimal) out.status = SdpStatus::Infeasible;
    return out;
}

bool validate(const SdpProblem& p, const SdpSolution& s, const SdpOptions& opt) {
    if (s.Y.rows() != p.C.rows() || s.Y.cols() != p.C.cols()) return false;
    double obj = (p.C.array() * s.Y.array()).sum();
    if (std::abs(obj - s.objective) > 10 * opt.gap_tol * (1.0 + std::abs(obj))) return false;
    for (size_t i = 0; i < p.A.size(); ++i) {
        double r = std::abs((p.A[i].array() * s.Y.array()).sum() - p.b(i));
        if (r > 10 * opt.feas_tol * (1.0 + std::abs(p.b(i)))) return false;
    }
    if (min_eig_sym(s.Y) < -10 * opt.feas_tol) return false;
    return true;
}

}  // namespace gqms
