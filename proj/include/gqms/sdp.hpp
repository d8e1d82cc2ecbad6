#pragma once

#include "gqms/linalg.hpp"

#include <string>
#include <vector>

namespace gqms {

/// min <C, Y>  s.t.  <A_i, Y> = b_i,  Y >= 0 (real symmetric, dense).
/// Complex Hermitian problems arrive pre-embedded via real_embed; the
/// factor-2 trace convention is owned by the caller.
struct SdpProblem {
    RealMatrix C;
    std::vector<RealMatrix> A;
    RealVector b;
};

enum class SdpStatus { Optimal, Infeasible, IterationLimit, NumericalFailure };

std::string to_string(SdpStatus s);

struct SdpSolution {
    SdpStatus status = SdpStatus::NumericalFailure;
    RealMatrix Y;            // primal matrix iterate
    RealVector y;            // dual multipliers, one per (surviving) constraint
    RealMatrix S;            // dual slack C - sum y_i A_i
    double objective = 0.0;       // <C, Y>
    double dual_objective = 0.0;  // b . y
    double max_residual = 0.0;    // max_i |<A_i, Y> - b_i|
    double min_eig_Y = 0.0;
    int iterations = 0;
};

struct SdpOptions {
    double feas_tol = 1e-8;
    double gap_tol = 1e-7;
    int max_iter = 500;
};

SdpSolution solve(const SdpProblem& p, const SdpOptions& opt = {});

/// max c.x  s.t.  F0 + sum x_i F_i >= 0 — the dual reading of the same
/// interior-point iteration (C = F0, A_i = -F_i, b = c).
struct LmiProblem {
    RealMatrix F0;
    std::vector<RealMatrix> F;
    RealVector c;
};

struct LmiSolution {
    SdpStatus status = SdpStatus::NumericalFailure;
    RealVector x;
    double objective = 0.0;
    double min_eig = 0.0;    // of F0 + sum x_i F_i at the solution
    int iterations = 0;
};

LmiSolution solve_lmi(const LmiProblem& p, const SdpOptions& opt = {});

/// Feasibility of {Y >= 0, <A_i,Y> = b_i} via the max-min-eigenvalue
/// reformulation: maximize t with Y - tI ranging over the affine slice.
/// Returns a strictly feasible interior point when one exists.
SdpSolution feasibility(const SdpProblem& p, const SdpOptions& opt = {});

/// Solver-free recheck of residuals, cone membership, and the objective.
bool validate(const SdpProblem& p, const SdpSolution& s, const SdpOptions& opt = {});

}  // namespace gqms
