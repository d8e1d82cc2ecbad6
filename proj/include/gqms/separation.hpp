#pragma once

#include "gqms/graph.hpp"
#include "gqms/json_io.hpp"
#include "gqms/magic.hpp"
#include "gqms/sdp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gqms {

/// Zero-diagonal matrices with vanishing row sums (RowOnly) or vanishing row
/// and column sums (RowAndCol). Complex dimensions: n^2 - 2n, resp.
/// n^2 - 3n + 3 + (n==1 fudge) -- at n=4 these are 8 and 5.
enum class ZeVariant { RowOnly, RowAndCol };

std::string to_string(ZeVariant v);
ZeVariant ze_variant_from_string(const std::string& s);

struct ZeBasis {
    int n = 0;
    ZeVariant variant = ZeVariant::RowAndCol;
    std::vector<ComplexMatrix> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

/// Basis of the zero-diagonal zero-sum matrices. For n=4 with RowAndCol the
/// five fixed integer/Gaussian-integer matrices z1..z5 are returned verbatim
/// after checking they span the same space as the computed kernel; elsewhere
/// an orthonormal kernel basis is used. Requires n >= 3.
ZeBasis ze_basis(int n, ZeVariant variant);

struct SubspaceLabel {
    int a = 0;   // index into the left ze factor
    int b = 0;   // index into the right ze factor
    int j = 0;   // index into her_basis(s)
    bool is_c = true;   // true: Y + Y*, false: i(Y - Y*)
};

/// Hermitization of the generators z_a (x) z_b (x) S_j. The family spans the
/// real subspace against which the dual certificate is orthogonalized; it is
/// allowed to be linearly dependent. Generators whose hermitization vanishes
/// are dropped and remembered.
struct SeparationSubspaceBasis {
    int n = 0;
    int s = 0;
    ZeVariant variant = ZeVariant::RowAndCol;
    std::vector<ComplexMatrix> family;    // Hermitian, n^2 s x n^2 s
    std::vector<SubspaceLabel> labels;    // one per retained element
    std::vector<SubspaceLabel> dropped;

    int size() const { return static_cast<int>(family.size()); }
};

SeparationSubspaceBasis subspace_basis(int n, int s, ZeVariant variant);

/// col(A) = sum_ij e_i (x) e_j (x) A_ij  (n^2 s x s column strip per block,
/// blocks ordered row-major).
ComplexMatrix col_map(const BlockMatrix& a);

/// diag(A) = sum_ij E_ii (x) E_jj (x) A_ij  (block diagonal, slot (i,j)).
ComplexMatrix diag_map(const BlockMatrix& a);

struct SeparationOperator {
    int n = 0;
    int s = 0;
    ComplexMatrix phi;   // diag(A) - col(A) col(A)*
    ComplexMatrix psi;   // off-block-diagonal averaging part
    ComplexMatrix M;     // phi + psi
    // coefficients of psi as exact fractions (alpha = 1/((n-1)(n-2)), ...)
    long alpha_num = 1, alpha_den = 1;
    long beta_num = 1, beta_den = 1;
    long gamma_num = 1, gamma_den = 1;

    double alpha() const { return double(alpha_num) / double(alpha_den); }
    double beta() const { return double(beta_num) / double(beta_den); }
    double gamma() const { return double(gamma_num) / double(gamma_den); }
};

ComplexMatrix phi_map(const BlockMatrix& a);
ComplexMatrix psi_map(const BlockMatrix& a);
SeparationOperator separation_operator(const BlockMatrix& a);

struct FeasibilityWitness {
    SdpStatus status = SdpStatus::NumericalFailure;
    bool feasible = false;
    RealVector xi;        // coefficients over the spanning family
    ComplexMatrix X;      // sum xi_k * family_k
    double min_eig = 0.0; // of M + X at the witness
};

/// Does there exist X in the spanned subspace with M(A) + X >= 0?
FeasibilityWitness primal_feasibility(const BlockMatrix& a, ZeVariant variant,
                                      const SdpOptions& opt = {});

struct DualCertificate {
    int n = 0;
    int s = 0;
    ZeVariant variant = ZeVariant::RowAndCol;
    ComplexMatrix Y;
    double objective = 0.0;      // Tr(Y M), recomputed by direct arithmetic
    double solver_objective = 0.0;
    double min_eig_Y = 0.0;
    double trace_Y = 0.0;
    double max_orthogonality_residual = 0.0;
    SdpStatus solver_status = SdpStatus::NumericalFailure;
    bool validated = false;
    std::uint64_t seed = 0;
    int candidate_index = -1;
};

/// min Tr(Y M(A))  s.t.  Y >= 0, Tr Y = 1, Tr(Y Z) = 0 for every spanning Z.
/// Solved over the real embedding; the certificate fields are recomputed from
/// the complex Y with no solver involvement before `validated` is set.
DualCertificate dual_certificate(const BlockMatrix& a, ZeVariant variant,
                                 const SdpOptions& opt = {});

/// Re-derives every certificate field from (a, cert.Y) by direct arithmetic
/// and updates `validated`. Used both after solving and on certificates
/// loaded from disk.
bool revalidate_certificate(const BlockMatrix& a, DualCertificate& cert,
                            double solver_match_tol = 1e-8);

struct SearchResult {
    bool found = false;
    BlockMatrix best_square;
    DualCertificate certificate;      // for the best candidate seen
    double best_objective = 0.0;
    std::vector<std::uint64_t> seeds;
    int candidates_evaluated = 0;
};

/// Randomized hunt for a C4-commuting magic square at s=2 whose separation
/// operator admits a validated negative dual certificate (RowOnly
/// orthogonality). Each candidate: random_qms(4,2,seed+i) -> average over the
/// 4-cycle powers -> membership gate -> dual certificate; accepted when the
/// validated objective is <= -1e-6. Optional local refinement perturbs the
/// candidate inside the C4-commuting affine space with PSD re-projection.
SearchResult counterexample_search(int budget, std::uint64_t seed,
                                   bool refine = false,
                                   const SdpOptions& opt = {});

Json certificate_to_json(const BlockMatrix& b, const DualCertificate& cert);
std::pair<BlockMatrix, DualCertificate> certificate_from_json(const Json& j);

}  // namespace gqms
