#pragma once

#include "gqms/graph.hpp"
#include "gqms/magic.hpp"

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace gqms {

enum class PencilProvenance { PlainQms, GraphJointNullspace, GraphComposition };

std::string to_string(PencilProvenance p);

/// Affine description of the magic (and optionally graph-commuting) squares:
///     X_kl = (1/n) I_s + sum_p d(kl, p) * Y_p,      Y_p = n X_p - I_s,
/// where p runs over the independent block positions. Evaluating at Y = 0
/// gives the uniform square with every block (1/n) I_s.
struct AffineBlockParametrization {
    int n = 0;
    int s = 0;
    PencilProvenance provenance = PencilProvenance::PlainQms;
    std::vector<std::pair<int, int>> independent_indices;
    std::vector<std::pair<int, int>> dependent_set;
    BlockMatrix particular_point;        // all blocks (1/n) I_s
    RealMatrix d;                        // n*n rows (output kl, row-major) x #independent

    // exact integer data for the plain elimination: X_kl = alpha I + sum c X_p
    // with alpha in {0, 1, 2-n} and c in {-1, 0, 1}; d = c / n
    bool has_integer_form = false;
    Eigen::VectorXi alpha_int;           // length n*n
    Eigen::MatrixXi c_int;               // n*n x #independent
};

/// Fixed Hermitian basis of the s x s Hermitian matrices, reading the upper
/// triangle row-major: E_ii at diagonal positions, and per pair i<j the
/// symmetric element E_ij + E_ji followed by i(E_ji - E_ij). For s=2 this is
/// the standard four-matrix basis [[1,0],[0,0]], [[0,1],[1,0]],
/// [[0,-i],[i,0]], [[0,0],[0,1]]. Not normalized.
std::vector<ComplexMatrix> her_basis(int s);

/// Coordinates of a Hermitian matrix in her_basis order.
RealVector her_coords(const ComplexMatrix& h);
ComplexMatrix her_from_coords(const RealVector& y, int s);

AffineBlockParametrization qms_affine(int n, int s);

/// Joint-nullspace parametrization of the graph-commuting magic squares for a
/// k-regular graph; also runs the two-step composition (commutation first,
/// then magic) and throws if the two affine spans disagree.
AffineBlockParametrization gqms_affine(const Graph& g, int s,
                                       PencilProvenance which =
                                           PencilProvenance::GraphJointNullspace);

/// Monic pencil  L(Y) = I_{n^2 s} + sum_p B_p (x) Y_p  with B_p diagonal of
/// size n^2; entries are n * d(kl, p). Scalar variables expand each Y_p over
/// her_basis(s), giving g = #independent * s^2 reals in (p, basis) order.
struct MonicPencil {
    int n = 0;
    int s = 0;
    std::string graph_name = "none";
    std::vector<std::pair<int, int>> labels;   // independent index per block var
    std::vector<RealVector> diag;              // per block var, length n*n

    int block_vars() const { return static_cast<int>(labels.size()); }
    int scalar_vars() const { return block_vars() * s * s; }
    int outer_dim() const { return n * n; }
};

MonicPencil monic_qms_pencil(int n, int s);
MonicPencil monic_gqms_pencil(const Graph& g, int s);

struct PencilEvaluation {
    ComplexMatrix value;    // n^2 s x n^2 s, block diagonal in s x s slots
    double min_eig = 0.0;
};

PencilEvaluation evaluate_pencil(const MonicPencil& p, const RealVector& y);
PencilEvaluation evaluate_pencil(const MonicPencil& p,
                                 const std::vector<ComplexMatrix>& blocks);

struct MembershipResult {
    bool direct = false;           // verify_magic + graph commutation + blockwise PSD
    bool pencil = false;           // shift-inverted pencil evaluation PSD
    bool affine_consistent = false;  // input lies in the parametrized affine space
    double direct_min_eig = 0.0;
    double pencil_min_eig = 0.0;
    double affine_residual = 0.0;
};

MembershipResult membership_test(const BlockMatrix& x, const Graph* g = nullptr,
                                 double tol = 1e-8);

void export_sdpa(const MonicPencil& p, const std::string& path);
nlohmann::json pencil_to_json(const MonicPencil& p);
MonicPencil pencil_from_json(const nlohmann::json& j);

}  // namespace gqms
