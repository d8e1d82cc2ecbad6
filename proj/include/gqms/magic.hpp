#pragma once

#include "gqms/graph.hpp"
#include "gqms/linalg.hpp"

#include <cstdint>
#include <vector>

namespace gqms {

/// n x n grid of s x s Hermitian blocks, row-major.
struct BlockMatrix {
    int n = 0;
    int s = 0;
    std::vector<ComplexMatrix> blocks;   // n*n entries, block(i,j) = blocks[i*n+j]

    BlockMatrix() = default;
    BlockMatrix(int n_, int s_)
        : n(n_), s(s_), blocks(static_cast<size_t>(n_) * n_, ComplexMatrix::Zero(s_, s_)) {}

    ComplexMatrix& block(int i, int j) { return blocks[static_cast<size_t>(i) * n + j]; }
    const ComplexMatrix& block(int i, int j) const { return blocks[static_cast<size_t>(i) * n + j]; }
};

struct MagicReport {
    std::vector<double> block_min_eigs;   // per block, row-major
    std::vector<double> row_residuals;    // ||sum_k X_ik - I||_F
    std::vector<double> col_residuals;
    double tolerance = 0.0;
    bool blocks_psd = false;
    bool overall = false;
};

struct ClassFlags {
    bool in_M = false;
    bool in_P = false;
    bool in_C = false;
    std::vector<double> projection_residuals;  // per block ||X^2 - X||_F
    double max_commutator_residual = 0.0;
};

struct ComponentSums {
    std::vector<ComplexMatrix> row_sums;   // Lambda_R per component
    std::vector<ComplexMatrix> col_sums;   // Lambda_C per component
    double max_deviation = 0.0;
};

MagicReport verify_magic(const BlockMatrix& x, double tol = 1e-9);
ClassFlags classify(const BlockMatrix& x, double tol = 1e-9);

BlockMatrix from_permutation(const std::vector<int>& sigma, int s);

/// Seeded Gaussian Gram blocks + symmetric operator Sinkhorn scaling.
/// Throws (with the last residual in the message) if 10000 sweeps do not
/// reach the 1e-10 target.
BlockMatrix random_qms(int n, int s, std::uint64_t seed);

/// Blocks sum_i V_i* A^(i)_kl V_i with sum V_i* V_i = I within 1e-10.
BlockMatrix matrix_convex_combine(const std::vector<BlockMatrix>& squares,
                                  const std::vector<ComplexMatrix>& isometries);

struct GraphCommuteResult {
    bool commutes = false;
    double residual = 0.0;
};
GraphCommuteResult graph_commutes(const BlockMatrix& x, const Graph& g, double tol = 1e-9);

/// Blockwise average over a list of permutations of {0..n-1}.
BlockMatrix group_average(const BlockMatrix& x, const std::vector<std::vector<int>>& perms);

/// The powers of the 4-cycle i -> i+1 (mod 4); group_average over these is
/// the Z4 twirl Phi.
std::vector<std::vector<int>> z4_cycle_powers();

/// All 8 automorphisms of C4 (the dihedral group D4 acting on the square).
std::vector<std::vector<int>> c4_automorphisms();

ComponentSums componentwise_sums(const BlockMatrix& b, const Graph& g);

}  // namespace gqms
