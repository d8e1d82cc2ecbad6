#pragma once

#include "gqms/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gqms {

/// Simple undirected graph held as a dense 0/1 adjacency matrix.
struct Graph {
    int n = 0;
    Eigen::MatrixXi adjacency;

    RealMatrix adjacency_real() const { return adjacency.cast<double>(); }
};

Graph cycle(int n);              // n >= 3
Graph complete(int n);           // n >= 2
Graph disjoint_union(const Graph& a, const Graph& b);
Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

struct ComponentDecomposition {
    int component_count = 0;
    std::vector<int> labels;                 // per-vertex component index
    std::vector<RealVector> indicators;      // 0/1 indicator vector per component
};

std::optional<int> is_k_regular(const Graph& g);
ComponentDecomposition connected_components(const Graph& g);

/// dim Comm(A_Gamma) via the spectral multiplicity formula: sum of m_lambda^2.
int commutant_dimension_spectral(const Graph& g);

struct CommutantBasis {
    enum class Source { Nullspace, MultiplicityFormula };
    int dimension = 0;
    std::vector<ComplexMatrix> basis;        // orthonormal in the trace inner product
    Source source = Source::Nullspace;
};

/// Basis of {X : A_G X = X A_G} from the flattened commutator nullspace.
/// Throws if the nullspace dimension disagrees with the spectral count.
CommutantBasis commutant_basis(const Graph& g);

/// Closed form for cycles: 2n-1 (n odd), 2n-2 (n even). Requires n >= 3.
int cycle_commutant_dim_formula(int n);

/// Parses "cycle:N", "complete:N", or "union:<spec>+<spec>".
Graph parse_graph_spec(const std::string& spec);
std::string graph_spec_name(const std::string& spec);

}  // namespace gqms
