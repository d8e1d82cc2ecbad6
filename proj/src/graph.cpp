#include "gqms/graph.hpp"

#include <deque>
#include <stdexcept>

namespace gqms {

Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
    Graph g;
    g.n = n;
    g.adjacency = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        g.adjacency(i, (i + 1) % n) = 1;
        g.adjacency((i + 1) % n, i) = 1;
    }
    return g;
}

Graph complete(int n) {
    if (n < 2) throw std::invalid_argument("complete: need n >= 2");
    Graph g;
    g.n = n;
    g.adjacency = Eigen::MatrixXi::Ones(n, n);
    g.adjacency.diagonal().setZero();
    return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g;
    g.n = a.n + b.n;
    g.adjacency = Eigen::MatrixXi::Zero(g.n, g.n);
    g.adjacency.topLeftCorner(a.n, a.n) = a.adjacency;
    g.adjacency.bottomRightCorner(b.n, b.n) = b.adjacency;
    return g;
}

Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw std::invalid_argument("from_edge_list: need n >= 1");
    Graph g;
    g.n = n;
    g.adjacency = Eigen::MatrixXi::Zero(n, n);
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("from_edge_list: vertex out of range");
        if (i == j) throw std::invalid_argument("from_edge_list: loops not allowed");
        g.adjacency(i, j) = 1;
        g.adjacency(j, i) = 1;
    }
    return g;
}

std::optional<int> is_k_regular(const Graph& g) {
    if (g.n == 0) return std::nullopt;
    Eigen::VectorXi deg = g.adjacency.rowwise().sum();
    for (int i = 1; i < g.n; ++i)
        if (deg(i) != deg(0)) return std::nullopt;
    return deg(0);
}

ComponentDecomposition connected_components(const Graph& g) {
    ComponentDecomposition out;
    out.labels.assign(g.n, -1);
    for (int start = 0; start < g.n; ++start) {
        if (out.labels[start] != -1) continue;
        int label = out.component_count++;
        std::deque<int> queue{start};
        out.labels[start] = label;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w = 0; w < g.n; ++w) {
                if (g.adjacency(v, w) && out.labels[w] == -1) {
                    out.labels[w] = label;
                    queue.push_back(w);
                }
            }
        }
    }
    out.indicators.assign(out.component_count, RealVector::Zero(g.n));
    for (int v = 0; v < g.n; ++v) out.indicators[out.labels[v]](v) = 1.0;
    return out;
}

int commutant_dimension_spectral(const Graph& g) {
    EigResult eig = eig_herm(g.adjacency_real().cast<Complex>());
    Spectrum sp = cluster_spectrum(eig.values);
    int dim = 0;
    for (int m : sp.multiplicities) dim += m * m;
    return dim;
}

CommutantBasis commutant_basis(const Graph& g) {
    const int n = g.n;
    ComplexMatrix a = g.adjacency_real().cast<Complex>();
    // flattened commutator operator: vec(AX - XA) = (I (x) A - A^T (x) I) vec(X)
    // with column-major vec; A is symmetric so the transpose is cosmetic.
    ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix op = kron(id, a) - kron(a.transpose(), id);
    ComplexMatrix ker = nullspace(op);

    int spectral = commutant_dimension_spectral(g);
    if (ker.cols() != spectral)
        throw std::runtime_error("commutant_basis: nullspace dimension " +
                                 std::to_string(ker.cols()) +
                                 " disagrees with spectral count " + std::to_string(spectral));

    CommutantBasis out;
    out.dimension = static_cast<int>(ker.cols());
    out.basis.reserve(out.dimension);
    for (int k = 0; k < out.dimension; ++k) {
        ComplexMatrix e(n, n);
        for (int j = 0; j < n; ++j) e.col(j) = ker.col(k).segment(j * n, n);
        // SVD nullspace columns are already orthonormal; re-orthonormalize in
        // the trace inner product anyway to absorb roundoff.
        for (const ComplexMatrix& prev : out.basis) {
            Complex ip = (prev.adjoint() * e).trace();
            e -= ip * prev;
        }
        double nrm = e.norm();
        if (nrm < 1e-12) throw std::runtime_error("commutant_basis: degenerate basis element");
        out.basis.push_back(e / nrm);
    }
    return out;
}

int cycle_commutant_dim_formula(int n) {
    if (n < 3) throw std::invalid_argument("cycle_commutant_dim_formula: need n >= 3");
    return (n % 2 == 1) ? 2 * n - 1 : 2 * n - 2;
}

namespace {

Graph parse_single(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("graph spec: expected family:N in '" + spec + "'");
    std::string family = spec.substr(0, colon);
    int n = std::stoi(spec.substr(colon + 1));
    if (family == "cycle") return cycle(n);
    if (family == "complete") return complete(n);
    throw std::invalid_argument("graph spec: unknown family '" + family + "'");
}

}  // namespace

Graph parse_graph_spec(const std::string& spec) {
    if (spec.rfind("union:", 0) == 0) {
        std::string rest = spec.substr(6);
        auto plus = rest.find('+');
        if (plus == std::string::npos)
            throw std::invalid_argument("graph spec: union needs '+' in '" + spec + "'");
        return disjoint_union(parse_single(rest.substr(0, plus)),
                              parse_single(rest.substr(plus + 1)));
    }
    return parse_single(spec);
}

std::string graph_spec_name(const std::string& spec) { return spec; }

}  // namespace gqms
