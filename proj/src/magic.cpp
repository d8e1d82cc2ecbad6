#include "gqms/magic.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gqms {

MagicReport verify_magic(const BlockMatrix& x, double tol) {
    MagicReport rep;
    rep.tolerance = tol;
    rep.blocks_psd = true;
    const int n = x.n, s = x.s;
    ComplexMatrix id = ComplexMatrix::Identity(s, s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double me = min_eig(x.block(i, j));
            rep.block_min_eigs.push_back(me);
            if (me < -tol) rep.blocks_psd = false;
        }
    for (int i = 0; i < n; ++i) {
        ComplexMatrix sum = ComplexMatrix::Zero(s, s);
        for (int j = 0; j < n; ++j) sum += x.block(i, j);
        rep.row_residuals.push_back((sum - id).norm());
    }
    for (int j = 0; j < n; ++j) {
        ComplexMatrix sum = ComplexMatrix::Zero(s, s);
        for (int i = 0; i < n; ++i) sum += x.block(i, j);
        rep.col_residuals.push_back((sum - id).norm());
    }
    rep.overall = rep.blocks_psd;
    for (double r : rep.row_residuals)
        if (r > tol) rep.overall = false;
    for (double r : rep.col_residuals)
        if (r > tol) rep.overall = false;
    return rep;
}

ClassFlags classify(const BlockMatrix& x, double tol) {
    ClassFlags f;
    f.in_M = verify_magic(x, tol).overall;
    bool proj_ok = true;
    for (const ComplexMatrix& b : x.blocks) {
        double r = (b * b - b).norm();
        f.projection_residuals.push_back(r);
        if (r > tol) proj_ok = false;
    }
    double maxc = 0.0;
    for (size_t a = 0; a < x.blocks.size(); ++a)
        for (size_t b = a + 1; b < x.blocks.size(); ++b)
            maxc = std::max(maxc, (x.blocks[a] * x.blocks[b] - x.blocks[b] * x.blocks[a]).norm());
    f.max_commutator_residual = maxc;
    f.in_P = f.in_M && proj_ok;
    f.in_C = f.in_P && maxc <= tol;
    return f;
}

BlockMatrix from_permutation(const std::vector<int>& sigma, int s) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> hit(n, false);
    for (int v : sigma) {
        if (v < 0 || v >= n || hit[v])
            throw std::invalid_argument("from_permutation: not a bijection");
        hit[v] = true;
    }
    BlockMatrix out(n, s);
    for (int i = 0; i < n; ++i) out.block(i, sigma[i]) = ComplexMatrix::Identity(s, s);
    return out;
}

namespace {

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h) {
    EigResult e = eig_herm(h);
    ComplexMatrix d = ComplexMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
        double lam = e.values(k);
        if (lam < 1e-14) throw std::runtime_error("inv_sqrt_psd: matrix not positive definite");
        d(k, k) = 1.0 / std::sqrt(lam);
    }
    return e.vectors * d * e.vectors.adjoint();
}

double magic_residual(const BlockMatrix& x) {
    MagicReport rep = verify_magic(x, 0.0);
    double r = 0.0;
    for (double v : rep.row_residuals) r = std::max(r, v);
    for (double v : rep.col_residuals) r = std::max(r, v);
    return r;
}

}  // namespace

BlockMatrix random_qms(int n, int s, std::uint64_t seed) {
    if (n < 1 || s < 1) throw std::invalid_argument("random_qms: need n, s >= 1");
    if (n == 1) {
        BlockMatrix out(1, s);
        out.block(0, 0) = ComplexMatrix::Identity(s, s);
        return out;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    BlockMatrix x(n, s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ComplexMatrix g(s, s);
            for (int r = 0; r < s; ++r)
                for (int c = 0; c < s; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
            x.block(i, j) = g * g.adjoint();
        }

    double last = magic_residual(x);
    for (int sweep = 0; sweep < 10000; ++sweep) {
        // rows
        for (int i = 0; i < n; ++i) {
            ComplexMatrix rsum = ComplexMatrix::Zero(s, s);
            for (int j = 0; j < n; ++j) rsum += x.block(i, j);
            ComplexMatrix t = inv_sqrt_psd(rsum);
            for (int j = 0; j < n; ++j)
                x.block(i, j) = Hermitian::from(t * x.block(i, j) * t).mat;
        }
        // columns
        for (int j = 0; j < n; ++j) {
            ComplexMatrix csum = ComplexMatrix::Zero(s, s);
            for (int i = 0; i < n; ++i) csum += x.block(i, j);
            ComplexMatrix t = inv_sqrt_psd(csum);
            for (int i = 0; i < n; ++i)
                x.block(i, j) = Hermitian::from(t * x.block(i, j) * t).mat;
        }
        last = magic_residual(x);
        if (last <= 1e-10) return x;
    }
    std::ostringstream msg;
    msg << "random_qms: Sinkhorn did not reach 1e-10 in 10000 sweeps (last residual " << last << ")";
    throw std::runtime_error(msg.str());
}

BlockMatrix matrix_convex_combine(const std::vector<BlockMatrix>& squares,
                                  const std::vector<ComplexMatrix>& isometries) {
    if (squares.empty() || squares.size() != isometries.size())
        throw std::invalid_argument("matrix_convex_combine: need matching nonempty lists");
    const int n = squares[0].n;
    const Eigen::Index t = isometries[0].cols();
    ComplexMatrix gram = ComplexMatrix::Zero(t, t);
    for (size_t i = 0; i < squares.size(); ++i) {
        if (squares[i].n != n)
            throw std::invalid_argument("matrix_convex_combine: outer sizes differ");
        if (isometries[i].rows() != squares[i].s || isometries[i].cols() != t)
            throw std::invalid_argument("matrix_convex_combine: isometry shape mismatch");
        gram += isometries[i].adjoint() * isometries[i];
    }
    double dev = (gram - ComplexMatrix::Identity(t, t)).norm();
    if (dev > 1e-10) {
        std::ostringstream msg;
        msg << "matrix_convex_combine: sum V_i* V_i deviates from identity by " << dev;
        throw std::invalid_argument(msg.str());
    }
    BlockMatrix out(n, static_cast<int>(t));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            ComplexMatrix b = ComplexMatrix::Zero(t, t);
            for (size_t i = 0; i < squares.size(); ++i)
                b += isometries[i].adjoint() * squares[i].block(k, l) * isometries[i];
            out.block(k, l) = Hermitian::from(b).mat;
        }
    return out;
}

GraphCommuteResult graph_commutes(const BlockMatrix& x, const Graph& g, double tol) {
    if (x.n != g.n) throw std::invalid_argument("graph_commutes: size mismatch");
    double worst = 0.0;
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            ComplexMatrix lhs = ComplexMatrix::Zero(x.s, x.s);
            ComplexMatrix rhs = ComplexMatrix::Zero(x.s, x.s);
            for (int k = 0; k < x.n; ++k) {
                if (g.adjacency(k, j)) lhs += x.block(i, k);
                if (g.adjacency(k, i)) rhs += x.block(k, j);
            }
            worst = std::max(worst, (lhs - rhs).norm());
        }
    return GraphCommuteResult{worst <= tol, worst};
}

BlockMatrix group_average(const BlockMatrix& x, const std::vector<std::vector<int>>& perms) {
    if (perms.empty()) throw std::invalid_argument("group_average: empty permutation list");
    BlockMatrix out(x.n, x.s);
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != x.n)
            throw std::invalid_argument("group_average: permutation size mismatch");
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j) out.block(i, j) += x.block(p[i], p[j]);
    }
    const double w = 1.0 / static_cast<double>(perms.size());
    for (ComplexMatrix& b : out.blocks) b *= w;
    return out;
}

std::vector<std::vector<int>> z4_cycle_powers() {
    std::vector<std::vector<int>> out;
    for (int k = 0; k < 4; ++k) {
        std::vector<int> p(4);
        for (int i = 0; i < 4; ++i) p[i] = (i + k) % 4;
        out.push_back(p);
    }
    return out;
}

std::vector<std::vector<int>> c4_automorphisms() {
    // rotations and reflections of the square 0-1-2-3
    std::vector<std::vector<int>> out = z4_cycle_powers();
    for (int k = 0; k < 4; ++k) {
        std::vector<int> p(4);
        for (int i = 0; i < 4; ++i) p[i] = ((k - i) % 4 + 4) % 4;
        out.push_back(p);
    }
    return out;
}

ComponentSums componentwise_sums(const BlockMatrix& b, const Graph& g) {
    if (b.n != g.n) throw std::invalid_argument("componentwise_sums: size mismatch");
    ComponentDecomposition comp = connected_components(g);
    ComponentSums out;
    out.row_sums.assign(comp.component_count, ComplexMatrix::Zero(b.s, b.s));
    out.col_sums.assign(comp.component_count, ComplexMatrix::Zero(b.s, b.s));
    std::vector<int> counts(comp.component_count, 0);
    std::vector<ComplexMatrix> row_of(b.n), col_of(b.n);
    for (int i = 0; i < b.n; ++i) {
        ComplexMatrix rs = ComplexMatrix::Zero(b.s, b.s), cs = ComplexMatrix::Zero(b.s, b.s);
        for (int j = 0; j < b.n; ++j) {
            rs += b.block(i, j);
            cs += b.block(j, i);
        }
        row_of[i] = rs;
        col_of[i] = cs;
        out.row_sums[comp.labels[i]] += rs;
        out.col_sums[comp.labels[i]] += cs;
        counts[comp.labels[i]] += 1;
    }
    for (int t = 0; t < comp.component_count; ++t) {
        out.row_sums[t] /= counts[t];
        out.col_sums[t] /= counts[t];
    }
    double dev = 0.0;
    for (int i = 0; i < b.n; ++i) {
        dev = std::max(dev, (row_of[i] - out.row_sums[comp.labels[i]]).norm());
        dev = std::max(dev, (col_of[i] - out.col_sums[comp.labels[i]]).norm());
    }
    out.max_deviation = dev;
    return out;
}

}  // namespace gqms
