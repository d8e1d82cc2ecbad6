#include "gqms/separation.hpp"

#include "gqms/pencil.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gqms {

namespace {

constexpr Complex kI{0.0, 1.0};

// The five fixed basis elements of the zero-diagonal, zero-row-and-column-sum
// matrices at n=4 (entries in {0, +-1, +-i}).
std::vector<ComplexMatrix> hard_coded_z4() {
    auto fill = [](std::initializer_list<Complex> vals) {
        ComplexMatrix z(4, 4);
        int k = 0;
        for (Complex v : vals) z(k / 4, k % 4) = v, ++k;
        return z;
    };
    std::vector<ComplexMatrix> z;
    z.push_back(fill({0, 1, 0, -1, 1, 0, -1, 0, 0, -1, 0, 1, -1, 0, 1, 0}));
    z.push_back(fill({0, kI, 0, -kI, -kI, 0, 0, kI, 0, 0, 0, 0, kI, -kI, 0, 0}));
    z.push_back(fill({0, 0, 1, -1, 0, 0, -1, 1, 1, -1, 0, 0, -1, 1, 0, 0}));
    z.push_back(fill({0, 0, kI, -kI, 0, 0, 0, 0, -kI, 0, 0, kI, kI, 0, -kI, 0}));
    z.push_back(fill({0, 0, 0, 0, 0, 0, kI, -kI, 0, -kI, 0, kI, 0, kI, -kI, 0}));
    return z;
}

// vec by rows: entry (i, j) of an n x n matrix sits at index i*n + j
ComplexMatrix vec_rows(const ComplexMatrix& z) {
    const int n = static_cast<int>(z.rows());
    ComplexMatrix v(n * n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v(i * n + j, 0) = z(i, j);
    return v;
}

ComplexMatrix ze_constraints(int n, ZeVariant variant) {
    const int rows = (variant == ZeVariant::RowAndCol) ? 3 * n : 2 * n;
    ComplexMatrix c = ComplexMatrix::Zero(rows, n * n);
    for (int i = 0; i < n; ++i) c(i, i * n + i) = 1.0;                       // diagonal
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(n + i, i * n + j) = 1.0;               // row sums
    if (variant == ZeVariant::RowAndCol)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) c(2 * n + j, i * n + j) = 1.0;       // column sums
    return c;
}

double herm_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.adjoint() * b).trace().real();
}

ComplexMatrix clip_psd(const ComplexMatrix& h) {
    EigResult e = eig_herm(0.5 * (h + h.adjoint()));
    ComplexMatrix out = ComplexMatrix::Zero(h.rows(), h.cols());
    for (int k = 0; k < e.values.size(); ++k)
        if (e.values(k) > 0)
            out += e.values(k) * e.vectors.col(k) * e.vectors.col(k).adjoint();
    return out;
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h) {
    EigResult e = eig_herm(h);
    ComplexMatrix out = ComplexMatrix::Zero(h.rows(), h.cols());
    for (int k = 0; k < e.values.size(); ++k) {
        double lam = std::max(e.values(k), 1e-12);
        out += (1.0 / std::sqrt(lam)) * e.vectors.col(k) * e.vectors.col(k).adjoint();
    }
    return out;
}

// one symmetric scaling sweep: normalize the row sums, then the column sums
void sinkhorn_sweep(BlockMatrix& x) {
    const int n = x.n;
    for (int i = 0; i < n; ++i) {
        ComplexMatrix r = ComplexMatrix::Zero(x.s, x.s);
        for (int k = 0; k < n; ++k) r += x.block(i, k);
        ComplexMatrix w = inv_sqrt_psd(0.5 * (r + r.adjoint()));
        for (int k = 0; k < n; ++k) x.block(i, k) = w * x.block(i, k) * w;
    }
    for (int j = 0; j < n; ++j) {
        ComplexMatrix c = ComplexMatrix::Zero(x.s, x.s);
        for (int k = 0; k < n; ++k) c += x.block(k, j);
        ComplexMatrix w = inv_sqrt_psd(0.5 * (c + c.adjoint()));
        for (int k = 0; k < n; ++k) x.block(k, j) = w * x.block(k, j) * w;
    }
}

}  // namespace

std::string to_string(ZeVariant v) {
    return v == ZeVariant::RowOnly ? "row_only" : "row_and_col";
}

ZeVariant ze_variant_from_string(const std::string& s) {
    if (s == "row_only") return ZeVariant::RowOnly;
    if (s == "row_and_col") return ZeVariant::RowAndCol;
    throw std::invalid_argument("unknown Z_e variant: " + s);
}

ZeBasis ze_basis(int n, ZeVariant variant) {
    if (n < 3) throw std::invalid_argument("ze_basis: n must be >= 3");
    ComplexMatrix kernel = nullspace(ze_constraints(n, variant));
    const int dim = static_cast<int>(kernel.cols());

    ZeBasis out;
    out.n = n;
    out.variant = variant;

    if (n == 4 && variant == ZeVariant::RowAndCol) {
        std::vector<ComplexMatrix> z = hard_coded_z4();
        if (dim != static_cast<int>(z.size()))
            throw std::runtime_error("ze_basis: kernel dimension mismatch at n=4");
        // the fixed matrices must span exactly the computed kernel
        ComplexMatrix v(16, z.size());
        for (size_t k = 0; k < z.size(); ++k) v.col(k) = vec_rows(z[k]).col(0);
        double span_res = (v - kernel * (kernel.adjoint() * v)).norm() / v.norm();
        if (span_res > 1e-10)
            throw std::runtime_error("ze_basis: fixed basis does not span the kernel");
        out.basis = std::move(z);
    } else {
        out.basis.reserve(dim);
        for (int k = 0; k < dim; ++k) {
            ComplexMatrix z(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) z(i, j) = kernel(i * n + j, k);
            out.basis.push_back(z);
        }
    }

    // linear independence: the Gram matrix must be comfortably non-singular
    ComplexMatrix gram(out.dimension(), out.dimension());
    for (int a = 0; a < out.dimension(); ++a)
        for (int b = 0; b < out.dimension(); ++b)
            gram(a, b) = (out.basis[a].adjoint() * out.basis[b]).trace();
    Eigen::JacobiSVD<ComplexMatrix> svd(gram);
    if (svd.singularValues()(out.dimension() - 1) < 1e-8)
        throw std::runtime_error("ze_basis: degenerate basis");
    return out;
}

SeparationSubspaceBasis subspace_basis(int n, int s, ZeVariant variant) {
    ZeBasis ze = ze_basis(n, variant);
    std::vector<ComplexMatrix> sb = her_basis(s);

    SeparationSubspaceBasis out;
    out.n = n;
    out.s = s;
    out.variant = variant;
    for (int a = 0; a < ze.dimension(); ++a)
        for (int b = 0; b < ze.dimension(); ++b) {
            ComplexMatrix zz = kron(ze.basis[a], ze.basis[b]);
            for (int j = 0; j < s * s; ++j) {
                ComplexMatrix y = kron(zz, sb[j]);
                auto [c, d] = hermitize_pair(y);
                if (frob(c) > 1e-12) {
                    out.family.push_back(std::move(c));
                    out.labels.push_back({a, b, j, true});
                } else {
                    out.dropped.push_back({a, b, j, true});
                }
                if (frob(d) > 1e-12) {
                    out.family.push_back(std::move(d));
                    out.labels.push_back({a, b, j, false});
                } else {
                    out.dropped.push_back({a, b, j, false});
                }
            }
        }
    return out;
}

ComplexMatrix col_map(const BlockMatrix& a) {
    const int n = a.n, s = a.s;
    ComplexMatrix c = ComplexMatrix::Zero(n * n * s, s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            c.block((i * n + j) * s, 0, s, s) = a.block(i, j);
    return c;
}

ComplexMatrix diag_map(const BlockMatrix& a) {
    const int n = a.n, s = a.s;
    ComplexMatrix d = ComplexMatrix::Zero(n * n * s, n * n * s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d.block((i * n + j) * s, (i * n + j) * s, s, s) = a.block(i, j);
    return d;
}

ComplexMatrix phi_map(const BlockMatrix& a) {
    ComplexMatrix c = col_map(a);
    return diag_map(a) - c * c.adjoint();
}

ComplexMatrix psi_map(const BlockMatrix& a) {
    const int n = a.n, s = a.s;
    if (n < 3) throw std::invalid_argument("psi_map: n must be >= 3");
    const double alpha = 1.0 / (double(n - 1) * (n - 2));
    const double beta = double(n - 1) / (double(n) * (n - 2));
    const double gamma = 1.0 / (double(n) * (n - 2));
    const ComplexMatrix eye = ComplexMatrix::Identity(s, s);

    ComplexMatrix psi = ComplexMatrix::Zero(n * n * s, n * n * s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (k == l) continue;
                    psi.block((i * n + k) * s, (j * n + l) * s, s, s) =
                        -alpha * eye + beta * a.block(i, k) + beta * a.block(j, l) +
                        gamma * a.block(i, l) + gamma * a.block(j, k);
                }
        }
    return psi;
}

SeparationOperator separation_operator(const BlockMatrix& a) {
    if (a.n < 3)
        throw std::invalid_argument("separation_operator: n must be >= 3");
    SeparationOperator op;
    op.n = a.n;
    op.s = a.s;
    op.alpha_num = 1;
    op.alpha_den = long(a.n - 1) * (a.n - 2);
    op.beta_num = a.n - 1;
    op.beta_den = long(a.n) * (a.n - 2);
    op.gamma_num = 1;
    op.gamma_den = long(a.n) * (a.n - 2);
    op.phi = phi_map(a);
    op.psi = psi_map(a);
    op.M = op.phi + op.psi;
    return op;
}

FeasibilityWitness primal_feasibility(const BlockMatrix& a, ZeVariant variant,
                                      const SdpOptions& opt) {
    SeparationOperator op = separation_operator(a);
    SeparationSubspaceBasis sub = subspace_basis(a.n, a.s, variant);
    const int p = sub.size();
    const int m2 = 2 * a.n * a.n * a.s;

    // maximize t subject to M + sum xi_k Z_k - t I >= 0; every Z_k is
    // traceless, so t <= Tr(M)/dim keeps the objective bounded
    LmiProblem lmi;
    lmi.F0 = real_embed(op.M);
    lmi.F.reserve(p + 1);
    for (const ComplexMatrix& z : sub.family) lmi.F.push_back(real_embed(z));
    lmi.F.push_back(-RealMatrix::Identity(m2, m2));
    lmi.c = RealVector::Zero(p + 1);
    lmi.c(p) = 1.0;

    SdpOptions tight = opt;
    SdpOptions defaults;
    if (opt.gap_tol == defaults.gap_tol) tight.gap_tol = 1e-8;
    if (opt.max_iter == defaults.max_iter) tight.max_iter = 600;

    LmiSolution ls = solve_lmi(lmi, tight);
    FeasibilityWitness w;
    w.status = ls.status;
    if (ls.status != SdpStatus::Optimal && ls.status != SdpStatus::IterationLimit)
        return w;
    w.xi = ls.x.head(p);
    w.X = ComplexMatrix::Zero(a.n * a.n * a.s, a.n * a.n * a.s);
    for (int k = 0; k < p; ++k) w.X += w.xi(k) * sub.family[k];
    w.min_eig = min_eig(op.M + w.X);
    w.feasible = ls.status == SdpStatus::Optimal && ls.objective >= -1e-7;
    return w;
}

DualCertificate dual_certificate(const BlockMatrix& a, ZeVariant variant,
                                 const SdpOptions& opt) {
    SeparationOperator op = separation_operator(a);
    SeparationSubspaceBasis sub = subspace_basis(a.n, a.s, variant);
    const int m = a.n * a.n * a.s;

    // the validation thresholds (1e-9 on trace and orthogonality) are tighter
    // than the engine defaults, so sharpen the solve when the caller did not
    // override the tolerances
    SdpOptions tight = opt;
    SdpOptions defaults;
    if (opt.feas_tol == defaults.feas_tol) tight.feas_tol = 1e-9;
    if (opt.gap_tol == defaults.gap_tol) tight.gap_tol = 1e-8;
    if (opt.max_iter == defaults.max_iter) tight.max_iter = 600;

    SdpProblem prob;
    prob.C = real_embed(op.M);
    prob.A.reserve(sub.size() + 1);
    prob.A.push_back(RealMatrix::Identity(2 * m, 2 * m));
    for (const ComplexMatrix& z : sub.family) prob.A.push_back(real_embed(z));
    prob.b = RealVector::Zero(sub.size() + 1);
    prob.b(0) = 2.0;   // embedded traces double: Tr Y = 1 upstairs

    SdpSolution sol = solve(prob, tight);

    DualCertificate cert;
    cert.n = a.n;
    cert.s = a.s;
    cert.variant = variant;
    cert.solver_status = sol.status;
    if (sol.status != SdpStatus::Optimal && sol.status != SdpStatus::IterationLimit)
        return cert;

    ComplexMatrix y = complex_from_embed(sol.Y);
    y = 0.5 * (y + y.adjoint());
    double tr = y.trace().real();
    if (tr > 1e-12) y /= tr;   // exact normalization; a pure rescaling
    cert.Y = y;
    cert.solver_objective = sol.objective / 2.0;
    revalidate_certificate(a, cert);
    return cert;
}

bool revalidate_certificate(const BlockMatrix& a, DualCertificate& cert,
                            double solver_match_tol) {
    SeparationOperator op = separation_operator(a);
    SeparationSubspaceBasis sub = subspace_basis(cert.n, cert.s, cert.variant);

    const ComplexMatrix& y = cert.Y;
    cert.objective = (y * op.M).trace().real();
    cert.trace_Y = y.trace().real();
    cert.min_eig_Y = eig_herm(y).values(0);
    double worst = 0.0;
    for (const ComplexMatrix& z : sub.family)
        worst = std::max(worst, std::abs((y * z).trace().real()));
    cert.max_orthogonality_residual = worst;

    cert.validated = cert.min_eig_Y >= -1e-9 && std::abs(cert.trace_Y - 1.0) <= 1e-9 &&
                     worst <= 1e-9 &&
                     std::abs(cert.objective - cert.solver_objective) <=
                         solver_match_tol * (1.0 + std::abs(cert.objective));
    return cert.validated;
}

SearchResult counterexample_search(int budget, std::uint64_t seed, bool refine,
                                   const SdpOptions& opt) {
    if (budget < 1) throw std::invalid_argument("counterexample_search: budget >= 1");
    const Graph c4 = cycle(4);
    const auto twirl = z4_cycle_powers();

    SearchResult res;
    res.best_objective = std::numeric_limits<double>::infinity();

    auto consider = [&](const BlockMatrix& b, std::uint64_t cand_seed, int index) {
        MagicReport mr = verify_magic(b, 1e-9);
        if (!mr.overall) return false;
        if (!graph_commutes(b, c4, 1e-9).commutes) return false;
        DualCertificate cert = dual_certificate(b, ZeVariant::RowOnly, opt);
        cert.seed = cand_seed;
        cert.candidate_index = index;
        ++res.candidates_evaluated;
        if (!cert.validated) return false;
        if (cert.objective < res.best_objective) {
            res.best_objective = cert.objective;
            res.best_square = b;
            res.certificate = cert;
        }
        return cert.objective <= -1e-6;
    };

    for (int i = 0; i < budget; ++i) {
        const std::uint64_t cand_seed = seed + static_cast<std::uint64_t>(i);
        res.seeds.push_back(cand_seed);
        BlockMatrix b = group_average(random_qms(4, 2, cand_seed), twirl);
        if (consider(b, cand_seed, i)) {
            res.found = true;
            return res;
        }

        if (!refine || res.best_square.n == 0) continue;

        // local exploration around the best candidate inside the
        // C4-commuting affine space, with PSD re-projection
        AffineBlockParametrization aff = gqms_affine(c4, 2);
        std::mt19937_64 rng(cand_seed ^ 0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> g;
        for (int r = 0; r < 3; ++r) {
            const double eps = 0.05 / (1.0 + r);
            std::vector<ComplexMatrix> indep;
            for (auto [pi, pj] : aff.independent_indices) {
                ComplexMatrix noise(2, 2);
                for (int u = 0; u < 2; ++u)
                    for (int v = 0; v < 2; ++v) noise(u, v) = Complex(g(rng), g(rng));
                noise = 0.5 * (noise + noise.adjoint());
                indep.push_back(res.best_square.block(pi, pj) + eps * noise);
            }
            BlockMatrix cand(4, 2);
            const int q = static_cast<int>(indep.size());
            for (int kl = 0; kl < 16; ++kl) {
                ComplexMatrix x = (1.0 / 4.0) * ComplexMatrix::Identity(2, 2);
                for (int p = 0; p < q; ++p)
                    x += aff.d(kl, p) * (4.0 * indep[p] - ComplexMatrix::Identity(2, 2));
                cand.blocks[kl] = x;
            }
            for (auto& blk : cand.blocks) blk = clip_psd(blk);
            sinkhorn_sweep(cand);
            if (consider(cand, cand_seed, i)) {
                res.found = true;
                return res;
            }
        }
    }
    return res;
}

Json certificate_to_json(const BlockMatrix& b, const DualCertificate& cert) {
    Json j;
    j["B"] = block_matrix_to_json(b);
    j["Y"] = matrix_to_json(cert.Y);
    j["objective"] = cert.objective;
    j["residuals"] = {{"min_eig_Y", cert.min_eig_Y},
                      {"trace", cert.trace_Y},
                      {"orthogonality", cert.max_orthogonality_residual},
                      {"solver_objective", cert.solver_objective}};
    j["variant"] = to_string(cert.variant);
    j["seed"] = cert.seed;
    j["candidate_index"] = cert.candidate_index;
    return j;
}

std::pair<BlockMatrix, DualCertificate> certificate_from_json(const Json& j) {
    BlockMatrix b = block_matrix_from_json(j.at("B"));
    DualCertificate cert;
    cert.n = b.n;
    cert.s = b.s;
    cert.variant = ze_variant_from_string(j.at("variant").get<std::string>());
    cert.Y = matrix_from_json(j.at("Y"));
    if (cert.Y.rows() != b.n * b.n * b.s)
        throw std::invalid_argument("certificate: Y dimension does not match B");
    cert.solver_objective = j.at("residuals").at("solver_objective").get<double>();
    cert.seed = j.at("seed").get<std::uint64_t>();
    cert.candidate_index = j.at("candidate_index").get<int>();
    // descriptive fields are re-derived, never trusted from disk
    return {std::move(b), cert};
}

}  // namespace gqms
