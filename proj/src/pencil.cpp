#include "gqms/pencil.hpp"

#include "gqms/linalg.hpp"

#include <Eigen/LU>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gqms {

std::string to_string(PencilProvenance p) {
    switch (p) {
        case PencilProvenance::PlainQms: return "plain-qms";
        case PencilProvenance::GraphJointNullspace: return "graph-joint-nullspace";
        case PencilProvenance::GraphComposition: return "graph-composition";
    }
    return "unknown";
}

std::vector<ComplexMatrix> her_basis(int s) {
    if (s < 1) throw std::invalid_argument("her_basis: s must be >= 1");
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<size_t>(s) * s);
    // upper-triangle reading order: E_ii in place, each off-diagonal pair
    // contributing the symmetric element then i(E_ji - E_ij); at s=2 this is
    // the familiar four-matrix Hermitian basis in its standard order
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            if (i == j) {
                ComplexMatrix e = ComplexMatrix::Zero(s, s);
                e(i, i) = 1.0;
                out.push_back(e);
            } else {
                ComplexMatrix re = ComplexMatrix::Zero(s, s);
                re(i, j) = re(j, i) = 1.0;
                out.push_back(re);
                ComplexMatrix im = ComplexMatrix::Zero(s, s);
                im(i, j) = Complex(0, -1);
                im(j, i) = Complex(0, 1);
                out.push_back(im);
            }
        }
    return out;
}

RealVector her_coords(const ComplexMatrix& h) {
    const int s = static_cast<int>(h.rows());
    RealVector y(s * s);
    int k = 0;
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            if (i == j) {
                y(k++) = h(i, i).real();
            } else {
                y(k++) = h(i, j).real();
                y(k++) = -h(i, j).imag();
            }
        }
    return y;
}

ComplexMatrix her_from_coords(const RealVector& y, int s) {
    if (y.size() != static_cast<Eigen::Index>(s) * s)
        throw std::invalid_argument("her_from_coords: coordinate length mismatch");
    ComplexMatrix h = ComplexMatrix::Zero(s, s);
    int k = 0;
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            if (i == j) {
                h(i, i) = y(k++);
            } else {
                double re = y(k++), mi = y(k++);
                h(i, j) = Complex(re, -mi);
                h(j, i) = Complex(re, mi);
            }
        }
    return h;
}

namespace {

BlockMatrix uniform_point(int n, int s) {
    BlockMatrix x(n, s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            x.block(i, j) = ComplexMatrix::Identity(s, s) / static_cast<double>(n);
    return x;
}

// greedy row-major pivot search: the smallest (in reading order) index set on
// which the nullspace coordinates are jointly invertible
std::vector<int> greedy_pivots(const RealMatrix& nullsp) {
    const Eigen::Index g0 = nullsp.cols();
    std::vector<int> pivots;
    std::vector<RealVector> basis;
    for (Eigen::Index r = 0; r < nullsp.rows() && static_cast<Eigen::Index>(pivots.size()) < g0;
         ++r) {
        RealVector v = nullsp.row(r).transpose();
        for (const RealVector& b : basis) v -= b.dot(v) * b;
        if (v.norm() > 1e-8) {
            basis.push_back(v / v.norm());
            pivots.push_back(static_cast<int>(r));
        }
    }
    if (static_cast<Eigen::Index>(pivots.size()) != g0)
        throw std::runtime_error("pencil: could not pivot the affine parametrization");
    return pivots;
}

// D = N * N_P^{-1}; rows of D give each block as a combination of the pivots
RealMatrix pivot_coefficients(const RealMatrix& nullsp, const std::vector<int>& pivots) {
    const Eigen::Index g0 = nullsp.cols();
    RealMatrix vp(g0, g0);
    for (Eigen::Index q = 0; q < g0; ++q) vp.row(q) = nullsp.row(pivots[q]);
    Eigen::PartialPivLU<RealMatrix> lu(vp.transpose());
    RealMatrix d = lu.solve(nullsp.transpose()).transpose();
    for (Eigen::Index q = 0; q < g0; ++q) {
        RealVector unit = RealVector::Unit(g0, q);
        if ((d.row(pivots[q]).transpose() - unit).norm() > 1e-8)
            throw std::runtime_error("pencil: pivot inversion failed");
    }
    return d;
}

AffineBlockParametrization from_nullspace(const Graph& g, int s, const RealMatrix& nullsp,
                                          PencilProvenance prov) {
    const int n = g.n;
    AffineBlockParametrization out;
    out.n = n;
    out.s = s;
    out.provenance = prov;
    out.particular_point = uniform_point(n, s);
    std::vector<int> pivots = greedy_pivots(nullsp);
    RealMatrix dd = pivot_coefficients(nullsp, pivots);
    out.d = dd / static_cast<double>(n);
    std::vector<bool> is_pivot(static_cast<size_t>(n) * n, false);
    for (int p : pivots) {
        out.independent_indices.emplace_back(p / n, p % n);
        is_pivot[p] = true;
    }
    for (int k = 0; k < n * n; ++k)
        if (!is_pivot[k]) out.dependent_set.emplace_back(k / n, k % n);
    return out;
}

// scalar constraint rows over the n^2 block positions (index i*n + j)
RealMatrix magic_rows(int n) {
    RealMatrix rows = RealMatrix::Zero(2 * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rows(i, i * n + j) = 1.0;       // row sums
            rows(n + j, i * n + j) = 1.0;   // column sums
        }
    return rows;
}

RealMatrix commutation_rows(const Graph& g) {
    const int n = g.n;
    RealMatrix rows = RealMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int r = i * n + j;
            for (int k = 0; k < n; ++k) {
                if (g.adjacency(j, k)) rows(r, i * n + k) += 1.0;
                if (g.adjacency(i, k)) rows(r, k * n + j) -= 1.0;
            }
        }
    return rows;
}

}  // namespace

AffineBlockParametrization qms_affine(int n, int s) {
    if (n < 2) throw std::invalid_argument("qms_affine: n must be >= 2");
    if (s < 1) throw std::invalid_argument("qms_affine: s must be >= 1");
    const int g0 = (n - 1) * (n - 1);
    AffineBlockParametrization out;
    out.n = n;
    out.s = s;
    out.provenance = PencilProvenance::PlainQms;
    out.particular_point = uniform_point(n, s);
    out.has_integer_form = true;
    out.alpha_int = Eigen::VectorXi::Zero(n * n);
    out.c_int = Eigen::MatrixXi::Zero(n * n, g0);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) out.independent_indices.emplace_back(i, j);
    for (int k = 0; k < n * n; ++k)
        if (k / n == n - 1 || k % n == n - 1) out.dependent_set.emplace_back(k / n, k % n);

    auto pidx = [&](int i, int j) { return i * (n - 1) + j; };
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            int row = k * n + l;
            if (k < n - 1 && l < n - 1) {
                out.c_int(row, pidx(k, l)) = 1;
            } else if (k < n - 1) {
                // last column: X_{k,n-1} = I - sum_j X_kj
                out.alpha_int(row) = 1;
                for (int j = 0; j < n - 1; ++j) out.c_int(row, pidx(k, j)) = -1;
            } else if (l < n - 1) {
                out.alpha_int(row) = 1;
                for (int i = 0; i < n - 1; ++i) out.c_int(row, pidx(i, l)) = -1;
            } else {
                out.alpha_int(row) = 2 - n;
                for (int p = 0; p < g0; ++p) out.c_int(row, p) = 1;
            }
            // the elimination is monic: n*alpha + sum c = 1 exactly
            long acc = static_cast<long>(n) * out.alpha_int(row);
            for (int p = 0; p < g0; ++p) acc += out.c_int(row, p);
            if (acc != 1) throw std::logic_error("qms_affine: monic identity violated");
        }
    out.d = out.c_int.cast<double>() / static_cast<double>(n);
    return out;
}

AffineBlockParametrization gqms_affine(const Graph& g, int s, PencilProvenance which) {
    if (!is_k_regular(g))
        throw std::invalid_argument("gqms_affine: graph must be k-regular");
    if (s < 1) throw std::invalid_argument("gqms_affine: s must be >= 1");
    const int n = g.n;

    RealMatrix rm = magic_rows(n);
    RealMatrix rc = commutation_rows(g);
    RealMatrix joint(rm.rows() + rc.rows(), n * n);
    joint << rm, rc;

    // sanity: the uniform point solves the full system (regularity enters here)
    RealVector unif = RealVector::Constant(n * n, 1.0 / n);
    RealVector rhs(joint.rows());
    rhs.head(rm.rows()).setOnes();
    rhs.tail(rc.rows()).setZero();
    if ((joint * unif - rhs).lpNorm<Eigen::Infinity>() > 1e-12)
        throw std::logic_error("gqms_affine: uniform point fails the affine system");

    RealMatrix nj = nullspace_real(joint);

    // two-step composition: solve commutation first, then restrict by magic
    RealMatrix nc = nullspace_real(rc);
    RealMatrix rn = rm * nc;
    RealMatrix ncomp = nc * nullspace_real(rn);

    if (nj.cols() != ncomp.cols())
        throw std::runtime_error("gqms_affine: joint-nullspace and composition "
                                 "parametrizations have different dimensions");
    RealMatrix resid = ncomp - nj * (nj.transpose() * ncomp);
    if (resid.norm() > 1e-8)
        throw std::runtime_error("gqms_affine: composed span deviates from the "
                                 "joint nullspace by " + std::to_string(resid.norm()));

    const RealMatrix& chosen =
        (which == PencilProvenance::GraphComposition) ? ncomp : nj;
    PencilProvenance prov = (which == PencilProvenance::GraphComposition)
                                ? PencilProvenance::GraphComposition
                                : PencilProvenance::GraphJointNullspace;
    return from_nullspace(g, s, chosen, prov);
}

namespace {

MonicPencil pencil_from_affine(const AffineBlockParametrization& a,
                               const std::string& graph_name) {
    MonicPencil p;
    p.n = a.n;
    p.s = a.s;
    p.graph_name = graph_name;
    p.labels = a.independent_indices;
    const Eigen::Index g0 = a.d.cols();
    for (Eigen::Index q = 0; q < g0; ++q)
        p.diag.push_back(a.n * a.d.col(q));   // B entries are n * d
    return p;
}

}  // namespace

MonicPencil monic_qms_pencil(int n, int s) {
    return pencil_from_affine(qms_affine(n, s), "none");
}

MonicPencil monic_gqms_pencil(const Graph& g, int s) {
    std::ostringstream name;
    name << "regular:" << g.n;
    return pencil_from_affine(gqms_affine(g, s), name.str());
}

PencilEvaluation evaluate_pencil(const MonicPencil& p,
                                 const std::vector<ComplexMatrix>& blocks) {
    if (blocks.size() != p.labels.size())
        throw std::invalid_argument("evaluate_pencil: block variable count mismatch");
    for (const ComplexMatrix& b : blocks)
        if (b.rows() != p.s || b.cols() != p.s)
            throw std::invalid_argument("evaluate_pencil: block size mismatch");
    const int n = p.n, s = p.s;
    PencilEvaluation out;
    out.value = ComplexMatrix::Identity(n * n * s, n * n * s);
    for (int slot = 0; slot < n * n; ++slot)
        for (size_t q = 0; q < blocks.size(); ++q)
            out.value.block(slot * s, slot * s, s, s) += p.diag[q](slot) * blocks[q];
    out.min_eig = min_eig(out.value);
    return out;
}

PencilEvaluation evaluate_pencil(const MonicPencil& p, const RealVector& y) {
    if (y.size() != p.scalar_vars())
        throw std::invalid_argument("evaluate_pencil: parameter count mismatch");
    std::vector<ComplexMatrix> blocks;
    for (int q = 0; q < p.block_vars(); ++q)
        blocks.push_back(her_from_coords(y.segment(q * p.s * p.s, p.s * p.s), p.s));
    return evaluate_pencil(p, blocks);
}

MembershipResult membership_test(const BlockMatrix& x, const Graph* g, double tol) {
    MembershipResult r;
    MagicReport rep = verify_magic(x, tol);
    bool comm = !g || graph_commutes(x, *g, tol).commutes;
    r.direct = rep.overall && comm;
    r.direct_min_eig = 1e300;
    for (double e : rep.block_min_eigs) r.direct_min_eig = std::min(r.direct_min_eig, e);

    MonicPencil p;
    try {
        p = g ? monic_gqms_pencil(*g, x.s) : monic_qms_pencil(x.n, x.s);
    } catch (const std::exception&) {
        // no pencil parametrization (e.g. non-regular graph): only the direct
        // route applies
        return r;
    }
    std::vector<ComplexMatrix> ys;
    for (auto [i, j] : p.labels)
        ys.push_back(static_cast<double>(x.n) * x.block(i, j) -
                     ComplexMatrix::Identity(x.s, x.s));
    PencilEvaluation ev = evaluate_pencil(p, ys);
    r.pencil_min_eig = ev.min_eig / x.n;

    double worst = 0.0;
    for (int k = 0; k < x.n; ++k)
        for (int l = 0; l < x.n; ++l) {
            ComplexMatrix rec =
                ev.value.block((k * x.n + l) * x.s, (k * x.n + l) * x.s, x.s, x.s) /
                static_cast<double>(x.n);
            worst = std::max(worst, (rec - x.block(k, l)).norm());
        }
    r.affine_residual = worst;
    r.affine_consistent = worst <= tol * 10;
    r.pencil = r.affine_consistent && ev.min_eig >= -tol * x.n;
    return r;
}

void export_sdpa(const MonicPencil& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_sdpa: cannot open " + path);
    const int n = p.n, s = p.s;
    const bool embed = s > 1;
    const int bs = embed ? 2 * n * n * s : n * n;
    out << "*gqms-spectra pencil n=" << n << " s=" << s << " graph=" << p.graph_name
        << "\n";
    if (embed) out << "*complex pencil exported via real embedding; dimension doubled\n";
    out << p.scalar_vars() << "\n";
    out << 1 << "\n";
    out << bs << "\n";
    for (int v = 0; v < p.scalar_vars(); ++v) out << (v ? " " : "") << "0.0";
    out << "\n";
    out.precision(17);
    for (int i = 1; i <= bs; ++i) out << "0 1 " << i << " " << i << " 1\n";
    std::vector<ComplexMatrix> basis = her_basis(s);
    int matno = 0;
    for (int q = 0; q < p.block_vars(); ++q) {
        ComplexMatrix bd = ComplexMatrix::Zero(n * n, n * n);
        for (int slot = 0; slot < n * n; ++slot) bd(slot, slot) = p.diag[q](slot);
        for (int k = 0; k < s * s; ++k) {
            ++matno;
            ComplexMatrix f = kron(bd, basis[k]);
            RealMatrix fr = embed ? real_embed(f) : f.real();
            for (Eigen::Index i = 0; i < fr.rows(); ++i)
                for (Eigen::Index j = i; j < fr.cols(); ++j)
                    if (fr(i, j) != 0.0)
                        out << matno << " 1 " << (i + 1) << " " << (j + 1) << " "
                            << fr(i, j) << "\n";
        }
    }
}

nlohmann::json pencil_to_json(const MonicPencil& p) {
    nlohmann::json vars = nlohmann::json::array();
    for (int q = 0; q < p.block_vars(); ++q)
        for (int k = 0; k < p.s * p.s; ++k) {
            nlohmann::json diag = nlohmann::json::array();
            for (Eigen::Index i = 0; i < p.diag[q].size(); ++i) diag.push_back(p.diag[q](i));
            vars.push_back({{"label", {p.labels[q].first, p.labels[q].second, k}},
                            {"diag", diag}});
        }
    return nlohmann::json{{"outer", p.outer_dim()},
                          {"n", p.n},
                          {"s", p.s},
                          {"graph", p.graph_name},
                          {"vars", vars}};
}

MonicPencil pencil_from_json(const nlohmann::json& j) {
    MonicPencil p;
    p.n = j.at("n").get<int>();
    p.s = j.at("s").get<int>();
    p.graph_name = j.at("graph").get<std::string>();
    if (j.at("outer").get<int>() != p.n * p.n)
        throw std::invalid_argument("pencil json: outer dimension mismatch");
    const nlohmann::json& vars = j.at("vars");
    const int per = p.s * p.s;
    if (vars.size() % per != 0)
        throw std::invalid_argument("pencil json: variable count not divisible by s^2");
    for (size_t v = 0; v < vars.size(); v += per) {
        const nlohmann::json& lab = vars.at(v).at("label");
        p.labels.emplace_back(lab.at(0).get<int>(), lab.at(1).get<int>());
        const nlohmann::json& diag = vars.at(v).at("diag");
        if (static_cast<int>(diag.size()) != p.n * p.n)
            throw std::invalid_argument("pencil json: diagonal length mismatch");
        RealVector d(p.n * p.n);
        for (int i = 0; i < p.n * p.n; ++i) d(i) = diag.at(i).get<double>();
        p.diag.push_back(d);
        for (int k = 0; k < per; ++k)
            if (vars.at(v + k).at("label").at(2).get<int>() != k)
                throw std::invalid_argument("pencil json: basis labels out of order");
    }
    return p;
}

}  // namespace gqms
