// gqms: command-line surface over the graph-quantum-magic-square library.
// Exit codes: 0 pass, 1 semantic failure (invalid input object / infeasible /
// nothing found), 2 usage or malformed input.

#include "gqms/dilation.hpp"
#include "gqms/graph.hpp"
#include "gqms/json_io.hpp"
#include "gqms/magic.hpp"
#include "gqms/pencil.hpp"
#include "gqms/sdp.hpp"
#include "gqms/separation.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace gqms;

namespace {

double default_tol() {
    if (const char* env = std::getenv("GQMS_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("GQMS_TOL is not a number");
        }
    }
    return 1e-9;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_verify(const std::string& in, const std::string& graph_spec, double tol) {
    BlockMatrix x = block_matrix_from_json(load_json(in));
    MagicReport mr = verify_magic(x, tol);
    ClassFlags cf = classify(x, tol);

    Json out;
    out["magic"] = {{"overall", mr.overall},
                    {"blocks_psd", mr.blocks_psd},
                    {"block_min_eigs", mr.block_min_eigs},
                    {"row_residuals", mr.row_residuals},
                    {"col_residuals", mr.col_residuals},
                    {"tolerance", mr.tolerance}};
    out["class"] = {{"in_M", cf.in_M},
                    {"in_P", cf.in_P},
                    {"in_C", cf.in_C},
                    {"projection_residuals", cf.projection_residuals},
                    {"max_commutator_residual", cf.max_commutator_residual}};
    bool pass = mr.overall;
    if (!graph_spec.empty()) {
        Graph g = parse_graph_spec(graph_spec);
        if (g.n != x.n)
            throw std::invalid_argument("graph order does not match the square");
        GraphCommuteResult gc = graph_commutes(x, g, tol);
        out["graph"] = {{"spec", graph_spec},
                        {"commutes", gc.commutes},
                        {"residual", gc.residual}};
        pass = pass && gc.commutes;
    }
    emit(out);
    return pass ? 0 : 1;
}

int run_commutant(const std::string& graph_spec) {
    Graph g = parse_graph_spec(graph_spec);
    CommutantBasis cb = commutant_basis(g);
    ComponentDecomposition comp = connected_components(g);

    Json out;
    out["spectral_dimension"] = commutant_dimension_spectral(g);
    out["nullspace_dimension"] = cb.dimension;
    if (graph_spec.rfind("cycle:", 0) == 0)
        out["cycle_formula"] = cycle_commutant_dim_formula(g.n);
    out["components"] = comp.component_count;
    try {
        AffineBlockParametrization aff = gqms_affine(g, 1);
        out["independent_parameters"] = static_cast<int>(aff.independent_indices.size());
    } catch (const std::exception& e) {
        out["independent_parameters"] = nullptr;
        out["parameter_note"] = e.what();
    }
    emit(out);
    return 0;
}

int run_pencil(const std::string& graph_spec, int n, int s, const std::string& format,
               const std::string& out_path) {
    MonicPencil p;
    if (!graph_spec.empty()) {
        p = monic_gqms_pencil(parse_graph_spec(graph_spec), s);
    } else {
        if (n < 2) throw std::invalid_argument("pencil: provide --graph or --n >= 2");
        p = monic_qms_pencil(n, s);
    }

    // the magic relations hold identically in the parameters exactly when
    // every variable's diagonal has vanishing row and column sums over the
    // n x n grid of slots
    double worst = 0.0;
    for (const RealVector& d : p.diag)
        for (int i = 0; i < p.n; ++i) {
            double rs = 0.0, cs = 0.0;
            for (int j = 0; j < p.n; ++j) {
                rs += d(i * p.n + j);
                cs += d(j * p.n + i);
            }
            worst = std::max({worst, std::abs(rs), std::abs(cs)});
        }

    if (format == "sdpa")
        export_sdpa(p, out_path);
    else if (format == "json")
        save_json(pencil_to_json(p), out_path);
    else
        throw std::invalid_argument("pencil: format must be sdpa or json");

    Json out;
    out["variables"] = p.scalar_vars();
    out["block_variables"] = p.block_vars();
    out["outer_dimension"] = p.outer_dim();
    out["monic_identity_ok"] = worst <= 1e-12;
    out["monic_identity_residual"] = worst;
    out["out"] = out_path;
    emit(out);
    return worst <= 1e-12 ? 0 : 1;
}

int run_counterexample(int budget, std::uint64_t seed, const std::string& out_path,
                       const std::string& variant, bool refine, int jobs) {
    if (jobs < 1) throw std::invalid_argument("counterexample: --jobs >= 1");
    if (ze_variant_from_string(variant) != ZeVariant::RowOnly)
        throw std::invalid_argument(
            "counterexample: only the row_only orthogonality variant is supported");
    SearchResult r = counterexample_search(budget, seed, refine);

    Json out;
    out["found"] = r.found;
    out["candidates_evaluated"] = r.candidates_evaluated;
    out["seeds"] = r.seeds;
    if (r.best_square.n > 0) {
        out["best_objective"] = r.best_objective;
        if (!out_path.empty())
            save_json(certificate_to_json(r.best_square, r.certificate), out_path);
    }
    emit(out);
    return r.found ? 0 : 1;
}

int run_certify(const std::string& path) {
    Json j = load_json(path);
    auto [b, cert] = certificate_from_json(j);
    bool ok = revalidate_certificate(b, cert);
    double claimed = j.at("objective").get<double>();
    bool matches = std::abs(claimed - cert.objective) <= 1e-8 * (1.0 + std::abs(claimed));
    bool separating = cert.objective <= -1e-6;

    Json out;
    out["validated"] = ok;
    out["objective"] = cert.objective;
    out["claimed_objective"] = claimed;
    out["objective_matches"] = matches;
    out["separating"] = separating;
    out["min_eig_Y"] = cert.min_eig_Y;
    out["trace_Y"] = cert.trace_Y;
    out["orthogonality_residual"] = cert.max_orthogonality_residual;
    emit(out);
    return (ok && matches && separating) ? 0 : 1;
}

int run_average(const std::string& in, const std::string& group,
                const std::string& out_path) {
    if (group != "c4" && group != "z4")
        throw std::invalid_argument("average: --group must be c4 (cyclic) for now");
    BlockMatrix x = block_matrix_from_json(load_json(in));
    if (x.n != 4) throw std::invalid_argument("average: the cyclic twirl needs n=4");
    Graph g = cycle(4);
    GraphCommuteResult before = graph_commutes(x, g, 1e-9);
    BlockMatrix avg = group_average(x, z4_cycle_powers());
    GraphCommuteResult after = graph_commutes(avg, g, 1e-9);
    if (!out_path.empty()) save_json(block_matrix_to_json(avg), out_path);

    Json out;
    out["pre_commutation_residual"] = before.residual;
    out["post_commutation_residual"] = after.residual;
    out["out"] = out_path;
    emit(out);
    return 0;
}

int run_random(int n, int s, std::uint64_t seed, const std::string& out_path) {
    BlockMatrix x = random_qms(n, s, seed);
    Json j = block_matrix_to_json(x);
    if (!out_path.empty())
        save_json(j, out_path);
    else
        emit(j);
    return 0;
}

// the repo's SDPA reading: "matno 0" carries the constant term F0 and the
// feasibility/optimization problem is F0 + sum x_i F_i >= 0, minimize c.x
int run_sdp_solve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::string line;
    std::vector<std::string> header;
    while (header.size() < 4 && std::getline(in, line)) {
        if (line.empty() || line[0] == '*' || line[0] == '"') continue;
        header.push_back(line);
    }
    if (header.size() < 4) throw std::invalid_argument("truncated SDPA file");
    int m = std::stoi(header[0]);
    int nblocks = std::stoi(header[1]);
    if (nblocks != 1) throw std::invalid_argument("only single-block SDPA supported");
    int bs = std::stoi(header[2]);
    RealVector c(m);
    {
        std::istringstream obj(header[3]);
        for (int i = 0; i < m; ++i)
            if (!(obj >> c(i))) throw std::invalid_argument("short objective line");
    }
    LmiProblem lmi;
    lmi.F0 = RealMatrix::Zero(bs, bs);
    lmi.F.assign(m, RealMatrix::Zero(bs, bs));
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '*') continue;
        std::istringstream ls(line);
        int matno, block, i, j;
        double v;
        if (!(ls >> matno >> block >> i >> j >> v)) continue;
        if (matno < 0 || matno > m || block != 1 || i < 1 || j < 1 || i > bs || j > bs)
            throw std::invalid_argument("bad SDPA entry: " + line);
        RealMatrix& f = matno == 0 ? lmi.F0 : lmi.F[matno - 1];
        f(i - 1, j - 1) = v;
        f(j - 1, i - 1) = v;
    }
    lmi.c = -c;   // file minimizes, the LMI solver maximizes

    LmiSolution s = solve_lmi(lmi);
    Json out;
    out["status"] = to_string(s.status);
    out["objective"] = -s.objective;
    out["min_eig"] = s.min_eig;
    out["iterations"] = s.iterations;
    emit(out);
    return s.status == SdpStatus::Optimal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph quantum magic squares toolkit"};
    app.require_subcommand(1);

    std::string in, out, graph_spec, format = "sdpa", variant = "row_only", group = "c4";
    std::string sdpa_path, cert_path;
    int n = 0, s = 1, budget = 50, jobs = 1;
    std::uint64_t seed = 0;
    std::optional<double> tol_flag;
    bool refine = false;

    auto* verify = app.add_subcommand("verify", "check the magic relations");
    verify->add_option("--in", in, "block matrix JSON")->required();
    verify->add_option("--graph", graph_spec, "graph spec, e.g. cycle:4");
    verify->add_option("--tol", tol_flag, "residual tolerance");

    auto* commutant = app.add_subcommand("commutant", "graph commutant dimensions");
    commutant->add_option("--graph", graph_spec, "graph spec")->required();

    auto* pencil = app.add_subcommand("pencil", "export a monic pencil");
    pencil->add_option("--graph", graph_spec, "graph spec (omit for the plain square)");
    pencil->add_option("--n", n, "order for the plain pencil");
    pencil->add_option("--s", s, "inner block dimension")->required();
    pencil->add_option("--format", format, "sdpa or json");
    pencil->add_option("--out", out, "output path")->required();

    auto* cx = app.add_subcommand("counterexample", "certified separation search");
    cx->add_option("--budget", budget, "candidate count")->required();
    cx->add_option("--seed", seed, "master seed")->required();
    cx->add_option("--out", out, "certificate JSON path");
    cx->add_option("--variant", variant, "orthogonality variant");
    cx->add_flag("--refine", refine, "local refinement around candidates");
    cx->add_option("--jobs", jobs, "worker count (evaluation is sequential)");

    auto* certify = app.add_subcommand("certify", "re-validate a certificate");
    certify->add_option("--check", cert_path, "certificate JSON")->required();

    auto* average = app.add_subcommand("average", "cyclic group twirl");
    average->add_option("--in", in, "block matrix JSON")->required();
    average->add_option("--group", group, "group name (c4)");
    average->add_option("--out", out, "output path");

    auto* random = app.add_subcommand("random", "seeded random magic square");
    random->add_option("--n", n, "order")->required();
    random->add_option("--s", s, "inner block dimension")->required();
    random->add_option("--seed", seed, "seed")->required();
    random->add_option("--out", out, "output path (stdout when omitted)");

    auto* sdp = app.add_subcommand("sdp", "standalone SDP runs");
    auto* sdp_solve = sdp->add_subcommand("solve", "solve an SDPA .dat-s file");
    sdp_solve->add_option("file", sdpa_path, "SDPA sparse input")->required();
    sdp->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        double tol = tol_flag ? *tol_flag : default_tol();
        if (verify->parsed()) return run_verify(in, graph_spec, tol);
        if (commutant->parsed()) return run_commutant(graph_spec);
        if (pencil->parsed()) return run_pencil(graph_spec, n, s, format, out);
        if (cx->parsed()) return run_counterexample(budget, seed, out, variant, refine, jobs);
        if (certify->parsed()) return run_certify(cert_path);
        if (average->parsed()) return run_average(in, group, out);
        if (random->parsed()) return run_random(n, s, seed, out);
        if (sdp->parsed()) return run_sdp_solve(sdpa_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
