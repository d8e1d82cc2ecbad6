#include "gqms/dilation.hpp"
#include "gqms/graph.hpp"
#include "gqms/json_io.hpp"
#include "gqms/magic.hpp"
#include "gqms/pencil.hpp"
#include "gqms/sdp.hpp"
#include "gqms/separation.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gqms;

PYBIND11_MODULE(_gqms, m) {
    m.doc() = "graph quantum magic squares: verification, pencils, separation";

    py::class_<Graph>(m, "Graph")
        .def_readonly("n", &Graph::n)
        .def_property_readonly("adjacency",
                               [](const Graph& g) { return g.adjacency_real(); });
    m.def("cycle", &cycle, py::arg("n"));
    m.def("complete", &complete, py::arg("n"));
    m.def("parse_graph_spec", &parse_graph_spec, py::arg("spec"));
    m.def("commutant_dimension", &commutant_dimension_spectral, py::arg("graph"));
    m.def("cycle_commutant_dim_formula", &cycle_commutant_dim_formula, py::arg("n"));

    py::class_<SdpOptions>(m, "SdpOptions")
        .def(py::init<>())
        .def_readwrite("feas_tol", &SdpOptions::feas_tol)
        .def_readwrite("gap_tol", &SdpOptions::gap_tol)
        .def_readwrite("max_iter", &SdpOptions::max_iter);

    py::class_<BlockMatrix>(m, "BlockMatrix")
        .def(py::init<int, int>(), py::arg("n"), py::arg("s"))
        .def_readonly("n", &BlockMatrix::n)
        .def_readonly("s", &BlockMatrix::s)
        .def("block",
             [](const BlockMatrix& b, int i, int j) -> ComplexMatrix {
                 if (i < 0 || i >= b.n || j < 0 || j >= b.n)
                     throw py::index_error("block index out of range");
                 return b.block(i, j);
             })
        .def("set_block",
             [](BlockMatrix& b, int i, int j, const ComplexMatrix& v) {
                 if (i < 0 || i >= b.n || j < 0 || j >= b.n)
                     throw py::index_error("block index out of range");
                 if (v.rows() != b.s || v.cols() != b.s)
                     throw py::value_error("block has wrong shape");
                 b.block(i, j) = v;
             })
        .def("to_json", [](const BlockMatrix& b) { return block_matrix_to_json(b).dump(); })
        .def_static("from_json", [](const std::string& text) {
            return block_matrix_from_json(Json::parse(text));
        });

    py::class_<MagicReport>(m, "MagicReport")
        .def_readonly("overall", &MagicReport::overall)
        .def_readonly("blocks_psd", &MagicReport::blocks_psd)
        .def_readonly("block_min_eigs", &MagicReport::block_min_eigs)
        .def_readonly("row_residuals", &MagicReport::row_residuals)
        .def_readonly("col_residuals", &MagicReport::col_residuals);

    py::class_<ClassFlags>(m, "ClassFlags")
        .def_readonly("in_M", &ClassFlags::in_M)
        .def_readonly("in_P", &ClassFlags::in_P)
        .def_readonly("in_C", &ClassFlags::in_C)
        .def_readonly("max_commutator_residual", &ClassFlags::max_commutator_residual);

    py::class_<GraphCommuteResult>(m, "GraphCommuteResult")
        .def_readonly("commutes", &GraphCommuteResult::commutes)
        .def_readonly("residual", &GraphCommuteResult::residual);

    m.def("verify_magic", &verify_magic, py::arg("x"), py::arg("tol") = 1e-9);
    m.def("classify", &classify, py::arg("x"), py::arg("tol") = 1e-9);
    m.def("from_permutation", &from_permutation, py::arg("sigma"), py::arg("s"));
    m.def("random_qms", &random_qms, py::arg("n"), py::arg("s"), py::arg("seed"));
    m.def("graph_commutes", &graph_commutes, py::arg("x"), py::arg("graph"),
          py::arg("tol") = 1e-9);
    m.def("group_average", &group_average, py::arg("x"), py::arg("perms"));
    m.def("z4_cycle_powers", &z4_cycle_powers);
    m.def("c4_automorphisms", &c4_automorphisms);
    m.def("matrix_convex_combine", &matrix_convex_combine, py::arg("squares"),
          py::arg("isometries"));

    py::class_<MembershipResult>(m, "MembershipResult")
        .def_readonly("direct", &MembershipResult::direct)
        .def_readonly("pencil", &MembershipResult::pencil)
        .def_readonly("affine_consistent", &MembershipResult::affine_consistent)
        .def_readonly("direct_min_eig", &MembershipResult::direct_min_eig)
        .def_readonly("pencil_min_eig", &MembershipResult::pencil_min_eig);
    m.def(
        "membership_test",
        [](const BlockMatrix& x, const Graph* g, double tol) {
            return membership_test(x, g, tol);
        },
        py::arg("x"), py::arg("graph") = nullptr, py::arg("tol") = 1e-8);

    py::class_<MonicPencil>(m, "MonicPencil")
        .def_readonly("n", &MonicPencil::n)
        .def_readonly("s", &MonicPencil::s)
        .def_readonly("graph_name", &MonicPencil::graph_name)
        .def_property_readonly("block_vars", &MonicPencil::block_vars)
        .def_property_readonly("scalar_vars", &MonicPencil::scalar_vars)
        .def("to_json", [](const MonicPencil& p) { return pencil_to_json(p).dump(); });
    m.def("monic_qms_pencil", &monic_qms_pencil, py::arg("n"), py::arg("s"));
    m.def("monic_gqms_pencil", &monic_gqms_pencil, py::arg("graph"), py::arg("s"));
    m.def(
        "evaluate_pencil",
        [](const MonicPencil& p, const RealVector& y) {
            PencilEvaluation e = evaluate_pencil(p, y);
            return py::make_tuple(e.value, e.min_eig);
        },
        py::arg("pencil"), py::arg("y"));
    m.def("export_sdpa", &export_sdpa, py::arg("pencil"), py::arg("path"));

    py::enum_<ZeVariant>(m, "ZeVariant")
        .value("row_only", ZeVariant::RowOnly)
        .value("row_and_col", ZeVariant::RowAndCol);

    py::class_<ZeBasis>(m, "ZeBasis")
        .def_readonly("n", &ZeBasis::n)
        .def_readonly("basis", &ZeBasis::basis)
        .def_property_readonly("dimension", &ZeBasis::dimension);
    m.def("ze_basis", &ze_basis, py::arg("n"), py::arg("variant"));

    py::class_<SeparationOperator>(m, "SeparationOperator")
        .def_readonly("n", &SeparationOperator::n)
        .def_readonly("s", &SeparationOperator::s)
        .def_readonly("phi", &SeparationOperator::phi)
        .def_readonly("psi", &SeparationOperator::psi)
        .def_readonly("M", &SeparationOperator::M)
        .def_property_readonly("alpha", &SeparationOperator::alpha)
        .def_property_readonly("beta", &SeparationOperator::beta)
        .def_property_readonly("gamma", &SeparationOperator::gamma);
    m.def("separation_operator", &separation_operator, py::arg("x"));

    py::class_<FeasibilityWitness>(m, "FeasibilityWitness")
        .def_readonly("feasible", &FeasibilityWitness::feasible)
        .def_readonly("min_eig", &FeasibilityWitness::min_eig)
        .def_readonly("X", &FeasibilityWitness::X);
    m.def("primal_feasibility", &primal_feasibility, py::arg("x"), py::arg("variant"),
          py::arg("options") = SdpOptions{});

    py::class_<DualCertificate>(m, "DualCertificate")
        .def_readonly("Y", &DualCertificate::Y)
        .def_readonly("objective", &DualCertificate::objective)
        .def_readonly("min_eig_Y", &DualCertificate::min_eig_Y)
        .def_readonly("trace_Y", &DualCertificate::trace_Y)
        .def_readonly("max_orthogonality_residual",
                      &DualCertificate::max_orthogonality_residual)
        .def_readonly("validated", &DualCertificate::validated);
    m.def("dual_certificate", &dual_certificate, py::arg("x"), py::arg("variant"),
          py::arg("options") = SdpOptions{});
    m.def(
        "revalidate_certificate",
        [](const BlockMatrix& b, DualCertificate& cert) {
            return revalidate_certificate(b, cert);
        },
        py::arg("b"), py::arg("certificate"));

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("found", &SearchResult::found)
        .def_readonly("best_square", &SearchResult::best_square)
        .def_readonly("certificate", &SearchResult::certificate)
        .def_readonly("best_objective", &SearchResult::best_objective)
        .def_readonly("seeds", &SearchResult::seeds)
        .def_readonly("candidates_evaluated", &SearchResult::candidates_evaluated);
    m.def("counterexample_search", &counterexample_search, py::arg("budget"),
          py::arg("seed"), py::arg("refine") = false,
          py::arg("options") = SdpOptions{});

    py::class_<DilationProbeResult>(m, "DilationProbeResult")
        .def_readonly("max_beta_norm", &DilationProbeResult::max_beta_norm)
        .def_readonly("best_direction", &DilationProbeResult::best_direction)
        .def_readonly("dilated", &DilationProbeResult::dilated)
        .def_readonly("extreme_evidence", &DilationProbeResult::extreme_evidence);
    m.def(
        "arveson_dilation_probe",
        [](const BlockMatrix& x, const Graph* g, int directions, std::uint64_t seed) {
            return arveson_dilation_probe(x, g, directions, seed);
        },
        py::arg("x"), py::arg("graph") = nullptr, py::arg("directions") = 20,
        py::arg("seed") = 0);
}
