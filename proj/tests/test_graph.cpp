#include "gqms/graph.hpp"

#include <doctest.h>

using namespace gqms;

TEST_CASE("graph families") {
    Graph c4 = cycle(4);
    for (int i = 0; i < 4; ++i) {
        CHECK(c4.adjacency(i, (i + 1) % 4) == 1);
        CHECK(c4.adjacency(i, (i + 3) % 4) == 1);
        CHECK(c4.adjacency(i, i) == 0);
    }
    Graph k4 = complete(4);
    CHECK((k4.adjacency_real() -
           (RealMatrix::Ones(4, 4) - RealMatrix::Identity(4, 4))).norm() == 0.0);

    Graph u = disjoint_union(cycle(3), cycle(3));
    CHECK(u.n == 6);
    CHECK(is_k_regular(u).value() == 2);
    CHECK(connected_components(u).component_count == 2);

    CHECK_THROWS(cycle(2));
    CHECK_THROWS(from_edge_list(3, {{0, 0}}));
    CHECK_THROWS(from_edge_list(3, {{0, 5}}));
}

TEST_CASE("regularity and components") {
    CHECK(is_k_regular(cycle(5)).value() == 2);
    CHECK(connected_components(cycle(5)).component_count == 1);

    Graph path = from_edge_list(3, {{0, 1}, {1, 2}});
    CHECK(!is_k_regular(path).has_value());

    ComponentDecomposition cd = connected_components(disjoint_union(cycle(3), cycle(4)));
    CHECK(cd.component_count == 2);
    CHECK(cd.indicators[0].sum() == doctest::Approx(3.0));
    CHECK(cd.indicators[1].sum() == doctest::Approx(4.0));
}

TEST_CASE("commutant dimensions: spectral, nullspace, closed form") {
    for (int n = 3; n <= 12; ++n) {
        Graph g = cycle(n);
        int spectral = commutant_dimension_spectral(g);
        CommutantBasis basis = commutant_basis(g);
        CHECK(spectral == cycle_commutant_dim_formula(n));
        CHECK(basis.dimension == spectral);
    }
    CHECK(cycle_commutant_dim_formula(3) == 5);
    CHECK(cycle_commutant_dim_formula(4) == 6);
    CHECK(cycle_commutant_dim_formula(8) == 14);
    CHECK(commutant_dimension_spectral(cycle(4)) == 6);
    CHECK(commutant_dimension_spectral(cycle(5)) == 9);
    CHECK(commutant_dimension_spectral(complete(4)) == 10);
}

TEST_CASE("commutant basis properties") {
    Graph k2 = complete(2);
    CHECK(commutant_basis(k2).dimension == 2);

    Graph c4 = cycle(4);
    CommutantBasis cb = commutant_basis(c4);
    REQUIRE(cb.dimension == 6);
    RealMatrix a = c4.adjacency_real();
    for (const ComplexMatrix& e : cb.basis)
        CHECK((a.cast<Complex>() * e - e * a.cast<Complex>()).norm() <=
              1e-9 * a.norm() * e.norm());
    // orthonormal in the trace inner product
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            Complex ip = (cb.basis[i].adjoint() * cb.basis[j]).trace();
            CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    // all circulants lie in the span
    ComplexMatrix shift = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) shift((i + 1) % 4, i) = 1;
    for (int pw = 0; pw < 4; ++pw) {
        ComplexMatrix c = ComplexMatrix::Identity(4, 4);
        for (int k = 0; k < pw; ++k) c = shift * c;
        ComplexMatrix proj = ComplexMatrix::Zero(4, 4);
        for (const ComplexMatrix& e : cb.basis) proj += (e.adjoint() * c).trace() * e;
        CHECK((proj - c).norm() < 1e-10);
    }

    CHECK(commutant_basis(disjoint_union(cycle(3), cycle(3))).dimension == 20);
}

TEST_CASE("graph spec parsing") {
    CHECK(parse_graph_spec("cycle:7").n == 7);
    CHECK(parse_graph_spec("complete:5").adjacency.sum() == 20);
    Graph u = parse_graph_spec("union:cycle:3+cycle:3");
    CHECK(u.n == 6);
    CHECK_THROWS(parse_graph_spec("tree:3"));
    CHECK_THROWS(parse_graph_spec("cycle"));
}
