#include "gqms/dilation.hpp"

#include <doctest.h>

using namespace gqms;

TEST_CASE("zero probe directions are vacuous") {
    BlockMatrix uni(4, 2);
    for (auto& b : uni.blocks) b = 0.25 * ComplexMatrix::Identity(2, 2);
    DilationProbeResult r = arveson_dilation_probe(uni, nullptr, 0, 1);
    CHECK(r.max_beta_norm == 0.0);
    CHECK(r.best_direction == -1);
    CHECK(r.statuses.empty());
}

TEST_CASE("the uniform square dilates nontrivially") {
    BlockMatrix uni(4, 2);
    for (auto& b : uni.blocks) b = 0.25 * ComplexMatrix::Identity(2, 2);
    DilationProbeResult r = arveson_dilation_probe(uni, nullptr, 3, 7);
    CHECK(r.max_beta_norm > 0.01);
    CHECK(!r.extreme_evidence);
    REQUIRE(r.best_direction >= 0);

    // the exhibited dilation is itself a magic square with PSD blocks and
    // its top-left corners reproduce the input
    CHECK(r.dilated.s == 4);
    CHECK(verify_magic(r.dilated, 1e-7).overall);
    for (int kl = 0; kl < 16; ++kl)
        CHECK((r.dilated.blocks[kl].topLeftCorner(2, 2) - uni.blocks[kl]).norm() < 1e-12);
}

TEST_CASE("permutation squares admit only trivial dilations") {
    BlockMatrix perm = from_permutation({1, 2, 3, 0}, 2);
    DilationProbeResult r = arveson_dilation_probe(perm, nullptr, 6, 5);
    CHECK(r.max_beta_norm <= 1e-6);
    CHECK(r.extreme_evidence);

    Graph c4 = cycle(4);
    DilationProbeResult rg = arveson_dilation_probe(perm, &c4, 6, 5);
    CHECK(rg.max_beta_norm <= 1e-6);
    CHECK(rg.extreme_evidence);
}

TEST_CASE("non-members are rejected up front") {
    BlockMatrix bad(4, 2);
    for (auto& b : bad.blocks) b = 0.5 * ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(arveson_dilation_probe(bad, nullptr, 1, 1), std::invalid_argument);
}
