#pragma once

#include "gqms/graph.hpp"
#include "gqms/magic.hpp"
#include "gqms/sdp.hpp"

#include <cstdint>
#include <vector>

namespace gqms {

struct DilationProbeResult {
    int directions = 0;
    double max_beta_norm = 0.0;     // largest ||beta||_F over all probes
    int best_direction = -1;
    BlockMatrix dilated;            // the dilated square realizing the max
    std::vector<SdpStatus> statuses;  // one per direction
    bool extreme_evidence = false;  // max <= 1e-6: only trivial dilations found
};

/// Single-row dilation probe: for each random direction E, maximize
/// Re<E, beta> over dilations [[X_ij, beta_ij], [beta_ij*, gamma_ij]] that
/// again form a magic square (and commute with the graph when one is given)
/// with PSD blocks. A maximum essentially at zero across directions is
/// numerical evidence that X admits only trivial dilations; a large maximum
/// returns the nontrivial dilation itself.
DilationProbeResult arveson_dilation_probe(const BlockMatrix& x, const Graph* g,
                                           int directions, std::uint64_t seed,
                                           const SdpOptions& opt = {});

}  // namespace gqms
