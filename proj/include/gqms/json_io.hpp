#pragma once

#include "gqms/graph.hpp"
#include "gqms/magic.hpp"

#include <string>

// vendored single-header nlohmann/json
#include <json.hpp>

namespace gqms {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json real_matrix_to_json(const RealMatrix& m);

Json block_matrix_to_json(const BlockMatrix& b);
BlockMatrix block_matrix_from_json(const Json& j);

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json load_json(const std::string& path);
void save_json(const Json& j, const std::string& path);

}  // namespace gqms
