#include "gqms/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gqms {

Json matrix_to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw std::invalid_argument("matrix json: need rows/cols/data");
    Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const Json& data = j.at("data");
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw std::invalid_argument("matrix json: data length mismatch");
    ComplexMatrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jj = 0; jj < cols; ++jj, ++k) {
            const Json& e = data.at(k);
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix json: entries must be [re, im] pairs");
            m(i, jj) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    if (!is_finite(m)) throw std::invalid_argument("matrix json: non-finite entries");
    return m;
}

Json real_matrix_to_json(const RealMatrix& m) { return matrix_to_json(m.cast<Complex>()); }

Json block_matrix_to_json(const BlockMatrix& b) {
    Json rows = Json::array();
    for (int i = 0; i < b.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < b.n; ++j) row.push_back(matrix_to_json(b.block(i, j)));
        rows.push_back(row);
    }
    return Json{{"n", b.n}, {"s", b.s}, {"blocks", rows}};
}

BlockMatrix block_matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("s") || !j.contains("blocks"))
        throw std::invalid_argument("block matrix json: need n/s/blocks");
    int n = j.at("n").get<int>();
    int s = j.at("s").get<int>();
    if (n < 1 || s < 1) throw std::invalid_argument("block matrix json: need n, s >= 1");
    const Json& rows = j.at("blocks");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("block matrix json: wrong outer row count");
    BlockMatrix b(n, s);
    for (int i = 0; i < n; ++i) {
        const Json& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("block matrix json: wrong outer column count");
        for (int jj = 0; jj < n; ++jj) {
            ComplexMatrix blk = matrix_from_json(row.at(jj));
            if (blk.rows() != s || blk.cols() != s)
                throw std::invalid_argument("block matrix json: block size mismatch");
            b.block(i, jj) = blk;
        }
    }
    return b;
}

Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.adjacency(i, j)) edges.push_back({i, j});
    return Json{{"n", g.n}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph json: need n/edges");
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return from_edge_list(n, edges);
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace gqms
