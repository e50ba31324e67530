#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpea/errors.hpp"
#include "dpea/problems/knapsack.hpp"
#include "dpea/problems/shortest_path.hpp"
#include "dpea/problems/tsp.hpp"

namespace dpea::harness {

// Instance file formats:
//   knapsack  lines "weights ...", "profits ...", "capacity W" in any order
//   graph     header "n m", then m lines "u v w" (1-indexed vertices)
//   tsp       full n x n weight matrix, one row per line

inline problems::KnapsackInstance parse_knapsack(std::istream& in) {
    problems::KnapsackInstance inst;
    bool have_capacity = false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string field;
        if (!(ls >> field)) continue;
        if (field == "weights") {
            std::int64_t v;
            while (ls >> v) inst.weights.push_back(v);
        } else if (field == "profits") {
            std::int64_t v;
            while (ls >> v) inst.profits.push_back(v);
        } else if (field == "capacity") {
            if (!(ls >> inst.capacity)) throw ValidationError("knapsack file: bad capacity");
            have_capacity = true;
        } else {
            throw ValidationError("knapsack file: unknown field '" + field + "'");
        }
    }
    if (inst.weights.empty() || !have_capacity)
        throw ValidationError("knapsack file: missing fields");
    return inst;
}

inline void write_knapsack(std::ostream& out, const problems::KnapsackInstance& inst) {
    out << "weights";
    for (auto w : inst.weights) out << ' ' << w;
    out << "\nprofits";
    for (auto p : inst.profits) out << ' ' << p;
    out << "\ncapacity " << inst.capacity << '\n';
}

inline problems::GraphInstance parse_graph(std::istream& in) {
    problems::GraphInstance g;
    std::size_t m = 0;
    if (!(in >> g.n >> m)) throw ValidationError("graph file: bad header");
    g.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        problems::GraphInstance::Edge e;
        if (!(in >> e.u >> e.v >> e.w)) throw ValidationError("graph file: truncated edge list");
        g.edges.push_back(e);
    }
    return g;
}

inline void write_graph(std::ostream& out, const problems::GraphInstance& g) {
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

inline problems::TspInstance parse_tsp(std::istream& in) {
    problems::TspInstance inst;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::int64_t> row;
        std::int64_t v;
        while (ls >> v) row.push_back(v);
        if (row.empty()) continue;
        inst.weight.push_back(std::move(row));
    }
    inst.n = static_cast<int>(inst.weight.size());
    for (const auto& row : inst.weight)
        if (static_cast<int>(row.size()) != inst.n)
            throw ValidationError("tsp file: matrix is not square");
    return inst;
}

inline void write_tsp(std::ostream& out, const problems::TspInstance& inst) {
    for (const auto& row : inst.weight) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << '\n';
    }
}

template <typename Parse>
auto read_file(const std::string& path, Parse parse) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    return parse(in);
}

template <typename T, typename Write>
void write_file(const std::string& path, const T& value, Write write) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    write(out, value);
    if (!out) throw IoError("write failed for " + path);
}

inline problems::KnapsackInstance read_knapsack(const std::string& path) {
    return read_file(path, [](std::istream& in) { return parse_knapsack(in); });
}
inline problems::GraphInstance read_graph(const std::string& path) {
    return read_file(path, [](std::istream& in) { return parse_graph(in); });
}
inline problems::TspInstance read_tsp(const std::string& path) {
    return read_file(path, [](std::istream& in) { return parse_tsp(in); });
}

} // namespace dpea::harness
