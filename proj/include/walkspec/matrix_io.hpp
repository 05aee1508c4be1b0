#pragma once

// Text formats for integer matrices and graphs.
//
// Integer matrix: a header line "n" (square) or "rows cols", optionally
// followed by "/ d" to say the stored integers are d times the intended
// rational matrix, then one line per row of whitespace-separated integers.
// Lines starting with '#' and blank lines are ignored; several matrices may
// follow each other in one file.
//
// Adjacency format: the same layout with 0/1 entries and no scale.
//
// Graph input: either adjacency matrices or graph6, one graph per line. The
// format is detected from the first non-comment line.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "walkspec/exact.hpp"
#include "walkspec/graph.hpp"

namespace walkspec {

struct ScaledMatrix {
  IntMatrix matrix;
  Integer scale = 1;  // matrix = scale * (rational matrix)
};

std::vector<ScaledMatrix> parse_matrices(std::string_view text);
std::string format_matrix(const IntMatrix& m, const Integer& scale = 1);

enum class GraphFormat { Auto, Graph6, Adjacency };

struct NamedGraph {
  Graph graph;
  std::size_t line = 0;  // 1-based line where the graph starts
};

std::vector<NamedGraph> parse_graphs(std::string_view text, GraphFormat format = GraphFormat::Auto);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace walkspec
