#pragma once

#include <string>

#include "walkspec/matrix_io.hpp"
#include "walkspec/ortho.hpp"

namespace support {

inline std::string fixture(const std::string& relative) { return std::string(WALKSPEC_FIXTURE_DIR) + "/" + relative; }

inline walkspec::Graph example1_graph() {
  return walkspec::Graph::from_adjacency(
      walkspec::parse_matrices(walkspec::read_text_file(fixture("example1/A.txt"))).at(0).matrix);
}

inline walkspec::RatRegOrtho example1_q(int which) {
  const auto m = walkspec::parse_matrices(
                     walkspec::read_text_file(fixture(which == 1 ? "example1/Q1.txt" : "example1/Q2.txt")))
                     .at(0);
  return walkspec::RatRegOrtho::make(m.matrix, m.scale);
}

}  // namespace support
