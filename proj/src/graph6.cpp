#include <string>

#include "walkspec/error.hpp"
#include "walkspec/graph.hpp"

namespace walkspec {

namespace {

constexpr std::size_t kMaxGraph6Order = 258047;

}  // namespace

Graph parse_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw InputError("graph6: empty string");
  for (char c : text) {
    if (c < 63 || c > 126) throw InputError("graph6: character outside the printable range 63..126");
  }

  std::size_t pos = 0;
  std::size_t n = 0;
  if (text[0] != 126) {
    n = static_cast<std::size_t>(text[0] - 63);
    pos = 1;
  } else {
    if (text.size() < 4) throw InputError("graph6: truncated order header");
    if (text[1] == 126) throw InputError("graph6: orders above 258047 are not supported");
    for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | static_cast<std::size_t>(text[i] - 63);
    if (n < 63) throw InputError("graph6: long order header used for a small order");
    pos = 4;
  }

  const std::size_t bits = n * (n - (n ? 1 : 0)) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes) {
    throw InputError("graph6: expected " + std::to_string(bytes) + " data bytes for order " + std::to_string(n) +
                     ", found " + std::to_string(text.size() - pos));
  }

  Graph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.set_edge(i, j);
    }
  }
  for (; k < bytes * 6; ++k) {
    const int byte = text[pos + k / 6] - 63;
    if ((byte >> (5 - k % 6)) & 1) throw InputError("graph6: nonzero padding bits");
  }
  return g;
}

std::string emit_graph6(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kMaxGraph6Order) throw DomainError("graph6: order too large");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(static_cast<char>(126));
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

}  // namespace walkspec
