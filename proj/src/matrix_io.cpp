#include "walkspec/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "walkspec/error.hpp"

namespace walkspec {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Line> meaningful_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view raw = text.substr(0, end);
    text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
    ++number;
    const std::string_view t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    out.push_back({number, std::string(t)});
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

Integer parse_integer(const std::string& token, std::size_t line) {
  Integer x;
  if (token.empty() || x.set_str(token, 10) != 0) fail(line, "not an integer: '" + token + "'");
  return x;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

std::size_t parse_count(const std::string& token, std::size_t line) {
  const Integer x = parse_integer(token, line);
  if (x < 0 || x > 100000) fail(line, "dimension out of range: " + token);
  return x.get_ui();
}

}  // namespace

std::vector<ScaledMatrix> parse_matrices(std::string_view text) {
  const std::vector<Line> lines = meaningful_lines(text);
  std::vector<ScaledMatrix> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& header = lines[i++];
    std::vector<std::string> h = tokens(header.text);
    ScaledMatrix sm;
    if (h.size() >= 2 && h[h.size() - 2] == "/") {
      sm.scale = parse_integer(h.back(), header.number);
      if (sm.scale <= 0) fail(header.number, "scale must be positive");
      h.resize(h.size() - 2);
    }
    std::size_t rows = 0, cols = 0;
    if (h.size() == 1) {
      rows = cols = parse_count(h[0], header.number);
    } else if (h.size() == 2) {
      rows = parse_count(h[0], header.number);
      cols = parse_count(h[1], header.number);
    } else {
      fail(header.number, "expected a header 'n' or 'rows cols' optionally followed by '/ scale'");
    }
    std::vector<Integer> entries;
    entries.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (i >= lines.size()) fail(header.number, "matrix ends after " + std::to_string(r) + " of " + std::to_string(rows) + " rows");
      const Line& row = lines[i++];
      const std::vector<std::string> t = tokens(row.text);
      if (t.size() != cols) {
        fail(row.number, "expected " + std::to_string(cols) + " entries, found " + std::to_string(t.size()));
      }
      for (const auto& tok : t) entries.push_back(parse_integer(tok, row.number));
    }
    sm.matrix = IntMatrix(rows, cols, std::move(entries));
    out.push_back(std::move(sm));
  }
  return out;
}

std::string format_matrix(const IntMatrix& m, const Integer& scale) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols();
  if (scale != 1) os << " / " << scale;
  os << '\n' << m;
  return os.str();
}

std::vector<NamedGraph> parse_graphs(std::string_view text, GraphFormat format) {
  const std::vector<Line> lines = meaningful_lines(text);
  if (lines.empty()) return {};
  if (format == GraphFormat::Auto) {
    const std::string& first = lines.front().text;
    const bool numeric = first.find_first_not_of("0123456789 \t") == std::string::npos;
    format = numeric ? GraphFormat::Adjacency : GraphFormat::Graph6;
  }
  std::vector<NamedGraph> out;
  if (format == GraphFormat::Graph6) {
    for (const auto& line : lines) {
      try {
        out.push_back({parse_graph6(line.text), line.number});
      } catch (const Error& e) {
        fail(line.number, e.what());
      }
    }
    return out;
  }
  // Re-parse with the matrix reader, keeping the header line numbers.
  std::size_t i = 0;
  for (const auto& sm : parse_matrices(text)) {
    const std::size_t line = lines[i].number;
    if (sm.scale != 1) fail(line, "adjacency matrices take no scale");
    try {
      out.push_back({Graph::from_adjacency(sm.matrix), line});
    } catch (const DomainError& e) {
      fail(line, e.what());
    }
    i += 1 + sm.matrix.rows();
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace walkspec
