#include "privgraph/graph_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "privgraph/errors.hpp"

namespace privgraph {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_vertex(const std::string& tok, int line_no) {
  size_t used = 0;
  int v;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw parse_error("expected a vertex index, got '" + tok + "'", line_no);
  }
  if (used != tok.size()) {
    throw parse_error("trailing characters in vertex index '" + tok + "'",
                      line_no);
  }
  return v;
}

}  // namespace

graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open '" + path + "'", 0);
  }

  std::optional<graph> g;
  bool signed_weights = false;
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (strip(line.substr(1)) == "signed-weights") {
        if (g.has_value()) {
          throw parse_error("signed-weights marker must precede the header",
                            line_no);
        }
        signed_weights = true;
      }
      continue;
    }

    std::istringstream fields(line);
    std::string tok_a, tok_b, tok_c, extra;
    fields >> tok_a >> tok_b;

    if (!g.has_value()) {
      if (tok_a != "n" || tok_b.empty()) {
        throw parse_error("expected header 'n <count>'", line_no);
      }
      if (fields >> extra) {
        throw parse_error("trailing characters after header", line_no);
      }
      const int n = parse_vertex(tok_b, line_no);
      if (n < 1) {
        throw parse_error("vertex count must be at least 1", line_no);
      }
      g.emplace(n);
      continue;
    }

    fields >> tok_c;
    if (tok_b.empty() || tok_c.empty()) {
      throw parse_error("expected 'u v weight'", line_no);
    }
    if (fields >> extra) {
      throw parse_error("trailing characters after edge", line_no);
    }
    const int u = parse_vertex(tok_a, line_no);
    const int v = parse_vertex(tok_b, line_no);
    if (u == v) {
      throw parse_error("self-loops are not allowed", line_no);
    }
    if (u < 0 || v < 0 || u >= g->n() || v >= g->n()) {
      throw parse_error("vertex out of range", line_no);
    }

    // strtod instead of std::stod: stod throws out_of_range on subnormal
    // weights, which save_graph legitimately writes.
    char* end = nullptr;
    const double w = std::strtod(tok_c.c_str(), &end);
    if (end == tok_c.c_str()) {
      throw parse_error("expected a weight, got '" + tok_c + "'", line_no);
    }
    if (*end != '\0') {
      throw parse_error("trailing characters in weight '" + tok_c + "'",
                        line_no);
    }
    if (!std::isfinite(w)) {
      throw parse_error("weight must be finite", line_no);
    }
    if (w < 0.0 && !signed_weights) {
      throw parse_error("negative weight without signed-weights marker",
                        line_no);
    }
    if (g->has_slot(u, v)) {
      throw parse_error("duplicate pair", line_no);
    }
    g->set_weight_signed(u, v, w);
  }

  if (!g.has_value()) {
    throw parse_error("missing header 'n <count>'", line_no);
  }
  return *g;
}

void save_graph(const graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_graph: cannot open '" + path + "'");
  }
  if (g.has_negative()) {
    out << "# signed-weights\n";
  }
  out << "n " << g.n() << "\n";
  char buf[64];
  for (const auto& [e, w] : g.stored()) {
    const auto [u, v] = edge_endpoints(e, g.n());
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    out << u << " " << v << " " << buf << "\n";
  }
  if (!out) {
    throw std::runtime_error("save_graph: write failed for '" + path + "'");
  }
}

}  // namespace privgraph
