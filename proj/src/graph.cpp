#include "privgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace privgraph {

namespace {

void check_vertex(int v, int n, const char* role) {
  if (v < 0 || v >= n)
    throw std::invalid_argument(std::string(role) + " vertex " +
                                std::to_string(v) + " out of range [0, " +
                                std::to_string(n) + ")");
}

void check_weight(double w) {
  if (!std::isfinite(w))
    throw std::invalid_argument("edge weight must be finite");
}

}  // namespace

int64_t slot_count(int n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  return static_cast<int64_t>(n) * (n - 1) / 2;
}

edge_id edge_index(int u, int v, int n) {
  check_vertex(u, n, "first");
  check_vertex(v, n, "second");
  if (u == v) throw std::invalid_argument("self-loops are not representable");
  if (u > v) std::swap(u, v);
  const int64_t un = u;
  return un * n - un * (un + 1) / 2 + (v - u - 1);
}

std::pair<int, int> edge_endpoints(edge_id id, int n) {
  const int64_t total = slot_count(n);
  if (id < 0 || id >= total)
    throw std::invalid_argument("pair id " + std::to_string(id) +
                                " out of range [0, " + std::to_string(total) +
                                ")");
  // Row offset of u is u*n - u*(u+1)/2; invert the quadratic, then fix up.
  const double nn = static_cast<double>(n);
  int64_t u = static_cast<int64_t>(
      std::floor(nn - 0.5 - std::sqrt((nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(id))));
  u = std::clamp<int64_t>(u, 0, n - 2);
  auto offset = [&](int64_t x) { return x * n - x * (x + 1) / 2; };
  while (u > 0 && offset(u) > id) --u;
  while (u < n - 2 && offset(u + 1) <= id) ++u;
  const int64_t v = id - offset(u) + u + 1;
  return {static_cast<int>(u), static_cast<int>(v)};
}

graph::graph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
}

void graph::set_weight(int u, int v, double w) {
  check_weight(w);
  if (w < 0)
    throw std::invalid_argument("negative weight on an input graph");
  weights_[edge_index(u, v, n_)] = w;
}

void graph::set_weight_signed(int u, int v, double w) {
  check_weight(w);
  weights_[edge_index(u, v, n_)] = w;
}

void graph::set_weight_by_id(edge_id id, double w) {
  auto [u, v] = edge_endpoints(id, n_);
  set_weight(u, v, w);
}

void graph::set_weight_signed_by_id(edge_id id, double w) {
  auto [u, v] = edge_endpoints(id, n_);
  set_weight_signed(u, v, w);
}

double graph::weight(int u, int v) const {
  return weight_by_id(edge_index(u, v, n_));
}

double graph::weight_by_id(edge_id id) const {
  if (id < 0 || id >= slots())
    throw std::invalid_argument("pair id out of range");
  auto it = weights_.find(id);
  return it == weights_.end() ? 0.0 : it->second;
}

bool graph::has_slot(int u, int v) const {
  return weights_.count(edge_index(u, v, n_)) > 0;
}

int64_t graph::positive_count() const {
  int64_t c = 0;
  for (const auto& [id, w] : weights_)
    if (w > 0) ++c;
  return c;
}

double graph::weight_l1() const {
  double s = 0;
  for (const auto& [id, w] : weights_) s += std::abs(w);
  return s;
}

double graph::max_weight() const {
  double m = 0;
  for (const auto& [id, w] : weights_) m = std::max(m, w);
  return m;
}

bool graph::has_negative() const {
  for (const auto& [id, w] : weights_)
    if (w < 0) return true;
  return false;
}

std::vector<int> graph::unweighted_degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto& [id, w] : weights_) {
    auto [u, v] = edge_endpoints(id, n_);
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

int graph::max_unweighted_degree() const {
  const auto deg = unweighted_degrees();
  return *std::max_element(deg.begin(), deg.end());
}

std::vector<double> graph::weighted_degrees() const {
  std::vector<double> deg(n_, 0.0);
  for (const auto& [id, w] : weights_) {
    auto [u, v] = edge_endpoints(id, n_);
    deg[u] += w;
    deg[v] += w;
  }
  return deg;
}

graph complete_graph(int n, double w) {
  graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set_weight(u, v, w);
  return g;
}

graph graph_sum(const graph& a, const graph& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("graph_sum: vertex counts differ");
  graph out(a.n());
  for (const auto& [id, w] : a.stored()) out.set_weight_signed_by_id(id, w);
  for (const auto& [id, w] : b.stored())
    out.set_weight_signed_by_id(id, out.weight_by_id(id) + w);
  return out;
}

bool is_connected(const graph& g) {
  const int n = g.n();
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& [id, w] : g.stored()) {
    if (w <= 0) continue;
    auto [u, v] = edge_endpoints(id, n);
    int ru = find(u), rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

void validate_cut_query(const cut_query& q, int n) {
  std::vector<char> side(n, 0);
  for (int v : q.s) {
    check_vertex(v, n, "cut set S");
    if (side[v]) throw std::invalid_argument("duplicate vertex in cut query");
    side[v] = 1;
  }
  for (int v : q.t) {
    check_vertex(v, n, "cut set T");
    if (side[v] == 1)
      throw std::invalid_argument("cut query sides S and T overlap");
    if (side[v] == 2) throw std::invalid_argument("duplicate vertex in cut query");
    side[v] = 2;
  }
}

double cut_value(const graph& g, const cut_query& q) {
  const int n = g.n();
  validate_cut_query(q, n);
  std::vector<char> side(n, 0);
  for (int v : q.s) side[v] = 1;
  for (int v : q.t) side[v] = 2;
  double total = 0;
  for (const auto& [id, w] : g.stored()) {
    auto [u, v] = edge_endpoints(id, n);
    if (side[u] != 0 && side[v] != 0 && side[u] != side[v]) total += w;
  }
  return total;
}

double boundary_value(const graph& g, const std::vector<int>& s) {
  if (s.empty())
    throw std::invalid_argument("boundary_value: S must be nonempty");
  const int n = g.n();
  std::vector<char> in(n, 0);
  for (int v : s) {
    check_vertex(v, n, "boundary set");
    if (in[v]) throw std::invalid_argument("duplicate vertex in boundary set");
    in[v] = 1;
  }
  double total = 0;
  for (const auto& [id, w] : g.stored()) {
    auto [u, v] = edge_endpoints(id, n);
    if (in[u] != in[v]) total += w;
  }
  return total;
}

}  // namespace privgraph
