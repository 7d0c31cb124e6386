#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace privgraph {

// Identifier of an undirected vertex pair {u, v}, u < v, in lexicographic
// order: id = u*n - u*(u+1)/2 + (v - u - 1). Ranges over [0, n*(n-1)/2).
using edge_id = int64_t;

// Number of distinct vertex pairs on n vertices.
int64_t slot_count(int n);

edge_id edge_index(int u, int v, int n);

// Inverse of edge_index.
std::pair<int, int> edge_endpoints(edge_id id, int n);

// Weighted undirected graph on vertices {0, ..., n-1} with no self-loops,
// stored as a sparse map from pair id to weight. An explicitly stored zero
// weight is distinct from an absent pair: stored slots count toward
// unweighted degrees, absent slots read as weight 0.
//
// set_weight enforces non-negative weights, which is the contract for input
// graphs. Synthetic outputs of noise-adding mechanisms may carry negative
// weights; those are written through set_weight_signed.
class graph {
 public:
  explicit graph(int n);

  int n() const { return n_; }
  int64_t slots() const { return slot_count(n_); }

  void set_weight(int u, int v, double w);
  void set_weight_signed(int u, int v, double w);
  void set_weight_by_id(edge_id id, double w);
  void set_weight_signed_by_id(edge_id id, double w);

  // Weight of the pair; 0 for absent slots.
  double weight(int u, int v) const;
  double weight_by_id(edge_id id) const;
  bool has_slot(int u, int v) const;

  const std::map<edge_id, double>& stored() const { return weights_; }

  // Number of strictly positive weights.
  int64_t positive_count() const;
  // Sum of |w| over stored slots.
  double weight_l1() const;
  double max_weight() const;
  bool has_negative() const;

  // Degree counting stored incident slots, including explicit zeros.
  int max_unweighted_degree() const;
  std::vector<int> unweighted_degrees() const;
  // Per-vertex sums of incident weights.
  std::vector<double> weighted_degrees() const;

 private:
  int n_;
  std::map<edge_id, double> weights_;
};

graph complete_graph(int n, double w);

// Coordinatewise sum of the weight vectors; both graphs must have the same n.
graph graph_sum(const graph& a, const graph& b);

// Connectivity of the subgraph of strictly positive weights. Graphs with
// fewer than two vertices are connected.
bool is_connected(const graph& g);

// Disjoint vertex sets for cut queries. Entries must be valid vertices with
// no duplicates; s and t must not intersect.
struct cut_query {
  std::vector<int> s;
  std::vector<int> t;
};

// Throws std::invalid_argument if the query is malformed for an n-vertex
// graph. Empty sides are permitted.
void validate_cut_query(const cut_query& q, int n);

// Total weight crossing between q.s and q.t.
double cut_value(const graph& g, const cut_query& q);

// Total weight leaving s, i.e. the cut between s and its complement.
// s must be nonempty.
double boundary_value(const graph& g, const std::vector<int>& s);

}  // namespace privgraph
