#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

namespace privgraph {

// Exact rational twin of the fixed-count sampler, for small N. Two routes to
// the same distribution are provided so they can be compared with exact
// equality: direct summation of the product measure, and the chain of
// conditional marginals the sampler walks. Intended for tests; slow.
using rational = boost::multiprecision::cpp_rational;

// Suffix success-count probabilities, exact. Row i, entry q is
// Pr[exactly q successes among coins i..N-1]; rows run i = 0..N.
std::vector<std::vector<rational>> exact_suffix_table(
    const std::vector<rational>& p, int k);

// Distribution over k-subsets by direct summation. Keys are bitmasks with
// bit i set when coin i succeeds; zero-probability subsets are omitted.
std::map<uint32_t, rational> exact_enumerate(const std::vector<rational>& p,
                                             int k);

// Probability that the sequential sampling chain emits each k-subset,
// multiplying exact conditional marginals step by step.
std::map<uint32_t, rational> exact_chain_distribution(
    const std::vector<rational>& p, int k);

}  // namespace privgraph
