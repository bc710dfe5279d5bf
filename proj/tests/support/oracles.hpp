#pragma once

// Reference implementations used only by the tests. They work on plain
// nested vectors and never call into the library's numerical code.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "walkrank/bipartite.hpp"
#include "walkrank/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Vector = std::vector<double>;
using walkrank::NodeId;

Matrix zeros(std::size_t rows, std::size_t cols);
Matrix identity(std::size_t n);
Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, const Vector& x);

/// Gaussian elimination with partial pivoting; throws on a singular system.
Vector solve(Matrix a, Vector b);
Matrix solve(Matrix a, Matrix b);

/// Dense adjacency from the edge list.
Matrix adjacency(const walkrank::DirectedGraph& g);
/// Row-normalized adjacency; zero rows become uniform 1/N.
Matrix transition(const walkrank::DirectedGraph& g);

/// (1 - alpha) (I - alpha P^T)^-1 v
Vector pagerank(const Matrix& p, double alpha, const Vector& v);

/// Stationary distribution of an irreducible stochastic P from the linear
/// system pi (I - P) = 0 with sum(pi) = 1.
Vector stationary(const Matrix& p);

/// Passing probabilities by enumerating every walk from every start.
Matrix dag_passing(const walkrank::DirectedGraph& g);

struct AbsorptionCounts {
  /// counts[t][s]: walks from transient t that ended in sink s.
  std::vector<std::vector<std::size_t>> counts;
  std::size_t walks_per_start = 0;
};

/// Simulates `walks` walks from each transient node until a sink is hit.
AbsorptionCounts simulate_absorption(const Matrix& p, const std::vector<NodeId>& sinks,
                                     std::size_t walks, std::uint64_t seed);
/// Same, from the listed transient `starts` only; counts follow their order.
AbsorptionCounts simulate_absorption(const Matrix& p, const std::vector<NodeId>& sinks,
                                     const std::vector<NodeId>& starts, std::size_t walks,
                                     std::uint64_t seed);

/// Dense W^P, W^H and the hybrid diffusion matrices built entry by entry.
Matrix probs_matrix(const walkrank::BipartiteGraph& b);
Matrix heats_matrix(const walkrank::BipartiteGraph& b);
Matrix hybrid_matrix(const walkrank::BipartiteGraph& b, double lambda);

/// Random graphs. Edges appear with probability `p`; weights are 1 or drawn
/// from [0.5, 3).
walkrank::DirectedGraph random_directed(std::size_t n, double p, std::uint64_t seed,
                                        bool weighted = true);
walkrank::DirectedGraph random_undirected(std::size_t n, double p, std::uint64_t seed,
                                          bool weighted = false);
/// Connected: a random spanning tree plus random extra edges.
walkrank::DirectedGraph random_connected(std::size_t n, double p, std::uint64_t seed,
                                         bool weighted = false);
/// Edges only from lower to higher id after a random relabeling.
walkrank::DirectedGraph random_dag(std::size_t n, double p, std::uint64_t seed);
walkrank::BipartiteGraph random_bipartite(std::size_t users, std::size_t items, double p,
                                          std::uint64_t seed, bool ratings = false);

std::string data_path(const std::string& name);

double max_abs(const Vector& a, const Vector& b);

}  // namespace oracle
