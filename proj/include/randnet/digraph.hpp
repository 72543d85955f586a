#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace randnet {

/// Directed graph without self-loops. Arcs live in a bit vector of length
/// n(n-1), row-major over (tail, head) with the diagonal skipped, so arc
/// (u,v) has index u(n-1) + (v < u ? v : v-1).
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int n);

  static DirectedGraph complete(int n);
  static DirectedGraph from_arcs(int n, std::span<const std::pair<int, int>> arcs);
  static DirectedGraph cycle(int n);
  /// Arc bits packed as in the class comment; bits beyond n(n-1) must be 0.
  static DirectedGraph from_bits(int n, std::vector<std::uint64_t> bits);

  int vertex_count() const noexcept { return n_; }
  std::size_t slot_count() const noexcept;
  std::size_t arc_index(int tail, int head) const;
  std::pair<int, int> arc_at(std::size_t index) const;

  bool has_arc(int tail, int head) const;
  void add_arc(int tail, int head);
  void remove_arc(int tail, int head);
  std::size_t arc_count() const;
  std::vector<std::pair<int, int>> arcs() const;
  std::vector<int> successors(int u) const;

  const std::vector<std::uint64_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct SccDecomposition {
  std::vector<std::vector<int>> components;  // each sorted ascending
  std::vector<int> component_of;             // vertex -> component index
  std::vector<std::pair<int, int>> condensation;  // deduplicated, sorted

  std::size_t size() const noexcept { return components.size(); }
};

/// Tarjan's algorithm, iterative. Components come out in reverse topological
/// order of the condensation (sinks first).
SccDecomposition strongly_connected_components(const DirectedGraph& g);

bool is_strongly_connected(const DirectedGraph& g);

/// Strong connectivity of a graph with n <= 64 given as out-neighbour masks.
bool is_strongly_connected_masks(std::span<const std::uint64_t> out_masks);

/// Unpacks the arc bit vector into per-vertex out-neighbour masks (n <= 64).
void out_masks_from_bits(int n, std::span<const std::uint64_t> bits,
                         std::span<std::uint64_t> out_masks);

// Random streams ------------------------------------------------------------

/// Seedable, splittable source of mt19937_64 streams. Stream k of seed s is
/// seeded from std::seed_seq{lo(s), hi(s), lo(k), hi(k)}; streams for
/// distinct (s, k) are treated as independent.
class StreamFactory {
 public:
  explicit StreamFactory(std::uint64_t seed) : seed_(seed) {}
  std::mt19937_64 stream(std::uint64_t index) const;
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// `lanes` independent Bernoulli(p) bits in the low bits of the result,
/// exact with respect to the binary expansion of the double p. Consumes on
/// average about log2(lanes) + 2 words of the stream.
std::uint64_t bernoulli_word(std::mt19937_64& rng, double p, int lanes);

/// Fills `bits` (length ceil(n(n-1)/64)) with independent Bernoulli(p) arcs.
void sample_arc_bits(int n, double p, std::mt19937_64& rng, std::span<std::uint64_t> bits);

/// G(n,p): each of the n(n-1) arcs independently with probability p.
DirectedGraph sample_digraph(int n, double p, std::mt19937_64& rng);

}  // namespace randnet
