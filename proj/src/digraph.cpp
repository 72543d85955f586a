#include "randnet/digraph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace randnet {

namespace {

std::size_t words_for(std::size_t slots) { return (slots + 63) / 64; }

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::uint64_t extract_bits(std::span<const std::uint64_t> words, std::size_t start, int len) {
  const std::size_t w = start / 64;
  const int off = static_cast<int>(start % 64);
  std::uint64_t v = words[w] >> off;
  if (off + len > 64) {
    v |= words[w + 1] << (64 - off);
  }
  return v & low_mask(len);
}

}  // namespace

DirectedGraph::DirectedGraph(int n) : n_(n) {
  if (n < 0) {
    throw std::invalid_argument("vertex count must be non-negative");
  }
  bits_.assign(words_for(slot_count()), 0);
}

std::size_t DirectedGraph::slot_count() const noexcept {
  return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_ > 0 ? n_ - 1 : 0);
}

std::size_t DirectedGraph::arc_index(int tail, int head) const {
  if (tail < 0 || head < 0 || tail >= n_ || head >= n_ || tail == head) {
    throw std::out_of_range("invalid arc");
  }
  return static_cast<std::size_t>(tail) * static_cast<std::size_t>(n_ - 1) +
         static_cast<std::size_t>(head < tail ? head : head - 1);
}

std::pair<int, int> DirectedGraph::arc_at(std::size_t index) const {
  const int tail = static_cast<int>(index / static_cast<std::size_t>(n_ - 1));
  int head = static_cast<int>(index % static_cast<std::size_t>(n_ - 1));
  if (head >= tail) ++head;
  return {tail, head};
}

DirectedGraph DirectedGraph::complete(int n) {
  DirectedGraph g(n);
  const std::size_t slots = g.slot_count();
  for (std::size_t w = 0; w < g.bits_.size(); ++w) {
    const std::size_t remaining = slots - 64 * w;
    g.bits_[w] = low_mask(static_cast<int>(std::min<std::size_t>(remaining, 64)));
  }
  return g;
}

DirectedGraph DirectedGraph::from_arcs(int n, std::span<const std::pair<int, int>> arcs) {
  DirectedGraph g(n);
  for (auto [u, v] : arcs) g.add_arc(u, v);
  return g;
}

DirectedGraph DirectedGraph::cycle(int n) {
  DirectedGraph g(n);
  if (n >= 2) {
    for (int u = 0; u < n; ++u) g.add_arc(u, (u + 1) % n);
  }
  return g;
}

DirectedGraph DirectedGraph::from_bits(int n, std::vector<std::uint64_t> bits) {
  DirectedGraph g(n);
  if (bits.size() != g.bits_.size()) {
    throw std::invalid_argument("arc bit vector has the wrong length");
  }
  const std::size_t slots = g.slot_count();
  if (!bits.empty() && slots % 64 != 0 && (bits.back() & ~low_mask(static_cast<int>(slots % 64)))) {
    throw std::invalid_argument("arc bit vector has bits beyond n(n-1)");
  }
  g.bits_ = std::move(bits);
  return g;
}

bool DirectedGraph::has_arc(int tail, int head) const {
  const std::size_t i = arc_index(tail, head);
  return (bits_[i / 64] >> (i % 64)) & 1U;
}

void DirectedGraph::add_arc(int tail, int head) {
  const std::size_t i = arc_index(tail, head);
  bits_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void DirectedGraph::remove_arc(int tail, int head) {
  const std::size_t i = arc_index(tail, head);
  bits_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::size_t DirectedGraph::arc_count() const {
  std::size_t count = 0;
  for (auto w : bits_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

std::vector<std::pair<int, int>> DirectedGraph::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    for (std::uint64_t word = bits_[w]; word; word &= word - 1) {
      out.push_back(arc_at(64 * w + static_cast<std::size_t>(std::countr_zero(word))));
    }
  }
  return out;
}

std::vector<int> DirectedGraph::successors(int u) const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v) {
    if (v != u && has_arc(u, v)) out.push_back(v);
  }
  return out;
}

SccDecomposition strongly_connected_components(const DirectedGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : g.arcs()) adj[static_cast<std::size_t>(u)].push_back(v);

  SccDecomposition out;
  out.component_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // (vertex, next edge)
  int counter = 0;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      const auto vi = static_cast<std::size_t>(v);
      if (edge == 0 && index[vi] < 0) {
        index[vi] = lowlink[vi] = counter++;
        stack.push_back(v);
        on_stack[vi] = 1;
      }
      if (edge < adj[vi].size()) {
        const int w = adj[vi][edge++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[wi]) {
          lowlink[vi] = std::min(lowlink[vi], index[wi]);
        }
        continue;
      }
      if (lowlink[vi] == index[vi]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          out.component_of[static_cast<std::size_t>(w)] = static_cast<int>(out.components.size());
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        out.components.push_back(std::move(component));
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().first);
        lowlink[parent] = std::min(lowlink[parent], lowlink[static_cast<std::size_t>(finished)]);
      }
    }
  }

  for (auto [u, v] : g.arcs()) {
    const int cu = out.component_of[static_cast<std::size_t>(u)];
    const int cv = out.component_of[static_cast<std::size_t>(v)];
    if (cu != cv) out.condensation.emplace_back(cu, cv);
  }
  std::sort(out.condensation.begin(), out.condensation.end());
  out.condensation.erase(std::unique(out.condensation.begin(), out.condensation.end()),
                         out.condensation.end());
  return out;
}

void out_masks_from_bits(int n, std::span<const std::uint64_t> bits,
                         std::span<std::uint64_t> out_masks) {
  if (n > 64) {
    throw std::invalid_argument("mask representation needs n <= 64");
  }
  const int row = n - 1;
  for (int u = 0; u < n; ++u) {
    const std::uint64_t r =
        row > 0 ? extract_bits(bits, static_cast<std::size_t>(u) * static_cast<std::size_t>(row), row)
                : 0;
    const std::uint64_t below = r & low_mask(u);
    const std::uint64_t above = u + 1 < 64 ? (r >> u) << (u + 1) : 0;
    out_masks[static_cast<std::size_t>(u)] = below | above;
  }
}

bool is_strongly_connected_masks(std::span<const std::uint64_t> out_masks) {
  const int n = static_cast<int>(out_masks.size());
  if (n <= 1) return true;
  const std::uint64_t full = low_mask(n);

  std::uint64_t reach = 1;
  std::uint64_t frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) {
      next |= out_masks[static_cast<std::size_t>(std::countr_zero(f))];
    }
    frontier = next & ~reach;
    reach |= next;
  }
  if (reach != full) return false;

  std::uint64_t coreach = 1;
  frontier = 1;
  while (frontier) {
    std::uint64_t added = 0;
    for (std::uint64_t rest = full & ~coreach; rest; rest &= rest - 1) {
      const int u = std::countr_zero(rest);
      if (out_masks[static_cast<std::size_t>(u)] & frontier) added |= std::uint64_t{1} << u;
    }
    coreach |= added;
    frontier = added;
  }
  return coreach == full;
}

bool is_strongly_connected(const DirectedGraph& g) {
  const int n = g.vertex_count();
  if (n <= 64) {
    std::uint64_t masks[64];
    out_masks_from_bits(n, g.bits(), std::span(masks, static_cast<std::size_t>(n)));
    return is_strongly_connected_masks(std::span<const std::uint64_t>(masks, static_cast<std::size_t>(n)));
  }
  return strongly_connected_components(g).size() == 1;
}

std::mt19937_64 StreamFactory::stream(std::uint64_t index) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t bernoulli_word(std::mt19937_64& rng, double p, int lanes) {
  const std::uint64_t mask = low_mask(lanes);
  if (p <= 0.0) return 0;
  if (p >= 1.0) return mask;
  // Compare a uniform binary fraction per lane against the expansion of p,
  // one bit position per random word, until every lane is decided.
  std::uint64_t undecided = mask;
  std::uint64_t success = 0;
  double frac = p;
  while (undecided && frac > 0.0) {
    frac *= 2.0;
    const std::uint64_t r = rng();
    if (frac >= 1.0) {
      frac -= 1.0;
      success |= undecided & ~r;
      undecided &= r;
    } else {
      undecided &= ~r;
    }
  }
  return success;
}

void sample_arc_bits(int n, double p, std::mt19937_64& rng, std::span<std::uint64_t> bits) {
  const std::size_t slots = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0);
  for (std::size_t w = 0; w < bits.size(); ++w) {
    const auto lanes = static_cast<int>(std::min<std::size_t>(64, slots - 64 * w));
    bits[w] = bernoulli_word(rng, p, lanes);
  }
}

DirectedGraph sample_digraph(int n, double p, std::mt19937_64& rng) {
  if (n < 1) {
    throw std::domain_error("vertex count must be positive");
  }
  std::vector<std::uint64_t> bits(words_for(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1)));
  sample_arc_bits(n, p, rng, bits);
  return DirectedGraph::from_bits(n, std::move(bits));
}

}  // namespace randnet
