#pragma once

// Sparse nonnegative integer transition matrices and their Perron root.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace coreent {

enum class EntropyMethod { Pairs, Tree, SurvivorTransfer, SurvivorCount };

std::string to_string(EntropyMethod m);

/// Square nonnegative integer matrix stored as weighted out-edges.
class TransitionGraph {
 public:
  TransitionGraph() = default;
  explicit TransitionGraph(std::size_t n) : labels_(n), out_(n) {}

  static TransitionGraph from_dense(const std::vector<std::vector<std::uint64_t>>& m);

  std::size_t size() const { return out_.size(); }
  bool empty() const { return out_.empty(); }

  std::size_t add_node(std::string label);
  void set_label(std::size_t i, std::string label) { labels_.at(i) = std::move(label); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  /// Adds `mult` to entry (from, to).
  void add_edge(std::size_t from, std::size_t to, std::uint64_t mult = 1);
  std::uint64_t entry(std::size_t from, std::size_t to) const;
  const std::vector<std::pair<std::size_t, std::uint64_t>>& row(std::size_t i) const {
    return out_.at(i);
  }
  std::uint64_t row_sum(std::size_t i) const;

  std::vector<std::vector<std::uint64_t>> dense() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> out_;
};

/// n-th power of the matrix. Throws Overflow if an entry exceeds 2^63.
TransitionGraph matrix_power(const TransitionGraph& g, unsigned n);

struct PerronOptions {
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
};

struct EntropyResult {
  double h = 0.0;    ///< natural log of rho, 0 when rho <= 1
  double rho = 0.0;  ///< Perron root
  std::size_t matrix_size = 0;
  double residual = 0.0;  ///< width of the final Collatz-Wielandt bracket
  EntropyMethod method = EntropyMethod::Pairs;
};

/// Perron root of a nonnegative integer matrix.
///
/// The matrix is split into strongly connected components; on each
/// irreducible block, power iteration on (A + I) from the all-ones vector runs
/// until the Collatz-Wielandt bracket min_i (Av)_i/v_i <= rho <= max_i (Av)_i/v_i
/// is narrower than tol (relative to max(1, rho)). The answer is the largest
/// block root. Throws ConvergenceError with the last bracket after max_iter
/// steps.
EntropyResult spectral_radius(const TransitionGraph& g, const PerronOptions& opt = {});

/// Strongly connected components in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const TransitionGraph& g);

}  // namespace coreent
