#include "coreent/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coreent/errors.hpp"

namespace coreent {

std::string to_string(EntropyMethod m) {
  switch (m) {
    case EntropyMethod::Pairs:
      return "pairs";
    case EntropyMethod::Tree:
      return "tree";
    case EntropyMethod::SurvivorTransfer:
      return "survivor-transfer";
    case EntropyMethod::SurvivorCount:
      return "survivor-count";
  }
  return "unknown";
}

TransitionGraph TransitionGraph::from_dense(const std::vector<std::vector<std::uint64_t>>& m) {
  TransitionGraph g(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw InvalidInput("transition matrix must be square");
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != 0) g.add_edge(i, j, m[i][j]);
  }
  return g;
}

std::size_t TransitionGraph::add_node(std::string label) {
  labels_.push_back(std::move(label));
  out_.emplace_back();
  return out_.size() - 1;
}

void TransitionGraph::add_edge(std::size_t from, std::size_t to, std::uint64_t mult) {
  if (from >= size() || to >= size()) throw InvalidInput("edge index out of range");
  if (mult == 0) return;
  auto& r = out_[from];
  for (auto& [t, m] : r) {
    if (t == to) {
      m += mult;
      return;
    }
  }
  r.emplace_back(to, mult);
}

std::uint64_t TransitionGraph::entry(std::size_t from, std::size_t to) const {
  for (const auto& [t, m] : out_.at(from))
    if (t == to) return m;
  return 0;
}

std::uint64_t TransitionGraph::row_sum(std::size_t i) const {
  std::uint64_t s = 0;
  for (const auto& e : out_.at(i)) s += e.second;
  return s;
}

std::vector<std::vector<std::uint64_t>> TransitionGraph::dense() const {
  std::vector<std::vector<std::uint64_t>> m(size(), std::vector<std::uint64_t>(size(), 0));
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto& [j, w] : out_[i]) m[i][j] = w;
  return m;
}

TransitionGraph matrix_power(const TransitionGraph& g, unsigned n) {
  const std::size_t sz = g.size();
  TransitionGraph result(sz);
  for (std::size_t i = 0; i < sz; ++i) {
    result.set_label(i, g.label(i));
    // row i of g^n, accumulated densely
    std::vector<std::uint64_t> cur(sz, 0);
    cur[i] = 1;
    for (unsigned step = 0; step < n; ++step) {
      std::vector<std::uint64_t> next(sz, 0);
      for (std::size_t k = 0; k < sz; ++k) {
        if (cur[k] == 0) continue;
        for (const auto& [j, w] : g.row(k)) {
          unsigned __int128 v = static_cast<unsigned __int128>(cur[k]) * w + next[j];
          if (v > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
            throw Overflow("matrix power entry overflow");
          next[j] = static_cast<std::uint64_t>(v);
        }
      }
      cur = std::move(next);
    }
    for (std::size_t j = 0; j < sz; ++j)
      if (cur[j] != 0) result.add_edge(i, j, cur[j]);
  }
  return result;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const TransitionGraph& g) {
  // iterative Tarjan
  const std::size_t n = g.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& r = g.row(f.v);
      if (f.next_edge < r.size()) {
        const std::size_t w = r[f.next_edge++].first;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

namespace {

struct BlockRoot {
  double rho;
  double residual;
};

BlockRoot block_root(const TransitionGraph& g, const std::vector<std::size_t>& comp,
                     const std::vector<std::size_t>& local, const PerronOptions& opt) {
  const std::size_t m = comp.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(m);
  for (std::size_t a = 0; a < m; ++a)
    for (const auto& [j, w] : g.row(comp[a]))
      if (local[j] != std::numeric_limits<std::size_t>::max())
        rows[a].emplace_back(local[j], static_cast<double>(w));

  std::vector<double> v(m, 1.0), av(m, 0.0);
  double lower = 0.0, upper = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    for (std::size_t a = 0; a < m; ++a) {
      double s = 0.0;
      for (const auto& [b, w] : rows[a]) s += w * v[b];
      av[a] = s;
    }
    lower = std::numeric_limits<double>::infinity();
    upper = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      const double ratio = av[a] / v[a];
      lower = std::min(lower, ratio);
      upper = std::max(upper, ratio);
    }
    if (upper - lower <= opt.tol * std::max(1.0, upper)) return {0.5 * (lower + upper), upper - lower};
    // (A + I) v, normalized
    double norm = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      v[a] += av[a];
      norm = std::max(norm, v[a]);
    }
    for (auto& x : v) x /= norm;
  }
  throw ConvergenceError("power iteration did not converge", lower, upper);
}

}  // namespace

EntropyResult spectral_radius(const TransitionGraph& g, const PerronOptions& opt) {
  if (!(opt.tol > 0)) throw InvalidInput("tolerance must be positive");
  EntropyResult res;
  res.matrix_size = g.size();
  std::vector<std::size_t> local(g.size(), std::numeric_limits<std::size_t>::max());
  for (const auto& comp : strongly_connected_components(g)) {
    for (std::size_t a = 0; a < comp.size(); ++a) local[comp[a]] = a;
    bool has_cycle = comp.size() > 1 || g.entry(comp[0], comp[0]) > 0;
    if (has_cycle) {
      const BlockRoot b = block_root(g, comp, local, opt);
      if (b.rho > res.rho) {
        res.rho = b.rho;
        res.residual = b.residual;
      }
    }
    for (auto v : comp) local[v] = std::numeric_limits<std::size_t>::max();
  }
  res.h = res.rho > 1.0 ? std::log(res.rho) : 0.0;
  return res;
}

}  // namespace coreent
