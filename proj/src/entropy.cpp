#include "coreent/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "coreent/errors.hpp"
#include "coreent/hubbard_tree.hpp"
#include "coreent/itinerary.hpp"

namespace coreent {

PairGraph thurston_graph(const Angle& theta) {
  PairGraph pg;
  if (theta.is_zero()) return pg;
  std::vector<Angle> pts = orbit(theta).points;
  std::sort(pts.begin(), pts.end());
  const std::size_t n = pts.size();
  auto idx = [&](const Angle& x) {
    auto it = std::lower_bound(pts.begin(), pts.end(), x);
    if (it == pts.end() || *it != x) throw InvariantViolation("pair child leaves the orbit");
    return static_cast<std::size_t>(it - pts.begin());
  };
  // node id of pair (i, j), i < j
  auto node = [n](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  };

  const CriticalPortrait cp = portrait(theta);
  std::vector<Symbol> sym(n);
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) {
    sym[i] = symbol_of(pts[i], cp);
    image[i] = idx(sigma(pts[i]));
  }
  const std::size_t t = idx(theta);

  pg.graph = TransitionGraph(n * (n - 1) / 2);
  pg.nodes.resize(pg.graph.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t id = node(i, j);
      pg.nodes[id] = {pts[i], pts[j]};
      pg.graph.set_label(id, "{" + pts[i].str() + ", " + pts[j].str() + "}");
      const bool separated = sym[i] != Symbol::Star && sym[j] != Symbol::Star && sym[i] != sym[j];
      if (!separated) {
        if (image[i] != image[j]) pg.graph.add_edge(id, node(image[i], image[j]));
      } else {
        if (image[i] != t) pg.graph.add_edge(id, node(t, image[i]));
        if (image[j] != t) pg.graph.add_edge(id, node(t, image[j]));
      }
    }
  }
  return pg;
}

EntropyResult core_entropy(const Angle& theta, const PerronOptions& opt) {
  if (theta.is_zero()) {
    EntropyResult r;
    r.rho = 1.0;
    return r;
  }
  EntropyResult r = spectral_radius(thurston_graph(theta).graph, opt);
  r.method = EntropyMethod::Pairs;
  return r;
}

SurvivorTransfer survivor_transfer(const Angle& theta) {
  SurvivorTransfer st;
  st.hole = characteristic_arc(theta);
  if (st.hole.degenerate) {
    const CircArc hole = st.hole;
    st = tree_side_transfer(theta);
    st.hole = hole;
    st.empty_hole = true;
    return st;
  }
  std::vector<Angle> cuts{Angle{}, Angle::make(1, 2)};
  for (const Angle& e : {st.hole.lo, st.hole.hi}) {
    const auto pts = orbit(e).points;
    cuts.insert(cuts.end(), pts.begin(), pts.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const std::size_t n = cuts.size();
  auto idx = [&](const Angle& x) {
    auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
    if (it == cuts.end() || *it != x) throw InvariantViolation("partition is not forward invariant");
    return static_cast<std::size_t>(it - cuts.begin());
  };

  // interval i = [cuts[i], cuts[i+1]] cyclically
  std::vector<bool> in_hole(n, false);
  {
    const std::size_t from = idx(st.hole.lo);
    const std::size_t to = idx(st.hole.hi);
    for (std::size_t k = from; k != to; k = (k + 1) % n) in_hole[k] = true;
  }

  st.graph = TransitionGraph(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.admissible.push_back(!in_hole[i]);
    st.state_interval.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Angle& a = cuts[i];
    const Angle& b = cuts[(i + 1) % n];
    st.graph.set_label(i, "[" + a.str() + ", " + b.str() + "]");
    const std::size_t s = idx(sigma(a));
    const std::size_t e = idx(sigma(b));
    // a half-circle interval covers everything once
    std::size_t k = s;
    do {
      if (!in_hole[k]) st.graph.add_edge(i, k);
      k = (k + 1) % n;
    } while (k != e);
  }
  st.cuts = std::move(cuts);
  return st;
}

SurvivorTransfer tree_side_transfer(const Angle& theta) {
  SurvivorTransfer st;
  st.hole = CircArc::point(theta);
  if (theta.is_zero()) return st;
  const HubbardTree t = build_tree(theta);
  std::vector<std::pair<Angle, std::size_t>> marks;
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    for (const Angle& x : t.vertices[v].cls.angles) marks.emplace_back(x, v);
  std::sort(marks.begin(), marks.end());
  const std::size_t n = marks.size();
  for (const auto& m : marks) st.cuts.push_back(m.first);
  auto idx = [&](const Angle& x) {
    auto it = std::lower_bound(st.cuts.begin(), st.cuts.end(), x);
    if (it == st.cuts.end() || *it != x) throw InvariantViolation("tree angles are not forward invariant");
    return static_cast<std::size_t>(it - st.cuts.begin());
  };
  auto path_edges = [&](std::size_t u, std::size_t v) {
    const auto p = t.path(u, v);
    std::vector<std::size_t> es;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) es.push_back(t.edge_index(p[k], p[k + 1]));
    std::sort(es.begin(), es.end());
    return es;
  };

  std::vector<std::vector<std::size_t>> along(n);
  st.admissible.assign(n, false);
  // state id of (interval, edge)
  std::vector<std::map<std::size_t, std::size_t>> state(n);
  std::vector<std::pair<std::size_t, std::size_t>> states;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t u = marks[i].second;
    const std::size_t v = marks[(i + 1) % n].second;
    if (u == v) continue;
    st.admissible[i] = true;
    along[i] = path_edges(u, v);
    for (std::size_t e : along[i]) {
      state[i][e] = states.size();
      states.emplace_back(i, e);
    }
  }
  std::vector<std::vector<std::size_t>> edge_image(t.edges.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    edge_image[e] = path_edges(t.vertex_map[t.edges[e].first], t.vertex_map[t.edges[e].second]);

  st.graph = TransitionGraph(states.size());
  for (std::size_t sid = 0; sid < states.size(); ++sid) {
    const auto [i, e] = states[sid];
    st.state_interval.push_back(i);
    st.graph.set_label(sid, "[" + st.cuts[i].str() + ", " + st.cuts[(i + 1) % n].str() + "] on " +
                                std::to_string(t.edges[e].first) + "-" + std::to_string(t.edges[e].second));
    const std::size_t s = idx(sigma(st.cuts[i]));
    const std::size_t stop = idx(sigma(st.cuts[(i + 1) % n]));
    std::size_t k = s;
    do {
      for (const auto& [e2, target] : state[k])
        if (std::binary_search(edge_image[e].begin(), edge_image[e].end(), e2)) st.graph.add_edge(sid, target);
      k = (k + 1) % n;
    } while (k != stop);
  }
  return st;
}

std::vector<std::uint64_t> transfer_cylinder_counts(const SurvivorTransfer& st, unsigned depth) {
  if (depth == 0 || depth > 30) throw InvalidInput("cylinder depth must be in [1, 30]");
  const std::size_t n = st.cuts.size();
  const std::size_t ns = st.graph.size();
  if (n == 0 || ns == 0) return std::vector<std::uint64_t>(depth, 0);
  if (ns > 128) throw InvalidInput("cylinder count supports at most 128 states");
  using Bits = std::array<std::uint64_t, 2>;
  auto set_bit = [](Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); };
  auto any = [](const Bits& a, const Bits& b) { return ((a[0] & b[0]) | (a[1] & b[1])) != 0; };

  std::vector<Bits> succ(ns, Bits{});
  std::vector<std::vector<std::size_t>> in_interval(n);
  for (std::size_t s = 0; s < ns; ++s) {
    if (st.admissible[st.state_interval[s]]) in_interval[st.state_interval[s]].push_back(s);
    for (const auto& [k, w] : st.graph.row(s)) set_bit(succ[s], k);
  }
  // intervals whose interior meets the open cylinder (a, b)
  auto meeting = [&](const Angle& a, const Angle& b, std::vector<std::size_t>& out) {
    out.clear();
    auto it = std::upper_bound(st.cuts.begin(), st.cuts.end(), a);
    std::size_t j = it == st.cuts.begin() ? n - 1 : static_cast<std::size_t>(it - st.cuts.begin()) - 1;
    out.push_back(j);
    for (std::size_t step = 1; step < n; ++step) {
      const std::size_t next = (j + 1) % n;
      if (!in_open_arc(st.cuts[next], a, b)) break;
      out.push_back(next);
      j = next;
    }
  };

  std::vector<std::uint64_t> totals;
  std::vector<Bits> prev;
  std::vector<std::size_t> hit;
  for (unsigned level = 1; level <= depth; ++level) {
    const std::uint64_t count = std::uint64_t{1} << level;
    const std::int64_t scale = static_cast<std::int64_t>(count);
    std::vector<Bits> cur(count, Bits{});
    const std::uint64_t mask = (count >> 1) - 1;
    std::uint64_t alive = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
      meeting(Angle::make(static_cast<std::int64_t>(k), scale),
              Angle::make(static_cast<std::int64_t>(k + 1), scale), hit);
      Bits live{};
      for (std::size_t j : hit)
        for (std::size_t s : in_interval[j])
          if (level == 1 || any(succ[s], prev[k & mask])) set_bit(live, s);
      cur[k] = live;
      alive += (live[0] | live[1]) != 0;
    }
    totals.push_back(alive);
    prev = std::move(cur);
  }
  return totals;
}

std::vector<std::uint64_t> survivor_cylinder_counts(const CircArc& hole, unsigned depth) {
  if (depth == 0 || depth > 30) throw InvalidInput("cylinder depth must be in [1, 30]");
  std::vector<std::uint64_t> totals;
  if (hole.degenerate) {
    for (unsigned d = 1; d <= depth; ++d) totals.push_back(std::uint64_t{1} << d);
    return totals;
  }
  // a cylinder survives a step unless it lies inside the open hole
  auto avoids = [&](std::uint64_t k, unsigned level) {
    const std::int64_t scale = std::int64_t{1} << level;
    const Angle u = Angle::make(static_cast<std::int64_t>(k), scale);
    const Angle v = Angle::make(static_cast<std::int64_t>(k + 1), scale);
    const bool u_in = u == hole.lo || in_open_arc(u, hole.lo, hole.hi);
    const bool v_in = v == hole.hi || in_open_arc(v, hole.lo, hole.hi);
    return !(u_in && v_in && in_closed_arc(u, hole.lo, v));
  };
  // cylinder k at `level` is alive iff it and its image at level-1 are
  std::vector<std::uint8_t> prev{1};
  for (unsigned level = 1; level <= depth; ++level) {
    const std::uint64_t count = std::uint64_t{1} << level;
    std::vector<std::uint8_t> cur(count, 0);
    const std::uint64_t mask = (count >> 1) - 1;
    std::uint64_t alive = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
      cur[k] = (level == 1 || prev[k & mask]) && avoids(k, level);
      alive += cur[k];
    }
    totals.push_back(alive);
    prev = std::move(cur);
  }
  return totals;
}

std::uint64_t survivor_cylinder_count(const CircArc& hole, unsigned depth) {
  return survivor_cylinder_counts(hole, depth).back();
}

double cylinder_growth_dimension(const std::vector<std::uint64_t>& counts) {
  const std::size_t d = counts.size();
  if (d == 0 || counts.back() == 0) return 0.0;
  if (d < 3) return std::log2(static_cast<double>(counts.back())) / static_cast<double>(d);
  // two-step ratio cancels the prefactor and period-2 oscillation
  if (counts[d - 3] == 0) return 0.0;
  return 0.5 * std::log2(static_cast<double>(counts[d - 1]) / static_cast<double>(counts[d - 3]));
}

DimensionReport survivor_dimension(const Angle& theta, unsigned depth, const PerronOptions& opt) {
  DimensionReport rep;
  rep.depth = depth;
  const SurvivorTransfer st = survivor_transfer(theta);
  rep.empty_hole = st.empty_hole;
  rep.transfer_result = spectral_radius(st.graph, opt);
  rep.transfer_result.method = EntropyMethod::SurvivorTransfer;
  rep.transfer = rep.transfer_result.h / std::log(2.0);
  if (depth > 0) {
    rep.counting = cylinder_growth_dimension(st.empty_hole ? transfer_cylinder_counts(st, depth)
                                                           : survivor_cylinder_counts(st.hole, depth));
  }
  return rep;
}

bool iterate_entropy_check(const Angle& theta, unsigned n, double tol) {
  if (n == 0) throw InvalidInput("iterate count must be at least 1");
  if (theta.is_zero()) return true;
  const TransitionGraph m = thurston_graph(theta).graph;
  const double base = spectral_radius(m).h;
  const double iterated = spectral_radius(matrix_power(m, n)).h;
  const double expect = n * base;
  return std::abs(iterated - expect) <= tol * std::max(1.0, std::abs(expect));
}

}  // namespace coreent
