#include "coreent/hubbard_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "coreent/entropy.hpp"
#include "coreent/errors.hpp"
#include "coreent/itinerary.hpp"

namespace coreent {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr int kMaxRefinements = 256;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Counterclockwise open arc (lo, hi) between consecutive class members; a
// singleton's only side is the circle minus that point.
struct Side {
  std::size_t hull;
  Angle lo, hi;

  bool contains(const Angle& x) const { return lo == hi ? x != lo : in_open_arc(x, lo, hi); }
  bool contains_all(const MarkedClass& c) const {
    return std::all_of(c.angles.begin(), c.angles.end(), [&](const Angle& x) { return contains(x); });
  }
  bool shorter_than(const Side& o) const {
    if (lo == hi) return false;
    if (o.lo == o.hi) return true;
    return arc_length_less(lo, hi, o.lo, o.hi);
  }
};

std::vector<Side> sides_of(const MarkedClass& c, std::size_t hull) {
  std::vector<Side> out;
  const auto& a = c.angles;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back({hull, a[i], a[(i + 1) % a.size()]});
  return out;
}

// The side of c whose arc holds x (x not in c).
std::size_t side_holding(const MarkedClass& c, const Angle& x) {
  const auto& a = c.angles;
  if (a.size() == 1) return 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (in_open_arc(x, a[i], a[(i + 1) % a.size()])) return i;
  throw InvariantViolation(x.str() + " is a member of " + c.str());
}

bool linked(const MarkedClass& a, const MarkedClass& b) {
  for (const Angle& x : b.angles)
    if (a.contains(x)) return true;
  const std::size_t s = side_holding(a, b.angles.front());
  for (const Angle& x : b.angles)
    if (side_holding(a, x) != s) return true;
  return false;
}

// Complementary regions of a family of disjoint hulls.
struct Regions {
  std::vector<Side> sides;
  std::vector<std::size_t> region_of_side;
  std::vector<std::vector<std::size_t>> hulls;  // per region, sorted, distinct
  std::size_t count = 0;

  std::size_t region_of_angle(const Angle& x) const {
    std::size_t best = kNone;
    for (std::size_t i = 0; i < sides.size(); ++i) {
      if (!sides[i].contains(x)) continue;
      if (best == kNone || sides[i].shorter_than(sides[best])) best = i;
    }
    return best == kNone ? kNone : region_of_side[best];
  }
};

Regions regions_of(const std::vector<MarkedClass>& hulls) {
  Regions r;
  std::vector<std::size_t> first_side;
  for (std::size_t h = 0; h < hulls.size(); ++h) {
    first_side.push_back(r.sides.size());
    for (const Side& s : sides_of(hulls[h], h)) r.sides.push_back(s);
  }
  auto outer_side = [&](std::size_t g, const Side& s) {
    return first_side[g] + side_holding(hulls[g], s.lo);
  };

  // inside[k][g]: hull g lies in the arc of side k
  std::vector<std::vector<bool>> inside(r.sides.size(), std::vector<bool>(hulls.size(), false));
  for (std::size_t k = 0; k < r.sides.size(); ++k)
    for (std::size_t g = 0; g < hulls.size(); ++g)
      inside[k][g] = g != r.sides[k].hull && r.sides[k].contains_all(hulls[g]);

  UnionFind uf(r.sides.size());
  for (std::size_t si = 0; si < r.sides.size(); ++si) {
    const Side& s = r.sides[si];
    std::vector<std::size_t> within;
    for (std::size_t g = 0; g < hulls.size(); ++g)
      if (inside[si][g]) within.push_back(g);
    for (std::size_t g : within) {
      bool maximal = true;
      for (std::size_t g2 : within) {
        if (g2 == g) continue;
        const std::size_t out = outer_side(g2, s);
        for (std::size_t k = first_side[g2]; k < first_side[g2] + hulls[g2].angles.size(); ++k)
          if (k != out && inside[k][g]) maximal = false;
        if (!maximal) break;
      }
      if (maximal) uf.unite(si, outer_side(g, s));
    }
  }

  std::map<std::size_t, std::size_t> ids;
  r.region_of_side.resize(r.sides.size());
  for (std::size_t si = 0; si < r.sides.size(); ++si) {
    auto [it, fresh] = ids.emplace(uf.find(si), ids.size());
    r.region_of_side[si] = it->second;
  }
  r.count = ids.size();
  r.hulls.assign(r.count, {});
  for (std::size_t si = 0; si < r.sides.size(); ++si)
    r.hulls[r.region_of_side[si]].push_back(r.sides[si].hull);
  for (auto& hs : r.hulls) {
    std::sort(hs.begin(), hs.end());
    if (std::adjacent_find(hs.begin(), hs.end()) != hs.end())
      throw InvariantViolation("a gap touches the same class twice");
  }
  return r;
}

MarkedClass make_class(std::vector<Angle> a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return MarkedClass{std::move(a)};
}

std::vector<MarkedClass> merge_sharing(const std::vector<std::vector<Angle>>& groups) {
  UnionFind uf(groups.size());
  std::map<Angle, std::size_t> owner;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const Angle& x : groups[g]) {
      auto [it, fresh] = owner.emplace(x, g);
      if (!fresh) uf.unite(g, it->second);
    }
  }
  std::map<std::size_t, std::vector<Angle>> merged;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& dst = merged[uf.find(g)];
    dst.insert(dst.end(), groups[g].begin(), groups[g].end());
  }
  std::vector<MarkedClass> out;
  for (auto& [k, v] : merged) out.push_back(make_class(std::move(v)));
  std::sort(out.begin(), out.end(),
            [](const MarkedClass& a, const MarkedClass& b) { return a.angles.front() < b.angles.front(); });
  return out;
}

std::vector<std::size_t> tree_path(const std::vector<std::vector<std::size_t>>& adj, std::size_t u,
                                   std::size_t v) {
  if (u >= adj.size() || v >= adj.size()) throw InvalidInput("vertex out of range");
  std::vector<std::size_t> parent(adj.size(), kNone);
  std::queue<std::size_t> q;
  q.push(u);
  parent[u] = u;
  while (!q.empty() && parent[v] == kNone) {
    const std::size_t x = q.front();
    q.pop();
    for (std::size_t y : adj[x])
      if (parent[y] == kNone) {
        parent[y] = x;
        q.push(y);
      }
  }
  if (parent[v] == kNone) throw InvariantViolation("tree is disconnected");
  std::vector<std::size_t> p{v};
  while (p.back() != u) p.push_back(parent[p.back()]);
  std::reverse(p.begin(), p.end());
  return p;
}

struct Candidate {
  HubbardTree tree;
  // pulled-back classes for Steiner gaps that hold several branch points
  std::vector<MarkedClass> refine;
};

std::size_t hull_of(const std::vector<MarkedClass>& hulls, const Angle& x) {
  for (std::size_t h = 0; h < hulls.size(); ++h)
    if (hulls[h].contains(x)) return h;
  return kNone;
}

// Pulls class e back into the gap `region`; nullopt if it does not fit there.
std::optional<MarkedClass> pull_back(const MarkedClass& e, const Regions& reg, std::size_t region,
                                     const std::vector<MarkedClass>& hulls) {
  std::vector<Angle> pre;
  for (const Angle& x : e.angles) {
    std::size_t found = 0;
    for (const Angle& y : {halves(x).first, halves(x).second}) {
      if (hull_of(hulls, y) != kNone) continue;
      if (reg.region_of_angle(y) == region) {
        pre.push_back(y);
        ++found;
      }
    }
    if (found != 1) return std::nullopt;
  }
  return make_class(std::move(pre));
}

Candidate assemble(const Angle& theta, const std::vector<MarkedClass>& hulls,
                   std::size_t n_postcritical, std::size_t critical) {
  for (std::size_t i = 0; i < hulls.size(); ++i)
    for (std::size_t j = i + 1; j < hulls.size(); ++j)
      if (linked(hulls[i], hulls[j]))
        throw InvariantViolation("classes " + hulls[i].str() + " and " + hulls[j].str() + " are linked");

  const Regions reg = regions_of(hulls);
  Candidate c;
  HubbardTree& t = c.tree;
  t.theta = theta;
  for (std::size_t h = 0; h < hulls.size(); ++h)
    t.vertices.push_back({hulls[h], false, h < n_postcritical, {}});
  t.marked_critical = critical;

  std::vector<std::size_t> steiner_region;
  std::vector<std::vector<std::size_t>> steiner_spans;
  for (std::size_t g = 0; g < reg.count; ++g) {
    const auto& hs = reg.hulls[g];
    if (hs.size() == 2) {
      t.edges.emplace_back(hs[0], hs[1]);
    } else if (hs.size() >= 3) {
      steiner_region.push_back(g);
      steiner_spans.push_back(hs);
    }
  }
  std::vector<std::size_t> order(steiner_spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return steiner_spans[a] < steiner_spans[b]; });
  std::vector<std::size_t> region_sorted;
  for (std::size_t k : order) {
    const std::size_t id = t.vertices.size();
    TreeVertex v;
    v.steiner = true;
    v.spans = steiner_spans[k];
    t.vertices.push_back(v);
    region_sorted.push_back(steiner_region[k]);
    for (std::size_t h : steiner_spans[k]) t.edges.emplace_back(h, id);
  }
  for (auto& e : t.edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(t.edges.begin(), t.edges.end());

  // marked classes map class to class
  t.vertex_map.assign(t.vertices.size(), kNone);
  for (std::size_t h = 0; h < hulls.size(); ++h) {
    const std::size_t img = hull_of(hulls, sigma(hulls[h].angles.front()));
    if (img == kNone)
      throw NonMarkovError("image of " + hulls[h].str() + " is not a marked class");
    for (const Angle& x : hulls[h].angles)
      if (!hulls[img].contains(sigma(x)))
        throw NonMarkovError("image of " + hulls[h].str() + " splits across classes");
    t.vertex_map[h] = img;
  }

  const auto adj = t.adjacency();
  auto path = [&](std::size_t u, std::size_t v) { return tree_path(adj, u, v); };

  // a Steiner vertex maps to the vertex separating the images of its spans
  for (std::size_t s = hulls.size(); s < t.vertices.size(); ++s) {
    const auto& spans = t.vertices[s].spans;
    std::vector<std::size_t> img;
    for (std::size_t h : spans) img.push_back(t.vertex_map[h]);
    if (std::set<std::size_t>(img.begin(), img.end()).size() != img.size())
      throw NonMarkovError("branch point arms collapse under the map");
    std::vector<std::vector<std::size_t>> paths;
    for (std::size_t i = 0; i < img.size(); ++i)
      for (std::size_t j = i + 1; j < img.size(); ++j) paths.push_back(path(img[i], img[j]));
    std::size_t center = kNone;
    for (std::size_t k = 1; k + 1 < paths[0].size() && center == kNone; ++k) {
      const std::size_t v = paths[0][k];
      const bool ok = std::all_of(paths.begin(), paths.end(), [v](const auto& p) {
        return std::find(p.begin() + 1, p.end() - 1, v) != p.end() - 1;
      });
      if (ok) center = v;
    }
    if (center != kNone) {
      t.vertex_map[s] = center;
      continue;
    }

    // The gap holds several branch points: pull back a marked class that
    // separates branch points of the image subtree.
    std::map<std::size_t, std::set<std::size_t>> sub;
    for (std::size_t i = 1; i < img.size(); ++i) {
      const auto& p = paths[i - 1];
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        sub[p[k]].insert(p[k + 1]);
        sub[p[k + 1]].insert(p[k]);
      }
    }
    std::vector<std::size_t> branch;
    for (const auto& [v, nb] : sub)
      if (nb.size() >= 3) branch.push_back(v);
    std::optional<std::size_t> pick;
    for (std::size_t v : branch)
      if (!t.vertices[v].steiner) {
        pick = v;
        break;
      }
    if (!pick && branch.size() >= 2) {
      const auto p = path(branch[0], branch[1]);
      for (std::size_t k = 1; k + 1 < p.size(); ++k)
        if (!t.vertices[p[k]].steiner) {
          pick = p[k];
          break;
        }
    }
    if (!pick) throw NonMarkovError("no marked class splits the gap of a branch point");
    auto pulled = pull_back(hulls[*pick], reg, region_sorted[s - hulls.size()], hulls);
    if (!pulled) throw NonMarkovError("pull-back of " + hulls[*pick].str() + " leaves its gap");
    if (std::find(c.refine.begin(), c.refine.end(), *pulled) == c.refine.end()) c.refine.push_back(*pulled);
  }
  return c;
}

}  // namespace

bool MarkedClass::contains(const Angle& x) const {
  return std::binary_search(angles.begin(), angles.end(), x);
}

std::string MarkedClass::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < angles.size(); ++i) s += (i ? ", " : "") + angles[i].str();
  return s + "}";
}

std::vector<MarkedClass> postcritical_classes(const Angle& theta) {
  if (theta.is_zero()) throw InvalidInput("the class structure of 0 is trivial");
  std::vector<std::vector<Angle>> groups;
  std::vector<Angle> cls = value_class(theta);
  std::vector<Angle> critical;
  for (const Angle& x : cls) {
    critical.push_back(halves(x).first);
    critical.push_back(halves(x).second);
  }
  const std::size_t n = orbit(theta).points.size();
  for (std::size_t k = 0; k < n; ++k) {
    groups.push_back(cls);
    for (Angle& x : cls) x = sigma(x);
  }
  groups.push_back(critical);
  return merge_sharing(groups);
}

bool betweenness(const MarkedClass& a, const MarkedClass& c, const MarkedClass& b) {
  if (a == c || b == c || a == b) throw PreconditionError("betweenness needs three distinct classes");
  if (linked(a, c) || linked(b, c) || linked(a, b)) throw InvariantViolation("betweenness of linked classes");
  if (c.angles.size() < 2) return false;
  return side_holding(c, a.angles.front()) != side_holding(c, b.angles.front());
}

std::vector<std::vector<std::size_t>> HubbardTree::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<std::size_t> HubbardTree::path(std::size_t u, std::size_t v) const {
  return tree_path(adjacency(), u, v);
}

std::size_t HubbardTree::edge_index(std::size_t u, std::size_t v) const {
  const auto key = std::minmax(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{key.first, key.second});
  if (it == edges.end() || *it != std::pair{key.first, key.second})
    throw InvalidInput("vertices " + std::to_string(u) + " and " + std::to_string(v) + " are not adjacent");
  return static_cast<std::size_t>(it - edges.begin());
}

std::optional<std::size_t> HubbardTree::vertex_of(const Angle& x) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].cls.contains(x)) return i;
  return std::nullopt;
}

HubbardTree build_tree(const Angle& theta) {
  std::vector<MarkedClass> hulls = postcritical_classes(theta);
  const std::size_t n_post = hulls.size();
  const Angle crit = halves(theta).first;
  std::size_t critical = kNone;
  for (std::size_t h = 0; h < hulls.size(); ++h)
    if (hulls[h].contains(crit)) critical = h;

  for (int round = 0; round < kMaxRefinements; ++round) {
    Candidate c = assemble(theta, hulls, n_post, critical);
    if (c.refine.empty()) return c.tree;
    hulls.insert(hulls.end(), c.refine.begin(), c.refine.end());
  }
  throw NonMarkovError("tree refinement for " + theta.str() + " did not settle");
}

TransitionGraph edge_markov(const HubbardTree& t) {
  TransitionGraph g(t.edges.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto [u, v] = t.edges[e];
    g.set_label(e, std::to_string(u) + "-" + std::to_string(v));
    const auto p = t.path(t.vertex_map[u], t.vertex_map[v]);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) g.add_edge(e, t.edge_index(p[k], p[k + 1]));
  }
  return g;
}

EntropyResult tree_entropy(const Angle& theta, const PerronOptions& opt) {
  EntropyResult r;
  if (!theta.is_zero()) {
    const TransitionGraph m = edge_markov(build_tree(theta));
    if (m.size() > 0) r = spectral_radius(m, opt);
  }
  if (r.rho < 1.0) {
    r.rho = 1.0;
    r.h = 0.0;
  }
  r.method = EntropyMethod::Tree;
  return r;
}

bool betweenness_consistent(const HubbardTree& t) {
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < t.vertices.size(); ++i)
    if (!t.vertices[i].steiner) marked.push_back(i);
  for (std::size_t a : marked)
    for (std::size_t b : marked) {
      if (b <= a) continue;
      const auto p = t.path(a, b);
      for (std::size_t c : marked) {
        if (c == a || c == b) continue;
        const bool on_path = std::find(p.begin(), p.end(), c) != p.end();
        if (on_path != betweenness(t.vertices[a].cls, t.vertices[c].cls, t.vertices[b].cls)) return false;
      }
    }
  return true;
}

bool primitive_bound_check(const ComponentRoot& r) {
  if (r.satellite) throw PreconditionError("primitive bound needs a primitive root");
  return core_entropy(r.minus).h >= std::log(2.0) / static_cast<double>(r.period) - 1e-9;
}

std::string HorseshoeWitness::str(const HubbardTree& t) const {
  auto fmt = [&](std::size_t from, std::size_t to) {
    std::string s;
    for (std::size_t i = from; i <= to; ++i) {
      const auto& v = t.vertices[path[i]];
      s += (i > from ? " - " : "") + (v.steiner ? "*" + std::to_string(path[i]) : v.cls.str());
    }
    return s;
  };
  return "gamma: " + fmt(0, path.size() - 1) + "; gamma1: " + fmt(0, split) +
         "; gamma2: " + fmt(split, path.size() - 1) + "; k = " + std::to_string(k);
}

std::optional<HorseshoeWitness> find_horseshoe(const HubbardTree& t, unsigned k_max) {
  const std::size_t ne = t.edges.size();
  if (ne == 0) return std::nullopt;
  const TransitionGraph m = edge_markov(t);
  // support of M^k, row by row
  std::vector<std::vector<std::vector<bool>>> reach;
  std::vector<std::vector<bool>> cur(ne, std::vector<bool>(ne, false));
  for (std::size_t e = 0; e < ne; ++e) cur[e][e] = true;
  for (unsigned k = 1; k <= k_max; ++k) {
    std::vector<std::vector<bool>> next(ne, std::vector<bool>(ne, false));
    for (std::size_t e = 0; e < ne; ++e)
      for (std::size_t f = 0; f < ne; ++f)
        if (cur[e][f])
          for (const auto& [g, w] : m.row(f)) next[e][g] = true;
    reach.push_back(next);
    cur = std::move(next);
  }

  for (unsigned k = 1; k <= k_max; ++k) {
    const auto& mk = reach[k - 1];
    for (std::size_t u = 0; u < t.vertices.size(); ++u)
      for (std::size_t v = u + 1; v < t.vertices.size(); ++v) {
        const auto p = t.path(u, v);
        if (p.size() < 3) continue;
        std::vector<std::size_t> es;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) es.push_back(t.edge_index(p[i], p[i + 1]));
        auto covers = [&](std::size_t from, std::size_t to) {
          for (std::size_t target : es) {
            bool hit = false;
            for (std::size_t i = from; i < to && !hit; ++i) hit = mk[es[i]][target];
            if (!hit) return false;
          }
          return true;
        };
        for (std::size_t split = 1; split < es.size(); ++split)
          if (covers(0, split) && covers(split, es.size())) return HorseshoeWitness{p, split, k};
      }
  }
  return std::nullopt;
}

std::optional<HorseshoeWitness> find_horseshoe(const ComponentRoot& r, unsigned k_max) {
  if (r.satellite) throw PreconditionError("horseshoe search needs a primitive root");
  if (k_max < r.period) throw PreconditionError("k_max must be at least the period");
  return find_horseshoe(build_tree(r.minus), k_max);
}

std::string to_dot(const HubbardTree& t) {
  std::ostringstream out;
  out << "digraph hubbard {\n";
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    const auto& v = t.vertices[i];
    out << "  v" << i;
    if (v.steiner)
      out << " [shape=point]";
    else
      out << " [label=\"" << v.cls.str() << "\"" << (i == t.marked_critical ? ", shape=box" : "") << "]";
    out << ";\n";
  }
  for (const auto& [u, v] : t.edges) out << "  v" << u << " -> v" << v << " [dir=none];\n";
  for (std::size_t i = 0; i < t.vertex_map.size(); ++i)
    out << "  v" << i << " -> v" << t.vertex_map[i] << " [style=dotted, color=gray];\n";
  out << "}\n";
  return out.str();
}

}  // namespace coreent
