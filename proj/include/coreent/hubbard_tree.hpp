#pragma once

// Abstract Hubbard tree spanned by the marked lamination classes of a
// rational angle, its edge Markov matrix, and the horseshoe search.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coreent/angle.hpp"
#include "coreent/lamination.hpp"
#include "coreent/perron.hpp"

namespace coreent {

/// A finite identification class, angles sorted.
struct MarkedClass {
  std::vector<Angle> angles;

  bool contains(const Angle& x) const;
  std::string str() const;
  friend bool operator==(const MarkedClass&, const MarkedClass&) = default;
};

/// Classes of the forward orbit of theta together with the critical class
/// (full preimage of the class of theta). Classes sharing an angle are merged,
/// so the result is pairwise disjoint. Sorted by smallest angle.
std::vector<MarkedClass> postcritical_classes(const Angle& theta);

/// True iff A and B lie in different complementary arcs of C. A singleton C
/// separates nothing. Throws PreconditionError if two of the classes coincide
/// and InvariantViolation if two of them are linked.
bool betweenness(const MarkedClass& a, const MarkedClass& c, const MarkedClass& b);

struct TreeVertex {
  MarkedClass cls;       ///< empty for a Steiner vertex
  bool steiner = false;
  bool postcritical = false;     ///< from the orbit or the critical class
  std::vector<std::size_t> spans;  ///< Steiner: marked vertices bounding its gap
};

struct HubbardTree {
  Angle theta;
  std::vector<TreeVertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< u < v, sorted
  std::vector<std::size_t> vertex_map;
  std::size_t marked_critical = 0;

  std::vector<std::vector<std::size_t>> adjacency() const;
  /// Vertex sequence of the tree path from u to v.
  std::vector<std::size_t> path(std::size_t u, std::size_t v) const;
  /// Index into `edges`; throws InvalidInput if u, v are not adjacent.
  std::size_t edge_index(std::size_t u, std::size_t v) const;
  /// Vertex holding angle x, if any.
  std::optional<std::size_t> vertex_of(const Angle& x) const;
};

/// Tree on the marked classes (plus pulled-back classes where a gap needs
/// splitting, plus Steiner vertices for gaps touching three or more classes).
/// Throws NonMarkovError when the vertex set is not closed under doubling or
/// the refinement does not settle.
HubbardTree build_tree(const Angle& theta);

/// entry[e][e'] = number of times the image path of edge e crosses e'.
TransitionGraph edge_markov(const HubbardTree& t);

/// Entropy of the edge matrix. A tree without edges has rho 1.
EntropyResult tree_entropy(const Angle& theta, const PerronOptions& opt = {});

/// Re-checks betweenness against tree paths for every triple of marked vertices.
bool betweenness_consistent(const HubbardTree& t);

/// core_entropy(r.minus) >= log 2 / r.period - 1e-9. Throws PreconditionError for satellites.
bool primitive_bound_check(const ComponentRoot& r);

struct HorseshoeWitness {
  std::vector<std::size_t> path;  ///< vertex sequence of gamma
  std::size_t split = 0;          ///< gamma1 = path[0..split], gamma2 = path[split..]
  unsigned k = 0;

  std::string str(const HubbardTree& t) const;
};

/// Searches tree paths gamma and splits gamma = gamma1 + gamma2 at an interior
/// vertex such that f^k(gamma1) and f^k(gamma2) both cover gamma, k <= k_max.
/// Throws PreconditionError for satellite roots or k_max < period.
std::optional<HorseshoeWitness> find_horseshoe(const ComponentRoot& r, unsigned k_max);
std::optional<HorseshoeWitness> find_horseshoe(const HubbardTree& t, unsigned k_max);

/// Graphviz rendering; vertex labels are class angle sets.
std::string to_dot(const HubbardTree& t);

}  // namespace coreent
