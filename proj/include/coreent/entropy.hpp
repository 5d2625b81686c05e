#pragma once

// Core entropy from the pair-transition graph, and the survivor set of
// doubling with the characteristic arc removed.

#include <cstddef>
#include <vector>

#include "coreent/angle.hpp"
#include "coreent/lamination.hpp"
#include "coreent/perron.hpp"

namespace coreent {

struct PairNode {
  Angle a;  ///< a < b
  Angle b;
};

struct PairGraph {
  std::vector<PairNode> nodes;
  TransitionGraph graph;
};

/// Pair graph on P = orbit(theta). A pair is separated when its points lie
/// in the two open arcs cut by the portrait of theta; a pair touching a
/// portrait point is not separated. Non-separated {a,b} -> {2a,2b};
/// separated {a,b} -> {theta,2a} + {theta,2b}; degenerate children dropped.
PairGraph thurston_graph(const Angle& theta);

EntropyResult core_entropy(const Angle& theta, const PerronOptions& opt = {});

struct SurvivorTransfer {
  bool empty_hole = false;       ///< degenerate characteristic arc
  CircArc hole;                  ///< its interior is removed
  std::vector<Angle> cuts;       ///< sorted partition points
  std::vector<bool> admissible;  ///< per interval [cuts[i], cuts[i+1]]
  /// Transfer graph on states; each state sits in one interval.
  TransitionGraph graph;
  std::vector<std::size_t> state_interval;
};

/// Markov transfer matrix of doubling on the partition cut by the orbits of
/// the minor endpoints together with 0 and 1/2. States are the intervals;
/// state i covers state j when doubling maps interval i over interval j and j
/// is outside the open hole.
///
/// When the characteristic arc is a single point the hole is empty and the
/// construction switches to tree_side_transfer.
SurvivorTransfer survivor_transfer(const Angle& theta);

/// Transfer matrix of angles landing on the Hubbard tree. The circle is cut at
/// the angles of all marked vertices. An interval between two rays of the same
/// vertex holds no tree direction and is dropped; any other interval runs
/// along one side of the tree path joining its end vertices, and a state is
/// an (interval, edge of that path) pair. State (i, e) covers (j, e') when
/// interval j lies in the doubled image of interval i and e' lies on both the
/// image path of e and the path of j.
SurvivorTransfer tree_side_transfer(const Angle& theta);

/// Binary cylinders of depth 1..depth carrying an admissible state sequence of
/// `st` of full length. At most 128 states.
std::vector<std::uint64_t> transfer_cylinder_counts(const SurvivorTransfer& st, unsigned depth);

/// Number of binary cylinders of depth `depth` none of whose first `depth`
/// images (the cylinder itself included) lies inside the open hole.
std::uint64_t survivor_cylinder_count(const CircArc& hole, unsigned depth);
/// The same count for every depth 1..depth.
std::vector<std::uint64_t> survivor_cylinder_counts(const CircArc& hole, unsigned depth);
/// Growth exponent log2(N_d / N_{d-2}) / 2 of a count sequence; plain
/// log2(N_d) / d below three levels.
double cylinder_growth_dimension(const std::vector<std::uint64_t>& counts);

struct DimensionReport {
  double transfer = 1.0;  ///< log rho(transfer) / log 2
  double counting = 1.0;  ///< cylinder_growth_dimension of the counts
  unsigned depth = 0;
  bool empty_hole = false;
  EntropyResult transfer_result;
};

DimensionReport survivor_dimension(const Angle& theta, unsigned depth,
                                   const PerronOptions& opt = {});

/// |log rho(M^n) - n log rho(M)| <= tol * max(1, n log rho(M)) for the pair matrix M.
bool iterate_entropy_check(const Angle& theta, unsigned n, double tol = 1e-6);

}  // namespace coreent
