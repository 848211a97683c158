#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vb/content.hpp"
#include "vb/dfield.hpp"
#include "vb/path.hpp"

namespace vb {

// Parameters of the diagnostics tied to a target exponent s and margin eps.
// p is the Poincare exponent Q - s + eps/2 (p = 1 at the endpoint s = Q-1).
struct DiagnosticsConfig {
  double s = 1.0;
  double eps = 0.2;
  double kappa = 4.0;        // discretization slack, in cells
  double eta1 = 1.0 / 168;   // 42*eta*r < r/2 - r/4 threshold of the test function
  bool strict_eta = false;   // enforce eta < eta2 as a hard precondition
  double eta2_override = 0;  // >0 replaces eta2 = min(eta1, K_emp^{-2/eps})

  enum class Step1Anchor { SeedBall, OmegaTouching };
  Step1Anchor anchor = Step1Anchor::SeedBall;

  double p(int q) const;
  // eta2 = min(eta1, k_emp^{-2/eps}); k_emp <= 0 means not yet estimated.
  double eta2(double k_emp = 0.0) const;
  void validate(int q) const;
};

enum class BallKind { Chainable, WellPlaced };

// Same-radius balls; centers ascending id for chainable collections,
// selection order for well-placed ones.
struct BallCollection {
  BallKind kind = BallKind::Chainable;
  double radius = 0.0;
  int64_t region_center = -1;  // omega whose ball B(omega, region_radius) hosts the family
  double region_radius = 0.0;
  int64_t seed_center = -1;
  std::vector<int64_t> centers;
  std::vector<int64_t> anchor_centers;  // mandated non-touching separation anchors
};

// Admissible ball centers at the given radius: inside cells z with
// d_Omega(z) >= radius - kappa*h and B(z, radius) within the region ball
// (center-distance test), ascending id.
struct CandidateSet {
  double radius = 0.0;
  int64_t region_center = -1;
  double region_radius = 0.0;
  std::vector<int64_t> cells;
  std::vector<double> region_dist;  // grid distance to region_center
};

CandidateSet admissible_centers(const DomainMask& mask, const DistanceField& dfield,
                                int64_t region_center, double region_radius, double radius,
                                double kappa, DijkstraScratch& scratch);

// Connected component of the seed in the graph on candidates with edges
// d(x, y) < radius: the unique maximal finitely chainable collection
// containing the seed.
BallCollection chainable_component(const GridSpace& space, const CandidateSet& candidates,
                                   int64_t seed, DijkstraScratch& scratch);

// Greedy maximal boundary-touching subset with pairwise center separation
// >= 8*radius; greedy order ascending (distance to region center, id).
// Anchors are force-selected first and count for separation only.
BallCollection well_placed_subcollection(const DomainMask& mask, const DistanceField& dfield,
                                         const BallCollection& chain, double kappa,
                                         const std::vector<int64_t>& anchors,
                                         DijkstraScratch& scratch);

struct TreeNode {
  int id = 0;
  int level = 0;
  int parent = -1;
  int64_t omega = -1;
  int64_t seed = -1;
  double radius = 0.0;
  std::vector<int> children;
  bool halted = false;
  std::string halt_reason;
  bool nesting_achieved = false;
  int64_t chain_size = 0;
  std::vector<int64_t> well_centers;
};

struct GenerationTree {
  int64_t z0 = -1;
  double r0 = 0.0;
  double eta = 0.0;
  int depth = 0;
  DiagnosticsConfig cfg;
  std::vector<TreeNode> nodes;                       // nodes[0] is the level-0 root
  std::vector<std::vector<int>> levels;              // node ids per level
  std::vector<std::vector<int64_t>> chain_centers;   // per node: collection used to expand it

  double level_radius(int level) const;
  BallCollection chain_of(int node) const;
  std::vector<int> leaves() const;  // non-halted nodes at the final level
};

// The generational construction: level 0 is the lexicographically smallest
// boundary cell at distance r0 of z0; level k+1 expands each node omega with
// candidates in B(omega, 2 eta^k r0) at radius eta^{k+1} r0, the chainable
// component of the node seed, and its well-placed subcollection. Branch
// halts are recorded, never fatal.
GenerationTree run_construction(const DomainMask& mask, const DistanceField& dfield, int64_t z0,
                                double eta, int depth, const DiagnosticsConfig& cfg);

// Equal-split measure on the leaves; halted branches hand their mass to the
// surviving siblings.
struct TreeMeasure {
  std::vector<int> leaf_nodes;
  std::vector<double> weights;
  double total = 0.0;
};

TreeMeasure build_tree_measure(const GenerationTree& tree);
TreeMeasureView measure_view(const GenerationTree& tree, const TreeMeasure& m);

struct ChainPathResult {
  GridPath path;
  int hops = 0;
  double min_ball_clearance = 0.0;  // certificate from center distances along legs
  double min_domain_clearance = 0.0;
  double max_leg_length = 0.0;
};

// Concatenation of inside-constrained geodesics along a hop-minimal path in
// the chain graph from x to y.
ChainPathResult chain_path(const DomainMask& mask, const DistanceField& dfield,
                           const BallCollection& chain, int64_t x, int64_t y,
                           DijkstraScratch& scratch);

struct JohnPathCertificate {
  GridPath path;  // z0 -> ... -> leaf omega
  std::vector<double> leg_length;      // per level 1..K
  std::vector<double> leg_clearance;   // min d_Omega per level
  std::vector<double> leg_ball_clearance;
  double tail_length = 0.0;
  double m_factor = 1.0;  // max_j max(len_j/(eta^j r0), eta^j r0/clearance_j)
  double c_bound = 0.0;   // M^2/(1-eta)
  double c_emp = 0.0;
};

JohnPathCertificate assemble_john_path(const GenerationTree& tree, int leaf_node,
                                       const DomainMask& mask, const DistanceField& dfield);

// Lipschitz test function of the ball-count lemma on B = B(omega, r):
// f = 1 off D, g = max_i [1 - d(x, 40 B_i)/(eta r)]_+ on D, D the 20-fold
// dilation of the chainable collection.
struct TestFunctionResult {
  std::vector<int64_t> ball_cells;
  std::vector<double> f;
  std::vector<double> lip;
  int64_t n_wellplaced = 0;
  double integral_lip_p = 0.0;  // sum over B of (Lip f)^p h^Q
  double rhs_bound = 0.0;       // N c_A 41^Q (eta r)^(Q-p)
  double max_lip = 0.0;
  double lip_bound = 0.0;  // (1/(eta r)) (1 + kappa h/(eta r))
  int64_t e_violations = 0;  // boundary cells of B where f != 1
  int64_t f_violations = 0;  // far-set cells where f != 0
  bool eta_below_eta1 = false;
};

TestFunctionResult build_test_function(const DomainMask& mask, const DistanceField& dfield,
                                       int64_t omega, double r, const BallCollection& chain,
                                       const BallCollection& well, double eta,
                                       const DiagnosticsConfig& cfg, double c_A);

struct BallCountLevel {
  int level = 0;
  int64_t nodes = 0;
  int64_t min_children = 0;
  int64_t max_children = 0;
  int64_t single_child_nodes = 0;
  double k_emp = 0.0;  // max over nodes of eta^{-(Q-p)} / N
};

struct BallCountReport {
  std::vector<BallCountLevel> levels;
  double k_emp = 0.0;
  double level_stability = 1.0;  // max/min of per-level k_emp
  int64_t single_child_nodes = 0;
};

BallCountReport verify_ball_count(const GenerationTree& tree, const DiagnosticsConfig& cfg);

// nu(B(atom, r)) <= eta^{-(s-eps)} (r/r0)^{s-eps} over dyadic r in
// [eta^K r0, r0] and all atom-centered balls.
struct FrostmanScan {
  double worst_ratio = 0.0;  // max nu(B)/bound
  double worst_r = 0.0;
  int64_t worst_atom = -1;
  int64_t checks = 0;
};

FrostmanScan scan_frostman(const GridSpace& space, const GenerationTree& tree,
                           const TreeMeasure& measure);

}  // namespace vb
