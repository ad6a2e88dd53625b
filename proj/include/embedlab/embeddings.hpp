#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "embedlab/probdist.hpp"
#include "embedlab/quantum.hpp"

namespace embedlab {

// Register naming convention, in canonical order.
inline constexpr const char* kRegE = "E";
inline constexpr const char* kRegA = "A";
inline constexpr const char* kRegAp = "Ap";
inline constexpr const char* kRegB = "B";
inline constexpr const char* kRegBp = "Bp";

// Phase function theta(x,y) on the support of a JointDistribution, with
// values folded into [0, 2pi).
class PhaseAssignment {
  public:
    using Key = std::pair<Eigen::Index, Eigen::Index>;

    PhaseAssignment() = default;

    static PhaseAssignment zeros(const JointDistribution& p);
    static double fold(double theta);

    void set(Eigen::Index x, Eigen::Index y, double theta);
    double at(Eigen::Index x, Eigen::Index y) const;
    bool has(Eigen::Index x, Eigen::Index y) const;
    size_t size() const { return theta_.size(); }
    const std::map<Key, double>& entries() const { return theta_; }

  private:
    std::map<Key, double> theta_;
};

// Embedding without work registers: amplitude e^{i theta(x,y)} sqrt(P(x,y))
// on layout [A(|X|), B(|Y|)].
struct RegularEmbedding {
    JointDistribution source;
    PhaseAssignment phases;
    StateVector state;
};

struct StrictCorrectness {
    bool pass = false;
    double residual_x_ybp = 0.0;  // |S(X;YB') - I(X;Y)|
    double residual_xap_y = 0.0;  // |S(XA';Y) - I(X;Y)|
};

// General pure embedding on layout [A, Ap, B, Bp] (work registers optional);
// measuring A,B in the computational basis must reproduce the source within
// total variation 1e-9.
class EmbeddingState {
  public:
    EmbeddingState(JointDistribution source, StateVector state);

    const JointDistribution& source() const { return source_; }
    const StateVector& state() const { return state_; }
    // Residuals computed once at construction with the default 1e-9 tolerance.
    const StrictCorrectness& strict() const { return strict_; }

  private:
    JointDistribution source_;
    StateVector state_;
    StrictCorrectness strict_;
};

// Pure state shared with an environment register E; layout [E, A, Ap, B, Bp]
// with the work registers optional.
class TripartiteState {
  public:
    TripartiteState(JointDistribution source, StateVector state);

    const JointDistribution& source() const { return source_; }
    const StateVector& state() const { return state_; }

  private:
    JointDistribution source_;
    StateVector state_;
};

struct LeakageReport {
    double toward_bob = 0.0;    // S(X;BB') - I(X;Y)
    double toward_alice = 0.0;  // S(AA';Y) - I(X;Y)
    double delta = 0.0;         // max of the two
    // Entropic intermediates.
    double s_x_bb = 0.0;
    double s_aa_y = 0.0;
    double mutual_information = 0.0;
};

// Gauge-fixed coordinates for the physically distinct phases of P: theta is
// pinned to 0 on a spanning forest of the support graph, one coordinate per
// remaining support edge (the cycle rank).
class PhaseBasis {
  public:
    Eigen::Index count() const { return static_cast<Eigen::Index>(free_edges_.size()); }
    const std::vector<PhaseAssignment::Key>& free_edges() const { return free_edges_; }

    // Coordinates -> full PhaseAssignment (zero on the forest).
    PhaseAssignment embed(const Eigen::VectorXd& coords) const;
    // Gauge-reduce an arbitrary assignment to coordinates; the reduced
    // assignment is gauge-equivalent to the input via local diagonal unitaries.
    Eigen::VectorXd reduce(const PhaseAssignment& full) const;

  private:
    friend PhaseBasis free_phase_coordinates(const JointDistribution& p);

    Eigen::Index m_ = 0;  // |X|
    Eigen::Index n_ = 0;  // |Y|
    std::vector<PhaseAssignment::Key> support_;
    std::vector<PhaseAssignment::Key> free_edges_;
    std::vector<size_t> forest_edges_;  // indices into support_
    // BFS traversal of the forest: (node, parent edge into support_);
    // x-nodes are [0,m), y-nodes are [m, m+n); roots have parent edge SIZE_MAX.
    std::vector<std::pair<Eigen::Index, size_t>> bfs_order_;
};

struct EnvironmentMonotones {
    double s_w_given_xap = 0.0;  // S(W|XA')
    double s_w_given_ybp = 0.0;  // S(W|YB')
    double h_y_given_x = 0.0;
    double h_x_given_y = 0.0;
    bool degenerate_schmidt = false;  // rho_E spectrum has near-degeneracies
};

RegularEmbedding build_regular(const JointDistribution& p, const PhaseAssignment& theta);
RegularEmbedding canonical(const JointDistribution& p);

PhaseBasis free_phase_coordinates(const JointDistribution& p);

// For regular embeddings both directed leakages coincide and equal
// S(rho_A) - I(X;Y); computed once.
LeakageReport leakage_regular(const RegularEmbedding& e);

// Directed leakages of a (possibly mixed) state over [A, Ap, B, Bp] via
// measure_subsystem + holevo_information; I(X;Y) is taken from the measured
// joint distribution.
LeakageReport leakage_general(const DensityMatrix& rho);
LeakageReport leakage_general(const EmbeddingState& e);

// Pass iff both strict-correctness residuals are below tol.
StrictCorrectness strict_correctness_check(const EmbeddingState& e, double tol = 1e-9);

// Regular embedding viewed as an EmbeddingState with dim-1 work registers.
EmbeddingState lift(const RegularEmbedding& e);

// Leakage of the E-traced mixed state; not necessarily symmetric.
LeakageReport tripartite_leakage(const TripartiteState& t);

// W is the outcome of measuring E in the eigenbasis of rho_E (a Schmidt
// basis of the E vs rest cut, solver-determined under degeneracy).
EnvironmentMonotones environment_monotones(const TripartiteState& t);

// |psi> = sum sqrt(P(x,y)) |xy>_E |x>_A |y>_B: the environment keeps a
// classical copy of both outputs.
TripartiteState ideal_functionality_state(const JointDistribution& p);

}  // namespace embedlab
