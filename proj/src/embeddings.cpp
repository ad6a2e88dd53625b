#include "embedlab/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace embedlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kMeasuredTv = 1e-9;

std::vector<std::string> present_registers(const RegisterLayout& layout,
                                           std::initializer_list<const char*> names) {
    std::vector<std::string> out;
    for (const char* name : names)
        if (layout.has(name)) out.emplace_back(name);
    return out;
}

// Joint outcome distribution of measuring registers A and B, accumulated from
// the diagonal and renormalized (the trace itself is only 1e-10 accurate).
Eigen::MatrixXd measured_joint(const RegisterLayout& layout,
                               const Eigen::VectorXd& diagonal) {
    const Eigen::Index pos_a = layout.position(kRegA);
    const Eigen::Index pos_b = layout.position(kRegB);
    const Eigen::Index da = layout.reg(pos_a).dim;
    const Eigen::Index db = layout.reg(pos_b).dim;
    const Eigen::Index sa = layout.stride(pos_a);
    const Eigen::Index sb = layout.stride(pos_b);

    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(da, db);
    for (Eigen::Index g = 0; g < diagonal.size(); ++g)
        joint((g / sa) % da, (g / sb) % db) += std::max(diagonal(g), 0.0);
    joint /= joint.sum();
    return joint;
}

JointDistribution measured_distribution(const RegisterLayout& layout,
                                        const Eigen::VectorXd& diagonal) {
    Eigen::MatrixXd joint = measured_joint(layout, diagonal);
    std::vector<std::string> xs, ys;
    for (Eigen::Index i = 0; i < joint.rows(); ++i) xs.push_back(std::to_string(i));
    for (Eigen::Index j = 0; j < joint.cols(); ++j) ys.push_back(std::to_string(j));
    return JointDistribution(Alphabet(std::move(xs)), Alphabet(std::move(ys)), std::move(joint));
}

void check_measurement_matches(const JointDistribution& source, const RegisterLayout& layout,
                               const Eigen::VectorXd& diagonal, const char* what) {
    if (layout.dim_of(kRegA) != source.x_alphabet().size() ||
        layout.dim_of(kRegB) != source.y_alphabet().size())
        throw LayoutMismatch(std::string(what) +
                             ": register dimensions do not match the source alphabets");
    Eigen::MatrixXd joint = measured_joint(layout, diagonal);
    double tv = 0.5 * (joint - source.probs()).cwiseAbs().sum();
    if (tv > kMeasuredTv) {
        std::ostringstream msg;
        msg << what << ": measuring A,B deviates from the source by total variation " << tv;
        throw ValidationError(msg.str());
    }
}

// |S(X;YB') - I| and |S(XA';Y) - I| for a pure state over [A, Ap, B, Bp].
StrictCorrectness strict_residuals(const JointDistribution& source, const StateVector& state,
                                   double tol) {
    const RegisterLayout& layout = state.layout();
    const double mi = mutual_information(source);

    DensityMatrix bob_side =
        partial_trace(state, present_registers(layout, {kRegA, kRegB, kRegBp}));
    bob_side = dephase(bob_side, kRegB);
    double s_x_ybp = holevo_information(measure_subsystem(bob_side, kRegA));

    DensityMatrix alice_side =
        partial_trace(state, present_registers(layout, {kRegA, kRegAp, kRegB}));
    alice_side = dephase(alice_side, kRegA);
    double s_xap_y = holevo_information(measure_subsystem(alice_side, kRegB));

    StrictCorrectness result;
    result.residual_x_ybp = std::abs(s_x_ybp - mi);
    result.residual_xap_y = std::abs(s_xap_y - mi);
    result.pass = result.residual_x_ybp < tol && result.residual_xap_y < tol;
    return result;
}

}  // namespace

double PhaseAssignment::fold(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

PhaseAssignment PhaseAssignment::zeros(const JointDistribution& p) {
    PhaseAssignment out;
    for (const auto& key : p.support()) out.theta_[key] = 0.0;
    return out;
}

void PhaseAssignment::set(Eigen::Index x, Eigen::Index y, double theta) {
    theta_[{x, y}] = fold(theta);
}

double PhaseAssignment::at(Eigen::Index x, Eigen::Index y) const {
    auto it = theta_.find({x, y});
    if (it == theta_.end())
        throw PhaseKeyMismatch("PhaseAssignment: no phase for support pair (" +
                               std::to_string(x) + "," + std::to_string(y) + ")");
    return it->second;
}

bool PhaseAssignment::has(Eigen::Index x, Eigen::Index y) const {
    return theta_.count({x, y}) > 0;
}

RegularEmbedding build_regular(const JointDistribution& p, const PhaseAssignment& theta) {
    auto support = p.support();
    if (theta.size() != support.size())
        throw PhaseKeyMismatch("build_regular: phase assignment has " +
                               std::to_string(theta.size()) + " keys, support has " +
                               std::to_string(support.size()));
    const Eigen::Index m = p.x_alphabet().size();
    const Eigen::Index n = p.y_alphabet().size();
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(m * n);
    for (const auto& [x, y] : support) {
        double t = theta.at(x, y);  // throws PhaseKeyMismatch on stray support pairs
        amps(x * n + y) = std::polar(std::sqrt(p.prob(x, y)), t);
    }
    RegisterLayout layout({{kRegA, m}, {kRegB, n}});
    return RegularEmbedding{p, theta, StateVector(std::move(layout), std::move(amps))};
}

RegularEmbedding canonical(const JointDistribution& p) {
    return build_regular(p, PhaseAssignment::zeros(p));
}

PhaseBasis free_phase_coordinates(const JointDistribution& p) {
    PhaseBasis basis;
    basis.m_ = p.x_alphabet().size();
    basis.n_ = p.y_alphabet().size();
    basis.support_ = p.support();

    const Eigen::Index nodes = basis.m_ + basis.n_;
    std::vector<Eigen::Index> parent(static_cast<size_t>(nodes));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](Eigen::Index a) {
        while (parent[static_cast<size_t>(a)] != a) a = parent[static_cast<size_t>(a)];
        return a;
    };

    // Adjacency restricted to forest edges, for the potential-propagating BFS.
    std::vector<std::vector<std::pair<Eigen::Index, size_t>>> adj(static_cast<size_t>(nodes));
    for (size_t e = 0; e < basis.support_.size(); ++e) {
        const auto& [x, y] = basis.support_[e];
        Eigen::Index rx = find(x), ry = find(basis.m_ + y);
        if (rx == ry) {
            basis.free_edges_.push_back(basis.support_[e]);
        } else {
            parent[static_cast<size_t>(rx)] = ry;
            basis.forest_edges_.push_back(e);
            adj[static_cast<size_t>(x)].emplace_back(basis.m_ + y, e);
            adj[static_cast<size_t>(basis.m_ + y)].emplace_back(x, e);
        }
    }

    std::vector<bool> visited(static_cast<size_t>(nodes), false);
    for (Eigen::Index root = 0; root < nodes; ++root) {
        if (visited[static_cast<size_t>(root)]) continue;
        visited[static_cast<size_t>(root)] = true;
        basis.bfs_order_.emplace_back(root, SIZE_MAX);
        std::vector<Eigen::Index> queue{root};
        for (size_t head = 0; head < queue.size(); ++head) {
            for (const auto& [next, edge] : adj[static_cast<size_t>(queue[head])]) {
                if (visited[static_cast<size_t>(next)]) continue;
                visited[static_cast<size_t>(next)] = true;
                basis.bfs_order_.emplace_back(next, edge);
                queue.push_back(next);
            }
        }
    }
    return basis;
}

PhaseAssignment PhaseBasis::embed(const Eigen::VectorXd& coords) const {
    if (coords.size() != count())
        throw ValidationError("PhaseBasis: expected " + std::to_string(count()) +
                              " coordinates, got " + std::to_string(coords.size()));
    PhaseAssignment theta;
    for (size_t e : forest_edges_) theta.set(support_[e].first, support_[e].second, 0.0);
    for (Eigen::Index k = 0; k < count(); ++k)
        theta.set(free_edges_[static_cast<size_t>(k)].first,
                  free_edges_[static_cast<size_t>(k)].second, coords(k));
    return theta;
}

Eigen::VectorXd PhaseBasis::reduce(const PhaseAssignment& full) const {
    if (full.size() != support_.size())
        throw PhaseKeyMismatch("PhaseBasis: assignment keyed on a different support");
    // Local phases alpha(x), beta(y) cancel theta on the forest; what remains
    // on the free edges is gauge-invariant.
    std::vector<double> potential(static_cast<size_t>(m_ + n_), 0.0);
    for (const auto& [node, edge] : bfs_order_) {
        if (edge == SIZE_MAX) continue;  // component root
        const auto& [x, y] = support_[edge];
        double t = full.at(x, y);
        if (node >= m_)
            potential[static_cast<size_t>(node)] = t - potential[static_cast<size_t>(x)];
        else
            potential[static_cast<size_t>(node)] = t - potential[static_cast<size_t>(m_ + y)];
    }
    Eigen::VectorXd coords(count());
    for (Eigen::Index k = 0; k < count(); ++k) {
        const auto& [x, y] = free_edges_[static_cast<size_t>(k)];
        coords(k) = PhaseAssignment::fold(full.at(x, y) - potential[static_cast<size_t>(x)] -
                                          potential[static_cast<size_t>(m_ + y)]);
    }
    return coords;
}

LeakageReport leakage_regular(const RegularEmbedding& e) {
    const double s_a = von_neumann_entropy(partial_trace(e.state, {kRegA}));
    const double mi = mutual_information(e.source);
    LeakageReport report;
    report.s_x_bb = s_a;  // S(X;B) = S(B) = S(A) for regular embeddings
    report.s_aa_y = s_a;
    report.mutual_information = mi;
    report.toward_bob = s_a - mi;
    report.toward_alice = report.toward_bob;
    report.delta = report.toward_bob;
    return report;
}

LeakageReport leakage_general(const DensityMatrix& rho) {
    const RegisterLayout& layout = rho.layout();
    if (!layout.has(kRegA) || !layout.has(kRegB))
        throw LayoutMismatch("leakage_general: layout must contain registers A and B");

    DensityMatrix bob_view = partial_trace(rho, present_registers(layout, {kRegA, kRegB, kRegBp}));
    const double s_x_bb = holevo_information(measure_subsystem(bob_view, kRegA));

    DensityMatrix alice_view =
        partial_trace(rho, present_registers(layout, {kRegA, kRegAp, kRegB}));
    const double s_aa_y = holevo_information(measure_subsystem(alice_view, kRegB));

    const double mi =
        mutual_information(measured_distribution(layout, rho.matrix().diagonal().real()));

    LeakageReport report;
    report.s_x_bb = s_x_bb;
    report.s_aa_y = s_aa_y;
    report.mutual_information = mi;
    report.toward_bob = s_x_bb - mi;
    report.toward_alice = s_aa_y - mi;
    report.delta = std::max(report.toward_bob, report.toward_alice);
    return report;
}

LeakageReport leakage_general(const EmbeddingState& e) { return leakage_general(density(e.state())); }

EmbeddingState::EmbeddingState(JointDistribution source, StateVector state)
    : source_(std::move(source)), state_(std::move(state)) {
    const RegisterLayout& layout = state_.layout();
    if (!layout.has(kRegA) || !layout.has(kRegB))
        throw LayoutMismatch("EmbeddingState: layout must contain registers A and B");
    for (const auto& r : layout.registers())
        if (r.name != kRegA && r.name != kRegAp && r.name != kRegB && r.name != kRegBp)
            throw LayoutMismatch("EmbeddingState: unexpected register '" + r.name + "'");
    check_measurement_matches(source_, layout, state_.amplitudes().cwiseAbs2(), "EmbeddingState");
    strict_ = strict_residuals(source_, state_, 1e-9);
}

StrictCorrectness strict_correctness_check(const EmbeddingState& e, double tol) {
    StrictCorrectness result = e.strict();
    result.pass = result.residual_x_ybp < tol && result.residual_xap_y < tol;
    return result;
}

EmbeddingState lift(const RegularEmbedding& e) {
    // With dim-1 work registers the row-major index map is unchanged.
    RegisterLayout layout({{kRegA, e.source.x_alphabet().size()},
                           {kRegAp, 1},
                           {kRegB, e.source.y_alphabet().size()},
                           {kRegBp, 1}});
    return EmbeddingState(e.source, StateVector(std::move(layout), e.state.amplitudes()));
}

TripartiteState::TripartiteState(JointDistribution source, StateVector state)
    : source_(std::move(source)), state_(std::move(state)) {
    const RegisterLayout& layout = state_.layout();
    if (!layout.has(kRegE) || !layout.has(kRegA) || !layout.has(kRegB))
        throw LayoutMismatch("TripartiteState: layout must contain registers E, A and B");
    for (const auto& r : layout.registers())
        if (r.name != kRegE && r.name != kRegA && r.name != kRegAp && r.name != kRegB &&
            r.name != kRegBp)
            throw LayoutMismatch("TripartiteState: unexpected register '" + r.name + "'");
    check_measurement_matches(source_, layout, state_.amplitudes().cwiseAbs2(), "TripartiteState");
}

LeakageReport tripartite_leakage(const TripartiteState& t) {
    auto keep = present_registers(t.state().layout(), {kRegA, kRegAp, kRegB, kRegBp});
    return leakage_general(partial_trace(t.state(), keep));
}

EnvironmentMonotones environment_monotones(const TripartiteState& t) {
    const RegisterLayout& layout = t.state().layout();
    EnvironmentMonotones out;
    out.h_y_given_x = conditional_entropy(t.source());
    out.h_x_given_y = conditional_entropy(t.source().transposed());

    EighResult env = eigh(partial_trace(t.state(), {kRegE}).matrix(), true);
    for (Eigen::Index i = 0; i + 1 < env.values.size(); ++i)
        if (env.values(i) - env.values(i + 1) < 1e-9) out.degenerate_schmidt = true;

    // Rotate E into its eigenbasis so a computational dephasing of E realizes
    // the Schmidt-basis measurement W.
    StateVector rotated = apply_register_unitary(t.state(), kRegE, env.vectors.adjoint());

    auto side = [&](const char* party, const char* work) {
        std::vector<std::string> keep = present_registers(layout, {kRegE, party, work});
        DensityMatrix sigma = partial_trace(rotated, keep);
        sigma = dephase(sigma, kRegE);
        sigma = dephase(sigma, party);
        std::vector<std::string> view = present_registers(layout, {party, work});
        return von_neumann_entropy(sigma) - von_neumann_entropy(partial_trace(sigma, view));
    };
    out.s_w_given_xap = side(kRegA, kRegAp);
    out.s_w_given_ybp = side(kRegB, kRegBp);
    return out;
}

TripartiteState ideal_functionality_state(const JointDistribution& p) {
    const Eigen::Index m = p.x_alphabet().size();
    const Eigen::Index n = p.y_alphabet().size();
    RegisterLayout layout({{kRegE, m * n}, {kRegA, m}, {kRegB, n}});
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(layout.dim());
    for (const auto& [x, y] : p.support())
        amps((x * n + y) * (m * n) + x * n + y) = std::sqrt(p.prob(x, y));
    return TripartiteState(p, StateVector(std::move(layout), std::move(amps)));
}

}  // namespace embedlab
