#include "embedlab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "embedlab/attacks.hpp"
#include "embedlab/embeddings.hpp"
#include "embedlab/errors.hpp"
#include "embedlab/optimize.hpp"
#include "embedlab/primitives.hpp"
#include "embedlab/probdist.hpp"
#include "embedlab/quantum.hpp"
#include "embedlab/rng.hpp"

namespace embedlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Fixed per-property stream indices: results do not depend on suite order.
enum StreamId : std::uint64_t {
    kStreamWorkSymmetry = 100,
    kStreamAdditivity = 101,
    kStreamSchmidt = 102,
    kStreamLocalUnitary = 103,
    kStreamGauge = 104,
    kStreamDependentPart = 200,
    kStreamPartition = 201,
    kStreamTriviality = 202,
    kStreamChainRule = 203,
    kStreamHolevoDominance = 300,
    kStreamAverageEncoding = 301,
    kStreamCqUnitary = 302,
    kStreamMonotoneRandom = 400,
    kStreamReductionRandom = 500,
};

// ---------------------------------------------------------------------------
// Random instance generators
// ---------------------------------------------------------------------------

std::complex<double> gaussian(SplitMix64& rng) {
    const double u1 = 1.0 - rng.uniform();  // (0, 1]
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

Eigen::MatrixXcd ginibre(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = gaussian(rng);
    return g;
}

Eigen::MatrixXcd random_unitary(SplitMix64& rng, Eigen::Index d) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(rng, d, d));
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR();
    for (Eigen::Index i = 0; i < d; ++i) {
        const std::complex<double> rii = r(i, i);
        if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

Eigen::VectorXd random_simplex(SplitMix64& rng, Eigen::Index k) {
    Eigen::VectorXd w(k);
    for (Eigen::Index i = 0; i < k; ++i) w(i) = rng.uniform(0.05, 1.0);
    return w / w.sum();
}

DensityMatrix random_density(SplitMix64& rng, Eigen::Index d, bool pure) {
    RegisterLayout layout({{"R", d}});
    if (pure) {
        Eigen::VectorXcd v = ginibre(rng, d, 1);
        v /= v.norm();
        return DensityMatrix(std::move(layout), v * v.adjoint());
    }
    Eigen::MatrixXcd g = ginibre(rng, d, d);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(layout), std::move(rho));
}

std::vector<std::string> indexed_labels(const char* prefix, Eigen::Index n) {
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

JointDistribution random_joint(SplitMix64& rng, Eigen::Index max_side, double sparsity = 0.35) {
    for (;;) {
        const Eigen::Index m = 2 + static_cast<Eigen::Index>(rng.next() % (max_side - 1));
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next() % (max_side - 1));
        Eigen::MatrixXd p(m, n);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                p(i, j) = rng.uniform() < sparsity ? 0.0 : rng.uniform(0.05, 1.0);
        if (p.sum() < 1e-9) continue;
        p /= p.sum();
        JointDistribution jd(Alphabet(indexed_labels("x", m)), Alphabet(indexed_labels("y", n)),
                             std::move(p));
        if (jd.x_alphabet().size() >= 2 && jd.y_alphabet().size() >= 2) return jd;
    }
}

PhaseAssignment random_phases(SplitMix64& rng, const JointDistribution& p) {
    PhaseAssignment theta;
    for (const auto& [x, y] : p.support()) theta.set(x, y, rng.uniform(0.0, kTwoPi));
    return theta;
}

struct BlockMixture {
    JointDistribution combined;
    std::vector<JointDistribution> blocks;
    Eigen::VectorXd weights;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> offsets;  // (row, col) per block
};

BlockMixture random_block_mixture(SplitMix64& rng) {
    const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.next() % 2);
    std::vector<JointDistribution> blocks;
    for (Eigen::Index j = 0; j < k; ++j) blocks.push_back(random_joint(rng, 3));
    Eigen::VectorXd w = random_simplex(rng, k);

    Eigen::Index rows = 0, cols = 0;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> offsets;
    for (const auto& b : blocks) {
        offsets.emplace_back(rows, cols);
        rows += b.x_alphabet().size();
        cols += b.y_alphabet().size();
    }
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rows, cols);
    std::vector<std::string> xs, ys;
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto& b = blocks[static_cast<size_t>(j)];
        p.block(offsets[static_cast<size_t>(j)].first, offsets[static_cast<size_t>(j)].second,
                b.x_alphabet().size(), b.y_alphabet().size()) = w(j) * b.probs();
        for (const auto& l : b.x_alphabet().labels())
            xs.push_back("b" + std::to_string(j) + ":" + l);
        for (const auto& l : b.y_alphabet().labels())
            ys.push_back("b" + std::to_string(j) + ":" + l);
    }
    return BlockMixture{JointDistribution(Alphabet(std::move(xs)), Alphabet(std::move(ys)),
                                          std::move(p)),
                        std::move(blocks), std::move(w), std::move(offsets)};
}

CqEnsemble random_ensemble(SplitMix64& rng, Eigen::Index max_labels, Eigen::Index max_dim) {
    const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.next() % (max_labels - 1));
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % (max_dim - 1));
    std::vector<DensityMatrix> states;
    for (Eigen::Index i = 0; i < k; ++i)
        states.push_back(random_density(rng, d, rng.uniform() < 0.5));
    return CqEnsemble(Alphabet(indexed_labels("s", k)), random_simplex(rng, k),
                      std::move(states));
}

// Strictly correct embedding with work registers: shared Schmidt weights and
// local basis changes that depend on x (resp. y) only, so both Markov
// conditions hold by construction.
EmbeddingState random_strict_embedding(SplitMix64& rng) {
    JointDistribution p = random_joint(rng, 4);
    const Eigen::Index m = p.x_alphabet().size();
    const Eigen::Index n = p.y_alphabet().size();
    const Eigen::Index kdim = 1 + static_cast<Eigen::Index>(rng.next() % 3);

    Eigen::VectorXd lambda = random_simplex(rng, kdim);
    std::vector<Eigen::MatrixXcd> vx, wy;
    for (Eigen::Index x = 0; x < m; ++x) vx.push_back(random_unitary(rng, kdim));
    for (Eigen::Index y = 0; y < n; ++y) wy.push_back(random_unitary(rng, kdim));

    RegisterLayout layout({{kRegA, m}, {kRegAp, kdim}, {kRegB, n}, {kRegBp, kdim}});
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(layout.dim());
    for (const auto& [x, y] : p.support()) {
        const std::complex<double> coef =
            std::polar(std::sqrt(p.prob(x, y)), rng.uniform(0.0, kTwoPi));
        const Eigen::MatrixXcd joint_work = vx[static_cast<size_t>(x)] *
                                            lambda.cwiseSqrt().asDiagonal() *
                                            wy[static_cast<size_t>(y)].transpose();
        for (Eigen::Index a = 0; a < kdim; ++a)
            for (Eigen::Index b = 0; b < kdim; ++b)
                amps(((x * kdim + a) * n + y) * kdim + b) = coef * joint_work(a, b);
    }
    return EmbeddingState(std::move(p), StateVector(std::move(layout), std::move(amps)));
}

// Collapse both alphabets to their dependent parts.
JointDistribution collapse_both(const JointDistribution& p) {
    JointDistribution cx = dependent_part(p).collapsed;
    return dependent_part(cx.transposed()).collapsed.transposed();
}

// ---------------------------------------------------------------------------
// Property harness
// ---------------------------------------------------------------------------

// Runs `fn` (returning a residual) `total` times on a dedicated stream;
// instances pass when the residual does not exceed `tol`.
PropertyResult run_property(const std::string& name, const std::string& detail, double tol,
                            int total, std::uint64_t seed, std::uint64_t stream,
                            const std::function<double(SplitMix64&)>& fn) {
    PropertyResult result;
    result.name = name;
    result.detail = detail;
    result.total = total;
    SplitMix64 rng(SplitMix64::substream(seed, stream));
    for (int i = 0; i < total; ++i) {
        const double residual = fn(rng);
        result.worst = std::max(result.worst, residual);
        if (residual <= tol) {
            ++result.passed;
        } else if (result.detail.find("first failure") == std::string::npos) {
            std::ostringstream os;
            os << result.detail << "; first failure at instance " << i << " with residual "
               << residual;
            result.detail = os.str();
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

SuiteReport suite_symmetry(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "symmetry";

    report.properties.push_back(run_property(
        "work_register_symmetry", "|toward_bob - toward_alice| on strict embeddings, tol 1e-8",
        1e-8, 100, seed, kStreamWorkSymmetry, [](SplitMix64& rng) {
            LeakageReport l = leakage_general(random_strict_embedding(rng));
            return std::abs(l.toward_bob - l.toward_alice);
        }));

    report.properties.push_back(run_property(
        "component_additivity", "|delta - sum_j w_j delta_j| on block mixtures, tol 1e-9", 1e-9,
        50, seed, kStreamAdditivity, [](SplitMix64& rng) {
            BlockMixture mix = random_block_mixture(rng);
            PhaseAssignment theta = random_phases(rng, mix.combined);
            const double whole = leakage_regular(build_regular(mix.combined, theta)).delta;
            double parts = 0.0;
            for (size_t j = 0; j < mix.blocks.size(); ++j) {
                PhaseAssignment sub;
                for (const auto& [x, y] : mix.blocks[j].support())
                    sub.set(x, y, theta.at(x + mix.offsets[j].first, y + mix.offsets[j].second));
                parts += mix.weights(static_cast<Eigen::Index>(j)) *
                         leakage_regular(build_regular(mix.blocks[j], sub)).delta;
            }
            return std::abs(whole - parts);
        }));

    report.properties.push_back(run_property(
        "schmidt_spectra", "spectral distance of the two reductions of a pure state, tol 1e-9",
        1e-9, 50, seed, kStreamSchmidt, [](SplitMix64& rng) {
            const Eigen::Index da = 2 + static_cast<Eigen::Index>(rng.next() % 4);
            const Eigen::Index db = 2 + static_cast<Eigen::Index>(rng.next() % 4);
            Eigen::VectorXcd v = ginibre(rng, da * db, 1);
            v /= v.norm();
            StateVector psi(RegisterLayout({{kRegA, da}, {kRegB, db}}), std::move(v));
            Eigen::VectorXd sa = eigenvalues_hermitian(partial_trace(psi, {kRegA}));
            Eigen::VectorXd sb = eigenvalues_hermitian(partial_trace(psi, {kRegB}));
            const Eigen::Index common = std::min(sa.size(), sb.size());
            double worst = 0.0;
            for (Eigen::Index i = 0; i < common; ++i)
                worst = std::max(worst, std::abs(sa(i) - sb(i)));
            for (Eigen::Index i = common; i < sa.size(); ++i)
                worst = std::max(worst, std::abs(sa(i)));
            for (Eigen::Index i = common; i < sb.size(); ++i)
                worst = std::max(worst, std::abs(sb(i)));
            return worst;
        }));

    report.properties.push_back(run_property(
        "local_unitary_invariance", "|S(rho_A) change| under local unitaries, tol 1e-9", 1e-9, 20,
        seed, kStreamLocalUnitary, [](SplitMix64& rng) {
            JointDistribution p = random_joint(rng, 4);
            RegularEmbedding e = build_regular(p, random_phases(rng, p));
            const double before = von_neumann_entropy(partial_trace(e.state, {kRegA}));
            StateVector moved = apply_register_unitary(
                e.state, kRegA, random_unitary(rng, p.x_alphabet().size()));
            moved = apply_register_unitary(moved, kRegB,
                                           random_unitary(rng, p.y_alphabet().size()));
            const double after = von_neumann_entropy(partial_trace(moved, {kRegA}));
            return std::abs(after - before);
        }));

    report.properties.push_back(run_property(
        "gauge_reduction", "|delta(theta) - delta(reduced theta)|, tol 1e-9", 1e-9, 20, seed,
        kStreamGauge, [](SplitMix64& rng) {
            JointDistribution p = random_joint(rng, 4);
            PhaseAssignment theta = random_phases(rng, p);
            PhaseBasis basis = free_phase_coordinates(p);
            const double full = leakage_regular(build_regular(p, theta)).delta;
            const double reduced =
                leakage_regular(build_regular(p, basis.embed(basis.reduce(theta)))).delta;
            return std::abs(full - reduced);
        }));

    return report;
}

SuiteReport suite_markov(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "markov";

    report.properties.push_back(run_property(
        "dependent_part_information",
        "max of |I(X;Y)-I(Xdep;Y)| and |H(Y|Xdep)-H(Y|X)|, tol 1e-9", 1e-9, 100, seed,
        kStreamDependentPart, [](SplitMix64& rng) {
            JointDistribution p = random_joint(rng, 5);
            JointDistribution c = dependent_part(p).collapsed;
            const double di = std::abs(mutual_information(p) - mutual_information(c));
            const double dh = std::abs(conditional_entropy(c) - conditional_entropy(p));
            return std::max(di, dh);
        }));

    report.properties.push_back(run_property(
        "partition_stability", "mismatches between X collapsed by Y and by Ydep, tol 0", 0.0, 50,
        seed, kStreamPartition, [](SplitMix64& rng) {
            JointDistribution p = random_joint(rng, 5);
            std::vector<Eigen::Index> direct = dependent_part(p).source_to_class;
            JointDistribution y_collapsed = dependent_part(p.transposed()).collapsed.transposed();
            std::vector<Eigen::Index> indirect = dependent_part(y_collapsed).source_to_class;
            double mismatches = 0.0;
            for (size_t i = 0; i < direct.size(); ++i)
                if (direct[i] != indirect[i]) mismatches += 1.0;
            return mismatches;
        }));

    report.properties.push_back(run_property(
        "triviality_agreement", "disagreement of the two zero-tests (0/1), tol 0", 0.0, 100, seed,
        kStreamTriviality, [](SplitMix64& rng) {
            TrivialityReport t = is_trivial(random_joint(rng, 5));
            const bool x_side = t.h_xdep_given_y < 1e-9;
            const bool y_side = t.h_ydep_given_x < 1e-9;
            return x_side == y_side ? 0.0 : 1.0;
        }));

    report.properties.push_back(run_property(
        "component_chain_rule", "|I(X;Y) - H(C) - I(X;Y|C)|, tol 1e-9", 1e-9, 50, seed,
        kStreamChainRule, [](SplitMix64& rng) {
            BlockMixture mix = random_block_mixture(rng);
            const JointDistribution& p = mix.combined;
            ComponentPartition parts = connected_components(p);
            double conditional_mi = 0.0;
            for (Eigen::Index c = 0; c < parts.count; ++c) {
                std::vector<Eigen::Index> rows, cols;
                for (size_t i = 0; i < parts.x_component.size(); ++i)
                    if (parts.x_component[i] == c) rows.push_back(static_cast<Eigen::Index>(i));
                for (size_t j = 0; j < parts.y_component.size(); ++j)
                    if (parts.y_component[j] == c) cols.push_back(static_cast<Eigen::Index>(j));
                Eigen::MatrixXd sub(rows.size(), cols.size());
                std::vector<std::string> xs, ys;
                for (size_t i = 0; i < rows.size(); ++i) {
                    xs.push_back(p.x_alphabet().label(rows[i]));
                    for (size_t j = 0; j < cols.size(); ++j)
                        sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                            p.prob(rows[i], cols[j]);
                }
                for (size_t j = 0; j < cols.size(); ++j) ys.push_back(p.y_alphabet().label(cols[j]));
                sub /= sub.sum();
                conditional_mi +=
                    parts.weights(c) * mutual_information(JointDistribution(
                                           Alphabet(std::move(xs)), Alphabet(std::move(ys)), sub));
            }
            const double lhs = mutual_information(p);
            const double rhs = shannon_entropy(parts.weights) + conditional_mi;
            return std::abs(lhs - rhs);
        }));

    return report;
}

SuiteReport suite_holevo(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "holevo";

    report.properties.push_back(run_property(
        "holevo_dominance", "I_acc(computational measurement) - chi, tol 1e-9", 1e-9, 200, seed,
        kStreamHolevoDominance, [](SplitMix64& rng) {
            CqEnsemble e = random_ensemble(rng, 4, 8);
            const Eigen::Index d = e.states()[0].dim();
            Eigen::MatrixXd joint(e.size(), d);
            for (Eigen::Index i = 0; i < e.size(); ++i)
                joint.row(i) = e.weights()(i) *
                               e.states()[static_cast<size_t>(i)].matrix().diagonal().real()
                                   .cwiseMax(0.0).transpose();
            joint /= joint.sum();
            JointDistribution measured(Alphabet(indexed_labels("s", e.size())),
                                       Alphabet(indexed_labels("k", d)), std::move(joint));
            return mutual_information(measured) - holevo_information(e);
        }));

    report.properties.push_back(run_property(
        "average_encoding", "lhs - rhs of the average-encoding bound, tol 1e-9", 1e-9, 200, seed,
        kStreamAverageEncoding, [](SplitMix64& rng) {
            EncodingGap gap = average_encoding_gap(random_ensemble(rng, 4, 8));
            return gap.lhs - gap.rhs;
        }));

    report.properties.push_back(run_property(
        "cq_controlled_unitary_invariance",
        "max change of S(XR) and H(X) under controlled unitaries, tol 1e-9", 1e-9, 50, seed,
        kStreamCqUnitary, [](SplitMix64& rng) {
            const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.next() % 3);
            const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % 3);
            Eigen::VectorXd w = random_simplex(rng, k);
            RegisterLayout layout({{"X", k}, {"R", d}});
            Eigen::MatrixXcd before = Eigen::MatrixXcd::Zero(k * d, k * d);
            Eigen::MatrixXcd after = Eigen::MatrixXcd::Zero(k * d, k * d);
            for (Eigen::Index x = 0; x < k; ++x) {
                DensityMatrix rho = random_density(rng, d, rng.uniform() < 0.5);
                Eigen::MatrixXcd u = random_unitary(rng, d);
                before.block(x * d, x * d, d, d) = w(x) * rho.matrix();
                after.block(x * d, x * d, d, d) = w(x) * (u * rho.matrix() * u.adjoint());
            }
            const double s_before = von_neumann_entropy(DensityMatrix(layout, before));
            const double s_after = von_neumann_entropy(DensityMatrix(layout, after));
            Eigen::VectorXd marginal(k);
            for (Eigen::Index x = 0; x < k; ++x)
                marginal(x) = after.block(x * d, x * d, d, d).trace().real();
            return std::max(std::abs(s_after - s_before),
                            std::abs(shannon_entropy(marginal) - shannon_entropy(w)));
        }));

    return report;
}

SuiteReport suite_monotone(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "monotone";

    std::vector<JointDistribution> instances;
    instances.push_back(make_rot(1).dist);
    instances.push_back(make_rot(2).dist);
    instances.push_back(make_ot(1).dist);
    instances.push_back(make_sand().dist);
    {
        SplitMix64 rng(SplitMix64::substream(seed, kStreamMonotoneRandom));
        for (int i = 0; i < 6; ++i) instances.push_back(collapse_both(random_joint(rng, 3)));
    }

    PropertyResult equalities;
    equalities.name = "ideal_state_monotone_equalities";
    equalities.detail =
        "|S(W|XA') - H(Y|X)| and |S(W|YB') - H(X|Y)| on ideal-functionality states, tol 1e-9";
    PropertyResult inequalities;
    inequalities.name = "environment_monotone_inequalities";
    inequalities.detail = "H(Y|X) - S(W|XA') and H(X|Y) - S(W|YB'), tol 1e-9";
    PropertyResult nonleaking;
    nonleaking.name = "ideal_state_nonleaking";
    nonleaking.detail = "delta of the E-traced ideal-functionality state, tol 1e-9";
    for (const auto& p : instances) {
        TripartiteState t = ideal_functionality_state(p);
        EnvironmentMonotones m = environment_monotones(t);
        const double eq = std::max(std::abs(m.s_w_given_xap - m.h_y_given_x),
                                   std::abs(m.s_w_given_ybp - m.h_x_given_y));
        equalities.total += 1;
        equalities.worst = std::max(equalities.worst, eq);
        if (eq <= 1e-9) equalities.passed += 1;

        const double gap = std::max(m.h_y_given_x - m.s_w_given_xap,
                                    m.h_x_given_y - m.s_w_given_ybp);
        inequalities.total += 1;
        inequalities.worst = std::max(inequalities.worst, gap);
        if (gap <= 1e-9) inequalities.passed += 1;

        const double delta = std::abs(tripartite_leakage(t).delta);
        nonleaking.total += 1;
        nonleaking.worst = std::max(nonleaking.worst, delta);
        if (delta <= 1e-9) nonleaking.passed += 1;
    }
    report.properties.push_back(std::move(equalities));
    report.properties.push_back(std::move(inequalities));
    report.properties.push_back(std::move(nonleaking));

    {
        PropertyResult exact;
        exact.name = "rot1_exact_values";
        exact.detail = "S(W|XA') = 1 and S(W|YB') = 1/2 for the rot/1 ideal state, tol 1e-9";
        EnvironmentMonotones m = environment_monotones(ideal_functionality_state(make_rot(1).dist));
        const double r1 = std::abs(m.s_w_given_xap - 1.0);
        const double r2 = std::abs(m.s_w_given_ybp - 0.5);
        exact.total = 2;
        exact.passed = (r1 <= 1e-9 ? 1 : 0) + (r2 <= 1e-9 ? 1 : 0);
        exact.worst = std::max(r1, r2);
        report.properties.push_back(std::move(exact));
    }

    {
        PropertyResult trivial_env;
        trivial_env.name = "dimension_one_environment";
        trivial_env.detail =
            "S(W|XA') and S(W|YB') vanish with |E| = 1, and rot/ot/sand then violate the "
            "environment monotone lower bound by > 0.1";
        for (const auto& spec : {make_rot(1), make_ot(1), make_sand()}) {
            const JointDistribution& p = spec.dist;
            RegularEmbedding reg = canonical(p);
            RegisterLayout layout({{kRegE, 1},
                                   {kRegA, p.x_alphabet().size()},
                                   {kRegB, p.y_alphabet().size()}});
            TripartiteState t(p, StateVector(std::move(layout), reg.state.amplitudes()));
            EnvironmentMonotones m = environment_monotones(t);
            const double zero_residual =
                std::max(std::abs(m.s_w_given_xap), std::abs(m.s_w_given_ybp));
            const bool violated = m.s_w_given_xap < m.h_y_given_x - 0.1;
            trivial_env.total += 1;
            trivial_env.worst = std::max(trivial_env.worst, zero_residual);
            if (zero_residual <= 1e-9 && violated) trivial_env.passed += 1;
        }
        report.properties.push_back(std::move(trivial_env));
    }

    return report;
}

SuiteReport suite_reduction(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "reduction";

    report.properties.push_back(run_property(
        "dependent_part_lower_bound",
        "delta_min(collapsed) - delta_min(P), tol 1e-4", 1e-4, 8, seed, kStreamReductionRandom,
        [seed](SplitMix64& rng) {
            JointDistribution p = random_joint(rng, 3, 0.45);
            while (free_phase_coordinates(p).count() > 8)
                p = random_joint(rng, 3, 0.45);
            JointDistribution core = collapse_both(p);
            OptimizerConfig cfg;
            cfg.restarts = 8;
            cfg.max_iters = 600;
            cfg.seed = seed;
            const double full = minimize_leakage(p, cfg).best_delta;
            cfg.restarts = 6;
            const double collapsed = minimize_leakage(core, cfg).best_delta;
            return collapsed - full;
        }));

    {
        PropertyResult red;
        red.name = "ot_dominates_rot1";
        red.detail = "delta(rot/1) - delta_min(ot/1), tol 1e-4";
        OptimizerConfig cfg;
        cfg.restarts = 8;
        cfg.seed = seed;
        const double ot_min = minimize_leakage(make_ot(1).dist, cfg).best_delta;
        const double rot1 = leakage_regular(canonical(make_rot(1).dist)).delta;
        red.total = 1;
        red.worst = rot1 - ot_min;
        red.passed = red.worst <= 1e-4 ? 1 : 0;
        report.properties.push_back(std::move(red));
    }

    return report;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"symmetry", "markov", "holevo", "monotone", "reduction"};
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "symmetry") return suite_symmetry(seed);
    if (name == "markov") return suite_markov(seed);
    if (name == "holevo") return suite_holevo(seed);
    if (name == "monotone") return suite_monotone(seed);
    if (name == "reduction") return suite_reduction(seed);
    throw ParseError("unknown suite '" + name +
                     "' (expected symmetry, markov, holevo, monotone, reduction or all)");
}

std::vector<SuiteReport> run_all_suites(std::uint64_t seed) {
    std::vector<SuiteReport> reports;
    for (const auto& name : suite_names()) reports.push_back(run_suite(name, seed));
    return reports;
}

}  // namespace embedlab
