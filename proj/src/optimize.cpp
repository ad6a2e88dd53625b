#include "embedlab/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "embedlab/errors.hpp"
#include "embedlab/rng.hpp"

namespace embedlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr Eigen::Index kMaxCoordinates = 64;

int resolve_threads(int requested, int restarts) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("EMBEDLAB_THREADS")) {
            n = std::atoi(env);
        }
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::min(n, restarts);
}

struct NelderMeadOutcome {
    Eigen::VectorXd best;
    double value = 0.0;
    int iters = 0;
    bool converged = false;
};

// Standard downhill simplex (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). The objective is 2*pi-periodic in every coordinate, so no
// bounds are enforced; points are folded when the embedding is built.
template <typename Fn>
NelderMeadOutcome nelder_mead(const Fn& f, const Eigen::VectorXd& start, double scale,
                              int max_iters, double ftol) {
    const Eigen::Index k = start.size();
    const Eigen::Index n = k + 1;
    std::vector<Eigen::VectorXd> xs(static_cast<size_t>(n), start);
    for (Eigen::Index i = 0; i < k; ++i) xs[static_cast<size_t>(i + 1)](i) += scale;
    Eigen::VectorXd fs(n);
    for (Eigen::Index i = 0; i < n; ++i) fs(i) = f(xs[static_cast<size_t>(i)]);

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&fs](Eigen::Index a, Eigen::Index b) { return fs(a) < fs(b); });
    };

    NelderMeadOutcome out;
    for (out.iters = 0; out.iters < max_iters; ++out.iters) {
        sort_order();
        const Eigen::Index best = order.front(), worst = order.back();
        const Eigen::Index second_worst = order[static_cast<size_t>(n - 2)];
        if (fs(worst) - fs(best) < ftol) {
            out.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (Eigen::Index i = 0; i < n; ++i)
            if (order[static_cast<size_t>(i)] != worst) centroid += xs[static_cast<size_t>(order[static_cast<size_t>(i)])];
        centroid /= static_cast<double>(k);

        Eigen::VectorXd reflected = centroid + (centroid - xs[static_cast<size_t>(worst)]);
        double fr = f(reflected);
        if (fr < fs(best)) {
            Eigen::VectorXd expanded = centroid + 2.0 * (centroid - xs[static_cast<size_t>(worst)]);
            double fe = f(expanded);
            if (fe < fr) {
                xs[static_cast<size_t>(worst)] = std::move(expanded);
                fs(worst) = fe;
            } else {
                xs[static_cast<size_t>(worst)] = std::move(reflected);
                fs(worst) = fr;
            }
            continue;
        }
        if (fr < fs(second_worst)) {
            xs[static_cast<size_t>(worst)] = std::move(reflected);
            fs(worst) = fr;
            continue;
        }
        if (fr < fs(worst)) {  // outside contraction
            Eigen::VectorXd contracted = centroid + 0.5 * (reflected - centroid);
            double fc = f(contracted);
            if (fc <= fr) {
                xs[static_cast<size_t>(worst)] = std::move(contracted);
                fs(worst) = fc;
                continue;
            }
        } else {  // inside contraction
            Eigen::VectorXd contracted = centroid - 0.5 * (centroid - xs[static_cast<size_t>(worst)]);
            double fc = f(contracted);
            if (fc < fs(worst)) {
                xs[static_cast<size_t>(worst)] = std::move(contracted);
                fs(worst) = fc;
                continue;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) {  // shrink toward the best vertex
            if (order[static_cast<size_t>(i)] == best) continue;
            Eigen::Index j = order[static_cast<size_t>(i)];
            xs[static_cast<size_t>(j)] =
                xs[static_cast<size_t>(best)] + 0.5 * (xs[static_cast<size_t>(j)] - xs[static_cast<size_t>(best)]);
            fs(j) = f(xs[static_cast<size_t>(j)]);
        }
    }
    sort_order();
    out.best = xs[static_cast<size_t>(order.front())];
    out.value = fs(order.front());
    return out;
}

}  // namespace

double evaluate_objective(const JointDistribution& p, const Eigen::VectorXd& coords) {
    PhaseBasis basis = free_phase_coordinates(p);
    return leakage_regular(build_regular(p, basis.embed(coords))).delta;
}

OptimizerResult minimize_leakage(const JointDistribution& p, const OptimizerConfig& cfg) {
    if (cfg.restarts < 1) throw ValidationError("minimize_leakage: restarts must be >= 1");
    if (!(cfg.ftol > 0.0)) throw ValidationError("minimize_leakage: ftol must be positive");

    const PhaseBasis basis = free_phase_coordinates(p);
    const Eigen::Index k = basis.count();
    if (k > kMaxCoordinates)
        throw DimensionTooLarge("minimize_leakage: " + std::to_string(k) +
                                " free coordinates exceed the guard of " +
                                std::to_string(kMaxCoordinates));

    auto objective = [&p, &basis](const Eigen::VectorXd& coords) {
        return leakage_regular(build_regular(p, basis.embed(coords))).delta;
    };

    OptimizerResult result;
    if (k == 0) {  // fully gauge-fixed: the canonical embedding is the only one
        result.best_coords = Eigen::VectorXd(0);
        result.best_phases = basis.embed(result.best_coords);
        result.best_delta = objective(result.best_coords);
        result.per_restart.push_back({0, result.best_delta, result.best_delta, 0, true});
        result.converged = true;
        return result;
    }

    const int restarts = cfg.restarts;
    std::vector<RestartTrace> traces(static_cast<size_t>(restarts));
    std::vector<Eigen::VectorXd> finals(static_cast<size_t>(restarts));

    std::atomic<int> counter{0};
    auto work = [&] {
        for (int i = counter.fetch_add(1); i < restarts; i = counter.fetch_add(1)) {
            Eigen::VectorXd start = Eigen::VectorXd::Zero(k);
            if (i > 0) {
                SplitMix64 rng(SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(i)));
                for (Eigen::Index j = 0; j < k; ++j) start(j) = rng.uniform(0.0, kTwoPi);
            }
            double f0 = objective(start);
            NelderMeadOutcome nm =
                nelder_mead(objective, start, cfg.simplex_scale, cfg.max_iters, cfg.ftol);
            traces[static_cast<size_t>(i)] = {i, f0, nm.value, nm.iters, nm.converged};
            finals[static_cast<size_t>(i)] = std::move(nm.best);
        }
    };

    const int nthreads = resolve_threads(cfg.threads, restarts);
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    int winner = 0;
    for (int i = 1; i < restarts; ++i)
        if (traces[static_cast<size_t>(i)].final_delta < traces[static_cast<size_t>(winner)].final_delta)
            winner = i;  // strict <: ties resolve to the lowest restart index

    result.per_restart = std::move(traces);
    result.best_coords = basis.reduce(basis.embed(finals[static_cast<size_t>(winner)]));
    result.best_phases = basis.embed(result.best_coords);
    result.best_delta = result.per_restart[static_cast<size_t>(winner)].final_delta;
    result.converged = result.per_restart[static_cast<size_t>(winner)].converged;
    return result;
}

}  // namespace embedlab
