#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>

#include "embedlab/embeddings.hpp"
#include "embedlab/errors.hpp"
#include "embedlab/optimize.hpp"
#include "embedlab/primitives.hpp"

using namespace embedlab;

namespace {

OptimizerConfig small_config(std::uint64_t seed, int restarts = 8) {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = 800;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("objective matches the direct leakage computation") {
    JointDistribution p = make_ot(1).dist;
    PhaseBasis basis = free_phase_coordinates(p);
    Eigen::VectorXd coords(1);
    coords << 2.2;
    double direct = leakage_regular(build_regular(p, basis.embed(coords))).delta;
    CHECK(evaluate_objective(p, coords) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("phase-free primitives take the fast path") {
    OptimizerResult r = minimize_leakage(make_rot(1).dist, small_config(3));
    CHECK(r.best_coords.size() == 0);
    CHECK(r.per_restart.size() == 1);
    CHECK(r.converged);
    CHECK(r.best_delta == doctest::Approx(0.31127812445913283).epsilon(1e-10));
    CHECK(r.best_phases.size() == make_rot(1).dist.support().size());
}

TEST_CASE("ot/1 minimum is the canonical embedding") {
    OptimizerResult r = minimize_leakage(make_ot(1).dist, small_config(7));
    CHECK(r.best_delta == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(r.converged);
    // Restart 0 starts from the canonical point, so no restart can beat it
    // by more than the solver's own improvement.
    double canonical_delta = leakage_regular(canonical(make_ot(1).dist)).delta;
    CHECK(r.best_delta <= canonical_delta + 1e-12);
    REQUIRE(!r.per_restart.empty());
    CHECK(r.per_restart[0].start_delta == doctest::Approx(canonical_delta).epsilon(1e-12));
}

TEST_CASE("sand minimum matches its canonical embedding") {
    OptimizerResult r = minimize_leakage(make_sand().dist, small_config(11));
    CHECK(r.best_delta == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("independent distribution minimizes to zero leakage") {
    JointDistribution p(Alphabet({"0", "1"}), Alphabet({"0", "1"}),
                        Eigen::MatrixXd::Constant(2, 2, 0.25));
    OptimizerResult r = minimize_leakage(p, small_config(5, 4));
    CHECK(r.best_delta < 1e-6);
    CHECK(r.best_delta > -1e-9);
}

TEST_CASE("same seed gives bit-identical results across thread counts") {
    JointDistribution p = make_ot(1).dist;
    OptimizerConfig one = small_config(42);
    one.threads = 1;
    OptimizerConfig four = small_config(42);
    four.threads = 4;

    OptimizerResult a = minimize_leakage(p, one);
    OptimizerResult b = minimize_leakage(p, four);
    CHECK(a.best_delta == b.best_delta);  // bitwise
    REQUIRE(a.best_coords.size() == b.best_coords.size());
    for (Eigen::Index i = 0; i < a.best_coords.size(); ++i)
        CHECK(a.best_coords(i) == b.best_coords(i));
    REQUIRE(a.per_restart.size() == b.per_restart.size());
    for (size_t i = 0; i < a.per_restart.size(); ++i) {
        CHECK(a.per_restart[i].start_delta == b.per_restart[i].start_delta);
        CHECK(a.per_restart[i].final_delta == b.per_restart[i].final_delta);
        CHECK(a.per_restart[i].iters == b.per_restart[i].iters);
    }

    OptimizerResult c = minimize_leakage(p, one);
    CHECK(c.best_delta == a.best_delta);
}

TEST_CASE("different seeds change the random starts") {
    JointDistribution p = make_ot(1).dist;
    OptimizerResult a = minimize_leakage(p, small_config(1, 3));
    OptimizerResult b = minimize_leakage(p, small_config(2, 3));
    REQUIRE(a.per_restart.size() == 3);
    // Restart 0 is canonical in both runs; the random restarts should differ.
    CHECK(a.per_restart[0].start_delta == b.per_restart[0].start_delta);
    CHECK(a.per_restart[1].start_delta != b.per_restart[1].start_delta);
}

TEST_CASE("result coordinates reproduce the reported leakage") {
    JointDistribution p = make_sand().dist;
    OptimizerResult r = minimize_leakage(p, small_config(13, 4));
    CHECK(evaluate_objective(p, r.best_coords) == doctest::Approx(r.best_delta).epsilon(1e-9));
    // The reported phases build the same state.
    double via_phases = leakage_regular(build_regular(p, r.best_phases)).delta;
    CHECK(via_phases == doctest::Approx(r.best_delta).epsilon(1e-9));
}

TEST_CASE("configuration validation") {
    JointDistribution p = make_ot(1).dist;
    OptimizerConfig bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(minimize_leakage(p, bad), ValidationError);
    OptimizerConfig badf;
    badf.ftol = 0.0;
    CHECK_THROWS_AS(minimize_leakage(p, badf), ValidationError);
}

TEST_CASE("oversized search spaces are refused") {
    // A full-support 10x10 table has 81 free coordinates, over the cap of 64.
    JointDistribution big(
        Alphabet([] {
            std::vector<std::string> v;
            for (int i = 0; i < 10; ++i) v.push_back("x" + std::to_string(i));
            return v;
        }()),
        Alphabet([] {
            std::vector<std::string> v;
            for (int i = 0; i < 10; ++i) v.push_back("y" + std::to_string(i));
            return v;
        }()),
        Eigen::MatrixXd::Constant(10, 10, 0.01));
    CHECK_THROWS_AS(minimize_leakage(big, small_config(1, 1)), DimensionTooLarge);
}
