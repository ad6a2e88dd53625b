#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <map>

#include "embedlab/attacks.hpp"
#include "embedlab/embeddings.hpp"
#include "embedlab/errors.hpp"
#include "embedlab/primitives.hpp"

using namespace embedlab;

namespace {

RegularEmbedding canonical_ot1() { return canonical(make_ot(1).dist); }

const AttackOutcome::Row& row(const AttackOutcome& a, const std::string& label) {
    for (const auto& r : a.outcome_table)
        if (r.label == label) return r;
    REQUIRE(false);
    return a.outcome_table.front();
}

}  // namespace

TEST_CASE("label helpers") {
    CHECK(xor_of_bits("01") == "1");
    CHECK(xor_of_bits("11") == "0");
    CHECK(xor_of_bits("0") == "0");
    CHECK(xor_of_bits("1101") == "1");
    CHECK_THROWS_AS(xor_of_bits("0a"), ValidationError);

    CHECK(choice_prefix("0:1") == "0");
    CHECK(choice_prefix("1:00") == "1");
    CHECK_THROWS_AS(choice_prefix("10"), ValidationError);
}

TEST_CASE("attack povms are well formed") {
    CHECK(bob_xor_povm().dim() == 4);
    CHECK(bob_xor_povm().elements().size() == 3);
    CHECK(alice_choice_povm().dim() == 4);
    CHECK(alice_choice_povm().elements().size() == 3);
}

TEST_CASE("xor attack on the canonical ot/1 embedding") {
    AttackOutcome a = run_povm_attack(canonical_ot1(), bob_xor_povm(), Side::B,
                                      {"B0", "B1"}, xor_of_bits);
    CHECK(a.conclusive_probability == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(a.conditional_correctness == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(row(a, "B0").probability == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(row(a, "B0").inferred == "0");
    CHECK(row(a, "B0").conclusive);
    CHECK(row(a, "B1").probability == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(row(a, "B1").inferred == "1");
    CHECK(row(a, "B?").probability == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_FALSE(row(a, "B?").conclusive);
    CHECK(row(a, "B?").inferred.empty());

    double total = 0.0;
    for (const auto& r : a.outcome_table) total += r.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("choice attack on the canonical ot/1 embedding") {
    AttackOutcome a = run_povm_attack(canonical_ot1(), alice_choice_povm(), Side::A,
                                      {"A0", "A1"}, choice_prefix);
    CHECK(a.conclusive_probability == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(a.conditional_correctness == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row(a, "A0").inferred == "0");
    CHECK(row(a, "A1").inferred == "1");
}

TEST_CASE("attack marginals agree with a direct povm application") {
    RegularEmbedding e = canonical_ot1();
    AttackOutcome a = run_povm_attack(e, bob_xor_povm(), Side::B, {"B0", "B1"},
                                      xor_of_bits);
    std::vector<PovmOutcome> direct =
        apply_povm(bob_xor_povm(), partial_trace(e.state, {"B"}));
    REQUIRE(direct.size() == a.outcome_table.size());
    std::map<std::string, double> direct_probs;
    for (const auto& o : direct) direct_probs[o.label] = o.probability;
    for (const auto& r : a.outcome_table)
        CHECK(r.probability == doctest::Approx(direct_probs.at(r.label)).epsilon(1e-10));
}

TEST_CASE("attacks on a trivial product embedding learn nothing") {
    JointDistribution p(Alphabet({"0", "1"}), Alphabet({"0", "1"}),
                        Eigen::MatrixXd::Constant(2, 2, 0.25));
    RegularEmbedding e = canonical(p);

    Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
    p0(0, 0) = 1.0;
    Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
    p1(1, 1) = 1.0;
    Povm computational({{"0", p0}, {"1", p1}});

    AttackOutcome a = run_povm_attack(e, computational, Side::B, {"0", "1"},
                                      [](const std::string& x) { return x; });
    CHECK(a.conclusive_probability == doctest::Approx(1.0).epsilon(1e-12));
    // Bob's state does not depend on x, so correctness is the best prior.
    CHECK(a.conditional_correctness == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("no conclusive labels means zero statistics") {
    AttackOutcome a = run_povm_attack(canonical_ot1(), bob_xor_povm(), Side::B, {},
                                      xor_of_bits);
    CHECK(a.conclusive_probability == 0.0);
    CHECK(a.conditional_correctness == 0.0);
    for (const auto& r : a.outcome_table) CHECK(r.inferred.empty());
}

TEST_CASE("povm dimension must match the measured register") {
    RegularEmbedding e = canonical(make_rot(1).dist);  // A is dim 2, B is dim 3
    CHECK_THROWS_AS(run_povm_attack(e, bob_xor_povm(), Side::B, {"B0"}, xor_of_bits),
                    LayoutMismatch);
    CHECK_THROWS_AS(run_povm_attack(e, alice_choice_povm(), Side::A, {"A0"}, choice_prefix),
                    LayoutMismatch);
}

TEST_CASE("average encoding bound on hand-built ensembles") {
    RegisterLayout q({{"A", 2}});
    Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
    p0(0, 0) = 1.0;
    Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
    p1(1, 1) = 1.0;
    Eigen::VectorXd w(2);
    w << 0.5, 0.5;

    CqEnsemble orthogonal(Alphabet({"0", "1"}), w,
                          {DensityMatrix(q, p0), DensityMatrix(q, p1)});
    EncodingGap g = average_encoding_gap(orthogonal);
    CHECK(g.lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.rhs == doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-9));
    CHECK(g.lhs <= g.rhs + 1e-12);

    CqEnsemble identical(Alphabet({"0", "1"}), w,
                         {DensityMatrix(q, p0), DensityMatrix(q, p0)});
    EncodingGap zero = average_encoding_gap(identical);
    CHECK(zero.lhs < 1e-9);
    CHECK(zero.rhs < 1e-6);
}

TEST_CASE("average encoding bound on a measured embedding") {
    RegularEmbedding e = canonical_ot1();
    EncodingGap g = average_encoding_gap(measure_subsystem(e.state, "A"));
    CHECK(g.lhs > 0.0);
    CHECK(g.lhs <= g.rhs + 1e-9);
}
