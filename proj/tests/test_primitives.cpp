#include "doctest.h"

#include <cmath>

#include "embedlab/embeddings.hpp"
#include "embedlab/errors.hpp"
#include "embedlab/primitives.hpp"
#include "embedlab/probdist.hpp"

using namespace embedlab;

namespace {

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

}  // namespace

TEST_CASE("rot table") {
    PrimitiveSpec s = make_rot(1);
    CHECK(s.id == "rot/1");
    CHECK(s.dist.x_alphabet().labels() == std::vector<std::string>{"0", "1"});
    CHECK(s.dist.y_alphabet().labels() == std::vector<std::string>{"0", "1", "_bot"});
    CHECK(s.dist.prob(0, 0) == doctest::Approx(0.25));
    CHECK(s.dist.prob(0, 2) == doctest::Approx(0.25));
    CHECK(s.dist.prob(1, 1) == doctest::Approx(0.25));
    CHECK(s.dist.prob(0, 1) == 0.0);

    CHECK(entropy_x(s.dist) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(conditional_entropy(s.dist) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(conditional_entropy(s.dist.transposed()) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mutual_information(s.dist) == doctest::Approx(0.5).epsilon(1e-12));

    PrimitiveSpec s3 = make_rot(3);
    CHECK(entropy_x(s3.dist) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mutual_information(s3.dist) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(s3.dist.support().size() == 16);

    CHECK_THROWS_AS(make_rot(0), ValidationError);
    CHECK_THROWS_AS(make_rot(13), ValidationError);
}

TEST_CASE("ot table") {
    PrimitiveSpec s = make_ot(1);
    CHECK(s.id == "ot/1");
    CHECK(s.dist.x_alphabet().labels() == std::vector<std::string>{"00", "01", "10", "11"});
    CHECK(s.dist.y_alphabet().labels() ==
          std::vector<std::string>{"0:0", "0:1", "1:0", "1:1"});
    CHECK(s.dist.support().size() == 8);
    // x = 10 with choice c=0 delivers x_0 = 1.
    CHECK(s.dist.prob(2, s.dist.y_alphabet().index("0:1")) == doctest::Approx(0.125));
    CHECK(s.dist.prob(2, s.dist.y_alphabet().index("1:0")) == doctest::Approx(0.125));
    CHECK(s.dist.prob(2, s.dist.y_alphabet().index("0:0")) == 0.0);

    CHECK(entropy_x(s.dist) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(entropy_y(s.dist) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mutual_information(s.dist) == doctest::Approx(1.0).epsilon(1e-12));

    PrimitiveSpec s2 = make_ot(2);
    CHECK(entropy_x(s2.dist) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(entropy_y(s2.dist) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mutual_information(s2.dist) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s2.dist.support().size() == 32);

    CHECK_THROWS_AS(make_ot(0), ValidationError);
    CHECK_THROWS_AS(make_ot(7), ValidationError);
}

TEST_CASE("sand table") {
    PrimitiveSpec s = make_sand();
    CHECK(s.id == "sand");
    CHECK(s.dist.x_alphabet().size() == 4);
    CHECK(s.dist.y_alphabet().size() == 4);
    CHECK(s.dist.support().size() == 8);
    for (const auto& [x, y] : s.dist.support())
        CHECK(s.dist.prob(x, y) == doctest::Approx(0.125));
    // (x,a) = 10, (y,b) = 11: 1 AND 1 = 1 = 0 XOR 1, so the pair is allowed.
    CHECK(s.dist.prob(2, 3) == doctest::Approx(0.125));
    CHECK(s.dist.prob(2, 2) == 0.0);
    CHECK(mutual_information(s.dist) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("otp table") {
    PrimitiveSpec s = make_otp(0.25);
    CHECK(s.id == "otp/0.25");
    CHECK(s.dist.x_alphabet().size() == 4);
    CHECK(s.dist.y_alphabet().labels() ==
          std::vector<std::string>{"0:0", "0:1", "1:0", "1:1"});
    CHECK(s.dist.support().size() == 16);
    CHECK(s.dist.prob(0, 0) == doctest::Approx(3.0 / 32.0));  // b = x_c
    CHECK(s.dist.prob(0, 1) == doctest::Approx(1.0 / 32.0));  // flipped

    for (double p : {0.1, 0.25, 0.4})
        CHECK(mutual_information(make_otp(p).dist) ==
              doctest::Approx(1.0 - binary_entropy(p)).epsilon(1e-12));

    // As p -> 0 the table converges to the erasure-free ot/1 table.
    JointDistribution near = make_otp(1e-9).dist;
    JointDistribution ot = make_ot(1).dist;
    REQUIRE(near.probs().rows() == ot.probs().rows());
    REQUIRE(near.probs().cols() == ot.probs().cols());
    CHECK(0.5 * (near.probs() - ot.probs()).cwiseAbs().sum() ==
          doctest::Approx(1e-9).epsilon(1e-3));

    CHECK_THROWS_AS(make_otp(0.0), ValidationError);
    CHECK_THROWS_AS(make_otp(0.5), ValidationError);
    CHECK_THROWS_AS(make_otp(-0.1), ValidationError);
}

TEST_CASE("otp with large noise is still nontrivial") {
    TrivialityReport t = is_trivial(make_otp(0.25).dist);
    CHECK_FALSE(t.trivial);
    CHECK((t.h_xdep_given_y < 1e-9) == (t.h_ydep_given_x < 1e-9));
}

TEST_CASE("primitive id parsing") {
    CHECK(make_primitive("rot/3").id == "rot/3");
    CHECK(make_primitive("primitive://ot/2").id == "ot/2");
    CHECK(make_primitive("sand").id == "sand");
    CHECK(make_primitive("otp/0.25").id == "otp/0.25");
    CHECK(make_primitive(make_otp(0.05).id).id == "otp/0.05");

    CHECK_THROWS_AS(make_primitive("rot/x"), ParseError);
    CHECK_THROWS_AS(make_primitive("rot/1extra"), ParseError);
    CHECK_THROWS_AS(make_primitive("rot"), ParseError);
    CHECK_THROWS_AS(make_primitive("sand/1"), ParseError);
    CHECK_THROWS_AS(make_primitive("otp"), ParseError);
    CHECK_THROWS_AS(make_primitive("coinflip/2"), ParseError);
    CHECK_THROWS_AS(make_primitive("rot/99"), ValidationError);
    CHECK_THROWS_AS(make_primitive("otp/0.75"), ValidationError);
}

TEST_CASE("closed-form rot leakage") {
    CHECK(rot_leakage_closed(1).delta == doctest::Approx(0.31127812445913283).epsilon(1e-12));
    CHECK(rot_leakage_closed(2).delta == doctest::Approx(0.5487949406953985).epsilon(1e-12));
    CHECK(rot_leakage_closed(4).delta == doctest::Approx(0.8285353655857572).epsilon(1e-12));
    CHECK(rot_leakage_closed(8).delta == doctest::Approx(0.9815517399554166).epsilon(1e-12));
    CHECK(rot_leakage_closed(10).delta == doctest::Approx(0.9944124027086776).epsilon(1e-12));

    for (int r = 1; r <= 10; ++r) {
        RotClosedForm c = rot_leakage_closed(r);
        CHECK(c.spectrum.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.s_a == doctest::Approx(c.delta + r / 2.0).epsilon(1e-12));
        // 1 - delta decays like r 2^{-r} with a bounded constant.
        double ratio = (1.0 - c.delta) / (r * std::ldexp(1.0, -r));
        CHECK(ratio > 0.5);
        CHECK(ratio < 1.378);
    }

    // The closed form agrees with the numeric leakage of the canonical state.
    for (int r : {1, 2, 3}) {
        double numeric = leakage_regular(canonical(make_rot(r).dist)).delta;
        CHECK(numeric == doctest::Approx(rot_leakage_closed(r).delta).epsilon(1e-9));
    }

    CHECK_THROWS_AS(rot_leakage_closed(0), ValidationError);
    CHECK_THROWS_AS(rot_leakage_closed(25), DimensionTooLarge);
}

TEST_CASE("closed-form ot reduced entropy") {
    OtClosedForm at_zero = ot_entropy_closed(0.0);
    CHECK(at_zero.s_aprime == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(at_zero.spectrum(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(at_zero.spectrum(3) == doctest::Approx(0.0));

    for (double w : {0.0, 1.3, 2.7, 5.0}) {
        OtClosedForm c = ot_entropy_closed(w);
        CHECK(c.spectrum.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(shannon_entropy(c.spectrum) == doctest::Approx(c.s_aprime).epsilon(1e-12));
        CHECK(c.s_aprime >= 1.5 - 1e-12);  // the canonical point is the minimum
    }

    // Folding by the period changes nothing.
    CHECK(ot_entropy_closed(1.0).s_aprime ==
          doctest::Approx(ot_entropy_closed(1.0 + 4.0 * 3.14159265358979323846).s_aprime)
              .epsilon(1e-12));
}

TEST_CASE("single-coordinate ot family matches the closed form") {
    JointDistribution p = make_ot(1).dist;
    PhaseBasis basis = free_phase_coordinates(p);
    REQUIRE(basis.count() == 1);
    for (double w : {0.0, 1.3, 2.7, 5.0}) {
        Eigen::VectorXd coords(1);
        coords << w;
        LeakageReport leak = leakage_regular(build_regular(p, basis.embed(coords)));
        CHECK(leak.s_x_bb == doctest::Approx(ot_entropy_closed(w).s_aprime).epsilon(1e-10));
    }
}

TEST_CASE("one-time-pad lower bound") {
    OtpBound at_zero = otp_lower_bound(0.0);
    CHECK(at_zero.in_validity);
    CHECK(at_zero.value == doctest::Approx(1.0 / (128.0 * std::log(2.0))).epsilon(1e-12));

    double p = 0.1;
    OtpBound b = otp_lower_bound(p);
    CHECK(b.in_validity);
    double gap = 0.5 - p - std::sqrt(p * (1.0 - p));
    CHECK(b.value == doctest::Approx(gap * gap / (32.0 * std::log(2.0))).epsilon(1e-12));

    OtpBound outside = otp_lower_bound(0.2);  // beyond 0.5 - 0.5/sqrt(2)
    CHECK_FALSE(outside.in_validity);
    CHECK(outside.value == 0.0);

    CHECK_THROWS_AS(otp_lower_bound(0.5), ValidationError);
    CHECK_THROWS_AS(otp_lower_bound(-0.01), ValidationError);
}

TEST_CASE("canonical otp leakage dominates the lower bound") {
    struct Point {
        double p, lo, hi;
    };
    for (const auto& pt : {Point{0.01, 0.44, 0.46}, Point{0.05, 0.42, 0.44},
                           Point{0.10, 0.38, 0.40}}) {
        double delta = leakage_regular(canonical(make_otp(pt.p).dist)).delta;
        CHECK(delta > otp_lower_bound(pt.p).value);
        CHECK(delta > pt.lo);
        CHECK(delta < pt.hi);
    }
}
