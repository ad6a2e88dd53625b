#include "doctest.h"

#include <cmath>

#include "embedlab/errors.hpp"
#include "embedlab/primitives.hpp"
#include "embedlab/probdist.hpp"

using namespace embedlab;

namespace {

JointDistribution from_rows(std::vector<std::string> xs, std::vector<std::string> ys,
                            std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd p(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double v : row) p(i, j++) = v;
        ++i;
    }
    return JointDistribution(Alphabet(std::move(xs)), Alphabet(std::move(ys)), std::move(p));
}

}  // namespace

TEST_CASE("shannon entropy of basic vectors") {
    Eigen::VectorXd half(2);
    half << 0.5, 0.5;
    CHECK(shannon_entropy(half) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::VectorXd quarter(2);
    quarter << 0.25, 0.75;
    CHECK(shannon_entropy(quarter) == doctest::Approx(0.8112781244591328).epsilon(1e-12));

    Eigen::VectorXd point(3);
    point << 1.0, 0.0, 0.0;
    CHECK(shannon_entropy(point) == doctest::Approx(0.0));
}

TEST_CASE("marginals, conditional entropy and mutual information") {
    JointDistribution p = from_rows({"x0", "x1"}, {"y0", "y1"},
                                    {{0.5, 0.0}, {0.25, 0.25}});
    CHECK(entropy_x(p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy_joint(p) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(conditional_entropy(p) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mutual_information(p) ==
          doctest::Approx(entropy_x(p) + entropy_y(p) - 1.5).epsilon(1e-12));
}

TEST_CASE("construction validates shapes and masses") {
    CHECK_THROWS_AS(from_rows({"a", "b"}, {"c"}, {{0.6}, {0.5}}), NotNormalized);
    CHECK_THROWS_AS(from_rows({"a", "b"}, {"c"}, {{1.2}, {-0.2}}), NegativeProbability);
    CHECK_THROWS_AS(JointDistribution(Alphabet({"a", "a"}), Alphabet({"c"}),
                                      Eigen::MatrixXd::Constant(2, 1, 0.5)),
                    ValidationError);
}

TEST_CASE("zero-marginal symbols are pruned with a note") {
    JointDistribution p = from_rows({"x0", "x1", "x2"}, {"y0", "y1"},
                                    {{0.5, 0.0}, {0.0, 0.0}, {0.25, 0.25}});
    CHECK(p.x_alphabet().size() == 2);
    CHECK(p.x_alphabet().label(1) == "x2");
    REQUIRE_FALSE(p.notes().empty());
    CHECK(p.notes().front().find("x1") != std::string::npos);
}

TEST_CASE("dependent part groups equal conditional rows") {
    // x0 and x2 share the conditional (1/2, 1/2); x1 is deterministic.
    JointDistribution p = from_rows({"x0", "x1", "x2"}, {"y0", "y1"},
                                    {{0.2, 0.2}, {0.3, 0.0}, {0.15, 0.15}});
    DependentPartMap d = dependent_part(p);
    CHECK(d.collapsed.x_alphabet().size() == 2);
    CHECK(d.source_to_class[0] == d.source_to_class[2]);
    CHECK(d.source_to_class[0] != d.source_to_class[1]);
    // Representative is the lexicographically smallest member label.
    CHECK(p.x_alphabet().label(d.class_representatives[d.source_to_class[0]]) == "x0");

    CHECK(mutual_information(d.collapsed) ==
          doctest::Approx(mutual_information(p)).epsilon(1e-12));
    CHECK(conditional_entropy(d.collapsed) ==
          doctest::Approx(conditional_entropy(p)).epsilon(1e-12));
}

TEST_CASE("connected components of a block mixture") {
    JointDistribution p = from_rows({"x0", "x1", "x2"}, {"y0", "y1", "y2"},
                                    {{0.2, 0.2, 0.0}, {0.1, 0.1, 0.0}, {0.0, 0.0, 0.4}});
    ComponentPartition c = connected_components(p);
    REQUIRE(c.count == 2);
    CHECK(c.x_component[0] == c.x_component[1]);
    CHECK(c.x_component[0] != c.x_component[2]);
    CHECK(c.weights(0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(c.weights(1) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(c.edge_component.size() == p.support().size());
}

TEST_CASE("triviality classification") {
    JointDistribution independent = from_rows({"x0", "x1"}, {"y0", "y1"},
                                              {{0.25, 0.25}, {0.25, 0.25}});
    CHECK(is_trivial(independent).trivial);

    JointDistribution copy = from_rows({"x0", "x1"}, {"y0", "y1"},
                                       {{0.5, 0.0}, {0.0, 0.5}});
    CHECK(is_trivial(copy).trivial);

    TrivialityReport ot = is_trivial(make_ot(1).dist);
    CHECK_FALSE(ot.trivial);
    CHECK(ot.h_xdep_given_y > 1e-6);
    CHECK(ot.h_ydep_given_x > 1e-6);
}

TEST_CASE("triviality zero-tests agree on both sides") {
    for (const auto& p : {make_rot(1).dist, make_ot(1).dist, make_sand().dist}) {
        TrivialityReport t = is_trivial(p);
        CHECK((t.h_xdep_given_y < 1e-9) == (t.h_ydep_given_x < 1e-9));
    }
}

TEST_CASE("randomized AND gate") {
    // f(a, b) = (a AND b, a AND b) announced to both parties.
    FunctionTable f;
    f.a = Alphabet({"0", "1"});
    f.b = Alphabet({"0", "1"});
    f.w = Alphabet({"0", "1"});
    f.z = Alphabet({"0", "1"});
    f.w_out = Eigen::MatrixXi::Zero(2, 2);
    f.z_out = Eigen::MatrixXi::Zero(2, 2);
    f.w_out(1, 1) = 1;
    f.z_out(1, 1) = 1;
    JointDistribution p = randomize_function(f);
    CHECK(p.support().size() == 4);
    for (const auto& [x, y] : p.support())
        CHECK(p.prob(x, y) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("randomized OT-with-inputs reproduces the ot/1 statistics") {
    // f((x0, x1), c) = (constant, x_c); inputs a = x0x1, b = c.
    FunctionTable f;
    f.a = Alphabet({"00", "01", "10", "11"});
    f.b = Alphabet({"0", "1"});
    f.w = Alphabet({"_"});
    f.z = Alphabet({"0", "1"});
    f.w_out = Eigen::MatrixXi::Zero(4, 2);
    f.z_out = Eigen::MatrixXi::Zero(4, 2);
    for (int a = 0; a < 4; ++a) {
        f.z_out(a, 0) = (a >> 1) & 1;  // x0
        f.z_out(a, 1) = a & 1;         // x1
    }
    JointDistribution p = randomize_function(f);
    JointDistribution ot = make_ot(1).dist;
    CHECK(p.support().size() == ot.support().size());
    CHECK(mutual_information(p) == doctest::Approx(mutual_information(ot)).epsilon(1e-12));
    CHECK(entropy_x(p) == doctest::Approx(entropy_x(ot)).epsilon(1e-12));
    CHECK(entropy_y(p) == doctest::Approx(entropy_y(ot)).epsilon(1e-12));
}

TEST_CASE("randomized constant function is a product of uniforms") {
    FunctionTable f;
    f.a = Alphabet({"0", "1"});
    f.b = Alphabet({"0", "1", "2"});
    f.w = Alphabet({"w"});
    f.z = Alphabet({"z"});
    f.w_out = Eigen::MatrixXi::Zero(2, 3);
    f.z_out = Eigen::MatrixXi::Zero(2, 3);
    JointDistribution p = randomize_function(f);
    CHECK(p.x_alphabet().size() == 2);
    CHECK(p.y_alphabet().size() == 3);
    CHECK(std::abs(mutual_information(p)) < 1e-12);
    for (const auto& [x, y] : p.support())
        CHECK(p.prob(x, y) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("total variation") {
    Eigen::VectorXd a(2), b(2);
    a << 1.0, 0.0;
    b << 0.5, 0.5;
    CHECK(total_variation(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}
