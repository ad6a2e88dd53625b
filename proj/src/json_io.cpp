#include "embedlab/json_io.hpp"

#include <cmath>
#include <fstream>

#include "embedlab/errors.hpp"
#include "embedlab/version.hpp"

namespace embedlab {

namespace {

constexpr int kJsonDigits = 12;

double rounded(double v) { return round_sig(v, kJsonDigits); }

}  // namespace

double round_sig(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    const double exponent = std::floor(std::log10(std::abs(value)));
    const double scale = std::pow(10.0, digits - 1 - exponent);
    const double scaled = value * scale;
    // Near the ends of the double range the scale factor saturates; the
    // value is then already as precise as it can be printed.
    if (!std::isfinite(scale) || scale == 0.0 || !std::isfinite(scaled)) return value;
    const double result = std::round(scaled) / scale;
    return std::isfinite(result) ? result : value;
}

nlohmann::json to_json(const JointDistribution& p) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < p.probs().rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < p.probs().cols(); ++j) row.push_back(rounded(p.prob(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"x", p.x_alphabet().labels()},
                          {"y", p.y_alphabet().labels()},
                          {"p", std::move(rows)}};
}

JointDistribution distribution_from_json(const nlohmann::json& j) {
    try {
        std::vector<std::string> xs = j.at("x").get<std::vector<std::string>>();
        std::vector<std::string> ys = j.at("y").get<std::vector<std::string>>();
        const auto& rows = j.at("p");
        if (!rows.is_array() || rows.size() != xs.size())
            throw ParseError("distribution: 'p' must have one row per x label");
        Eigen::MatrixXd p(xs.size(), ys.size());
        for (size_t i = 0; i < xs.size(); ++i) {
            if (!rows[i].is_array() || rows[i].size() != ys.size())
                throw ParseError("distribution: row " + std::to_string(i) +
                                 " must have one entry per y label");
            for (size_t k = 0; k < ys.size(); ++k)
                p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    rows[i][k].get<double>();
        }
        return JointDistribution(Alphabet(std::move(xs)), Alphabet(std::move(ys)), std::move(p));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("distribution JSON: ") + e.what());
    }
}

JointDistribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    return distribution_from_json(j);
}

nlohmann::json to_json(const LeakageReport& r) {
    return nlohmann::json{{"toward_bob", rounded(r.toward_bob)},
                          {"toward_alice", rounded(r.toward_alice)},
                          {"delta", rounded(r.delta)},
                          {"s_x_bb", rounded(r.s_x_bb)},
                          {"s_aa_y", rounded(r.s_aa_y)},
                          {"mutual_information", rounded(r.mutual_information)}};
}

nlohmann::json to_json(const TrivialityReport& r) {
    return nlohmann::json{{"trivial", r.trivial},
                          {"h_xdep_given_y", rounded(r.h_xdep_given_y)},
                          {"h_ydep_given_x", rounded(r.h_ydep_given_x)}};
}

nlohmann::json to_json(const ComponentPartition& c) {
    nlohmann::json weights = nlohmann::json::array();
    for (Eigen::Index i = 0; i < c.weights.size(); ++i) weights.push_back(rounded(c.weights(i)));
    return nlohmann::json{{"count", c.count},
                          {"weights", std::move(weights)},
                          {"x_component", c.x_component},
                          {"y_component", c.y_component}};
}

nlohmann::json to_json(const PhaseAssignment& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, theta] : t.entries())
        entries.push_back(nlohmann::json{{"x", key.first}, {"y", key.second},
                                         {"theta", rounded(theta)}});
    return entries;
}

nlohmann::json to_json(const StrictCorrectness& s) {
    return nlohmann::json{{"pass", s.pass},
                          {"residual_x_ybp", rounded(s.residual_x_ybp)},
                          {"residual_xap_y", rounded(s.residual_xap_y)}};
}

nlohmann::json to_json(const EnvironmentMonotones& m) {
    return nlohmann::json{{"s_w_given_xap", rounded(m.s_w_given_xap)},
                          {"s_w_given_ybp", rounded(m.s_w_given_ybp)},
                          {"h_y_given_x", rounded(m.h_y_given_x)},
                          {"h_x_given_y", rounded(m.h_x_given_y)},
                          {"degenerate_schmidt", m.degenerate_schmidt}};
}

nlohmann::json to_json(const OptimizerResult& r) {
    nlohmann::json coords = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.best_coords.size(); ++i)
        coords.push_back(rounded(r.best_coords(i)));
    nlohmann::json restarts = nlohmann::json::array();
    for (const auto& t : r.per_restart)
        restarts.push_back(nlohmann::json{{"restart", t.restart},
                                          {"start", rounded(t.start_delta)},
                                          {"final", rounded(t.final_delta)},
                                          {"iters", t.iters},
                                          {"converged", t.converged}});
    return nlohmann::json{{"best_delta", rounded(r.best_delta)},
                          {"best_coords", std::move(coords)},
                          {"best_phases", to_json(r.best_phases)},
                          {"converged", r.converged},
                          {"per_restart", std::move(restarts)}};
}

nlohmann::json to_json(const AttackOutcome& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : a.outcome_table)
        rows.push_back(nlohmann::json{{"label", row.label},
                                      {"probability", rounded(row.probability)},
                                      {"inferred", row.inferred},
                                      {"conclusive", row.conclusive}});
    return nlohmann::json{{"conclusive_probability", rounded(a.conclusive_probability)},
                          {"conditional_correctness", rounded(a.conditional_correctness)},
                          {"outcomes", std::move(rows)}};
}

nlohmann::json to_json(const SuiteReport& s) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : s.properties)
        props.push_back(nlohmann::json{{"name", p.name},
                                       {"passed", p.passed},
                                       {"total", p.total},
                                       {"worst", rounded(p.worst)},
                                       {"detail", p.detail}});
    return nlohmann::json{{"suite", s.suite}, {"ok", s.ok()}, {"properties", std::move(props)}};
}

nlohmann::json make_manifest(const std::string& command, const std::vector<std::string>& args,
                             std::uint64_t seed, double wall_seconds, nlohmann::json results) {
    return nlohmann::json{{"command", command},
                          {"arguments", args},
                          {"seed", seed},
                          {"version", kVersion},
                          {"wall_time_seconds", round_sig(wall_seconds, 6)},
                          {"results", std::move(results)}};
}

}  // namespace embedlab
