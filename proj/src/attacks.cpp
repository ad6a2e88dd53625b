#include "embedlab/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "embedlab/errors.hpp"

namespace embedlab {

namespace {

Eigen::Vector2cd hadamard_vector(bool minus) {
    const double inv_sqrt2 = 0.70710678118654752440;
    return Eigen::Vector2cd(inv_sqrt2, minus ? -inv_sqrt2 : inv_sqrt2);
}

Eigen::Vector4cd product2(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
    Eigen::Vector4cd v;
    v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return v;
}

Eigen::MatrixXcd projector(const Eigen::Vector4cd& v) { return v * v.adjoint(); }

}  // namespace

Povm bob_xor_povm() {
    const Eigen::Vector2cd plus = hadamard_vector(false);
    const Eigen::Vector2cd minus = hadamard_vector(true);
    Eigen::MatrixXcd b0 = projector(product2(plus, minus));
    Eigen::MatrixXcd b1 = projector(product2(minus, minus));
    Eigen::MatrixXcd rest = Eigen::MatrixXcd::Identity(4, 4) - b0 - b1;
    return Povm({{"B0", std::move(b0)}, {"B1", std::move(b1)}, {"B?", std::move(rest)}});
}

Povm alice_choice_povm() {
    const Eigen::Vector2cd plus = hadamard_vector(false);
    const Eigen::Vector2cd minus = hadamard_vector(true);
    Eigen::MatrixXcd a0 = projector(product2(minus, plus));
    Eigen::MatrixXcd a1 = projector(product2(plus, minus));
    Eigen::MatrixXcd rest = Eigen::MatrixXcd::Identity(4, 4) - a0 - a1;
    return Povm({{"A0", std::move(a0)}, {"A1", std::move(a1)}, {"A?", std::move(rest)}});
}

AttackOutcome run_povm_attack(const RegularEmbedding& e, const Povm& povm, Side side,
                              const std::set<std::string>& conclusive_labels,
                              const std::function<std::string(const std::string&)>& target) {
    const char* measured_reg = (side == Side::A) ? kRegA : kRegB;
    const char* other_reg = (side == Side::A) ? kRegB : kRegA;
    if (povm.dim() != e.state.layout().dim_of(measured_reg))
        throw LayoutMismatch("run_povm_attack: POVM dimension " + std::to_string(povm.dim()) +
                             " does not match register " + measured_reg);
    const Alphabet& other_alphabet =
        (side == Side::A) ? e.source.y_alphabet() : e.source.x_alphabet();

    // Condition on the other party's classical value; the attacker holds the
    // corresponding pure conditional state on the measured register.
    CqEnsemble conditioned = measure_subsystem(e.state, other_reg);

    AttackOutcome out;
    double conclusive_total = 0.0;
    double correct_mass = 0.0;
    for (const auto& [label, element] : povm.elements()) {
        std::map<std::string, double> mass_by_value;
        double total = 0.0;
        for (Eigen::Index i = 0; i < conditioned.size(); ++i) {
            const double w =
                conditioned.weights()(i) *
                std::max((element * conditioned.states()[static_cast<size_t>(i)].matrix())
                             .trace()
                             .real(),
                         0.0);
            if (w <= 0.0) continue;
            const auto value_index = static_cast<Eigen::Index>(
                std::stoll(conditioned.labels().label(i)));
            mass_by_value[target(other_alphabet.label(value_index))] += w;
            total += w;
        }
        AttackOutcome::Row row;
        row.label = label;
        row.probability = total;
        row.conclusive = conclusive_labels.count(label) > 0;
        double best = 0.0;
        for (const auto& [value, mass] : mass_by_value) {  // sorted: ties pick smallest value
            if (mass > best) {
                best = mass;
                row.inferred = value;
            }
        }
        if (!row.conclusive) row.inferred.clear();
        if (row.conclusive) {
            conclusive_total += total;
            correct_mass += best;
        }
        out.outcome_table.push_back(std::move(row));
    }
    out.conclusive_probability = conclusive_total;
    out.conditional_correctness = conclusive_total > 1e-15 ? correct_mass / conclusive_total : 0.0;
    return out;
}

std::string xor_of_bits(const std::string& label) {
    int acc = 0;
    for (char c : label) {
        if (c != '0' && c != '1')
            throw ValidationError("xor_of_bits: label '" + label + "' is not a bit string");
        acc ^= (c - '0');
    }
    return std::string(1, static_cast<char>('0' + acc));
}

std::string choice_prefix(const std::string& label) {
    auto colon = label.find(':');
    if (colon == std::string::npos)
        throw ValidationError("choice_prefix: label '" + label + "' has no ':' separator");
    return label.substr(0, colon);
}

EncodingGap average_encoding_gap(const CqEnsemble& ensemble) {
    const DensityMatrix avg = ensemble.average();
    const double total = ensemble.weights().sum();
    EncodingGap gap;
    for (Eigen::Index i = 0; i < ensemble.size(); ++i)
        gap.lhs += ensemble.weights()(i) / total *
                   trace_norm(ensemble.states()[static_cast<size_t>(i)].matrix() - avg.matrix());
    gap.rhs = std::sqrt(2.0 * std::log(2.0) * std::max(holevo_information(ensemble), 0.0));
    return gap;
}

}  // namespace embedlab
