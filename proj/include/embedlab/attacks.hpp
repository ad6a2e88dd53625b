#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "embedlab/embeddings.hpp"
#include "embedlab/quantum.hpp"

namespace embedlab {

struct AttackOutcome {
    double conclusive_probability = 0.0;
    // Pr[inference correct | a conclusive element fired].
    double conditional_correctness = 0.0;
    struct Row {
        std::string label;      // POVM element
        double probability = 0.0;
        std::string inferred;   // most likely target value; empty if inconclusive
        bool conclusive = false;
    };
    std::vector<Row> outcome_table;
};

enum class Side { A, B };

// POVM on Bob's two-qubit register of a 1-2-OT embedding whose conclusive
// elements reveal x0 XOR x1. In the Hadamard product basis: B0 = |+-><+-|,
// B1 = |--><--|, and B? collects the rest of the identity.
Povm bob_xor_povm();

// POVM on Alice's two-qubit register revealing Bob's selection bit c:
// A0 = |-+><-+|, A1 = |+-><+-|, A? = I - A0 - A1.
Povm alice_choice_povm();

// Exact (sampling-free) evaluation of a POVM attack on one party's register
// of a regular embedding. `target` maps the other party's source label to the
// value the attacker tries to infer; elements listed in `conclusive_labels`
// count toward the conclusive probability and the correctness statistic.
AttackOutcome run_povm_attack(const RegularEmbedding& e, const Povm& povm, Side side,
                              const std::set<std::string>& conclusive_labels,
                              const std::function<std::string(const std::string&)>& target);

// XOR of a bit-string label: "01" -> "1".
std::string xor_of_bits(const std::string& label);
// Leading component of a "c:y" label: "0:1" -> "0".
std::string choice_prefix(const std::string& label);

struct EncodingGap {
    double lhs = 0.0;  // sum_x p_x ||rho_x - rho||_1
    double rhs = 0.0;  // sqrt(2 ln2 * holevo)
};

// Average-encoding bound: the weighted trace distance of ensemble members to
// their average never exceeds sqrt(2 ln2 * chi).
EncodingGap average_encoding_gap(const CqEnsemble& ensemble);

}  // namespace embedlab
