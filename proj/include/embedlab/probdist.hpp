#pragma once

#include <Eigen/Dense>

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embedlab/errors.hpp"

namespace embedlab {

// Ordered set of distinct symbol labels; the order fixes the index <-> label
// bijection.  The reserved label "_bot" renders as the abort symbol.
class Alphabet {
  public:
    static constexpr const char* kBottom = "_bot";

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    Eigen::Index size() const { return static_cast<Eigen::Index>(symbols_.size()); }
    const std::string& label(Eigen::Index i) const { return symbols_.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& labels() const { return symbols_; }
    Eigen::Index index(const std::string& label) const;
    bool contains(const std::string& label) const { return lookup_.count(label) > 0; }

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

  private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, Eigen::Index> lookup_;
};

// Finite joint probability table P_{X,Y}.  Entries are validated nonnegative
// and normalized; symbols with zero marginal are pruned at construction and
// recorded in notes().
class JointDistribution {
  public:
    JointDistribution(Alphabet x, Alphabet y, Eigen::MatrixXd probs);

    const Alphabet& x_alphabet() const { return x_; }
    const Alphabet& y_alphabet() const { return y_; }
    const Eigen::MatrixXd& probs() const { return p_; }
    double prob(Eigen::Index x, Eigen::Index y) const { return p_(x, y); }

    Eigen::VectorXd x_marginal() const { return p_.rowwise().sum(); }
    Eigen::VectorXd y_marginal() const { return p_.colwise().sum().transpose(); }

    // Support pairs (x,y) with P(x,y) > 0, in row-major scan order.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> support() const;

    // Same distribution with the roles of X and Y swapped.
    JointDistribution transposed() const;

    // Construction notes (pruned symbols, clamped entries).
    const std::vector<std::string>& notes() const { return notes_; }

  private:
    Alphabet x_;
    Alphabet y_;
    Eigen::MatrixXd p_;
    std::vector<std::string> notes_;
};

// Result of collapsing X to its dependent part with respect to Y.
struct DependentPartMap {
    std::vector<Eigen::Index> source_to_class;    // per x-index, class index
    std::vector<Eigen::Index> class_representatives;  // per class, x-index of lexicographically smallest label
    JointDistribution collapsed;                  // distribution over (classes, Y)
};

// Connected components of the bipartite support graph of P_{X,Y}.
struct ComponentPartition {
    Eigen::Index count = 0;
    std::vector<Eigen::Index> x_component;  // per x-symbol
    std::vector<Eigen::Index> y_component;  // per y-symbol
    std::vector<Eigen::Index> edge_component;  // aligned with JointDistribution::support()
    Eigen::VectorXd weights;                // P_C(j), sums to 1
};

struct TrivialityReport {
    bool trivial = false;
    double h_xdep_given_y = 0.0;  // H(X collapsed | Y)
    double h_ydep_given_x = 0.0;  // H(Y collapsed | X)
};

// Total function table f: A x B -> W x Z, stored as index matrices.
struct FunctionTable {
    Alphabet a;
    Alphabet b;
    Alphabet w;
    Alphabet z;
    Eigen::MatrixXi w_out;  // |A| x |B|, entries index into w
    Eigen::MatrixXi z_out;  // |A| x |B|, entries index into z
};

// Shannon entropy in bits; convention 0*log 0 = 0, entries below 1e-15
// contribute nothing.
double shannon_entropy(const Eigen::VectorXd& dist);

double entropy_x(const JointDistribution& p);
double entropy_y(const JointDistribution& p);
double entropy_joint(const JointDistribution& p);

// H(Y|X) = H(XY) - H(X).
double conditional_entropy(const JointDistribution& p);

// I(X;Y) = H(X) + H(Y) - H(XY).
double mutual_information(const JointDistribution& p);

// Total-variation distance between two probability vectors of equal length.
double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Group x-values whose conditionals P_{Y|X=x} agree within total variation
// 1e-9; the collapsed distribution keeps the original Y alphabet.
DependentPartMap dependent_part(const JointDistribution& p);

ComponentPartition connected_components(const JointDistribution& p);

// A primitive is trivial iff H(X collapsed | Y) vanishes; both witness
// entropies are reported since their zero-tests must agree.
TrivialityReport is_trivial(const JointDistribution& p);

// Distribution of ((a,w),(b,z)) for inputs a,b drawn uniformly and outputs
// (w,z) = f(a,b).  Product labels are joined as "a:w" / "b:z".
JointDistribution randomize_function(const FunctionTable& f);

}  // namespace embedlab
