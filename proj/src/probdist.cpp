#include "embedlab/probdist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace embedlab {

namespace {

constexpr double kEntropyFloor = 1e-15;   // eigen/probability weights below this contribute 0
constexpr double kSumTolerance = 1e-12;   // joint tables must normalize this tightly
constexpr double kVectorSumTolerance = 1e-9;
constexpr double kNegativeClamp = -1e-12; // entries in (kNegativeClamp, 0) are rounding noise
constexpr double kConditionalTv = 1e-9;   // dependent-part grouping tolerance

double plogp(double p) {
    if (p < kEntropyFloor) return 0.0;
    return p * std::log2(p);
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw ValidationError("Alphabet: must not be empty");
    for (Eigen::Index i = 0; i < size(); ++i) {
        const std::string& s = symbols_[static_cast<size_t>(i)];
        if (s.empty()) throw ValidationError("Alphabet: empty label at index " + std::to_string(i));
        if (!lookup_.emplace(s, i).second)
            throw ValidationError("Alphabet: duplicate label '" + s + "'");
    }
}

Eigen::Index Alphabet::index(const std::string& label) const {
    auto it = lookup_.find(label);
    if (it == lookup_.end()) throw ValidationError("Alphabet: unknown label '" + label + "'");
    return it->second;
}

JointDistribution::JointDistribution(Alphabet x, Alphabet y, Eigen::MatrixXd probs)
    : x_(std::move(x)), y_(std::move(y)), p_(std::move(probs)) {
    if (p_.rows() != x_.size() || p_.cols() != y_.size()) {
        std::ostringstream msg;
        msg << "JointDistribution: matrix is " << p_.rows() << "x" << p_.cols()
            << " but alphabets have sizes " << x_.size() << ", " << y_.size();
        throw ValidationError(msg.str());
    }
    for (Eigen::Index i = 0; i < p_.rows(); ++i) {
        for (Eigen::Index j = 0; j < p_.cols(); ++j) {
            double v = p_(i, j);
            if (v < kNegativeClamp) {
                std::ostringstream msg;
                msg << "JointDistribution: negative probability " << v << " at row " << i
                    << ", col " << j;
                throw NegativeProbability(msg.str());
            }
            if (v < 0.0) p_(i, j) = 0.0;
        }
    }
    double total = p_.sum();
    if (std::abs(total - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg << "JointDistribution: entries sum to " << total << ", expected 1";
        throw NotNormalized(msg.str());
    }
    p_ /= total;

    // Prune symbols with zero marginal; dependent parts and components are
    // undefined on them.
    std::vector<Eigen::Index> keep_x, keep_y;
    for (Eigen::Index i = 0; i < p_.rows(); ++i) {
        if (p_.row(i).sum() > 0.0) {
            keep_x.push_back(i);
        } else {
            notes_.push_back("pruned zero-marginal x symbol '" + x_.label(i) + "'");
        }
    }
    for (Eigen::Index j = 0; j < p_.cols(); ++j) {
        if (p_.col(j).sum() > 0.0) {
            keep_y.push_back(j);
        } else {
            notes_.push_back("pruned zero-marginal y symbol '" + y_.label(j) + "'");
        }
    }
    if (keep_x.size() < static_cast<size_t>(p_.rows()) ||
        keep_y.size() < static_cast<size_t>(p_.cols())) {
        Eigen::MatrixXd q(keep_x.size(), keep_y.size());
        std::vector<std::string> xs, ys;
        xs.reserve(keep_x.size());
        ys.reserve(keep_y.size());
        for (size_t a = 0; a < keep_x.size(); ++a) {
            xs.push_back(x_.label(keep_x[a]));
            for (size_t b = 0; b < keep_y.size(); ++b) q(a, b) = p_(keep_x[a], keep_y[b]);
        }
        for (size_t b = 0; b < keep_y.size(); ++b) ys.push_back(y_.label(keep_y[b]));
        x_ = Alphabet(std::move(xs));
        y_ = Alphabet(std::move(ys));
        p_ = std::move(q);
    }
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> JointDistribution::support() const {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    for (Eigen::Index i = 0; i < p_.rows(); ++i)
        for (Eigen::Index j = 0; j < p_.cols(); ++j)
            if (p_(i, j) > 0.0) out.emplace_back(i, j);
    return out;
}

JointDistribution JointDistribution::transposed() const {
    return JointDistribution(y_, x_, p_.transpose());
}

double shannon_entropy(const Eigen::VectorXd& dist) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < dist.size(); ++i) {
        if (dist(i) < kNegativeClamp)
            throw NegativeProbability("shannon_entropy: negative entry at index " +
                                      std::to_string(i));
        sum += std::max(dist(i), 0.0);
    }
    if (std::abs(sum - 1.0) > kVectorSumTolerance)
        throw NotNormalized("shannon_entropy: entries sum to " + std::to_string(sum));
    double h = 0.0;
    for (Eigen::Index i = 0; i < dist.size(); ++i) h -= plogp(std::max(dist(i), 0.0));
    return h;
}

double entropy_x(const JointDistribution& p) { return shannon_entropy(p.x_marginal()); }

double entropy_y(const JointDistribution& p) { return shannon_entropy(p.y_marginal()); }

double entropy_joint(const JointDistribution& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.probs().rows(); ++i)
        for (Eigen::Index j = 0; j < p.probs().cols(); ++j) h -= plogp(p.prob(i, j));
    return h;
}

double conditional_entropy(const JointDistribution& p) {
    return entropy_joint(p) - entropy_x(p);
}

double mutual_information(const JointDistribution& p) {
    return entropy_x(p) + entropy_y(p) - entropy_joint(p);
}

double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size())
        throw ValidationError("total_variation: vectors have different lengths");
    return 0.5 * (a - b).cwiseAbs().sum();
}

DependentPartMap dependent_part(const JointDistribution& p) {
    const Eigen::MatrixXd& probs = p.probs();
    const Eigen::VectorXd px = p.x_marginal();
    const Eigen::Index m = probs.rows();

    // Conditionals P_{Y|X=x}; marginals are strictly positive post-pruning.
    Eigen::MatrixXd cond(m, probs.cols());
    for (Eigen::Index i = 0; i < m; ++i) cond.row(i) = probs.row(i) / px(i);

    std::vector<Eigen::Index> source_to_class(static_cast<size_t>(m), -1);
    std::vector<std::vector<Eigen::Index>> members;
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index found = -1;
        for (size_t c = 0; c < members.size(); ++c) {
            Eigen::Index rep = members[c].front();
            if (total_variation(cond.row(i).transpose(), cond.row(rep).transpose()) <=
                kConditionalTv) {
                found = static_cast<Eigen::Index>(c);
                break;
            }
        }
        if (found < 0) {
            found = static_cast<Eigen::Index>(members.size());
            members.emplace_back();
        }
        source_to_class[static_cast<size_t>(i)] = found;
        members[static_cast<size_t>(found)].push_back(i);
    }

    std::vector<Eigen::Index> reps;
    std::vector<std::string> class_labels;
    Eigen::MatrixXd collapsed = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(members.size()),
                                                      probs.cols());
    for (size_t c = 0; c < members.size(); ++c) {
        Eigen::Index rep = members[c].front();
        for (Eigen::Index x : members[c]) {
            collapsed.row(static_cast<Eigen::Index>(c)) += probs.row(x);
            if (p.x_alphabet().label(x) < p.x_alphabet().label(rep)) rep = x;
        }
        reps.push_back(rep);
        class_labels.push_back(p.x_alphabet().label(rep));
    }

    return DependentPartMap{std::move(source_to_class), std::move(reps),
                            JointDistribution(Alphabet(std::move(class_labels)), p.y_alphabet(),
                                              std::move(collapsed))};
}

namespace {

// Plain union-find over x-nodes [0,m) and y-nodes [m, m+n).
struct UnionFind {
    std::vector<Eigen::Index> parent;
    explicit UnionFind(Eigen::Index n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    Eigen::Index find(Eigen::Index a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    }
    void unite(Eigen::Index a, Eigen::Index b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

ComponentPartition connected_components(const JointDistribution& p) {
    const Eigen::Index m = p.probs().rows();
    const Eigen::Index n = p.probs().cols();
    auto edges = p.support();

    UnionFind uf(m + n);
    for (const auto& [x, y] : edges) uf.unite(x, m + y);

    // Component ids in order of the smallest x-index they contain.
    ComponentPartition part;
    std::unordered_map<Eigen::Index, Eigen::Index> root_to_id;
    part.x_component.resize(static_cast<size_t>(m));
    part.y_component.resize(static_cast<size_t>(n));
    for (Eigen::Index x = 0; x < m; ++x) {
        Eigen::Index root = uf.find(x);
        auto it = root_to_id.find(root);
        if (it == root_to_id.end())
            it = root_to_id.emplace(root, static_cast<Eigen::Index>(root_to_id.size())).first;
        part.x_component[static_cast<size_t>(x)] = it->second;
    }
    for (Eigen::Index y = 0; y < n; ++y) {
        Eigen::Index root = uf.find(m + y);
        auto it = root_to_id.find(root);
        if (it == root_to_id.end())
            it = root_to_id.emplace(root, static_cast<Eigen::Index>(root_to_id.size())).first;
        part.y_component[static_cast<size_t>(y)] = it->second;
    }
    part.count = static_cast<Eigen::Index>(root_to_id.size());

    part.edge_component.reserve(edges.size());
    part.weights = Eigen::VectorXd::Zero(part.count);
    for (const auto& [x, y] : edges) {
        Eigen::Index id = part.x_component[static_cast<size_t>(x)];
        part.edge_component.push_back(id);
        part.weights(id) += p.prob(x, y);
    }
    return part;
}

TrivialityReport is_trivial(const JointDistribution& p) {
    TrivialityReport report;
    // H(X collapsed | Y) from the collapsed joint over (classes, Y).
    DependentPartMap dx = dependent_part(p);
    report.h_xdep_given_y = entropy_joint(dx.collapsed) - entropy_y(dx.collapsed);
    DependentPartMap dy = dependent_part(p.transposed());
    report.h_ydep_given_x = entropy_joint(dy.collapsed) - entropy_y(dy.collapsed);
    report.trivial = report.h_xdep_given_y < 1e-9;
    return report;
}

JointDistribution randomize_function(const FunctionTable& f) {
    const Eigen::Index na = f.a.size();
    const Eigen::Index nb = f.b.size();
    if (f.w_out.rows() != na || f.w_out.cols() != nb || f.z_out.rows() != na ||
        f.z_out.cols() != nb)
        throw ValidationError("randomize_function: table shape does not match alphabets");

    std::vector<std::string> xs, ys;
    for (Eigen::Index a = 0; a < na; ++a)
        for (Eigen::Index w = 0; w < f.w.size(); ++w)
            xs.push_back(f.a.label(a) + ":" + f.w.label(w));
    for (Eigen::Index b = 0; b < nb; ++b)
        for (Eigen::Index z = 0; z < f.z.size(); ++z)
            ys.push_back(f.b.label(b) + ":" + f.z.label(z));

    Eigen::MatrixXd probs = Eigen::MatrixXd::Zero(na * f.w.size(), nb * f.z.size());
    const double weight = 1.0 / static_cast<double>(na * nb);
    for (Eigen::Index a = 0; a < na; ++a) {
        for (Eigen::Index b = 0; b < nb; ++b) {
            Eigen::Index w = f.w_out(a, b);
            Eigen::Index z = f.z_out(a, b);
            if (w < 0 || w >= f.w.size() || z < 0 || z >= f.z.size())
                throw ValidationError("randomize_function: outcome index out of range");
            probs(a * f.w.size() + w, b * f.z.size() + z) += weight;
        }
    }
    // Unreachable (a,w)/(b,z) pairs are pruned by the constructor.
    return JointDistribution(Alphabet(std::move(xs)), Alphabet(std::move(ys)), std::move(probs));
}

}  // namespace embedlab
