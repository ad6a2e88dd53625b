#include "embedlab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace embedlab {

namespace {

using cxd = std::complex<double>;

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kNormTol = 1e-10;
constexpr double kEigClamp = -1e-10;
constexpr double kEntropyFloor = 1e-15;
constexpr double kOutcomeFloor = 1e-14;
constexpr double kJacobiOffMass = 1e-12;
constexpr Eigen::Index kMaxEigDim = 4096;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Combined row-major offsets of a register subset: entry k is the
// contribution of the k-th mixed-radix tuple over `positions` to the global
// state index.
std::vector<Eigen::Index> subset_offsets(const RegisterLayout& layout,
                                         const std::vector<Eigen::Index>& positions) {
    Eigen::Index total = 1;
    for (Eigen::Index pos : positions) total *= layout.reg(pos).dim;
    std::vector<Eigen::Index> offsets(static_cast<size_t>(total), 0);
    Eigen::Index repeat = total;
    for (Eigen::Index pos : positions) {
        const Eigen::Index d = layout.reg(pos).dim;
        const Eigen::Index stride = layout.stride(pos);
        repeat /= d;
        for (Eigen::Index k = 0; k < total; ++k)
            offsets[static_cast<size_t>(k)] += ((k / repeat) % d) * stride;
    }
    return offsets;
}

std::vector<Eigen::Index> positions_of(const RegisterLayout& layout,
                                       const std::vector<std::string>& names) {
    std::set<Eigen::Index> seen;
    for (const auto& name : names) seen.insert(layout.position(name));
    return {seen.begin(), seen.end()};  // layout order
}

std::vector<Eigen::Index> complement_positions(const RegisterLayout& layout,
                                               const std::vector<Eigen::Index>& positions) {
    std::vector<Eigen::Index> rest;
    for (Eigen::Index i = 0; i < layout.count(); ++i)
        if (std::find(positions.begin(), positions.end(), i) == positions.end())
            rest.push_back(i);
    return rest;
}

RegisterLayout layout_from_positions(const RegisterLayout& layout,
                                     const std::vector<Eigen::Index>& positions) {
    std::vector<RegisterLayout::Register> regs;
    regs.reserve(positions.size());
    for (Eigen::Index pos : positions) regs.push_back(layout.reg(pos));
    return RegisterLayout(std::move(regs));
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<Register> registers)
    : registers_(std::move(registers)) {
    std::set<std::string> names;
    for (const auto& r : registers_) {
        if (r.dim < 1) throw LayoutMismatch("RegisterLayout: register '" + r.name + "' has dim < 1");
        if (!names.insert(r.name).second)
            throw LayoutMismatch("RegisterLayout: duplicate register '" + r.name + "'");
    }
    strides_.assign(registers_.size(), 1);
    for (Eigen::Index i = count() - 2; i >= 0; --i)
        strides_[static_cast<size_t>(i)] =
            strides_[static_cast<size_t>(i + 1)] * registers_[static_cast<size_t>(i + 1)].dim;
    dim_ = 1;
    for (const auto& r : registers_) dim_ *= r.dim;
}

bool RegisterLayout::has(const std::string& name) const {
    for (const auto& r : registers_)
        if (r.name == name) return true;
    return false;
}

Eigen::Index RegisterLayout::position(const std::string& name) const {
    for (Eigen::Index i = 0; i < count(); ++i)
        if (registers_[static_cast<size_t>(i)].name == name) return i;
    throw LayoutMismatch("RegisterLayout: unknown register '" + name + "'");
}

Eigen::Index RegisterLayout::dim_of(const std::string& name) const {
    return registers_[static_cast<size_t>(position(name))].dim;
}

Eigen::Index RegisterLayout::stride(Eigen::Index position) const {
    return strides_.at(static_cast<size_t>(position));
}

RegisterLayout RegisterLayout::subset(const std::vector<std::string>& names) const {
    return layout_from_positions(*this, positions_of(*this, names));
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
    std::vector<Register> regs = registers_;
    regs.insert(regs.end(), other.registers_.begin(), other.registers_.end());
    return RegisterLayout(std::move(regs));
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (count() != other.count()) return false;
    for (Eigen::Index i = 0; i < count(); ++i) {
        if (reg(i).name != other.reg(i).name || reg(i).dim != other.reg(i).dim) return false;
    }
    return true;
}

StateVector::StateVector(RegisterLayout layout, Eigen::VectorXcd amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.dim())
        throw LayoutMismatch("StateVector: amplitude count does not match layout dimension");
    double norm = amps_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << "StateVector: norm " << norm << " is not 1";
        throw ValidationError(msg.str());
    }
}

DensityMatrix::DensityMatrix(RegisterLayout layout, Eigen::MatrixXcd matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() != layout_.dim())
        throw LayoutMismatch("DensityMatrix: matrix shape does not match layout dimension");
    if (max_abs(mat_ - mat_.adjoint()) > kHermitianTol)
        throw NotHermitian("DensityMatrix: matrix is not Hermitian");
    double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace " << tr << " is not 1";
        throw ValidationError(msg.str());
    }
}

CqEnsemble::CqEnsemble(Alphabet labels, Eigen::VectorXd weights, std::vector<DensityMatrix> states)
    : labels_(std::move(labels)), weights_(std::move(weights)), states_(std::move(states)) {
    if (labels_.size() != weights_.size() ||
        states_.size() != static_cast<size_t>(weights_.size()))
        throw ValidationError("CqEnsemble: labels, weights and states must have equal length");
    if (weights_.minCoeff() < -1e-12)
        throw NegativeProbability("CqEnsemble: negative weight");
    if (std::abs(weights_.sum() - 1.0) > 1e-9)
        throw NotNormalized("CqEnsemble: weights sum to " + std::to_string(weights_.sum()));
    for (size_t i = 1; i < states_.size(); ++i)
        if (states_[i].dim() != states_[0].dim())
            throw LayoutMismatch("CqEnsemble: states have mismatched dimensions");
}

DensityMatrix CqEnsemble::average() const {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(states_[0].dim(), states_[0].dim());
    for (Eigen::Index i = 0; i < size(); ++i)
        sum += weights_(i) * states_[static_cast<size_t>(i)].matrix();
    sum /= weights_.sum();  // tolerate dropped zero-probability outcomes
    return DensityMatrix(states_[0].layout(), std::move(sum));
}

Povm::Povm(std::vector<std::pair<std::string, Eigen::MatrixXcd>> elements)
    : elements_(std::move(elements)) {
    if (elements_.empty()) throw ValidationError("Povm: no elements");
    const Eigen::Index d = elements_.front().second.rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [label, e] : elements_) {
        if (e.rows() != d || e.cols() != d)
            throw LayoutMismatch("Povm: element '" + label + "' has mismatched shape");
        if (max_abs(e - e.adjoint()) > kHermitianTol)
            throw NotHermitian("Povm: element '" + label + "' is not Hermitian");
        EighResult eig = eigh(e, false);
        if (eig.values.minCoeff() < kEigClamp)
            throw NegativeEigenvalue("Povm: element '" + label + "' is not PSD");
        sum += e;
    }
    if (max_abs(sum - Eigen::MatrixXcd::Identity(d, d)) > 1e-9)
        throw ValidationError("Povm: elements do not sum to identity");
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    Eigen::VectorXcd out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        out.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
    return StateVector(a.layout().concat(b.layout()), std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    const Eigen::Index da = a.dim(), db = b.dim();
    Eigen::MatrixXcd out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    return DensityMatrix(a.layout().concat(b.layout()), std::move(out));
}

DensityMatrix density(const StateVector& psi) {
    return DensityMatrix(psi.layout(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    const RegisterLayout& layout = rho.layout();
    auto keep_pos = positions_of(layout, keep);
    auto rest_pos = complement_positions(layout, keep_pos);
    auto keep_off = subset_offsets(layout, keep_pos);
    auto rest_off = subset_offsets(layout, rest_pos);

    const Eigen::Index kd = static_cast<Eigen::Index>(keep_off.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
    for (Eigen::Index a = 0; a < kd; ++a)
        for (Eigen::Index b = 0; b < kd; ++b) {
            cxd sum = 0.0;
            for (Eigen::Index t : rest_off)
                sum += rho.matrix()(keep_off[static_cast<size_t>(a)] + t,
                                    keep_off[static_cast<size_t>(b)] + t);
            out(a, b) = sum;
        }
    return DensityMatrix(layout_from_positions(layout, keep_pos), std::move(out));
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<std::string>& keep) {
    const RegisterLayout& layout = psi.layout();
    auto keep_pos = positions_of(layout, keep);
    auto rest_pos = complement_positions(layout, keep_pos);
    auto keep_off = subset_offsets(layout, keep_pos);
    auto rest_off = subset_offsets(layout, rest_pos);

    // rho_keep = M M^dagger with M the (keep x rest) reshaping of psi.
    const Eigen::Index kd = static_cast<Eigen::Index>(keep_off.size());
    const Eigen::Index td = static_cast<Eigen::Index>(rest_off.size());
    Eigen::MatrixXcd m(kd, td);
    for (Eigen::Index a = 0; a < kd; ++a)
        for (Eigen::Index t = 0; t < td; ++t)
            m(a, t) = psi.amplitudes()(keep_off[static_cast<size_t>(a)] +
                                       rest_off[static_cast<size_t>(t)]);
    return DensityMatrix(layout_from_positions(layout, keep_pos), m * m.adjoint());
}

EighResult eigh(const Eigen::MatrixXcd& m, bool with_vectors) {
    if (m.rows() != m.cols()) throw ValidationError("eigh: matrix is not square");
    if (m.rows() > kMaxEigDim)
        throw DimensionTooLarge("eigh: dimension " + std::to_string(m.rows()) +
                                " exceeds cap " + std::to_string(kMaxEigDim));
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs(m - m.adjoint()) > kHermitianTol * scale)
        throw NotHermitian("eigh: matrix is not Hermitian");

    const Eigen::Index n = m.rows();
    Eigen::MatrixXcd a = 0.5 * (m + m.adjoint());
    Eigen::MatrixXcd v;
    if (with_vectors) v = Eigen::MatrixXcd::Identity(n, n);

    const double off_tol_sq = kJacobiOffMass * kJacobiOffMass * scale * scale;
    const double skip = 1e-18 * scale;
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off_sq = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off_sq += std::norm(a(p, q));
        if (2.0 * off_sq <= off_tol_sq) break;

        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cxd apq = a(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq < skip) continue;

                // Unitary G = D R with D = diag(1, conj(phase)) absorbing the
                // phase of a_pq and R the standard real Jacobi rotation.
                const cxd phase = apq / abs_apq;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * abs_apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                const cxd g21 = -s * std::conj(phase);
                const cxd g22 = c * std::conj(phase);

                // Columns: A <- A G.
                Eigen::VectorXcd col_p = a.col(p);
                a.col(p) = c * col_p + g21 * a.col(q);
                a.col(q) = s * col_p + g22 * a.col(q);
                // Rows: A <- G^dagger A.
                Eigen::RowVectorXcd row_p = a.row(p);
                a.row(p) = c * row_p + std::conj(g21) * a.row(q);
                a.row(q) = s * row_p + std::conj(g22) * a.row(q);
                a(p, q) = std::conj(a(q, p));  // keep exactly Hermitian

                if (with_vectors) {
                    Eigen::VectorXcd vcol_p = v.col(p);
                    v.col(p) = c * vcol_p + g21 * v.col(q);
                    v.col(q) = s * vcol_p + g22 * v.col(q);
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() > a(j, j).real();
    });

    EighResult result;
    result.values.resize(n);
    if (with_vectors) result.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        result.values(i) = a(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]).real();
        if (with_vectors) result.vectors.col(i) = v.col(order[static_cast<size_t>(i)]);
    }
    return result;
}

Eigen::VectorXd eigenvalues_hermitian(const DensityMatrix& rho) {
    EighResult eig = eigh(rho.matrix(), false);
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) < kEigClamp) {
            std::ostringstream msg;
            msg << "eigenvalues_hermitian: eigenvalue " << eig.values(i) << " below " << kEigClamp;
            throw NegativeEigenvalue(msg.str());
        }
        if (eig.values(i) < 0.0) eig.values(i) = 0.0;
    }
    return eig.values;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::VectorXd values = eigenvalues_hermitian(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values(i) >= kEntropyFloor) s -= values(i) * std::log2(values(i));
    return s;
}

double trace_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw ValidationError("trace_norm: matrix is not square");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().sum();
}

CqEnsemble measure_subsystem(const StateVector& psi, const std::string& reg) {
    const RegisterLayout& layout = psi.layout();
    const Eigen::Index pos = layout.position(reg);
    const Eigen::Index d = layout.reg(pos).dim;
    const Eigen::Index stride = layout.stride(pos);
    auto rest_pos = complement_positions(layout, {pos});
    auto rest_off = subset_offsets(layout, rest_pos);
    RegisterLayout rest_layout = layout_from_positions(layout, rest_pos);

    std::vector<std::string> labels;
    std::vector<double> weights;
    std::vector<DensityMatrix> states;
    for (Eigen::Index value = 0; value < d; ++value) {
        Eigen::VectorXcd residual(static_cast<Eigen::Index>(rest_off.size()));
        for (size_t k = 0; k < rest_off.size(); ++k)
            residual(static_cast<Eigen::Index>(k)) = psi.amplitudes()(value * stride + rest_off[k]);
        const double w = residual.squaredNorm();
        if (w < kOutcomeFloor) continue;
        residual /= std::sqrt(w);
        labels.push_back(std::to_string(value));
        weights.push_back(w);
        states.emplace_back(rest_layout, residual * residual.adjoint());
    }
    Eigen::VectorXd wv = Eigen::Map<Eigen::VectorXd>(weights.data(),
                                                     static_cast<Eigen::Index>(weights.size()));
    return CqEnsemble(Alphabet(std::move(labels)), std::move(wv), std::move(states));
}

CqEnsemble measure_subsystem(const DensityMatrix& rho, const std::string& reg) {
    const RegisterLayout& layout = rho.layout();
    const Eigen::Index pos = layout.position(reg);
    const Eigen::Index d = layout.reg(pos).dim;
    const Eigen::Index stride = layout.stride(pos);
    auto rest_pos = complement_positions(layout, {pos});
    auto rest_off = subset_offsets(layout, rest_pos);
    RegisterLayout rest_layout = layout_from_positions(layout, rest_pos);
    const Eigen::Index rd = static_cast<Eigen::Index>(rest_off.size());

    std::vector<std::string> labels;
    std::vector<double> weights;
    std::vector<DensityMatrix> states;
    for (Eigen::Index value = 0; value < d; ++value) {
        Eigen::MatrixXcd block(rd, rd);
        for (Eigen::Index a = 0; a < rd; ++a)
            for (Eigen::Index b = 0; b < rd; ++b)
                block(a, b) = rho.matrix()(value * stride + rest_off[static_cast<size_t>(a)],
                                           value * stride + rest_off[static_cast<size_t>(b)]);
        const double w = block.trace().real();
        if (w < kOutcomeFloor) continue;
        labels.push_back(std::to_string(value));
        weights.push_back(w);
        states.emplace_back(rest_layout, block / w);
    }
    Eigen::VectorXd wv = Eigen::Map<Eigen::VectorXd>(weights.data(),
                                                     static_cast<Eigen::Index>(weights.size()));
    return CqEnsemble(Alphabet(std::move(labels)), std::move(wv), std::move(states));
}

double holevo_information(const CqEnsemble& e) {
    double mixed = von_neumann_entropy(e.average());
    double conditional = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i)
        conditional += e.weights()(i) * von_neumann_entropy(e.states()[static_cast<size_t>(i)]);
    return mixed - conditional;
}

double conditional_vn_entropy(const DensityMatrix& rho, const std::vector<std::string>& given) {
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, given));
}

std::vector<PovmOutcome> apply_povm(const Povm& povm, const DensityMatrix& rho) {
    if (povm.dim() != rho.dim())
        throw LayoutMismatch("apply_povm: POVM dimension does not match state");
    std::vector<PovmOutcome> outcomes;
    outcomes.reserve(povm.elements().size());
    for (const auto& [label, e] : povm.elements()) {
        const double p = std::max((e * rho.matrix()).trace().real(), 0.0);
        EighResult eig = eigh(e, true);
        Eigen::VectorXd clamped = eig.values.cwiseMax(0.0).cwiseSqrt();
        Eigen::MatrixXcd sqrt_e =
            eig.vectors * clamped.asDiagonal() * eig.vectors.adjoint();
        Eigen::MatrixXcd post = sqrt_e * rho.matrix() * sqrt_e;
        if (p > kOutcomeFloor) {
            post /= post.trace().real();
        } else {
            // Zero-probability branch: report the maximally mixed placeholder.
            post = Eigen::MatrixXcd::Identity(rho.dim(), rho.dim()) / static_cast<double>(rho.dim());
        }
        outcomes.push_back({label, p, DensityMatrix(rho.layout(), std::move(post))});
    }
    return outcomes;
}

DensityMatrix dephase(const DensityMatrix& rho, const std::string& reg) {
    const RegisterLayout& layout = rho.layout();
    const Eigen::Index pos = layout.position(reg);
    const Eigen::Index d = layout.reg(pos).dim;
    const Eigen::Index stride = layout.stride(pos);
    auto rest_pos = complement_positions(layout, {pos});
    auto rest_off = subset_offsets(layout, rest_pos);

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
    for (Eigen::Index value = 0; value < d; ++value)
        for (Eigen::Index a : rest_off)
            for (Eigen::Index b : rest_off)
                out(value * stride + a, value * stride + b) =
                    rho.matrix()(value * stride + a, value * stride + b);
    return DensityMatrix(layout, std::move(out));
}

Eigen::MatrixXcd embed_operator(const RegisterLayout& layout, const std::string& reg,
                                const Eigen::MatrixXcd& op) {
    const Eigen::Index pos = layout.position(reg);
    const Eigen::Index d = layout.reg(pos).dim;
    if (op.rows() != d || op.cols() != d)
        throw LayoutMismatch("embed_operator: operator shape does not match register '" + reg + "'");
    const Eigen::Index stride = layout.stride(pos);
    auto rest_off = subset_offsets(layout, complement_positions(layout, {pos}));

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(layout.dim(), layout.dim());
    for (Eigen::Index r : rest_off)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) out(r + i * stride, r + j * stride) = op(i, j);
    return out;
}

DensityMatrix apply_register_unitary(const DensityMatrix& rho, const std::string& reg,
                                     const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd full = embed_operator(rho.layout(), reg, u);
    return DensityMatrix(rho.layout(), full * rho.matrix() * full.adjoint());
}

StateVector apply_register_unitary(const StateVector& psi, const std::string& reg,
                                   const Eigen::MatrixXcd& u) {
    const RegisterLayout& layout = psi.layout();
    const Eigen::Index pos = layout.position(reg);
    const Eigen::Index d = layout.reg(pos).dim;
    if (u.rows() != d || u.cols() != d)
        throw LayoutMismatch("apply_register_unitary: shape does not match register '" + reg + "'");
    const Eigen::Index stride = layout.stride(pos);
    auto rest_off = subset_offsets(layout, complement_positions(layout, {pos}));

    Eigen::VectorXcd out = psi.amplitudes();
    Eigen::VectorXcd slice(d);
    for (Eigen::Index r : rest_off) {
        for (Eigen::Index i = 0; i < d; ++i) slice(i) = out(r + i * stride);
        slice = (u * slice).eval();
        for (Eigen::Index i = 0; i < d; ++i) out(r + i * stride) = slice(i);
    }
    return StateVector(layout, std::move(out));
}

}  // namespace embedlab
