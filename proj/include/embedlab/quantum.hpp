#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "embedlab/errors.hpp"
#include "embedlab/probdist.hpp"

namespace embedlab {

// Ordered list of named registers; the state index runs row-major over the
// listed order.  Canonical order convention is [E, A, Ap, B, Bp] with absent
// registers omitted.
class RegisterLayout {
  public:
    struct Register {
        std::string name;
        Eigen::Index dim;
    };

    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> registers);

    Eigen::Index dim() const { return dim_; }
    Eigen::Index count() const { return static_cast<Eigen::Index>(registers_.size()); }
    const Register& reg(Eigen::Index i) const { return registers_.at(static_cast<size_t>(i)); }
    const std::vector<Register>& registers() const { return registers_; }

    bool has(const std::string& name) const;
    Eigen::Index position(const std::string& name) const;  // throws LayoutMismatch
    Eigen::Index dim_of(const std::string& name) const;
    Eigen::Index stride(Eigen::Index position) const;

    // Layout of a subset of registers, preserving the original order.
    RegisterLayout subset(const std::vector<std::string>& names) const;
    // Concatenation (this first); register names must stay unique.
    RegisterLayout concat(const RegisterLayout& other) const;

    bool operator==(const RegisterLayout& other) const;

  private:
    std::vector<Register> registers_;
    std::vector<Eigen::Index> strides_;
    Eigen::Index dim_ = 1;
};

// Pure state with a register layout; unit norm within 1e-10.
class StateVector {
  public:
    StateVector(RegisterLayout layout, Eigen::VectorXcd amplitudes);

    const RegisterLayout& layout() const { return layout_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

  private:
    RegisterLayout layout_;
    Eigen::VectorXcd amps_;
};

// Hermitian, trace-1, PSD matrix with a register layout.  Hermiticity and
// trace are validated at construction; positivity is enforced by
// eigenvalues_hermitian, which rejects eigenvalues below -1e-10.
class DensityMatrix {
  public:
    DensityMatrix(RegisterLayout layout, Eigen::MatrixXcd matrix);

    const RegisterLayout& layout() const { return layout_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

  private:
    RegisterLayout layout_;
    Eigen::MatrixXcd mat_;
};

// Classical-quantum ensemble {p_x, rho_x} on a common layout.
class CqEnsemble {
  public:
    CqEnsemble(Alphabet labels, Eigen::VectorXd weights, std::vector<DensityMatrix> states);

    const Alphabet& labels() const { return labels_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    const std::vector<DensityMatrix>& states() const { return states_; }
    Eigen::Index size() const { return weights_.size(); }

    // Weighted average state.
    DensityMatrix average() const;

  private:
    Alphabet labels_;
    Eigen::VectorXd weights_;
    std::vector<DensityMatrix> states_;
};

// Generalized measurement: labeled PSD elements summing to identity.
class Povm {
  public:
    explicit Povm(std::vector<std::pair<std::string, Eigen::MatrixXcd>> elements);

    const std::vector<std::pair<std::string, Eigen::MatrixXcd>>& elements() const {
        return elements_;
    }
    Eigen::Index dim() const { return elements_.front().second.rows(); }

  private:
    std::vector<std::pair<std::string, Eigen::MatrixXcd>> elements_;
};

struct PovmOutcome {
    std::string label;
    double probability;
    DensityMatrix post_state;
};

struct EighResult {
    Eigen::VectorXd values;    // descending
    Eigen::MatrixXcd vectors;  // columns aligned with values
};

StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix density(const StateVector& psi);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);
// Reduction of a pure state without materializing the full density matrix.
DensityMatrix partial_trace(const StateVector& psi, const std::vector<std::string>& keep);

// Cyclic Jacobi diagonalization of a Hermitian matrix; deterministic sweep
// order, off-diagonal mass threshold 1e-12, dimension capped at 4096.
EighResult eigh(const Eigen::MatrixXcd& m, bool with_vectors = true);

// Spectrum of a density matrix, descending; negatives in (-1e-10, 0) clamp
// to zero, anything below that is an error.
Eigen::VectorXd eigenvalues_hermitian(const DensityMatrix& rho);

double von_neumann_entropy(const DensityMatrix& rho);

// Sum of singular values.
double trace_norm(const Eigen::MatrixXcd& m);

// Computational-basis measurement of one register; residual states live on
// the remaining registers.  Outcomes of probability < 1e-14 are dropped.
CqEnsemble measure_subsystem(const StateVector& psi, const std::string& reg);
CqEnsemble measure_subsystem(const DensityMatrix& rho, const std::string& reg);

// chi = S(sum p_x rho_x) - sum p_x S(rho_x).
double holevo_information(const CqEnsemble& e);

// S(rest | given) = S(rho) - S(rho_given).
double conditional_vn_entropy(const DensityMatrix& rho, const std::vector<std::string>& given);

std::vector<PovmOutcome> apply_povm(const Povm& povm, const DensityMatrix& rho);

// Zero all matrix elements that connect different computational-basis values
// of one register.
DensityMatrix dephase(const DensityMatrix& rho, const std::string& reg);

// Conjugate one register by a unitary: (I x U x I) rho (I x U x I)^dagger.
DensityMatrix apply_register_unitary(const DensityMatrix& rho, const std::string& reg,
                                     const Eigen::MatrixXcd& u);
StateVector apply_register_unitary(const StateVector& psi, const std::string& reg,
                                   const Eigen::MatrixXcd& u);

// Operator acting as `op` on one register and identity elsewhere.
Eigen::MatrixXcd embed_operator(const RegisterLayout& layout, const std::string& reg,
                                const Eigen::MatrixXcd& op);

}  // namespace embedlab
