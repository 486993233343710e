// Dense-statevector simulation of the search and counting subroutines at
// small scale: named multi-register layouts, phase oracles, the iterate
// Q(A, chi) = -A S0 A^-1 S_chi, and phase estimation on Q with exact
// final-distribution extraction. Everything here is the exactness reference
// the analytic backend is validated against.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qkm/analytic.hpp"
#include "qkm/rng.hpp"

namespace qkm {

inline constexpr uint32_t default_qubit_cap = 24;

using BasisPredicate = std::function<bool(uint64_t)>;

struct RegisterSpec {
    std::string name;
    uint32_t qubits = 0;
};

// Registers occupy contiguous bit ranges of the basis index; the first
// declared register sits in the low bits.
class RegisterLayout {
  public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<RegisterSpec> regs);

    uint32_t total_qubits() const { return total_qubits_; }
    uint32_t offset(std::string_view name) const;  // throws unknown_register
    uint32_t width(std::string_view name) const;
    uint64_t extract(std::string_view name, uint64_t basis) const;

  private:
    const RegisterSpec& find(std::string_view name) const;

    std::vector<RegisterSpec> regs_;
    std::vector<uint32_t> offsets_;
    uint32_t total_qubits_ = 0;
};

class QState {
  public:
    explicit QState(RegisterLayout layout, uint32_t qubit_cap = default_qubit_cap);

    const RegisterLayout& layout() const { return layout_; }
    uint64_t dimension() const { return amps_.size(); }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    void apply_hadamard(uint32_t qubit);
    void apply_hadamard_register(std::string_view reg);
    void apply_controlled_hadamard(uint32_t control, uint32_t target);
    void apply_controlled_hadamard_register(uint32_t control, std::string_view reg);

    // S0 on a register: negate amplitudes whose register value is zero.
    void phase_flip_zero(std::string_view reg);
    void phase_flip_zero_controlled(uint32_t control, std::string_view reg);

    // S_chi: multiply each basis amplitude by (-1)^{chi(basis)}. Charges one
    // oracle round.
    void phase_flip_if(const BasisPredicate& chi, QueryCounter& counter);
    void phase_flip_if_controlled(uint32_t control, const BasisPredicate& chi,
                                  QueryCounter& counter);

    void negate();                    // global -1
    void phase_z(uint32_t qubit);     // |1> on that qubit picks up -1

    // Inverse Fourier transform on one register, applied as a dense DFT
    // block per setting of the remaining qubits.
    void inverse_dft_register(std::string_view reg);

    double norm_sq() const;
    void check_norm() const;  // throws if off unity by more than 1e-9

    std::vector<double> register_marginal(std::string_view reg) const;
    uint64_t sample(Rng& rng) const;

  private:
    RegisterLayout layout_;
    std::vector<std::complex<double>> amps_;
};

// An opaque preparation unitary: how to apply A and A^-1 to a state whose
// layout contains `target_register`. prepare following unprepare must be
// the identity within 1e-9 max-norm.
struct PreparableCircuit {
    std::string target_register;
    std::function<void(QState&)> prepare;
    std::function<void(QState&)> unprepare;
};

PreparableCircuit uniform_preparation(std::string target_register);

// One iterate Q(A, chi) = -A S0 A^-1 S_chi in place; charges 1 oracle round.
void apply_grover_iterate(QState& state, const PreparableCircuit& a, const BasisPredicate& chi,
                          QueryCounter& counter);

// Prepares A|0>, applies Q^iterations, measures. flag = chi(label). Charges
// `iterations` oracle rounds.
GroverOutcome grover_power(const PreparableCircuit& a, const BasisPredicate& chi,
                           uint64_t iterations, const RegisterLayout& layout, Rng& rng,
                           QueryCounter& counter, uint32_t qubit_cap = default_qubit_cap);

// Exact label distribution of Q^iterations A|0> (no sampling, no charging);
// used by the closed-form cross checks.
std::vector<double> grover_label_distribution(const PreparableCircuit& a, const BasisPredicate& chi,
                                              uint64_t iterations, const RegisterLayout& layout,
                                              uint32_t qubit_cap = default_qubit_cap);

struct EstimateDistribution {
    uint64_t space_size = 0;
    uint64_t m_points = 0;
    std::vector<double> prob;  // indexed by phase outcome y

    double estimate_for_phase(uint64_t y) const {
        return static_cast<double>(space_size) *
               sin_pi_sq(static_cast<double>(y) / static_cast<double>(m_points));
    }
};

// Exact output distribution of phase estimation on Q over a uniform start,
// with `marked` as the counted predicate on index labels. m_points must be a
// power of two (that is the phase register).
EstimateDistribution amplitude_estimation_distribution(uint64_t space_size,
                                                       const BasisPredicate& marked,
                                                       uint64_t m_points,
                                                       uint32_t qubit_cap = default_qubit_cap);

// One measured run of the same circuit: samples y, returns the estimate.
// Charges m_points - 1 controlled iterate rounds plus 1 preparation round.
CountEstimate sample_amplitude_estimate(uint64_t space_size, const BasisPredicate& marked,
                                        uint64_t m_points, Rng& rng, QueryCounter& counter,
                                        uint32_t qubit_cap = default_qubit_cap);

}  // namespace qkm
