#include "qkm/statevector.hpp"

#include <cmath>
#include <utility>

namespace qkm {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
}

RegisterLayout::RegisterLayout(std::vector<RegisterSpec> regs) : regs_(std::move(regs)) {
    offsets_.reserve(regs_.size());
    for (const auto& r : regs_) {
        if (r.qubits == 0) raise(ErrorCode::invalid_argument, "register '" + r.name + "' is empty");
        offsets_.push_back(total_qubits_);
        total_qubits_ += r.qubits;
    }
}

const RegisterSpec& RegisterLayout::find(std::string_view name) const {
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name == name) return regs_[i];
    raise(ErrorCode::unknown_register, "unknown register '" + std::string(name) + "'");
}

uint32_t RegisterLayout::offset(std::string_view name) const {
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name == name) return offsets_[i];
    raise(ErrorCode::unknown_register, "unknown register '" + std::string(name) + "'");
}

uint32_t RegisterLayout::width(std::string_view name) const { return find(name).qubits; }

uint64_t RegisterLayout::extract(std::string_view name, uint64_t basis) const {
    uint32_t off = offset(name);
    uint32_t w = width(name);
    return (basis >> off) & ((uint64_t{1} << w) - 1);
}

QState::QState(RegisterLayout layout, uint32_t qubit_cap) : layout_(std::move(layout)) {
    if (layout_.total_qubits() > qubit_cap)
        raise(ErrorCode::state_too_large, "state needs " + std::to_string(layout_.total_qubits()) +
                                              " qubits, cap is " + std::to_string(qubit_cap));
    amps_.assign(uint64_t{1} << layout_.total_qubits(), {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

void QState::apply_hadamard(uint32_t qubit) {
    uint64_t bit = uint64_t{1} << qubit;
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        auto lo = amps_[i];
        auto hi = amps_[i | bit];
        amps_[i] = (lo + hi) * inv_sqrt2;
        amps_[i | bit] = (lo - hi) * inv_sqrt2;
    }
}

void QState::apply_hadamard_register(std::string_view reg) {
    uint32_t off = layout_.offset(reg);
    uint32_t w = layout_.width(reg);
    for (uint32_t q = 0; q < w; ++q) apply_hadamard(off + q);
}

void QState::apply_controlled_hadamard(uint32_t control, uint32_t target) {
    uint64_t cbit = uint64_t{1} << control;
    uint64_t tbit = uint64_t{1} << target;
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & cbit) || (i & tbit)) continue;
        auto lo = amps_[i];
        auto hi = amps_[i | tbit];
        amps_[i] = (lo + hi) * inv_sqrt2;
        amps_[i | tbit] = (lo - hi) * inv_sqrt2;
    }
}

void QState::apply_controlled_hadamard_register(uint32_t control, std::string_view reg) {
    uint32_t off = layout_.offset(reg);
    uint32_t w = layout_.width(reg);
    for (uint32_t q = 0; q < w; ++q) apply_controlled_hadamard(control, off + q);
}

void QState::phase_flip_zero(std::string_view reg) {
    uint32_t off = layout_.offset(reg);
    uint64_t mask = ((uint64_t{1} << layout_.width(reg)) - 1) << off;
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if ((i & mask) == 0) amps_[i] = -amps_[i];
}

void QState::phase_flip_zero_controlled(uint32_t control, std::string_view reg) {
    uint32_t off = layout_.offset(reg);
    uint64_t mask = ((uint64_t{1} << layout_.width(reg)) - 1) << off;
    uint64_t cbit = uint64_t{1} << control;
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if ((i & cbit) && (i & mask) == 0) amps_[i] = -amps_[i];
}

void QState::phase_flip_if(const BasisPredicate& chi, QueryCounter& counter) {
    counter.add_rounds(1);
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if (chi(i)) amps_[i] = -amps_[i];
}

void QState::phase_flip_if_controlled(uint32_t control, const BasisPredicate& chi,
                                      QueryCounter& counter) {
    counter.add_rounds(1);
    uint64_t cbit = uint64_t{1} << control;
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if ((i & cbit) && chi(i)) amps_[i] = -amps_[i];
}

void QState::negate() {
    for (auto& a : amps_) a = -a;
}

void QState::phase_z(uint32_t qubit) {
    uint64_t bit = uint64_t{1} << qubit;
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if (i & bit) amps_[i] = -amps_[i];
}

void QState::inverse_dft_register(std::string_view reg) {
    uint32_t off = layout_.offset(reg);
    uint32_t w = layout_.width(reg);
    uint64_t m = uint64_t{1} << w;
    std::vector<std::complex<double>> block(m);
    double norm = 1.0 / std::sqrt(static_cast<double>(m));
    uint64_t low_mask = (uint64_t{1} << off) - 1;
    for (uint64_t outer = 0; outer < amps_.size() >> w; ++outer) {
        uint64_t base = ((outer & ~low_mask) << w) | (outer & low_mask);
        for (uint64_t y = 0; y < m; ++y) {
            std::complex<double> acc{0.0, 0.0};
            for (uint64_t x = 0; x < m; ++x) {
                double ang = -2.0 * M_PI * static_cast<double>(x) * static_cast<double>(y) /
                             static_cast<double>(m);
                acc += amps_[base | (x << off)] * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            block[y] = acc * norm;
        }
        for (uint64_t y = 0; y < m; ++y) amps_[base | (y << off)] = block[y];
    }
}

double QState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void QState::check_norm() const {
    if (std::abs(norm_sq() - 1.0) > 1e-9)
        throw std::logic_error("statevector norm drifted off unity");
}

std::vector<double> QState::register_marginal(std::string_view reg) const {
    uint32_t off = layout_.offset(reg);
    uint32_t w = layout_.width(reg);
    std::vector<double> marg(uint64_t{1} << w, 0.0);
    uint64_t mask = (uint64_t{1} << w) - 1;
    for (uint64_t i = 0; i < amps_.size(); ++i) marg[(i >> off) & mask] += std::norm(amps_[i]);
    return marg;
}

uint64_t QState::sample(Rng& rng) const {
    double u = rng.uniform_double() * norm_sq();
    double acc = 0.0;
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        acc += std::norm(amps_[i]);
        if (u < acc) return i;
    }
    return amps_.size() - 1;
}

PreparableCircuit uniform_preparation(std::string target_register) {
    PreparableCircuit out;
    out.target_register = target_register;
    // H is its own inverse and the per-qubit order is immaterial
    auto h_all = [reg = std::move(target_register)](QState& s) { s.apply_hadamard_register(reg); };
    out.prepare = h_all;
    out.unprepare = h_all;
    return out;
}

void apply_grover_iterate(QState& state, const PreparableCircuit& a, const BasisPredicate& chi,
                          QueryCounter& counter) {
    state.phase_flip_if(chi, counter);
    a.unprepare(state);
    state.phase_flip_zero(a.target_register);
    a.prepare(state);
    state.negate();
}

namespace {

QState grover_final_state(const PreparableCircuit& a, const BasisPredicate& chi,
                          uint64_t iterations, const RegisterLayout& layout, uint32_t qubit_cap,
                          QueryCounter& counter) {
    QState state(layout, qubit_cap);
    a.prepare(state);
    for (uint64_t i = 0; i < iterations; ++i) apply_grover_iterate(state, a, chi, counter);
    state.check_norm();
    return state;
}

}  // namespace

GroverOutcome grover_power(const PreparableCircuit& a, const BasisPredicate& chi,
                           uint64_t iterations, const RegisterLayout& layout, Rng& rng,
                           QueryCounter& counter, uint32_t qubit_cap) {
    QState state = grover_final_state(a, chi, iterations, layout, qubit_cap, counter);
    uint64_t basis = state.sample(rng);
    uint64_t label = state.layout().extract(a.target_register, basis);
    return GroverOutcome{label, chi(basis)};
}

std::vector<double> grover_label_distribution(const PreparableCircuit& a, const BasisPredicate& chi,
                                              uint64_t iterations, const RegisterLayout& layout,
                                              uint32_t qubit_cap) {
    QueryCounter scratch;
    QState state = grover_final_state(a, chi, iterations, layout, qubit_cap, scratch);
    return state.register_marginal(a.target_register);
}

namespace {

// Controlled Q = -(A S0 A^-1 S_chi) with A the uniform preparation over the
// index register. The global minus of Q becomes a Z on the control.
void apply_controlled_grover_iterate(QState& state, uint32_t control, const BasisPredicate& chi,
                                     QueryCounter& counter) {
    state.phase_flip_if_controlled(control, chi, counter);
    state.apply_controlled_hadamard_register(control, "index");
    state.phase_flip_zero_controlled(control, "index");
    state.apply_controlled_hadamard_register(control, "index");
    state.phase_z(control);
}

QState amplitude_estimation_final_state(uint64_t space_size, const BasisPredicate& marked,
                                        uint64_t m_points, uint32_t qubit_cap,
                                        QueryCounter& counter) {
    if (!is_pow2(space_size) || space_size < 2)
        raise(ErrorCode::invalid_argument, "space size must be a power of two >= 2");
    if (!is_pow2(m_points) || m_points < 2)
        raise(ErrorCode::invalid_argument, "m_points must be a power of two >= 2");
    uint32_t nq = log2_exact(space_size);
    uint32_t pq = log2_exact(m_points);
    RegisterLayout layout({{"index", nq}, {"phase", pq}});
    QState state(layout, qubit_cap);

    uint32_t index_off = layout.offset("index");
    uint64_t index_mask = (space_size - 1) << index_off;
    BasisPredicate chi_on_index = [&, index_off, index_mask](uint64_t basis) {
        return marked((basis & index_mask) >> index_off);
    };

    counter.add_rounds(1);  // preparation round
    state.apply_hadamard_register("phase");
    state.apply_hadamard_register("index");
    uint32_t phase_off = layout.offset("phase");
    for (uint32_t b = 0; b < pq; ++b) {
        uint64_t reps = uint64_t{1} << b;
        for (uint64_t rpt = 0; rpt < reps; ++rpt)
            apply_controlled_grover_iterate(state, phase_off + b, chi_on_index, counter);
    }
    state.inverse_dft_register("phase");
    state.check_norm();
    return state;
}

}  // namespace

EstimateDistribution amplitude_estimation_distribution(uint64_t space_size,
                                                       const BasisPredicate& marked,
                                                       uint64_t m_points, uint32_t qubit_cap) {
    QueryCounter scratch;
    QState state =
        amplitude_estimation_final_state(space_size, marked, m_points, qubit_cap, scratch);
    EstimateDistribution dist;
    dist.space_size = space_size;
    dist.m_points = m_points;
    dist.prob = state.register_marginal("phase");
    return dist;
}

CountEstimate sample_amplitude_estimate(uint64_t space_size, const BasisPredicate& marked,
                                        uint64_t m_points, Rng& rng, QueryCounter& counter,
                                        uint32_t qubit_cap) {
    QState state = amplitude_estimation_final_state(space_size, marked, m_points, qubit_cap, counter);
    uint64_t basis = state.sample(rng);
    uint64_t y = state.layout().extract("phase", basis);
    EstimateDistribution helper{space_size, m_points, {}};
    return CountEstimate{helper.estimate_for_phase(y), m_points};
}

}  // namespace qkm
