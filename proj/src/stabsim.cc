// Copyright 2026 The qsurgery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsurgery/stabsim.h"

#include <algorithm>
#include <deque>

namespace qsurgery {

namespace {

PauliOperator truncated(const PauliOperator &op, size_t keep) {
    return PauliOperator(op.x().resized(keep), op.z().resized(keep), op.phase());
}

PauliLetter letter_of(bool x, bool z) { return static_cast<PauliLetter>(int(x) | (int(z) << 1)); }

// Conjugation rules in the signed letter-string convention.
void conj_h(PauliOperator &p, size_t q) {
    bool x = p.x().get(q), z = p.z().get(q);
    if (x && z) {
        p.set_phase(p.phase() + 2);
    }
    p.set_letter(q, letter_of(z, x));
}

void conj_s(PauliOperator &p, size_t q) {
    bool x = p.x().get(q), z = p.z().get(q);
    if (x && z) {
        p.set_phase(p.phase() + 2);
    }
    p.set_letter(q, letter_of(x, z ^ x));
}

void conj_cx(PauliOperator &p, size_t c, size_t t) {
    bool xc = p.x().get(c), zc = p.z().get(c), xt = p.x().get(t), zt = p.z().get(t);
    if (xc && zt && !(xt ^ zc)) {
        p.set_phase(p.phase() + 2);
    }
    p.set_letter(t, letter_of(xt ^ xc, zt));
    p.set_letter(c, letter_of(xc, zc ^ zt));
}

}  // namespace

StabilizerState::StabilizerState(size_t n) : n_(n) {
    for (size_t q = 0; q < n; q++) {
        stabs_.push_back(PauliOperator::single(n, q, PauliLetter::Z));
        destabs_.push_back(PauliOperator::single(n, q, PauliLetter::X));
    }
}

StabilizerState StabilizerState::from_generators(size_t n, std::vector<PauliOperator> stabs) {
    if (stabs.size() != n) {
        throw SimulationError("state needs " + std::to_string(n) + " generators, got " + std::to_string(stabs.size()));
    }
    RowSpace space(2 * n);
    GF2Matrix pairing(0, 2 * n);
    for (size_t i = 0; i < n; i++) {
        const auto &s = stabs[i];
        if (s.n() != n || !s.is_hermitian()) {
            throw SimulationError("generator " + std::to_string(i) + " is not a Hermitian operator on n qubits");
        }
        for (size_t j = 0; j < i; j++) {
            if (!s.commutes(stabs[j])) {
                throw SimulationError("generators " + std::to_string(j) + " and " + std::to_string(i) +
                                      " anticommute");
            }
        }
        if (!space.insert(s.symplectic())) {
            throw SimulationError("generator " + std::to_string(i) + " is dependent");
        }
        // row (z | x) so that row · (dx | dz) is the symplectic form
        GF2Vector row(2 * n);
        for (size_t q : s.z().support()) {
            row.set(q);
        }
        for (size_t q : s.x().support()) {
            row.set(n + q);
        }
        pairing.append_row(row);
    }
    StabilizerState st;
    st.n_ = n;
    st.stabs_ = std::move(stabs);
    for (size_t i = 0; i < n; i++) {
        GF2Vector e(n);
        e.set(i);
        auto d = solve(pairing, e);
        if (!d) {
            throw std::logic_error("from_generators: no destabilizer");
        }
        PauliOperator dop = PauliOperator::from_symplectic(*d);
        for (size_t j = 0; j < i; j++) {
            if (!dop.commutes(st.destabs_[j])) {
                dop *= st.stabs_[j];
            }
        }
        st.destabs_.push_back(dop);
    }
    return st;
}

std::optional<int> StabilizerState::peek(const PauliOperator &op) const {
    if (op.n() != n_ || !op.is_hermitian()) {
        throw SimulationError("peek: operator must be Hermitian on " + std::to_string(n_) + " qubits");
    }
    for (const auto &s : stabs_) {
        if (!s.commutes(op)) {
            return std::nullopt;
        }
    }
    PauliOperator prod(n_);
    for (size_t i = 0; i < n_; i++) {
        if (!destabs_[i].commutes(op)) {
            prod *= stabs_[i];
        }
    }
    if (!prod.same_support(op)) {
        throw std::logic_error("peek: tableau lost its pairing");
    }
    return prod.phase() == op.phase() ? 1 : -1;
}

MeasureOutcome StabilizerState::measure(const PauliOperator &op, std::mt19937_64 &rng, std::optional<int> force) {
    if (op.n() != n_ || !op.is_hermitian()) {
        throw SimulationError("measure: operator must be Hermitian on " + std::to_string(n_) + " qubits");
    }
    size_t p = n_;
    for (size_t i = 0; i < n_; i++) {
        if (!stabs_[i].commutes(op)) {
            p = i;
            break;
        }
    }
    if (p == n_) {
        int v = *peek(op);
        if (force && *force != v) {
            throw SimulationError("measure: forced outcome contradicts a deterministic one");
        }
        return {v, true};
    }
    for (size_t i = 0; i < n_; i++) {
        if (i != p && !stabs_[i].commutes(op)) {
            stabs_[i] *= stabs_[p];
        }
        if (i != p && !destabs_[i].commutes(op)) {
            destabs_[i] *= stabs_[p];
        }
    }
    destabs_[p] = stabs_[p];
    int v = force ? *force : ((rng() & 1) ? -1 : 1);
    stabs_[p] = op;
    if (v == -1) {
        stabs_[p].set_phase(op.phase() + 2);
    }
    return {v, false};
}

void StabilizerState::apply_pauli(const PauliOperator &p) {
    if (p.n() != n_) {
        throw SimulationError("apply_pauli: size mismatch");
    }
    for (auto &s : stabs_) {
        if (!s.commutes(p)) {
            s.set_phase(s.phase() + 2);
        }
    }
}

void StabilizerState::h(size_t q) {
    for (auto *rows : {&stabs_, &destabs_}) {
        for (auto &r : *rows) {
            conj_h(r, q);
        }
    }
}

void StabilizerState::s(size_t q) {
    for (auto *rows : {&stabs_, &destabs_}) {
        for (auto &r : *rows) {
            conj_s(r, q);
        }
    }
}

void StabilizerState::cx(size_t c, size_t t) {
    if (c == t) {
        throw SimulationError("cx: control equals target");
    }
    for (auto *rows : {&stabs_, &destabs_}) {
        for (auto &r : *rows) {
            conj_cx(r, c, t);
        }
    }
}

void StabilizerState::add_qubits(size_t count, PauliLetter basis) {
    if (basis != PauliLetter::Z && basis != PauliLetter::X) {
        throw SimulationError("add_qubits: basis must be Z or X");
    }
    size_t m = n_ + count;
    for (auto *rows : {&stabs_, &destabs_}) {
        for (auto &r : *rows) {
            r = r.padded(m);
        }
    }
    PauliLetter other = basis == PauliLetter::Z ? PauliLetter::X : PauliLetter::Z;
    for (size_t q = n_; q < m; q++) {
        stabs_.push_back(PauliOperator::single(m, q, basis));
        destabs_.push_back(PauliOperator::single(m, q, other));
    }
    n_ = m;
}

void StabilizerState::remove_trailing_qubits(size_t keep) {
    if (keep > n_) {
        throw SimulationError("remove_trailing_qubits: keep exceeds n");
    }
    std::vector<PauliOperator> rows = stabs_;
    std::vector<bool> pivot(rows.size(), false);
    auto eliminate = [&](auto has_bit) {
        size_t r = 0;
        while (r < rows.size() && (pivot[r] || !has_bit(rows[r]))) {
            r++;
        }
        if (r == rows.size()) {
            return;
        }
        pivot[r] = true;
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && has_bit(rows[i])) {
                rows[i] *= rows[r];
            }
        }
    };
    for (size_t q = keep; q < n_; q++) {
        eliminate([q](const PauliOperator &p) { return p.x().get(q); });
        eliminate([q](const PauliOperator &p) { return p.z().get(q); });
    }
    std::vector<PauliOperator> kept;
    for (size_t i = 0; i < rows.size(); i++) {
        if (!pivot[i]) {
            kept.push_back(truncated(rows[i], keep));
        }
    }
    if (kept.size() != keep) {
        throw SimulationError("remove_trailing_qubits: removed qubits are entangled with the rest");
    }
    *this = from_generators(keep, std::move(kept));
}

bool StabilizerState::same_state(const StabilizerState &other) const {
    if (other.n_ != n_) {
        return false;
    }
    StabilizerCode group(n_, other.stabs_);
    return std::all_of(stabs_.begin(), stabs_.end(), [&](const PauliOperator &s) { return group.in_group(s); });
}

StabilizerState prepare_codespace(const StabilizerCode &code,
                                  const std::vector<std::pair<PauliOperator, int>> &eigen) {
    size_t n = code.n;
    RowSpace space(2 * n);
    std::vector<PauliOperator> gens;
    for (const auto &c : code.checks) {
        if (space.insert(c.symplectic())) {
            gens.push_back(c);
        }
    }
    for (size_t i = 0; i < eigen.size(); i++) {
        PauliOperator op = eigen[i].first;
        if (op.n() != n || !op.is_hermitian()) {
            throw SimulationError("eigen-spec operator " + std::to_string(i) + " is not Hermitian on n qubits");
        }
        if (!code.commutes_with_all(op) ||
            !std::all_of(gens.begin(), gens.end(), [&](const PauliOperator &g) { return g.commutes(op); })) {
            throw SimulationError("eigen-spec operator " + std::to_string(i) + " anticommutes with the spec");
        }
        if (!space.insert(op.symplectic())) {
            throw SimulationError("eigen-spec over-specified: operator " + std::to_string(i) + " is dependent");
        }
        if (eigen[i].second == -1) {
            op.set_phase(op.phase() + 2);
        }
        gens.push_back(op);
    }
    if (gens.size() != n) {
        throw SimulationError("eigen-spec under-specified: " + std::to_string(n - gens.size()) +
                              " generators missing");
    }
    return StabilizerState::from_generators(n, std::move(gens));
}

StabilizerState encode_logical_state(const SurgeryPlan &plan, const StabilizerState &logical) {
    size_t k = plan.basis.k();
    if (logical.n() > k) {
        throw SimulationError("logical state has more qubits than the code encodes");
    }
    std::vector<std::pair<PauliOperator, int>> eigen;
    for (const auto &s : logical.stabilizers()) {
        eigen.emplace_back(physical_logical(plan.basis, s.padded(k)), 1);
    }
    for (size_t q = logical.n(); q < k; q++) {
        eigen.emplace_back(physical_logical(plan.basis, PauliOperator::single(k, q, PauliLetter::Z)), 1);
    }
    return prepare_codespace(plan.code, eigen);
}

StabilizerState random_logical_state(size_t k, std::mt19937_64 &rng, size_t gates) {
    StabilizerState st(k);
    if (gates == 0) {
        gates = 8 * k + 8;
    }
    for (size_t g = 0; g < gates; g++) {
        size_t q = rng() % k;
        switch (rng() % 3) {
            case 0:
                st.h(q);
                break;
            case 1:
                st.s(q);
                break;
            default:
                if (k > 1) {
                    size_t t = (q + 1 + rng() % (k - 1)) % k;
                    st.cx(q, t);
                }
        }
    }
    return st;
}

bool Transcript::consistent() const {
    return std::all_of(steps.begin(), steps.end(),
                       [](const StepTranscript &s) { return s.consistent && s.restored; });
}

namespace {

class Runner {
   public:
    Runner(const SurgeryPlan &plan, StabilizerState state, uint64_t seed, SimOptions options)
        : plan_(plan), state_(std::move(state)), rng_(seed), options_(options) {}

    StepTranscript run_step(size_t index);
    StabilizerState &state() { return state_; }

   private:
    int measure(const PauliOperator &op) {
        int raw = state_.measure(padded(op), rng_).value;
        return frame_.commutes(padded(op)) ? raw : -raw;
    }
    PauliOperator padded(const PauliOperator &op) const { return op.n() == state_.n() ? op : op.padded(state_.n()); }
    void grow_frame() { frame_ = frame_.n() == state_.n() ? frame_ : frame_.padded(state_.n()); }
    void measure_code(const StabilizerCode &code, size_t rounds, std::vector<int> &out, StepTranscript &st);

    const SurgeryPlan &plan_;
    StabilizerState state_;
    std::mt19937_64 rng_;
    SimOptions options_;
    PauliOperator frame_;
};

void Runner::measure_code(const StabilizerCode &code, size_t rounds, std::vector<int> &out, StepTranscript &st) {
    grow_frame();
    out.clear();
    size_t total = options_.repeat_rounds ? std::max<size_t>(rounds, 1) : 1;
    for (size_t r = 0; r < total; r++) {
        for (size_t c = 0; c < code.checks.size(); c++) {
            int v = measure(code.checks[c]);
            if (r == 0) {
                out.push_back(v);
            } else if (out[c] != v) {
                st.consistent = false;
            }
        }
    }
}

StepTranscript Runner::run_step(size_t index) {
    const MeasurementStep &step = plan_.steps[index];
    StepTranscript st;
    st.label = step.label;
    st.role = step.role;
    size_t n0 = plan_.code.n;
    const DeformedCode &br = step.branched, &me = step.measured;
    frame_ = PauliOperator(n0);
    if (step.tree) {
        state_.add_qubits(br.n() - n0, PauliLetter::X);
        measure_code(br.code, plan_.d, st.branch_checks, st);
    }
    state_.add_qubits(me.n() - br.n(), PauliLetter::X);
    measure_code(me.code, plan_.d, st.measure_checks, st);

    for (const auto &m : step.measurements) {
        int value = m.gauge_sign;
        for (size_t v : m.vertex_checks) {
            value *= st.measure_checks[v];
        }
        PauliOperator r = m.gauge_target;
        for (size_t c : m.cert_checks) {
            r *= br.code.checks[c];
            value *= st.branch_checks[c];
        }
        PauliOperator rep = m.representative.padded(br.n());
        if (!r.same_support(rep)) {
            throw std::logic_error("run_surgery: leaves do not multiply back to the representative");
        }
        if (r.phase() != rep.phase()) {
            value = -value;
        }
        auto check = state_.peek(padded(rep));
        if (!check || *check != value) {
            st.consistent = false;
        }
        st.product_outcomes.push_back(m.sign * value);
    }

    // gauge exit: edges out in X, then fix the vertex frame from the edge outcomes
    std::vector<int> edge_value(state_.n(), 1);
    for (size_t q = br.n(); q < me.n(); q++) {
        edge_value[q] = measure(PauliOperator::single(me.n(), q, PauliLetter::X));
        st.edge_outcomes.push_back(edge_value[q]);
    }
    for (const auto &m : step.measurements) {
        const AuxGraph &g = m.graph;
        std::vector<int> sign(g.vertex_count(), 0);
        std::vector<std::vector<std::pair<size_t, size_t>>> nbr(g.vertex_count());
        for (size_t e = 0; e < g.edges.size(); e++) {
            nbr[g.edges[e].first].push_back({g.edges[e].second, e});
            nbr[g.edges[e].second].push_back({g.edges[e].first, e});
        }
        for (size_t root = 0; root < g.vertex_count(); root++) {
            if (sign[root]) {
                continue;
            }
            sign[root] = 1;
            std::deque<size_t> queue{root};
            while (!queue.empty()) {
                size_t u = queue.front();
                queue.pop_front();
                for (auto [v, e] : nbr[u]) {
                    int want = sign[u] * edge_value[m.edge_qubits[e]];
                    if (!sign[v]) {
                        sign[v] = want;
                        queue.push_back(v);
                    } else if (sign[v] != want) {
                        st.consistent = false;
                    }
                }
            }
        }
        for (size_t v = 0; v < g.vertex_count(); v++) {
            if (sign[v] == -1 && g.vertex_qubit[v]) {
                frame_ *= PauliOperator::single(frame_.n(), *g.vertex_qubit[v], g.vertex_letter[v]);
            }
        }
    }
    state_.remove_trailing_qubits(br.n());
    frame_ = truncated(frame_, br.n());

    if (step.tree) {
        std::vector<int> out(br.n(), 1);
        for (size_t q = n0; q < br.n(); q++) {
            out[q] = measure(PauliOperator::single(br.n(), q, PauliLetter::X));
            st.branch_outcomes.push_back(out[q]);
        }
        const auto &stickers = step.tree->stickers;
        for (size_t s = stickers.size(); s-- > 0;) {
            for (size_t i = 0; i < stickers[s].attach.size(); i++) {
                size_t a = stickers[s].attach[i];
                if (out[stickers[s].copies[i]] != -1) {
                    continue;
                }
                if (a >= n0) {
                    out[a] = -out[a];
                } else {
                    frame_ *= PauliOperator::single(br.n(), a, step.tree->frame[a]);
                }
            }
        }
        state_.remove_trailing_qubits(n0);
        frame_ = truncated(frame_, n0);
    }
    state_.apply_pauli(frame_);
    st.frame = frame_;

    st.logical_correction = PauliOperator(n0);
    size_t k = plan_.basis.k();
    for (size_t j = 0; j < step.products.size(); j++) {
        if (st.product_outcomes[j] == 1 || step.role == StepRole::Measure || step.role == StepRole::Split) {
            continue;
        }
        LogicalOp fix(k);
        if (step.role == StepRole::Prepare) {
            auto [idx, letter] = *step.products[j].terms.begin();
            fix = PauliOperator::single(k, idx, letter == PauliLetter::Z ? PauliLetter::X : PauliLetter::Z);
        } else {
            // readout: undo the split on the data and reset A (and B)
            fix = plan_.gadgets[plan_.readout_gadgets[index][j]].readout_correction();
        }
        st.logical_correction *= physical_logical(plan_.basis, fix);
    }
    state_.apply_pauli(st.logical_correction);
    st.restored = std::all_of(plan_.code.checks.begin(), plan_.code.checks.end(), [&](const PauliOperator &c) {
        auto v = state_.peek(c);
        return v && *v == 1;
    });
    return st;
}

}  // namespace

Transcript run_surgery(const SurgeryPlan &plan, const StabilizerState &input, uint64_t seed, SimOptions options) {
    if (!plan.certified()) {
        throw SimulationError("run_surgery: plan is not certified");
    }
    if (input.n() != plan.code.n) {
        throw SimulationError("run_surgery: input state size differs from the plan code");
    }
    Runner runner(plan, input, seed, options);
    Transcript t;
    t.seed = seed;
    for (size_t s = 0; s < plan.steps.size(); s++) {
        t.steps.push_back(runner.run_step(s));
    }
    if (plan.gadgets.empty()) {
        t.results = t.steps.at(0).product_outcomes;
    } else {
        std::vector<int> gadget_value(plan.gadgets.size(), 1);
        for (size_t s = 0; s < plan.steps.size(); s++) {
            if (plan.steps[s].role != StepRole::Readout) {
                continue;
            }
            const auto &group = plan.readout_gadgets[s];
            for (size_t j = 0; j < group.size(); j++) {
                const auto &g = plan.gadgets[group[j]];
                gadget_value[group[j]] =
                    g.reconstruction_sign() * t.steps[s - 2].product_outcomes[j] * t.steps[s - 1].product_outcomes[j];
            }
        }
        for (const auto &r : plan.reconstructions) {
            int v = r.sign;
            for (size_t g : r.generators) {
                v *= gadget_value[g];
            }
            t.results.push_back(v);
        }
    }
    t.final_state = runner.state();
    return t;
}

}  // namespace qsurgery
