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

#include "qsurgery/spacetime.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qsurgery/stabsim.h"

namespace qsurgery {

namespace {

constexpr PauliLetter kLetters[3] = {PauliLetter::X, PauliLetter::Z, PauliLetter::Y};

const char *family_of(CheckOrigin o) {
    switch (o) {
        case CheckOrigin::Original:
        case CheckOrigin::Deformed:
            return "s~";
        case CheckOrigin::BranchZ:
        case CheckOrigin::GaugeVertex:
            return "A";
        case CheckOrigin::BranchX:
        case CheckOrigin::GaugeFace:
            return "B";
    }
    return "?";
}

bool anticommutes_at(const PauliOperator &op, size_t q, PauliLetter p) {
    if (q >= op.n()) {
        return false;
    }
    auto l = static_cast<uint8_t>(op.letter(q));
    auto m = static_cast<uint8_t>(p);
    // bit0 = x, bit1 = z
    return (((l & 1) & (m >> 1)) ^ ((l >> 1) & (m & 1))) != 0;
}

// New-qubit extension L̃ = L·X(f) of an original logical that commutes with every
// deformed check.
PauliOperator extend_logical(const PauliOperator &l, const DeformedCode &d) {
    size_t n0 = d.original_n, nn = d.new_qubit_count();
    auto padded = l.padded(d.n());
    GF2Matrix m(d.code.checks.size(), nn);
    GF2Vector rhs(d.code.checks.size());
    for (size_t c = 0; c < d.code.checks.size(); c++) {
        const auto &chk = d.code.checks[c];
        for (size_t q = 0; q < nn; q++) {
            if (chk.z().get(n0 + q)) {
                m.set(c, q);
            }
        }
        rhs.set(c, anticommutes(chk, padded));
    }
    auto f = solve(m, rhs);
    if (!f) {
        throw SpacetimeError("logical " + l.str() + " has no X-type extension onto the new qubits");
    }
    GF2Vector x(d.n());
    for (size_t q : f->support()) {
        x.set(n0 + q);
    }
    return padded * PauliOperator::x_type(x);
}

struct Round {
    std::vector<size_t> events;
    bool faulty = false;
    size_t alive = 0;
};

class Builder {
   public:
    DetectorModel m;
    std::vector<Round> rounds;
    std::vector<bool> gap_included;
    // Stabilizers of the state at each gap, before any fault there.
    std::vector<std::vector<PauliOperator>> gap_stabs;
    // Logicals (and their names) in force at each gap.
    std::vector<PauliOperator> logical_small, logical_big;
    std::optional<size_t> exit_round;
    std::vector<size_t> frame_checks;
    std::optional<size_t> frame_round;
    std::vector<size_t> init_events;

    size_t add_round(size_t alive, bool faulty) {
        rounds.push_back({{}, faulty, alive});
        return rounds.size() - 1;
    }

    size_t add_event(size_t r, std::string family, size_t index, PauliOperator op) {
        Event e;
        e.round = r;
        e.family = std::move(family);
        e.index = index;
        e.op = std::move(op);
        e.faulty = rounds[r].faulty && e.family != "init";
        m.events.push_back(std::move(e));
        size_t id = m.events.size() - 1;
        rounds[r].events.push_back(id);
        return id;
    }

    std::optional<size_t> find(size_t r, const std::string &family, size_t index) const {
        for (size_t e : rounds[r].events) {
            if (m.events[e].family == family && m.events[e].index == index) {
                return e;
            }
        }
        return std::nullopt;
    }

    void add_detector(std::string family, size_t time, size_t index, std::vector<size_t> events) {
        Detector d;
        d.family = std::move(family);
        d.time = time;
        d.index = index;
        std::sort(events.begin(), events.end());
        d.events = std::move(events);
        m.detectors.push_back(std::move(d));
    }

    // Repeated-check detectors between round r-1 and r for everything measured in both.
    void repeat_detectors(size_t r) {
        for (size_t e : rounds[r].events) {
            const auto &ev = m.events[e];
            if (ev.family == "init" || ev.family == "X") {
                continue;
            }
            if (auto prev = find(r - 1, ev.family, ev.index)) {
                add_detector(ev.family, r, ev.index, {*prev, e});
            }
        }
    }

    size_t alive_at_gap(size_t g) const { return rounds[g].alive; }

    // Events flipped by a single-qubit Pauli at gap g.
    std::vector<size_t> flipped_by(size_t g, size_t q, PauliLetter p) const {
        std::vector<size_t> out;
        for (size_t r = g; r < rounds.size(); r++) {
            if (q >= rounds[r].alive) {
                break;
            }
            for (size_t e : rounds[r].events) {
                const auto &ev = m.events[e];
                if (ev.family != "init" && anticommutes_at(ev.op, q, p)) {
                    out.push_back(e);
                }
            }
        }
        return out;
    }

    std::vector<size_t> observables_for_space(size_t g, size_t q, PauliLetter p) const {
        std::vector<size_t> out;
        bool big = alive_at_gap(g) > m.original_n;
        for (size_t i = 0; i < logical_small.size(); i++) {
            const auto &l = big ? logical_big[i] : logical_small[i];
            if (anticommutes_at(l, q, p)) {
                out.push_back(i);
            }
        }
        return out;
    }

    std::vector<size_t> observables_for_event(size_t e) const {
        std::vector<size_t> out;
        const auto &ev = m.events[e];
        if (ev.family == "X") {
            for (size_t i = 0; i < logical_big.size(); i++) {
                if (logical_big[i].x().get(ev.index)) {
                    out.push_back(i);
                }
            }
        }
        if (frame_round && ev.round == *frame_round && ev.family == "A") {
            for (size_t i = 0; i < frame_checks.size(); i++) {
                if (frame_checks[i] == ev.index) {
                    out.push_back(logical_small.size() + i);
                }
            }
        }
        return out;
    }

    void finish() {
        std::vector<std::vector<size_t>> event_detectors(m.events.size());
        for (size_t d = 0; d < m.detectors.size(); d++) {
            for (size_t e : m.detectors[d].events) {
                event_detectors[e].push_back(d);
            }
        }
        auto syndrome = [&](const std::vector<size_t> &events) {
            std::set<size_t> s;
            for (size_t e : events) {
                for (size_t d : event_detectors[e]) {
                    if (!s.erase(d)) {
                        s.insert(d);
                    }
                }
            }
            return std::vector<size_t>(s.begin(), s.end());
        };
        std::map<std::tuple<size_t, size_t, int>, size_t> space_id;
        for (size_t g = 1; g < rounds.size(); g++) {
            if (!gap_included[g]) {
                continue;
            }
            for (size_t q = 0; q < alive_at_gap(g); q++) {
                for (PauliLetter p : kLetters) {
                    Fault f;
                    f.kind = FaultKind::Space;
                    f.time = g;
                    f.qubit = q;
                    f.letter = p;
                    f.detectors = syndrome(flipped_by(g, q, p));
                    f.observables = observables_for_space(g, q, p);
                    space_id[{g, q, int(p)}] = m.faults.size();
                    m.faults.push_back(std::move(f));
                }
            }
        }
        std::map<size_t, size_t> meas_id;
        for (size_t e = 0; e < m.events.size(); e++) {
            const auto &ev = m.events[e];
            if (!ev.faulty) {
                continue;
            }
            Fault f;
            f.kind = FaultKind::Measurement;
            f.time = ev.round;
            f.event = e;
            f.detectors = syndrome({e});
            f.observables = observables_for_event(e);
            meas_id[e] = m.faults.size();
            m.faults.push_back(std::move(f));
        }
        for (size_t e : init_events) {
            const auto &ev = m.events[e];
            Fault f;
            f.kind = FaultKind::Init;
            f.time = ev.round;
            f.qubit = ev.index;
            f.event = e;
            const auto &twin = m.faults.at(space_id.at({ev.round, ev.index, int(PauliLetter::Z)}));
            f.detectors = twin.detectors;
            f.observables = twin.observables;
            size_t id = m.faults.size();
            m.faults.push_back(std::move(f));
            m.stabilizers.push_back({id, space_id.at({ev.round, ev.index, int(PauliLetter::Z)})});
            m.stabilizer_labels.push_back("init~Z q" + std::to_string(ev.index));
        }

        auto sid = [&](size_t g, size_t q, PauliLetter p) { return space_id.at({g, q, int(p)}); };
        for (size_t g = 1; g < rounds.size(); g++) {
            if (!gap_included[g]) {
                continue;
            }
            std::string at = " t" + std::to_string(g);
            for (size_t q = 0; q < alive_at_gap(g); q++) {
                m.stabilizers.push_back(
                    {sid(g, q, PauliLetter::X), sid(g, q, PauliLetter::Z), sid(g, q, PauliLetter::Y)});
                m.stabilizer_labels.push_back("Y=XZ q" + std::to_string(q) + at);
            }
            // anything measured right after the gap acts trivially at it
            auto stabs = gap_stabs[g];
            for (size_t e : rounds[g].events) {
                if (m.events[e].family != "init") {
                    stabs.push_back(m.events[e].op);
                }
            }
            for (const auto &s : stabs) {
                std::vector<size_t> ids;
                for (size_t q : s.support().support()) {
                    ids.push_back(sid(g, q, s.letter(q)));
                }
                m.stabilizers.push_back(std::move(ids));
                m.stabilizer_labels.push_back("check " + s.str() + at);
            }
            // pairs across the measurement round g
            if (!rounds[g].faulty) {
                continue;
            }
            bool next = g + 1 < rounds.size() && gap_included[g + 1];
            for (size_t q = 0; q < alive_at_gap(g); q++) {
                bool survives = g + 1 < rounds.size() && q < rounds[g + 1].alive;
                if (survives && !next) {
                    continue;
                }
                for (PauliLetter p : {PauliLetter::X, PauliLetter::Z}) {
                    std::vector<size_t> ids{sid(g, q, p)};
                    if (survives) {
                        ids.push_back(sid(g + 1, q, p));
                    }
                    for (size_t e : rounds[g].events) {
                        if (m.events[e].family != "init" && anticommutes_at(m.events[e].op, q, p)) {
                            ids.push_back(meas_id.at(e));
                        }
                    }
                    m.stabilizers.push_back(std::move(ids));
                    m.stabilizer_labels.push_back(std::string(1, letter_char(p)) + " pair q" + std::to_string(q) + at);
                }
            }
        }
    }
};

void set_observable_names(Builder &b, const LogicalOperators &lops) {
    for (size_t i = 0; i < lops.k(); i++) {
        b.m.observables.push_back("Z" + std::to_string(i));
    }
    for (size_t i = 0; i < lops.k(); i++) {
        b.m.observables.push_back("X" + std::to_string(i));
    }
    for (size_t a : b.frame_checks) {
        b.m.observables.push_back("frame A" + std::to_string(a));
    }
}

void load_logicals(Builder &b, const DeformedCode &d, const LogicalOperators &lops) {
    for (const auto *list : {&lops.z, &lops.x}) {
        for (const auto &l : *list) {
            b.logical_small.push_back(l);
            b.logical_big.push_back(extend_logical(l, d));
        }
    }
}

void require_x_extensions(const DeformedCode &d) {
    std::vector<size_t> fresh;
    for (size_t q = d.original_n; q < d.n(); q++) {
        fresh.push_back(q);
    }
    for (size_t c = 0; c < d.code.checks.size(); c++) {
        auto part = d.code.checks[c].restrict_to(fresh);
        bool a = d.origin[c] == CheckOrigin::BranchZ || d.origin[c] == CheckOrigin::GaugeVertex;
        if (!a && !part.is_x_type()) {
            throw SpacetimeError("check " + std::to_string(c) + " is not X-type on the new qubits");
        }
    }
}

std::vector<size_t> new_support(const PauliOperator &op, size_t n0) {
    std::vector<size_t> out;
    for (size_t q : op.support().support()) {
        if (q >= n0) {
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

std::string Event::label() const {
    return "r" + std::to_string(round) + ":" + family + std::to_string(index);
}

std::string Detector::label() const { return family + std::to_string(index) + "^" + std::to_string(time); }

std::string Fault::label() const {
    switch (kind) {
        case FaultKind::Space:
            return std::string(1, letter_char(letter)) + "@q" + std::to_string(qubit) + ",t" + std::to_string(time);
        case FaultKind::Measurement:
            return "m#" + std::to_string(event);
        case FaultKind::Init:
            return "init@q" + std::to_string(qubit);
    }
    return "?";
}

std::string DetectorModel::export_lines() const {
    std::ostringstream out;
    for (size_t d = 0; d < detectors.size(); d++) {
        out << "detector " << d << ":";
        for (size_t e : detectors[d].events) {
            out << ' ' << events[e].label();
        }
        out << '\n';
    }
    for (size_t f = 0; f < faults.size(); f++) {
        out << "fault " << f << " [1]:";
        for (size_t d : faults[f].detectors) {
            out << ' ' << d;
        }
        out << '\n';
    }
    return out.str();
}

DetectorModel build_branch_detectors(const DeformedCode &deformed, Schedule schedule) {
    if (schedule.rounds == 0) {
        throw SpacetimeError("a branching window needs at least one round");
    }
    require_x_extensions(deformed);
    Builder b;
    b.m.kind = "branch";
    b.m.schedule = schedule;
    b.m.original_n = deformed.original_n;
    b.m.deformed_n = deformed.n();
    size_t n0 = deformed.original_n, n1 = deformed.n(), p = schedule.pre_rounds, R = schedule.rounds;
    auto orig = deformed.original();
    const auto &checks = deformed.code.checks;

    for (size_t r = 0; r <= p; r++) {
        b.add_round(n0, r > 0);
        for (size_t j = 0; j < orig.checks.size(); j++) {
            b.add_event(r, "s", j, orig.checks[j]);
        }
        if (r > 0) {
            b.repeat_detectors(r);
        }
    }
    std::vector<size_t> a_checks;
    for (size_t r = p + 1; r <= p + R + 1; r++) {
        bool last = r == p + R + 1;
        b.add_round(n1, !last);
        if (r == p + 1) {
            for (size_t q = n0; q < n1; q++) {
                b.init_events.push_back(b.add_event(r, "init", q, PauliOperator::single(n1, q, PauliLetter::X)));
            }
        }
        for (size_t c = 0; c < checks.size(); c++) {
            std::string fam = family_of(deformed.origin[c]);
            if (fam == "A") {
                if (r == p + 1) {
                    a_checks.push_back(c);
                }
                // A records are handed off after the last faulty round
                if (last) {
                    continue;
                }
            }
            size_t e = b.add_event(r, fam, c, checks[c]);
            if (r == p + 1 && fam != "A") {
                std::vector<size_t> evs{e};
                if (c < deformed.original_checks) {
                    evs.push_back(*b.find(p, "s", c));
                }
                for (size_t q : new_support(checks[c], n0)) {
                    evs.push_back(*b.find(r, "init", q));
                }
                b.add_detector(fam, r, c, evs);
            }
        }
        if (r > p + 1) {
            b.repeat_detectors(r);
        }
    }
    b.frame_checks = a_checks;
    b.frame_round = p + R;
    b.m.entry_gap = p + 1;

    b.gap_included.assign(b.rounds.size(), false);
    b.gap_stabs.assign(b.rounds.size(), {});
    for (size_t g = 1; g <= p + R; g++) {
        b.gap_included[g] = true;
        if (g <= p) {
            b.gap_stabs[g] = orig.checks;
        } else if (g == p + 1) {
            for (const auto &s : orig.checks) {
                b.gap_stabs[g].push_back(s.padded(n1));
            }
            for (size_t q = n0; q < n1; q++) {
                b.gap_stabs[g].push_back(PauliOperator::single(n1, q, PauliLetter::X));
            }
        } else {
            b.gap_stabs[g] = checks;
        }
    }
    auto lops = logical_operators(orig);
    load_logicals(b, deformed, lops);
    set_observable_names(b, lops);
    b.finish();
    return std::move(b.m);
}

DetectorModel build_unbranch_detectors(const DeformedCode &deformed, Schedule schedule) {
    if (schedule.rounds == 0) {
        throw SpacetimeError("an unbranching window needs at least one round");
    }
    require_x_extensions(deformed);
    Builder b;
    b.m.kind = "unbranch";
    b.m.schedule = schedule;
    b.m.original_n = deformed.original_n;
    b.m.deformed_n = deformed.n();
    size_t n0 = deformed.original_n, n1 = deformed.n(), R = schedule.rounds, q_post = schedule.post_rounds;
    auto orig = deformed.original();
    const auto &checks = deformed.code.checks;

    for (size_t r = 0; r <= R; r++) {
        b.add_round(n1, r > 0);
        for (size_t c = 0; c < checks.size(); c++) {
            b.add_event(r, family_of(deformed.origin[c]), c, checks[c]);
        }
        if (r > 0) {
            b.repeat_detectors(r);
        }
    }
    size_t exit = b.add_round(n1, true);
    b.exit_round = exit;
    for (size_t q = n0; q < n1; q++) {
        b.add_event(exit, "X", q, PauliOperator::single(n1, q, PauliLetter::X));
    }
    for (size_t j = 0; j < orig.checks.size(); j++) {
        b.add_event(exit, "s", j, orig.checks[j].padded(n1));
    }
    for (size_t c = 0; c < checks.size(); c++) {
        std::string fam = family_of(deformed.origin[c]);
        if (fam == "A") {
            continue;
        }
        std::vector<size_t> evs{*b.find(R, fam, c)};
        for (size_t q : new_support(checks[c], n0)) {
            evs.push_back(*b.find(exit, "X", q));
        }
        if (c < deformed.original_checks) {
            evs.push_back(*b.find(exit, "s", c));
        }
        b.add_detector(fam == "B" ? "B" : "s~", exit, c, evs);
    }
    for (size_t r = exit + 1; r <= exit + q_post + 1; r++) {
        b.add_round(n0, r <= exit + q_post);
        for (size_t j = 0; j < orig.checks.size(); j++) {
            b.add_event(r, "s", j, orig.checks[j]);
        }
        b.repeat_detectors(r);
    }
    b.m.entry_gap = 1;

    b.gap_included.assign(b.rounds.size(), true);
    b.gap_included[0] = false;
    b.gap_stabs.assign(b.rounds.size(), {});
    for (size_t g = 1; g < b.rounds.size(); g++) {
        if (g <= exit) {
            b.gap_stabs[g] = checks;
        } else {
            b.gap_stabs[g] = orig.checks;
        }
        if (g == exit) {
            for (size_t q = n0; q < n1; q++) {
                b.gap_stabs[g].push_back(PauliOperator::single(n1, q, PauliLetter::X));
            }
        }
    }
    auto lops = logical_operators(orig);
    load_logicals(b, deformed, lops);
    set_observable_names(b, lops);
    b.finish();
    return std::move(b.m);
}

namespace {

GF2Vector fault_row(const Fault &f, size_t detectors, size_t observables) {
    GF2Vector v(detectors + observables);
    for (size_t d : f.detectors) {
        v.set(d);
    }
    for (size_t o : f.observables) {
        v.set(detectors + o);
    }
    return v;
}

GF2Vector indicator(const std::vector<size_t> &ids, size_t len) {
    GF2Vector v(len);
    for (size_t i : ids) {
        if (i >= len) {
            throw SpacetimeError("unknown fault id " + std::to_string(i));
        }
        v.flip(i);
    }
    return v;
}

std::vector<size_t> xor_lists(const std::vector<size_t> &ids, const DetectorModel &model, bool detectors) {
    std::set<size_t> s;
    for (size_t i : ids) {
        if (i >= model.faults.size()) {
            throw SpacetimeError("unknown fault id " + std::to_string(i));
        }
        for (size_t d : detectors ? model.faults[i].detectors : model.faults[i].observables) {
            if (!s.erase(d)) {
                s.insert(d);
            }
        }
    }
    return {s.begin(), s.end()};
}

}  // namespace

std::vector<size_t> syndrome_of(const std::vector<size_t> &faults, const DetectorModel &model) {
    return xor_lists(faults, model, true);
}

std::vector<size_t> observables_of(const std::vector<size_t> &faults, const DetectorModel &model) {
    return xor_lists(faults, model, false);
}

ModelAudit audit_model(const DetectorModel &model, size_t replays, uint64_t seed) {
    ModelAudit audit;
    size_t n0 = model.original_n, n1 = model.deformed_n;
    // the replay needs the code before round 0; rebuild it from the first round's events
    std::vector<PauliOperator> first_checks;
    size_t last_round = 0;
    for (const auto &e : model.events) {
        if (e.round == 0) {
            first_checks.push_back(e.op);
        }
        last_round = std::max(last_round, e.round);
    }
    std::vector<PauliOperator> orig_checks;
    for (const auto &e : model.events) {
        if (e.family == "s" && (model.kind == "branch" ? e.round == 0 : e.round == last_round)) {
            orig_checks.push_back(e.op.restrict_to([&] {
                std::vector<size_t> q(n0);
                for (size_t i = 0; i < n0; i++) {
                    q[i] = i;
                }
                return q;
            }()));
        }
    }
    StabilizerCode orig(n0, orig_checks);
    auto lops = logical_operators(orig);
    std::mt19937_64 rng(seed);
    for (size_t rep = 0; rep < replays; rep++) {
        std::vector<std::pair<PauliOperator, int>> eigen;
        for (size_t i = 0; i < lops.k(); i++) {
            eigen.push_back({(rng() & 1) ? lops.z[i] : lops.x[i], (rng() & 1) ? 1 : -1});
        }
        auto st = prepare_codespace(orig, eigen);
        if (model.kind == "unbranch") {
            st.add_qubits(n1 - n0, PauliLetter::X);
            for (const auto &c : first_checks) {
                st.measure(c, rng);
            }
        }
        std::vector<int> outcome(model.events.size(), 1);
        size_t deterministic = 0;
        for (size_t r = 0; r <= last_round; r++) {
            bool readouts = false;
            for (size_t e = 0; e < model.events.size(); e++) {
                const auto &ev = model.events[e];
                if (ev.round != r) {
                    continue;
                }
                if (ev.family == "init") {
                    if (st.n() < n1) {
                        st.add_qubits(n1 - st.n(), PauliLetter::X);
                    }
                    continue;
                }
                readouts |= ev.family == "X";
                auto op = ev.op;
                if (op.n() < st.n()) {
                    op = op.padded(st.n());
                }
                auto out = st.measure(op, rng);
                outcome[e] = out.value;
                // round 0 is the reference boundary
                deterministic += out.deterministic && r > 0;
            }
            if (readouts) {
                st.remove_trailing_qubits(n0);
            }
        }
        for (const auto &d : model.detectors) {
            int parity = 1;
            for (size_t e : d.events) {
                parity *= outcome[e];
            }
            audit.deterministic &= parity == 1;
        }
        audit.deterministic_measurements = deterministic;
    }
    RowSpace det(model.events.size());
    for (const auto &d : model.detectors) {
        det.insert(indicator(d.events, model.events.size()));
    }
    audit.detector_rank = det.rank();
    audit.complete = audit.detector_rank == audit.deterministic_measurements;

    size_t nd = model.detectors.size(), no = model.observables.size();
    for (const auto &s : model.stabilizers) {
        audit.stabilizers_trivial &= syndrome_of(s, model).empty() && observables_of(s, model).empty();
    }
    RowSpace faults(nd + no);
    for (const auto &f : model.faults) {
        faults.insert(fault_row(f, nd, no));
    }
    RowSpace gens(model.faults.size());
    for (const auto &s : model.stabilizers) {
        gens.insert(indicator(s, model.faults.size()));
    }
    audit.stabilizers_complete = gens.rank() == model.faults.size() - faults.rank();
    return audit;
}

FaultDistanceResult fault_distance(const DetectorModel &model, size_t cap, FaultMode mode) {
    FaultDistanceResult res;
    res.cap = cap;
    size_t nd = model.detectors.size(), no = model.observables.size();
    std::vector<size_t> ids;
    std::vector<GF2Vector> syn, obs;
    for (size_t f = 0; f < model.faults.size(); f++) {
        if (mode == FaultMode::TimeOnly && model.faults[f].kind != FaultKind::Measurement) {
            continue;
        }
        ids.push_back(f);
        GF2Vector s(nd), o(no);
        for (size_t d : model.faults[f].detectors) {
            s.set(d);
        }
        for (size_t x : model.faults[f].observables) {
            o.set(x);
        }
        syn.push_back(std::move(s));
        obs.push_back(std::move(o));
    }
    size_t m = ids.size();

    struct Entry {
        std::vector<size_t> set;
        GF2Vector obs;
    };
    // tables[a]: syndrome of every a-subset -> entries
    std::vector<std::unordered_map<GF2Vector, std::vector<Entry>, GF2VectorHash>> tables;
    auto enumerate = [&](size_t a, auto &&visit) {
        std::vector<size_t> idx(a);
        std::function<bool(size_t, size_t, GF2Vector, GF2Vector)> rec = [&](size_t depth, size_t start, GF2Vector s,
                                                                             GF2Vector o) -> bool {
            if (depth == a) {
                return visit(idx, s, o);
            }
            for (size_t i = start; i < m; i++) {
                idx[depth] = i;
                if (rec(depth + 1, i + 1, s ^ syn[i], o ^ obs[i])) {
                    return true;
                }
            }
            return false;
        };
        rec(0, 0, GF2Vector(nd), GF2Vector(no));
    };
    auto table = [&](size_t a) -> const auto & {
        while (tables.size() <= a) {
            size_t k = tables.size();
            tables.emplace_back();
            enumerate(k, [&](const std::vector<size_t> &set, const GF2Vector &s, const GF2Vector &o) {
                tables[k][s].push_back({set, o});
                return false;
            });
        }
        return tables[a];
    };
    for (size_t w = 1; w <= cap; w++) {
        size_t a = w / 2, bsz = w - a;
        const auto &t = table(a);
        std::optional<std::vector<size_t>> found;
        enumerate(bsz, [&](const std::vector<size_t> &set, const GF2Vector &s, const GF2Vector &o) {
            auto it = t.find(s);
            if (it == t.end()) {
                return false;
            }
            for (const auto &e : it->second) {
                if (e.obs == o) {
                    continue;
                }
                bool overlap = false;
                for (size_t i : e.set) {
                    overlap |= std::find(set.begin(), set.end(), i) != set.end();
                }
                if (overlap) {
                    continue;
                }
                std::vector<size_t> out;
                for (size_t i : e.set) {
                    out.push_back(ids[i]);
                }
                for (size_t i : set) {
                    out.push_back(ids[i]);
                }
                std::sort(out.begin(), out.end());
                found = out;
                return true;
            }
            return false;
        });
        if (found) {
            res.distance = w;
            res.witness = *found;
            return res;
        }
    }
    return res;
}

bool equivalent(const std::vector<size_t> &a, const std::vector<size_t> &b, const DetectorModel &model) {
    size_t nf = model.faults.size();
    auto v = indicator(a, nf) ^ indicator(b, nf);
    RowSpace gens(nf);
    for (const auto &s : model.stabilizers) {
        gens.insert(indicator(s, nf));
    }
    return gens.contains(v);
}

std::optional<size_t> find_space_fault(const DetectorModel &model, size_t time, size_t qubit, PauliLetter letter) {
    for (size_t f = 0; f < model.faults.size(); f++) {
        const auto &x = model.faults[f];
        if (x.kind == FaultKind::Space && x.time == time && x.qubit == qubit && x.letter == letter) {
            return f;
        }
    }
    return std::nullopt;
}

std::optional<size_t> find_measurement_fault(const DetectorModel &model, size_t round, const std::string &family,
                                             size_t index) {
    for (size_t f = 0; f < model.faults.size(); f++) {
        const auto &x = model.faults[f];
        if (x.kind != FaultKind::Measurement) {
            continue;
        }
        const auto &e = model.events[x.event];
        if (e.round == round && e.family == family && e.index == index) {
            return f;
        }
    }
    return std::nullopt;
}

Decoupled decouple(const std::vector<size_t> &faults, const DetectorModel &model, std::optional<size_t> time) {
    if (!syndrome_of(faults, model).empty()) {
        throw SpacetimeError("fault set has a nonzero syndrome");
    }
    size_t target = time.value_or(model.entry_gap);
    std::set<size_t> cur;
    auto toggle = [&](size_t f) {
        if (!cur.erase(f)) {
            cur.insert(f);
        }
    };
    auto apply = [&](const std::vector<size_t> &gen) {
        for (size_t f : gen) {
            toggle(f);
        }
    };
    for (size_t f : faults) {
        toggle(f);
    }
    // index generators by their role for the rewrite: init~Z, Y=XZ and pairs
    std::map<size_t, const std::vector<size_t> *> init_gen;
    std::map<std::tuple<size_t, size_t, int>, const std::vector<size_t> *> y_gen, pair_gen;
    for (size_t i = 0; i < model.stabilizers.size(); i++) {
        const auto &s = model.stabilizers[i];
        const auto &label = model.stabilizer_labels[i];
        const auto &first = model.faults[s[0]];
        if (label.rfind("init~Z", 0) == 0) {
            init_gen[s[0]] = &s;
        } else if (label.rfind("Y=XZ", 0) == 0) {
            y_gen[{first.time, first.qubit, 0}] = &s;
        } else if (label.find(" pair ") != std::string::npos && s.size() >= 2 &&
                   model.faults[s[1]].kind == FaultKind::Space) {
            pair_gen[{first.time, first.qubit, int(first.letter)}] = &s;
        }
    }
    for (size_t f : std::vector<size_t>(cur.begin(), cur.end())) {
        if (model.faults[f].kind == FaultKind::Init) {
            apply(*init_gen.at(f));
        }
    }
    for (size_t f : std::vector<size_t>(cur.begin(), cur.end())) {
        const auto &x = model.faults[f];
        if (x.kind == FaultKind::Space && x.letter == PauliLetter::Y) {
            apply(*y_gen.at({x.time, x.qubit, 0}));
        }
    }
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t f : std::vector<size_t>(cur.begin(), cur.end())) {
            const auto &x = model.faults[f];
            if (x.kind != FaultKind::Space || x.time == target || !cur.count(f)) {
                continue;
            }
            size_t from = x.time < target ? x.time : x.time - 1;
            auto it = pair_gen.find({from, x.qubit, int(x.letter)});
            if (it == pair_gen.end()) {
                throw SpacetimeError("cannot move " + x.label() + " to t" + std::to_string(target));
            }
            apply(*it->second);
            moved = true;
        }
    }
    Decoupled out;
    out.time = target;
    for (size_t f : cur) {
        (model.faults[f].kind == FaultKind::Space ? out.space : out.time_part).push_back(f);
    }
    return out;
}

}  // namespace qsurgery
