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

#include "qsurgery/gauging.h"

#include <algorithm>
#include <functional>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace qsurgery {

namespace {

bool letters_anticommute(PauliLetter a, PauliLetter b) {
    auto x = static_cast<uint8_t>(a), y = static_cast<uint8_t>(b);
    return (((x & 1) & (y >> 1)) ^ ((x >> 1) & (y & 1))) != 0;
}

/// BFS tree from `root`: parent edge per vertex (SIZE_MAX for root/unreached).
struct BfsTree {
    std::vector<size_t> parent_edge;
    std::vector<size_t> parent;
    std::vector<size_t> dist;
};

BfsTree bfs(const AuxGraph &g, const std::vector<std::vector<size_t>> &adj_edges, size_t root) {
    constexpr size_t kNone = std::numeric_limits<size_t>::max();
    size_t nv = g.vertex_count();
    BfsTree t{std::vector<size_t>(nv, kNone), std::vector<size_t>(nv, kNone), std::vector<size_t>(nv, kNone)};
    std::deque<size_t> queue{root};
    t.dist[root] = 0;
    while (!queue.empty()) {
        size_t v = queue.front();
        queue.pop_front();
        for (size_t e : adj_edges[v]) {
            size_t u = g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
            if (t.dist[u] == kNone) {
                t.dist[u] = t.dist[v] + 1;
                t.parent[u] = v;
                t.parent_edge[u] = e;
                queue.push_back(u);
            }
        }
    }
    return t;
}

std::vector<std::vector<size_t>> incident_edges(const AuxGraph &g) {
    std::vector<std::vector<size_t>> out(g.vertex_count());
    for (size_t e = 0; e < g.edges.size(); e++) {
        out[g.edges[e].first].push_back(e);
        out[g.edges[e].second].push_back(e);
    }
    return out;
}

/// Edge path from the BFS root to v.
std::vector<size_t> path_to(const BfsTree &t, size_t v) {
    std::vector<size_t> path;
    while (t.parent_edge[v] != std::numeric_limits<size_t>::max()) {
        path.push_back(t.parent_edge[v]);
        v = t.parent[v];
    }
    return path;
}

void toggle(std::set<size_t> &s, size_t e) {
    if (!s.erase(e)) {
        s.insert(e);
    }
}

std::vector<size_t> shortest_path(const AuxGraph &g, const std::vector<std::vector<size_t>> &adj, size_t a,
                                  size_t b) {
    auto t = bfs(g, adj, a);
    if (t.dist[b] == std::numeric_limits<size_t>::max()) {
        throw GaugeError("no path between vertices " + std::to_string(a) + " and " + std::to_string(b));
    }
    return path_to(t, b);
}

/// Pairs `vertices` greedily by nearest BFS distance and XORs the paths.
std::optional<std::vector<size_t>> pair_by_paths(const AuxGraph &g, const std::vector<std::vector<size_t>> &adj,
                                                 std::vector<size_t> vertices) {
    std::set<size_t> edges;
    std::set<size_t> open(vertices.begin(), vertices.end());
    while (!open.empty()) {
        size_t a = *open.begin();
        open.erase(open.begin());
        if (open.empty()) {
            return std::nullopt;
        }
        auto t = bfs(g, adj, a);
        size_t best = std::numeric_limits<size_t>::max(), best_v = 0;
        for (size_t v : open) {
            if (t.dist[v] < best) {
                best = t.dist[v];
                best_v = v;
            }
        }
        if (best == std::numeric_limits<size_t>::max()) {
            return std::nullopt;
        }
        open.erase(best_v);
        for (size_t e : path_to(t, best_v)) {
            toggle(edges, e);
        }
    }
    return std::vector<size_t>(edges.begin(), edges.end());
}

size_t component_count(const AuxGraph &g) {
    auto adj = incident_edges(g);
    std::vector<bool> seen(g.vertex_count(), false);
    size_t count = 0;
    for (size_t v = 0; v < g.vertex_count(); v++) {
        if (seen[v]) {
            continue;
        }
        count++;
        auto t = bfs(g, adj, v);
        for (size_t u = 0; u < g.vertex_count(); u++) {
            if (t.dist[u] != std::numeric_limits<size_t>::max()) {
                seen[u] = true;
            }
        }
    }
    return count;
}

void fill_matchings(AuxGraph &g, const StabilizerCode &code, const PauliOperator &target) {
    auto adj = incident_edges(g);
    std::map<size_t, size_t> vertex_of;
    for (size_t v = 0; v < g.vertex_count(); v++) {
        if (g.vertex_qubit[v]) {
            vertex_of[*g.vertex_qubit[v]] = v;
        }
    }
    g.matchings.clear();
    for (size_t j = 0; j < code.checks.size(); j++) {
        auto qubits = incident_qubits(code.checks[j], target);
        if (qubits.empty()) {
            continue;
        }
        std::vector<size_t> vs;
        for (size_t q : qubits) {
            vs.push_back(vertex_of.at(q));
        }
        if (auto m = pair_by_paths(g, adj, vs)) {
            g.matchings[j] = *m;
        }
    }
}

std::mt19937_64 seeded(uint64_t seed) { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 0x1234567ULL); }

void shuffle(std::vector<size_t> &v, std::mt19937_64 &rng) {
    // Fisher-Yates with explicit modulus so sequences match across standard libraries
    for (size_t i = v.size(); i > 1; i--) {
        std::swap(v[i - 1], v[rng() % i]);
    }
}

std::string item_name(size_t i) {
    static const char *names[] = {"connectivity", "degree", "matching", "cycle basis", "Cheeger"};
    return names[i];
}

}  // namespace

size_t AuxGraph::dummy_count() const {
    return std::count(vertex_qubit.begin(), vertex_qubit.end(), std::nullopt);
}

std::vector<std::vector<size_t>> AuxGraph::adjacency() const {
    std::vector<std::vector<size_t>> adj(vertex_count());
    for (const auto &[a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

std::vector<bool> AuxGraph::boundary(const std::vector<size_t> &edge_set) const {
    std::vector<bool> out(vertex_count(), false);
    for (size_t e : edge_set) {
        out[edges.at(e).first] = !out[edges[e].first];
        out[edges[e].second] = !out[edges[e].second];
    }
    return out;
}

bool DesiderataReport::passes() const {
    return std::all_of(items.begin(), items.end(), [](const DesideratumResult &r) { return r.pass; });
}

std::optional<size_t> DesiderataReport::first_failure() const {
    for (size_t i = 0; i < items.size(); i++) {
        if (!items[i].pass) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<size_t> incident_qubits(const PauliOperator &check, const PauliOperator &target) {
    std::vector<size_t> out;
    for (size_t q : target.support().support()) {
        if (q < check.n() && letters_anticommute(check.letter(q), target.letter(q))) {
            out.push_back(q);
        }
    }
    return out;
}

AuxGraph graph_from_edges(const StabilizerCode &code, const PauliOperator &target,
                          const std::vector<std::pair<size_t, size_t>> &edges) {
    AuxGraph g;
    for (size_t q : target.support().support()) {
        g.vertex_qubit.emplace_back(q);
        g.vertex_letter.push_back(target.letter(q));
    }
    for (auto [a, b] : edges) {
        if (a == b || a >= g.vertex_count() || b >= g.vertex_count()) {
            throw GaugeError("graph_from_edges: bad edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        }
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    fill_matchings(g, code, target);
    g.faces = cycle_basis(g);
    return g;
}

std::vector<std::vector<size_t>> cycle_basis(const AuxGraph &g) {
    size_t ne = g.edges.size();
    size_t dim = ne + component_count(g) - g.vertex_count();
    if (dim == 0) {
        return {};
    }
    auto adj = incident_edges(g);
    std::set<std::vector<size_t>> candidates;
    for (size_t root = 0; root < g.vertex_count(); root++) {
        auto t = bfs(g, adj, root);
        for (size_t e = 0; e < ne; e++) {
            auto [a, b] = g.edges[e];
            if (t.dist[a] == std::numeric_limits<size_t>::max() || t.parent_edge[a] == e ||
                t.parent_edge[b] == e) {
                continue;
            }
            std::set<size_t> cycle{e};
            for (size_t f : path_to(t, a)) {
                toggle(cycle, f);
            }
            for (size_t f : path_to(t, b)) {
                toggle(cycle, f);
            }
            candidates.insert(std::vector<size_t>(cycle.begin(), cycle.end()));
        }
    }
    std::vector<std::vector<size_t>> sorted(candidates.begin(), candidates.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto &x, const auto &y) { return x.size() < y.size(); });
    RowSpace space(ne);
    std::vector<std::vector<size_t>> basis;
    for (const auto &c : sorted) {
        GF2Vector v(ne);
        for (size_t e : c) {
            v.set(e);
        }
        if (space.insert(v)) {
            basis.push_back(c);
            if (basis.size() == dim) {
                break;
            }
        }
    }
    return basis;
}

CheegerResult relative_cheeger(const AuxGraph &g, size_t exhaustive_limit, uint64_t seed) {
    CheegerResult r;
    size_t nv = g.vertex_count();
    std::vector<size_t> real;
    for (size_t v = 0; v < nv; v++) {
        if (g.vertex_qubit[v]) {
            real.push_back(v);
        }
    }
    r.value = std::numeric_limits<double>::infinity();
    if (real.size() < 2) {
        return r;
    }
    auto ratio = [&](const std::vector<bool> &in) -> std::optional<double> {
        size_t ns = 0;
        for (size_t v : real) {
            ns += in[v];
        }
        if (ns == 0 || 2 * ns > real.size()) {
            return std::nullopt;
        }
        size_t cut = 0;
        for (const auto &[a, b] : g.edges) {
            cut += in[a] != in[b];
        }
        return static_cast<double>(cut) / static_cast<double>(ns);
    };
    auto consider = [&](const std::vector<bool> &in) {
        if (auto q = ratio(in); q && *q < r.value) {
            r.value = *q;
            r.witness.clear();
            for (size_t v = 0; v < nv; v++) {
                if (in[v]) {
                    r.witness.push_back(v);
                }
            }
        }
    };
    if (nv <= exhaustive_limit) {
        std::vector<bool> in(nv);
        for (uint64_t mask = 1; mask < (uint64_t{1} << nv); mask++) {
            for (size_t v = 0; v < nv; v++) {
                in[v] = (mask >> v) & 1;
            }
            consider(in);
        }
        return r;
    }
    // sampled: BFS balls around every vertex plus random subsets; an upper bound only
    r.exhaustive = false;
    auto adj = incident_edges(g);
    for (size_t root = 0; root < nv; root++) {
        auto t = bfs(g, adj, root);
        std::vector<size_t> order(nv);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return t.dist[a] < t.dist[b]; });
        std::vector<bool> in(nv, false);
        for (size_t v : order) {
            in[v] = true;
            consider(in);
        }
    }
    auto rng = seeded(seed);
    for (int s = 0; s < 4000; s++) {
        std::vector<bool> in(nv);
        for (size_t v = 0; v < nv; v++) {
            in[v] = rng() & 1;
        }
        consider(in);
    }
    return r;
}

DesiderataReport check_desiderata(const AuxGraph &g, const StabilizerCode &code, const PauliOperator &target,
                                  GaugeOptions options) {
    DesiderataReport rep;
    size_t nv = g.vertex_count();
    auto adj = incident_edges(g);
    {
        auto &item = rep.items[0];
        if (nv == 0) {
            item.pass = false;
            item.detail = "empty graph";
        } else {
            auto t = bfs(g, adj, 0);
            for (size_t v = 0; v < nv; v++) {
                if (t.dist[v] == std::numeric_limits<size_t>::max()) {
                    item.witness.push_back(v);
                }
            }
            item.pass = item.witness.empty();
            if (!item.pass) {
                item.detail = std::to_string(item.witness.size()) + " vertices unreachable from vertex 0";
            }
        }
    }
    {
        auto &item = rep.items[1];
        size_t worst = 0;
        for (size_t v = 0; v < nv; v++) {
            if (adj[v].size() > worst) {
                worst = adj[v].size();
                item.witness = {v};
            }
        }
        item.pass = worst <= options.degree_bound;
        item.detail = "max degree " + std::to_string(worst);
    }
    {
        auto &item = rep.items[2];
        std::map<size_t, size_t> vertex_of;
        for (size_t v = 0; v < nv; v++) {
            if (g.vertex_qubit[v]) {
                vertex_of[*g.vertex_qubit[v]] = v;
            }
        }
        std::vector<size_t> load(g.edges.size(), 0);
        for (size_t j = 0; j < code.checks.size() && item.pass; j++) {
            auto qubits = incident_qubits(code.checks[j], target);
            if (qubits.empty()) {
                continue;
            }
            auto it = g.matchings.find(j);
            if (it == g.matchings.end()) {
                item.pass = false;
                item.detail = "check " + std::to_string(j) + " has no matching";
                item.witness = {j};
                break;
            }
            std::vector<bool> want(nv, false);
            for (size_t q : qubits) {
                want[vertex_of.at(q)] = true;
            }
            if (g.boundary(it->second) != want) {
                item.pass = false;
                item.detail = "matching of check " + std::to_string(j) + " has the wrong boundary";
                item.witness = {j};
            } else if (it->second.size() > options.matching_length) {
                item.pass = false;
                item.detail = "matching of check " + std::to_string(j) + " has " +
                              std::to_string(it->second.size()) + " edges";
                item.witness = {j};
            }
            for (size_t e : it->second) {
                load[e]++;
            }
        }
        if (item.pass) {
            for (size_t e = 0; e < load.size(); e++) {
                if (load[e] > options.matching_congestion) {
                    item.pass = false;
                    item.detail = "edge " + std::to_string(e) + " lies in " + std::to_string(load[e]) + " matchings";
                    item.witness = {e};
                    break;
                }
            }
        }
    }
    {
        auto &item = rep.items[3];
        size_t ne = g.edges.size();
        size_t dim = ne + (nv ? component_count(g) : 0) - nv;
        RowSpace space(ne);
        std::vector<size_t> load(ne, 0);
        for (size_t f = 0; f < g.faces.size() && item.pass; f++) {
            const auto &face = g.faces[f];
            auto b = g.boundary(face);
            GF2Vector v(ne);
            for (size_t e : face) {
                v.set(e);
                load[e]++;
            }
            if (std::any_of(b.begin(), b.end(), [](bool x) { return x; }) || face.empty()) {
                item.pass = false;
                item.detail = "face " + std::to_string(f) + " is not closed";
            } else if (!space.insert(v)) {
                item.pass = false;
                item.detail = "face " + std::to_string(f) + " is dependent";
            } else if (face.size() > options.cycle_length) {
                item.pass = false;
                item.detail = "face " + std::to_string(f) + " has length " + std::to_string(face.size());
            }
            if (!item.pass) {
                item.witness = face;
            }
        }
        if (item.pass && g.faces.size() != dim) {
            item.pass = false;
            item.detail = std::to_string(g.faces.size()) + " faces for a cycle space of dimension " +
                          std::to_string(dim);
        }
        for (size_t e = 0; e < ne && item.pass; e++) {
            if (load[e] > options.cycle_congestion) {
                item.pass = false;
                item.detail = "edge " + std::to_string(e) + " lies in " + std::to_string(load[e]) + " faces";
                item.witness = {e};
            }
        }
    }
    {
        auto &item = rep.items[4];
        auto c = relative_cheeger(g, options.cheeger_limit, g.seed);
        rep.cheeger = c.value;
        item.certified = c.exhaustive;
        item.pass = c.value >= 1.0;
        item.witness = c.witness;
        item.detail = std::isinf(c.value) ? "vacuous" : "ratio " + std::to_string(c.value);
        if (!c.exhaustive) {
            item.detail += " (sampled, not certified)";
        }
    }
    return rep;
}

AuxGraph build_aux_graph(const StabilizerCode &code, const PauliOperator &target, GaugeOptions options,
                         uint64_t seed) {
    auto support = target.support().support();
    size_t w = support.size();
    if (w == 0) {
        throw GaugeError("build_aux_graph: target has weight 0");
    }
    std::map<size_t, size_t> vertex_of;
    for (size_t v = 0; v < w; v++) {
        vertex_of[support[v]] = v;
    }
    std::optional<DesiderataReport> last;
    for (size_t attempt = 0; attempt <= options.retries; attempt++) {
        uint64_t s = seed + attempt;
        auto rng = seeded(s);
        std::set<std::pair<size_t, size_t>> edges;
        std::vector<size_t> degree(w, 0);
        auto add = [&](size_t a, size_t b) {
            if (a == b) {
                return;
            }
            if (edges.emplace(std::min(a, b), std::max(a, b)).second) {
                degree[a]++;
                degree[b]++;
            }
        };
        // check-pair edges give length-1 matchings
        for (const auto &c : code.checks) {
            auto qs = incident_qubits(c, target);
            for (size_t i = 0; i + 1 < qs.size(); i += 2) {
                add(vertex_of[qs[i]], vertex_of[qs[i + 1]]);
            }
        }
        std::vector<size_t> perm(w);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle(perm, rng);
        if (w == 2) {
            add(0, 1);
        } else if (w >= 3) {
            for (size_t i = 0; i < w; i++) {
                add(perm[i], perm[(i + 1) % w]);
            }
        }
        for (size_t round = 2; round < options.expander_degree && w >= 4; round++) {
            shuffle(perm, rng);
            for (size_t i = 0; i + 1 < w; i += 2) {
                if (degree[perm[i]] < options.degree_bound && degree[perm[i + 1]] < options.degree_bound) {
                    add(perm[i], perm[i + 1]);
                }
            }
        }
        AuxGraph g = graph_from_edges(code, target, {edges.begin(), edges.end()});
        g.seed = s;
        auto rep = check_desiderata(g, code, target, options);
        if (rep.passes()) {
            return g;
        }
        last = rep;
    }
    size_t item = *last->first_failure();
    throw GaugeError("build_aux_graph: desideratum " + std::to_string(item) + " (" + item_name(item) +
                     ") failed after " + std::to_string(options.retries + 1) + " attempts: " +
                     last->items[item].detail);
}

GaugeResult deform_with_gauge(const DeformedCode &base, const AuxGraph &g, const PauliOperator &target) {
    size_t n0 = base.n();
    if (target.n() > n0) {
        throw GaugeError("deform_with_gauge: target acts on more qubits than the code");
    }
    PauliOperator t = target.padded(n0);
    if (!t.is_hermitian() || t.is_identity()) {
        throw GaugeError("deform_with_gauge: target must be a non-identity Hermitian Pauli");
    }
    if (!base.code.commutes_with_all(t) || base.code.in_group_up_to_sign(t)) {
        throw GaugeError("deform_with_gauge: target " + t.str() + " is not a nontrivial logical");
    }
    std::set<size_t> graph_qubits;
    for (const auto &q : g.vertex_qubit) {
        if (q) {
            graph_qubits.insert(*q);
        }
    }
    auto support = t.support().support();
    if (std::set<size_t>(support.begin(), support.end()) != graph_qubits) {
        throw GaugeError("deform_with_gauge: graph vertices do not match the target support");
    }
    GaugeResult r;
    r.deformed = base;
    size_t first = r.deformed.add_qubits(g.edges.size());
    size_t n = r.deformed.n();
    for (size_t e = 0; e < g.edges.size(); e++) {
        r.edge_qubits.push_back(first + e);
    }
    auto adj = incident_edges(g);
    for (size_t v = 0; v < g.vertex_count(); v++) {
        PauliOperator a(n);
        if (g.vertex_qubit[v]) {
            a.set_letter(*g.vertex_qubit[v], t.letter(*g.vertex_qubit[v]));
        }
        for (size_t e : adj[v]) {
            a.set_letter(first + e, PauliLetter::Z);
        }
        r.vertex_checks.push_back(r.deformed.add_check(std::move(a), CheckOrigin::GaugeVertex));
    }
    for (const auto &face : g.faces) {
        GF2Vector x(n);
        for (size_t e : face) {
            x.set(first + e);
        }
        r.face_checks.push_back(r.deformed.add_check(PauliOperator::x_type(x), CheckOrigin::GaugeFace));
    }
    for (const auto &[j, edges] : g.matchings) {
        if (j >= base.code.checks.size()) {
            throw GaugeError("deform_with_gauge: matching for unknown check " + std::to_string(j));
        }
        GF2Vector x(n);
        for (size_t e : edges) {
            x.set(first + e);
        }
        r.deformed.extend_check(j, PauliOperator::x_type(x));
    }
    try {
        r.deformed.code.check_commuting();
    } catch (const CommutationViolation &e) {
        throw GaugeError(std::string("deform_with_gauge: internal error, ") + e.what());
    }
    r.sign = t.phase() == 0 ? 1 : -1;
    return r;
}

namespace {

/// Ports in BFS order from the lowest-degree non-dummy vertex.
std::vector<size_t> pick_ports(const AuxGraph &g, size_t count, std::mt19937_64 &rng) {
    auto adj = incident_edges(g);
    std::vector<size_t> candidates;
    for (size_t v = 0; v < g.vertex_count(); v++) {
        if (g.vertex_qubit[v]) {
            candidates.push_back(v);
        }
    }
    shuffle(candidates, rng);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](size_t a, size_t b) { return adj[a].size() < adj[b].size(); });
    auto t = bfs(g, adj, candidates.front());
    std::stable_sort(candidates.begin(), candidates.end(), [&](size_t a, size_t b) { return t.dist[a] < t.dist[b]; });
    candidates.resize(count);
    return candidates;
}

void translate_face(std::vector<size_t> &face, size_t left_edges, size_t left_offset, size_t right_edges,
                    size_t right_offset, size_t adapter_offset) {
    for (auto &e : face) {
        if (e < left_edges) {
            e += left_offset;
        } else if (e < left_edges + right_edges) {
            e = right_offset + (e - left_edges);
        } else {
            e = adapter_offset + (e - left_edges - right_edges);
        }
    }
    std::sort(face.begin(), face.end());
}

/// Appends `right` and the adapter to `merged`, where `left` sits at vertex/edge offsets.
void append_adapted(AuxGraph &merged, size_t left_vertex_offset, size_t left_edge_offset, const AuxGraph &left,
                    const AuxGraph &right, const Adapter &adapter) {
    size_t rv = merged.vertex_count(), re = merged.edges.size();
    for (size_t v = 0; v < right.vertex_count(); v++) {
        merged.vertex_qubit.push_back(right.vertex_qubit[v]);
        merged.vertex_letter.push_back(right.vertex_letter[v]);
    }
    for (auto [a, b] : right.edges) {
        merged.edges.emplace_back(a + rv, b + rv);
    }
    for (auto face : right.faces) {
        for (auto &e : face) {
            e += re;
        }
        merged.faces.push_back(face);
    }
    for (const auto &[j, edges] : right.matchings) {
        auto &m = merged.matchings[j];
        for (size_t e : edges) {
            m.push_back(e + re);
        }
        std::sort(m.begin(), m.end());
    }
    size_t ae = merged.edges.size();
    for (auto [l, r] : adapter.edges) {
        merged.edges.emplace_back(l + left_vertex_offset, r + rv);
    }
    for (auto face : adapter.faces) {
        translate_face(face, left.edges.size(), left_edge_offset, right.edges.size(), re, ae);
        merged.faces.push_back(face);
    }
}

}  // namespace

AdaptedGraph build_adapter(const AuxGraph &left, const AuxGraph &right, uint64_t seed) {
    for (const auto &q : left.vertex_qubit) {
        if (q && std::find(right.vertex_qubit.begin(), right.vertex_qubit.end(), q) != right.vertex_qubit.end()) {
            throw GaugeError("build_adapter: graphs share data qubit " + std::to_string(*q));
        }
    }
    size_t nl = left.vertex_count() - left.dummy_count();
    size_t nr = right.vertex_count() - right.dummy_count();
    if (nl == 0 || nr == 0) {
        throw GaugeError("build_adapter: a graph has no data vertices");
    }
    // |ports| = min side size keeps the smaller side's Cheeger cut at ratio ≥ 1
    size_t p = std::min(nl, nr);
    auto rng = seeded(seed);
    AdaptedGraph out;
    Adapter &a = out.adapter;
    a.left_ports = pick_ports(left, p, rng);
    a.right_ports = pick_ports(right, p, rng);
    for (size_t i = 0; i < p; i++) {
        a.edges.emplace_back(a.left_ports[i], a.right_ports[i]);
    }
    auto ladj = incident_edges(left), radj = incident_edges(right);
    size_t le = left.edges.size(), re = right.edges.size();
    for (size_t i = 1; i < p; i++) {
        std::set<size_t> face{le + re + i - 1, le + re + i};
        for (size_t e : shortest_path(left, ladj, a.left_ports[i - 1], a.left_ports[i])) {
            toggle(face, e);
        }
        for (size_t e : shortest_path(right, radj, a.right_ports[i - 1], a.right_ports[i])) {
            toggle(face, le + e);
        }
        a.faces.emplace_back(face.begin(), face.end());
    }
    out.merged = left;
    out.merged.seed = seed;
    append_adapted(out.merged, 0, 0, left, right, a);
    return out;
}

ProductCertificate certify_product_measurement(const DeformedCode &before, const DeformedCode &after,
                                               const std::vector<PauliOperator> &factors) {
    ProductCertificate c;
    c.k_drops_by_one = after.code.k() + 1 == before.code.k();
    PauliOperator product(after.n());
    for (const auto &f : factors) {
        product *= f.padded(after.n());
    }
    c.product_in_group = after.code.in_group_up_to_sign(product);
    c.factors_not_in_group = std::none_of(factors.begin(), factors.end(), [&](const PauliOperator &f) {
        return after.code.in_group_up_to_sign(f.padded(after.n()));
    });
    return c;
}

AuxGraph build_product_graph(const StabilizerCode &code, const std::vector<PauliOperator> &factors,
                             GaugeOptions options, uint64_t seed) {
    if (factors.empty()) {
        throw GaugeError("build_product_graph: no factors");
    }
    PauliOperator product(code.n);
    for (const auto &f : factors) {
        if ((product.support() & f.padded(code.n).support()).any()) {
            throw GaugeError("build_product_graph: factors overlap");
        }
        product *= f.padded(code.n);
    }
    std::optional<DesiderataReport> last;
    for (size_t attempt = 0; attempt <= options.retries; attempt++) {
        uint64_t s = seed + 1000 * attempt;
        std::vector<AuxGraph> graphs;
        for (size_t i = 0; i < factors.size(); i++) {
            graphs.push_back(build_aux_graph(code, factors[i], options, s + 17 * i));
        }
        // balanced merge: every adapter joins two halves, so a cut through it has
        // min(half sizes) edges
        std::function<AuxGraph(size_t, size_t)> combine = [&](size_t lo, size_t hi) {
            if (hi - lo == 1) {
                return graphs[lo];
            }
            size_t mid = lo + (hi - lo) / 2;
            return build_adapter(combine(lo, mid), combine(mid, hi), s + mid).merged;
        };
        AuxGraph merged = combine(0, graphs.size());
        merged.seed = s;
        // matchings of checks touching several factors are unions of per-factor matchings
        auto rep = check_desiderata(merged, code, product, options);
        if (rep.passes()) {
            return merged;
        }
        last = rep;
    }
    size_t item = *last->first_failure();
    throw GaugeError("build_product_graph: desideratum " + std::to_string(item) + " (" + item_name(item) +
                     ") failed: " + last->items[item].detail);
}

double gauge_cost_constant(const AuxGraph &g) {
    double w = static_cast<double>(g.vertex_count() - g.dummy_count());
    double l = std::log2(std::max(w, 2.0));
    return static_cast<double>(g.edges.size()) / (std::max(w, 1.0) * l * l * l);
}

}  // namespace qsurgery
