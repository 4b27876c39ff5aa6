#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fixpoint/graph.hpp"

namespace fixpoint {

// Combinatorial embedding: order[v-1] lists the neighbors of v in cyclic
// (clockwise) order. A rotation system determines the faces of the drawing.
struct RotationSystem {
    std::vector<std::vector<int>> order;

    const std::vector<int>& at(int v) const { return order[static_cast<std::size_t>(v - 1)]; }
};

// Walks the faces induced by a rotation system. After arriving at v along
// (u,v), the walk leaves along the successor of u in v's cyclic order. Each
// directed edge lies on exactly one face; faces are returned as vertex
// cycles.
inline std::vector<std::vector<int>> trace_faces(const Graph& g, const RotationSystem& rot) {
    std::map<std::pair<int, int>, int> succ_pos;  // (v, u) -> index of u in rot.at(v)
    for (int v = 1; v <= g.vertex_count(); ++v) {
        const auto& cyc = rot.at(v);
        for (std::size_t i = 0; i < cyc.size(); ++i) succ_pos[{v, cyc[i]}] = static_cast<int>(i);
    }
    auto succ = [&](int v, int u) {
        const auto& cyc = rot.at(v);
        const int i = succ_pos.at({v, u});
        return cyc[static_cast<std::size_t>((i + 1) % static_cast<int>(cyc.size()))];
    };
    std::set<std::pair<int, int>> used;
    std::vector<std::vector<int>> faces;
    for (const auto& [eu, ev] : g.edges()) {
        for (auto [su, sv] : {std::pair{eu, ev}, std::pair{ev, eu}}) {
            if (used.count({su, sv})) continue;
            std::vector<int> face;
            int u = su, v = sv;
            do {
                used.insert({u, v});
                face.push_back(u);
                const int w = succ(v, u);
                u = v;
                v = w;
            } while (!(u == su && v == sv));
            faces.push_back(std::move(face));
        }
    }
    return faces;
}

// Euler check: a rotation system describes a planar (genus zero) embedding
// iff every connected component satisfies n - m + f = 2.
inline bool valid_planar_embedding(const Graph& g, const RotationSystem& rot) {
    if (static_cast<int>(rot.order.size()) != g.vertex_count()) return false;
    for (int v = 1; v <= g.vertex_count(); ++v) {
        std::vector<int> want = g.neighbors(v), got = rot.at(v);
        std::sort(got.begin(), got.end());
        if (got != want) return false;
    }
    const auto faces = trace_faces(g, rot);
    for (const auto& comp : g.components()) {
        std::set<int> in_comp(comp.begin(), comp.end());
        int m = 0;
        for (const auto& [u, v] : g.edges())
            if (in_comp.count(u)) ++m;
        int f = 0;
        for (const auto& face : faces)
            if (in_comp.count(face.front())) ++f;
        if (m == 0) f = 1;  // single isolated vertex: just the outer face
        if (static_cast<int>(comp.size()) - m + f != 2) return false;
    }
    return true;
}

namespace detail {

// Demoucron-Malgrange-Pertuiset planarity test on one biconnected block.
// Grows an embedded subgraph face by face; returns the face set of the
// block, or nothing if some fragment has no admissible face.
class BlockEmbedder {
public:
    BlockEmbedder(const std::vector<std::pair<int, int>>& block_edges) {
        for (const auto& [u, v] : block_edges) {
            vertices_.insert(u);
            vertices_.insert(v);
            edges_.insert(key(u, v));
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& [v, nbrs] : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    std::optional<std::vector<std::vector<int>>> embed() {
        const int nb = static_cast<int>(vertices_.size());
        const int mb = static_cast<int>(edges_.size());
        if (nb >= 3 && mb > 3 * nb - 6) return std::nullopt;
        std::vector<int> cycle = find_cycle();
        for (int v : cycle) in_h_.insert(v);
        for (std::size_t i = 0; i < cycle.size(); ++i) embedded_.insert(key(cycle[i], cycle[(i + 1) % cycle.size()]));
        faces_.push_back(cycle);
        faces_.emplace_back(cycle.rbegin(), cycle.rend());

        while (embedded_.size() < edges_.size()) {
            auto fragments = collect_fragments();
            // Fragment with the fewest admissible faces; zero means nonplanar.
            int best = -1;
            std::vector<int> best_faces;
            for (std::size_t i = 0; i < fragments.size(); ++i) {
                std::vector<int> adm;
                for (std::size_t fi = 0; fi < faces_.size(); ++fi)
                    if (face_contains_all(faces_[fi], fragments[i].attachments)) adm.push_back(static_cast<int>(fi));
                if (adm.empty()) return std::nullopt;
                if (best < 0 || adm.size() < best_faces.size()) {
                    best = static_cast<int>(i);
                    best_faces = std::move(adm);
                }
            }
            const Fragment& frag = fragments[static_cast<std::size_t>(best)];
            embed_path(fragment_path(frag), best_faces.front());
        }
        return faces_;
    }

private:
    struct Fragment {
        std::vector<int> attachments;     // embedded vertices, sorted
        std::vector<int> component;       // interior vertices (empty for a chord)
        std::pair<int, int> chord{0, 0};  // set when component is empty
    };

    static std::pair<int, int> key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

    std::vector<int> find_cycle() const {
        const int start = *vertices_.begin();
        std::map<int, int> parent;
        std::vector<int> order{start};
        parent[start] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const int v = order[head];
            for (int w : adj_.at(v)) {
                if (!parent.count(w)) {
                    parent[w] = v;
                    order.push_back(w);
                } else if (w != parent[v] && v != parent[w]) {
                    // Close the cycle through the tree paths of v and w.
                    std::vector<int> pv{v}, pw{w};
                    for (int x = v; x != start; x = parent[x]) pv.push_back(parent[x]);
                    for (int x = w; x != start; x = parent[x]) pw.push_back(parent[x]);
                    // Trim to the lowest common ancestor.
                    while (pv.size() >= 2 && pw.size() >= 2 && pv[pv.size() - 2] == pw[pw.size() - 2]) {
                        pv.pop_back();
                        pw.pop_back();
                    }
                    std::vector<int> cycle(pv.begin(), pv.end());  // v .. lca
                    cycle.insert(cycle.end(), pw.rbegin() + 1, pw.rend());  // lca excluded, .. w
                    return cycle;
                }
            }
        }
        throw std::logic_error("planarity: biconnected block without a cycle");
    }

    std::vector<Fragment> collect_fragments() const {
        std::vector<Fragment> out;
        for (const auto& e : edges_) {
            if (embedded_.count(e)) continue;
            if (in_h_.count(e.first) && in_h_.count(e.second)) {
                Fragment f;
                f.attachments = {e.first, e.second};
                f.chord = e;
                out.push_back(std::move(f));
            }
        }
        std::set<int> seen;
        for (int s : vertices_) {
            if (in_h_.count(s) || seen.count(s)) continue;
            Fragment f;
            std::vector<int> queue{s};
            seen.insert(s);
            std::set<int> att;
            while (!queue.empty()) {
                const int v = queue.back();
                queue.pop_back();
                f.component.push_back(v);
                for (int w : adj_.at(v)) {
                    if (in_h_.count(w)) {
                        att.insert(w);
                    } else if (!seen.count(w)) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            f.attachments.assign(att.begin(), att.end());
            out.push_back(std::move(f));
        }
        return out;
    }

    static bool face_contains_all(const std::vector<int>& face, const std::vector<int>& wanted) {
        for (int v : wanted)
            if (std::find(face.begin(), face.end(), v) == face.end()) return false;
        return true;
    }

    // An alpha-beta path through the fragment, interior inside the component.
    std::vector<int> fragment_path(const Fragment& frag) const {
        if (frag.component.empty()) return {frag.chord.first, frag.chord.second};
        const int a = frag.attachments[0];
        const int b = frag.attachments[1];
        const std::set<int> comp(frag.component.begin(), frag.component.end());
        std::map<int, int> parent;
        std::vector<int> queue;
        for (int w : adj_.at(a))
            if (comp.count(w) && !parent.count(w)) {
                parent[w] = a;
                queue.push_back(w);
            }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            if (std::binary_search(adj_.at(v).begin(), adj_.at(v).end(), b)) {
                std::vector<int> rev{b, v};
                for (int x = v; x != a; x = parent[x]) rev.push_back(parent[x]);
                return {rev.rbegin(), rev.rend()};
            }
            for (int w : adj_.at(v))
                if (comp.count(w) && !parent.count(w)) {
                    parent[w] = v;
                    queue.push_back(w);
                }
        }
        throw std::logic_error("planarity: fragment path not found");
    }

    void embed_path(const std::vector<int>& path, int face_index) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) embedded_.insert(key(path[i], path[i + 1]));
        for (std::size_t i = 1; i + 1 < path.size(); ++i) in_h_.insert(path[i]);

        const std::vector<int> face = faces_[static_cast<std::size_t>(face_index)];
        const int L = static_cast<int>(face.size());
        const int a = path.front(), b = path.back();
        int ia = -1, ib = -1;
        for (int i = 0; i < L; ++i) {
            if (face[static_cast<std::size_t>(i)] == a) ia = i;
            if (face[static_cast<std::size_t>(i)] == b) ib = i;
        }
        std::vector<int> face_a, face_b;
        for (int i = ia; i != ib; i = (i + 1) % L) face_a.push_back(face[static_cast<std::size_t>(i)]);
        face_a.push_back(b);
        for (std::size_t i = path.size() - 2; i >= 1; --i) face_a.push_back(path[i]);
        for (int i = ib; i != ia; i = (i + 1) % L) face_b.push_back(face[static_cast<std::size_t>(i)]);
        face_b.push_back(a);
        for (std::size_t i = 1; i + 1 < path.size(); ++i) face_b.push_back(path[i]);
        faces_[static_cast<std::size_t>(face_index)] = std::move(face_a);
        faces_.push_back(std::move(face_b));
    }

    std::set<int> vertices_;
    std::set<std::pair<int, int>> edges_;
    std::map<int, std::vector<int>> adj_;
    std::set<int> in_h_;
    std::set<std::pair<int, int>> embedded_;
    std::vector<std::vector<int>> faces_;
};

// Biconnected components as edge lists (single edges form their own blocks).
inline std::vector<std::vector<std::pair<int, int>>> biconnected_blocks(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> disc(static_cast<std::size_t>(n) + 1, 0), low(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::pair<int, int>> edge_stack;
    std::vector<std::vector<std::pair<int, int>>> blocks;
    int timer = 0;

    struct Frame {
        int v, parent;
        std::size_t next = 0;
    };
    for (int s = 1; s <= n; ++s) {
        if (disc[static_cast<std::size_t>(s)]) continue;
        std::vector<Frame> stack{{s, 0}};
        disc[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = ++timer;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const auto& nbrs = g.neighbors(fr.v);
            if (fr.next < nbrs.size()) {
                const int w = nbrs[fr.next++];
                if (w == fr.parent) continue;
                if (!disc[static_cast<std::size_t>(w)]) {
                    edge_stack.emplace_back(fr.v, w);
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = ++timer;
                    stack.push_back({w, fr.v});
                } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(fr.v)]) {
                    edge_stack.emplace_back(fr.v, w);
                    low[static_cast<std::size_t>(fr.v)] = std::min(low[static_cast<std::size_t>(fr.v)], disc[static_cast<std::size_t>(w)]);
                }
            } else {
                const int w = fr.v;
                stack.pop_back();
                if (stack.empty()) break;
                const int v = stack.back().v;
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
                if (low[static_cast<std::size_t>(w)] >= disc[static_cast<std::size_t>(v)]) {
                    // Everything pushed after the tree edge (v,w) is w's block.
                    std::vector<std::pair<int, int>> block;
                    while (!edge_stack.empty()) {
                        auto e = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(e);
                        if (e == std::pair{v, w}) break;
                    }
                    if (!block.empty()) blocks.push_back(std::move(block));
                }
            }
        }
    }
    return blocks;
}

} // namespace detail

// Planarity test with a witness embedding. Returns a rotation system
// realizing a planar drawing, or nothing iff the graph has a K5 or K33
// minor. Blocks are embedded independently and concatenated at cut
// vertices; the result is Euler-validated before returning.
inline std::optional<RotationSystem> planar_embedding(const Graph& g) {
    RotationSystem rot;
    rot.order.resize(static_cast<std::size_t>(g.vertex_count()));
    for (const auto& block : detail::biconnected_blocks(g)) {
        if (block.size() == 1) {
            const auto& [u, v] = block.front();
            rot.order[static_cast<std::size_t>(u - 1)].push_back(v);
            rot.order[static_cast<std::size_t>(v - 1)].push_back(u);
            continue;
        }
        detail::BlockEmbedder embedder(block);
        auto faces = embedder.embed();
        if (!faces) return std::nullopt;
        // Recover each vertex's cyclic neighbor order from the face walks:
        // a corner u -> v -> w in a face makes w the successor of u at v.
        std::map<int, std::map<int, int>> succ;
        for (const auto& face : *faces) {
            const int L = static_cast<int>(face.size());
            for (int i = 0; i < L; ++i) {
                const int u = face[static_cast<std::size_t>(i)];
                const int v = face[static_cast<std::size_t>((i + 1) % L)];
                const int w = face[static_cast<std::size_t>((i + 2) % L)];
                succ[v][u] = w;
            }
        }
        for (const auto& [v, next] : succ) {
            std::vector<int> cyc;
            const int first = next.begin()->first;
            int cur = first;
            do {
                cyc.push_back(cur);
                cur = next.at(cur);
            } while (cur != first);
            if (cyc.size() != next.size()) throw std::logic_error("planarity: rotation at a vertex is not a single cycle");
            auto& slot = rot.order[static_cast<std::size_t>(v - 1)];
            slot.insert(slot.end(), cyc.begin(), cyc.end());
        }
    }
    if (!valid_planar_embedding(g, rot)) throw std::logic_error("planarity: produced embedding failed the Euler check");
    return rot;
}

inline bool is_planar(const Graph& g) { return planar_embedding(g).has_value(); }

} // namespace fixpoint
