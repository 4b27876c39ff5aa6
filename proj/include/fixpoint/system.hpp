#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fixpoint/function.hpp"
#include "fixpoint/graph.hpp"

namespace fixpoint {

// One bit per vertex; bit(v) addresses vertex v in 1..n.
struct Config {
    std::vector<std::uint8_t> bits;

    Config() = default;
    explicit Config(std::vector<std::uint8_t> b) : bits(std::move(b)) {}
    explicit Config(int n, bool value = false) : bits(static_cast<std::size_t>(n), value ? 1 : 0) {}

    int size() const { return static_cast<int>(bits.size()); }
    bool bit(int v) const { return bits[static_cast<std::size_t>(v - 1)]; }
    void set_bit(int v, bool b) { bits[static_cast<std::size_t>(v - 1)] = b ? 1 : 0; }

    Config complement() const {
        Config c = *this;
        for (auto& b : c.bits) b ^= 1;
        return c;
    }

    // Vertex 1 is the most significant bit, so numeric order on words is
    // lexicographic order on configurations.
    std::uint32_t to_word() const {
        std::uint32_t w = 0;
        for (auto b : bits) w = (w << 1) | b;
        return w;
    }
    static Config from_word(std::uint32_t w, int n) {
        Config c(n);
        for (int v = 1; v <= n; ++v) c.bits[static_cast<std::size_t>(v - 1)] = (w >> (n - v)) & 1u;
        return c;
    }

    bool operator==(const Config& o) const { return bits == o.bits; }
    bool operator<(const Config& o) const { return bits < o.bits; }
};

// Update schedule: per step, the set of vertices that fire simultaneously.
struct Schedule {
    std::vector<std::vector<int>> steps;
};

// A boolean dynamical system: network plus one local transition function per
// vertex, where f_v takes the bits of N^0(v) in ascending vertex order.
class System {
public:
    System() = default;

    System(Graph graph, std::vector<LocalFunction> functions) : graph_(std::move(graph)), functions_(std::move(functions)) {
        if (static_cast<int>(functions_.size()) != graph_.vertex_count())
            throw input_error("system: need exactly one local function per vertex");
        for (int v = 1; v <= graph_.vertex_count(); ++v) {
            int want = graph_.degree(v) + 1;
            if (functions_[static_cast<std::size_t>(v - 1)].arity() != want)
                throw input_error("system: function at vertex " + std::to_string(v) + " has arity " +
                                  std::to_string(functions_[static_cast<std::size_t>(v - 1)].arity()) + ", expected " +
                                  std::to_string(want));
        }
    }

    const Graph& graph() const { return graph_; }
    int vertex_count() const { return graph_.vertex_count(); }
    const LocalFunction& function(int v) const { return functions_[static_cast<std::size_t>(v - 1)]; }
    const std::vector<LocalFunction>& functions() const { return functions_; }

    // f_v applied to the restriction of c onto N^0(v).
    bool local_value(int v, const Config& c) const {
        std::uint64_t row = 0;
        for (int u : graph_.closed_neighborhood(v)) row = (row << 1) | (c.bit(u) ? 1u : 0u);
        return function(v).eval_row(row);
    }

    bool operator==(const System& o) const { return graph_ == o.graph_ && functions_ == o.functions_; }

private:
    Graph graph_;
    std::vector<LocalFunction> functions_;
};

inline void check_vertices_exist(const System& s, const std::vector<int>& vs, const char* what) {
    for (int v : vs)
        if (v < 1 || v > s.vertex_count()) throw input_error(std::string(what) + ": vertex " + std::to_string(v) + " not in system");
}

// One synchronous step restricted to the active set U; vertices outside U
// keep their state.
inline Config global_step(const System& s, const std::vector<int>& active, const Config& c) {
    check_vertices_exist(s, active, "global_step");
    if (c.size() != s.vertex_count()) throw input_error("global_step: configuration size does not match system");
    Config out = c;
    for (int v : active) out.set_bit(v, s.local_value(v, c));
    return out;
}

inline Config synchronous_step(const System& s, const Config& c) {
    std::vector<int> all(static_cast<std::size_t>(s.vertex_count()));
    for (int v = 1; v <= s.vertex_count(); ++v) all[static_cast<std::size_t>(v - 1)] = v;
    return global_step(s, all, c);
}

// Applies the steps front to back: steps[0] acts first.
inline Config run_schedule(const System& s, const Schedule& sched, const Config& c) {
    Config cur = c;
    for (const auto& step : sched.steps) cur = global_step(s, step, cur);
    return cur;
}

inline bool is_local_fixed_point(const System& s, const std::vector<int>& active, const Config& c) {
    check_vertices_exist(s, active, "is_local_fixed_point");
    for (int v : active)
        if (s.local_value(v, c) != c.bit(v)) return false;
    return true;
}

inline bool is_fixed_point(const System& s, const Config& c) {
    if (c.size() != s.vertex_count()) throw input_error("is_fixed_point: configuration size does not match system");
    for (int v = 1; v <= s.vertex_count(); ++v)
        if (s.local_value(v, c) != c.bit(v)) return false;
    return true;
}

namespace detail {

// Pre-resolved evaluation plan for scanning all configurations: per vertex,
// a lookup table plus the word bit positions of its closed neighborhood.
struct ScanPlan {
    struct Entry {
        LookupTable table;
        std::vector<int> shifts;  // word shift per argument, MSB-first arg order
        int own_shift;
    };
    std::vector<Entry> entries;

    explicit ScanPlan(const System& s) {
        const int n = s.vertex_count();
        entries.reserve(static_cast<std::size_t>(n));
        for (int v = 1; v <= n; ++v) {
            Entry e;
            e.table = to_lookup(s.function(v)).table();
            for (int u : s.graph().closed_neighborhood(v)) e.shifts.push_back(n - u);
            e.own_shift = n - v;
            entries.push_back(std::move(e));
        }
    }

    bool fixed(std::uint32_t word) const {
        for (const auto& e : entries) {
            std::uint32_t row = 0;
            for (int sh : e.shifts) row = (row << 1) | ((word >> sh) & 1u);
            if (e.table.rows[row] != ((word >> e.own_shift) & 1u)) return false;
        }
        return true;
    }
};

} // namespace detail

inline constexpr int kDefaultBruteForceCap = 25;

// All fixed points in lexicographic order, by exhaustive scan. Refuses above
// the cap: the scan is Theta(2^n).
inline std::vector<Config> enumerate_fixed_points(const System& s, int brute_force_cap = kDefaultBruteForceCap) {
    const int n = s.vertex_count();
    if (n > brute_force_cap)
        throw budget_error("enumerate_fixed_points: " + std::to_string(n) + " vertices exceeds the brute-force cap of " +
                           std::to_string(brute_force_cap));
    detail::ScanPlan plan(s);
    std::vector<Config> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t w = 0; w < total; ++w)
        if (plan.fixed(static_cast<std::uint32_t>(w))) out.push_back(Config::from_word(static_cast<std::uint32_t>(w), n));
    return out;
}

// Lexicographically first fixed point, or nothing; same cap semantics.
inline std::optional<Config> first_fixed_point(const System& s, int brute_force_cap = kDefaultBruteForceCap) {
    const int n = s.vertex_count();
    if (n > brute_force_cap)
        throw budget_error("first_fixed_point: " + std::to_string(n) + " vertices exceeds the brute-force cap of " +
                           std::to_string(brute_force_cap));
    detail::ScanPlan plan(s);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t w = 0; w < total; ++w)
        if (plan.fixed(static_cast<std::uint32_t>(w))) return Config::from_word(static_cast<std::uint32_t>(w), n);
    return std::nullopt;
}

} // namespace fixpoint
