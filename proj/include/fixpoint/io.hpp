#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixpoint/csp.hpp"
#include "fixpoint/gadgets.hpp"
#include "fixpoint/solve.hpp"
#include "fixpoint/system.hpp"

namespace fixpoint {

using Json = nlohmann::json;

// --- system documents --------------------------------------------------------
// {"vertices": n, "edges": [[i,j],...], "functions": [{"vertex": i, "repr":
// "lookup"|"formula"|"circuit", "data": ...}]}. Lookup data is the MSB-first
// bit string; formula data a prefix expression; circuit data a gate array
// where ["VAR", k] reads input k and other gates reference earlier entries.

inline Json circuit_to_json(const Circuit& c) {
    Json arr = Json::array();
    for (const Gate& g : c.gates) {
        Json gate = Json::array();
        gate.push_back(sym_name(g.op));
        if (g.op == Sym::Var)
            gate.push_back(g.var);
        else
            for (int a : g.args) gate.push_back(a);
        arr.push_back(std::move(gate));
    }
    return arr;
}

inline Circuit circuit_from_json(const Json& arr) {
    if (!arr.is_array()) throw input_error("circuit: expected an array of gates");
    Circuit c;
    for (const auto& gate : arr) {
        if (!gate.is_array() || gate.empty() || !gate[0].is_string()) throw input_error("circuit: each gate is [op, args...]");
        Gate g;
        const std::string op = gate[0].get<std::string>();
        bool found = false;
        for (Sym s : {Sym::And, Sym::Or, Sym::Not, Sym::Xor, Sym::Xnor, Sym::Const0, Sym::Const1, Sym::D, Sym::Var})
            if (op == sym_name(s)) {
                g.op = s;
                found = true;
            }
        if (!found) throw input_error("circuit: unknown gate op '" + op + "'");
        if (g.op == Sym::Var) {
            if (gate.size() != 2 || !gate[1].is_number_integer()) throw input_error("circuit: VAR gate is [\"VAR\", index]");
            g.var = gate[1].get<int>();
        } else {
            for (std::size_t i = 1; i < gate.size(); ++i) {
                if (!gate[i].is_number_integer()) throw input_error("circuit: gate arguments must be integers");
                g.args.push_back(gate[i].get<int>());
            }
        }
        c.gates.push_back(std::move(g));
    }
    return c;
}

inline Json system_to_json(const System& s) {
    Json doc;
    doc["vertices"] = s.vertex_count();
    Json edges = Json::array();
    for (const auto& [u, v] : s.graph().edges()) edges.push_back(Json::array({u, v}));
    doc["edges"] = std::move(edges);
    Json functions = Json::array();
    for (int v = 1; v <= s.vertex_count(); ++v) {
        const LocalFunction& f = s.function(v);
        Json entry;
        entry["vertex"] = v;
        if (f.is_lookup()) {
            entry["repr"] = "lookup";
            entry["data"] = f.table().to_bit_string();
        } else if (f.is_formula()) {
            entry["repr"] = "formula";
            entry["data"] = format_formula(f.formula_root());
        } else {
            entry["repr"] = "circuit";
            entry["data"] = circuit_to_json(f.circuit_gates());
        }
        functions.push_back(std::move(entry));
    }
    doc["functions"] = std::move(functions);
    return doc;
}

inline System system_from_json(const Json& doc) {
    if (!doc.is_object()) throw input_error("system: expected a JSON object");
    if (!doc.contains("vertices") || !doc["vertices"].is_number_integer()) throw input_error("system: missing integer field 'vertices'");
    const int n = doc["vertices"].get<int>();
    std::vector<std::pair<int, int>> edges;
    if (!doc.contains("edges") || !doc["edges"].is_array()) throw input_error("system: missing array field 'edges'");
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2) throw input_error("system: each edge is a pair [i, j]");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    Graph g(n, std::move(edges));
    if (!doc.contains("functions") || !doc["functions"].is_array()) throw input_error("system: missing array field 'functions'");
    std::vector<LocalFunction> fs(static_cast<std::size_t>(n));
    std::vector<char> have(static_cast<std::size_t>(n), 0);
    for (const auto& entry : doc["functions"]) {
        if (!entry.contains("vertex") || !entry.contains("repr") || !entry.contains("data"))
            throw input_error("system: each function entry needs vertex, repr, data");
        const int v = entry["vertex"].get<int>();
        if (v < 1 || v > n) throw input_error("system: function for unknown vertex " + std::to_string(v));
        const int arity = g.degree(v) + 1;
        const std::string repr = entry["repr"].get<std::string>();
        if (repr == "lookup")
            fs[static_cast<std::size_t>(v - 1)] = LocalFunction::lookup(arity, entry["data"].get<std::string>());
        else if (repr == "formula")
            fs[static_cast<std::size_t>(v - 1)] = LocalFunction::formula(arity, parse_formula(entry["data"].get<std::string>()));
        else if (repr == "circuit")
            fs[static_cast<std::size_t>(v - 1)] = LocalFunction::circuit(arity, circuit_from_json(entry["data"]));
        else
            throw input_error("system: unknown repr '" + repr + "'");
        have[static_cast<std::size_t>(v - 1)] = 1;
    }
    for (int v = 1; v <= n; ++v)
        if (!have[static_cast<std::size_t>(v - 1)]) throw input_error("system: no function for vertex " + std::to_string(v));
    return System(std::move(g), std::move(fs));
}

// Canonical rendering: sorted keys (nlohmann default), two-space indent,
// trailing newline. Golden files and round-trip tests rely on this being
// byte-stable.
inline std::string canonical_json(const Json& doc) { return doc.dump(2) + "\n"; }

inline std::string serialize_system(const System& s) { return canonical_json(system_to_json(s)); }

inline System parse_system(const std::string& text) {
    try {
        return system_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
        throw input_error(std::string("system: JSON parse error: ") + e.what());
    }
}

// --- CSP dump ----------------------------------------------------------------

inline Json csp_to_json(const CSPInstance& csp) {
    Json doc;
    doc["variables"] = csp.num_vars;
    Json domains = Json::array();
    for (int v = 1; v <= csp.num_vars; ++v) {
        Json dom;
        dom["variable"] = v;
        Json values = Json::array();
        for (const auto& val : csp.domains[static_cast<std::size_t>(v)])
            values.push_back(Json::array({val.mask, val.vertex}));
        dom["values"] = std::move(values);
        domains.push_back(std::move(dom));
    }
    doc["domains"] = std::move(domains);
    Json constraints = Json::array();
    for (const auto& c : csp.constraints) {
        Json entry;
        entry["scope"] = Json::array({c.i, c.j});
        Json allowed = Json::array();
        for (const auto& [a, b] : c.allowed) allowed.push_back(Json::array({a, b}));
        entry["allowed"] = std::move(allowed);
        constraints.push_back(std::move(entry));
    }
    doc["constraints"] = std::move(constraints);
    return doc;
}

// --- DIMACS CNF --------------------------------------------------------------

inline Cnf parse_dimacs(const std::string& text) {
    Cnf cnf;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::vector<int> current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == 'c') continue;
        if (first == "p") {
            std::string kind;
            if (!(ls >> kind >> cnf.num_vars) || kind != "cnf") throw input_error("dimacs: malformed problem line");
            int declared_clauses = 0;
            ls >> declared_clauses;
            have_header = true;
            continue;
        }
        if (!have_header) throw input_error("dimacs: clause before the problem line");
        std::istringstream rest(line);
        int lit;
        while (rest >> lit) {
            if (lit == 0) {
                if (current.empty()) throw input_error("dimacs: empty clause");
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!have_header) throw input_error("dimacs: missing problem line");
    if (!current.empty()) {
        cnf.clauses.push_back(current);  // tolerate a missing final 0
    }
    cnf.validate();
    return cnf;
}

inline std::string serialize_dimacs(const Cnf& cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& cl : cnf.clauses) {
        for (int lit : cl) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

// --- budgets config ----------------------------------------------------------
// Plain "key = value" lines; '#' starts a comment. Keys: brute-force-cap,
// width-budget, degree-budget.

inline Budgets parse_budgets(const std::string& text, Budgets base = {}) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq;
        long value;
        if (!(ls >> key)) continue;
        if (!(ls >> eq >> value) || eq != "=")
            throw input_error("config line " + std::to_string(line_no) + ": expected 'key = value'");
        if (key == "brute-force-cap")
            base.brute_force_cap = static_cast<int>(value);
        else if (key == "width-budget")
            base.width_budget = static_cast<int>(value);
        else if (key == "degree-budget")
            base.degree_budget = static_cast<int>(value);
        else
            throw input_error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return base;
}

// --- file helpers ------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + path);
    out << content;
}

} // namespace fixpoint
