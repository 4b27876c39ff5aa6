#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fixpoint/errors.hpp"

namespace fixpoint {

// Logical basis symbols. D is the ternary self-dual basis function
// (x & !y) | (x & !z) | (!y & !z); D(x,x,y) computes !y.
enum class Sym : std::uint8_t { And, Or, Not, Xor, Xnor, Const0, Const1, D, Var };

inline int sym_arity(Sym s) {
    switch (s) {
        case Sym::And:
        case Sym::Or:
        case Sym::Xor:
        case Sym::Xnor: return 2;
        case Sym::Not: return 1;
        case Sym::D: return 3;
        case Sym::Const0:
        case Sym::Const1:
        case Sym::Var: return 0;
    }
    return 0;
}

inline const char* sym_name(Sym s) {
    switch (s) {
        case Sym::And: return "AND";
        case Sym::Or: return "OR";
        case Sym::Not: return "NOT";
        case Sym::Xor: return "XOR";
        case Sym::Xnor: return "XNOR";
        case Sym::Const0: return "CONST0";
        case Sym::Const1: return "CONST1";
        case Sym::D: return "D";
        case Sym::Var: return "VAR";
    }
    return "?";
}

inline bool apply_sym(Sym s, bool a, bool b = false, bool c = false) {
    switch (s) {
        case Sym::And: return a && b;
        case Sym::Or: return a || b;
        case Sym::Not: return !a;
        case Sym::Xor: return a != b;
        case Sym::Xnor: return a == b;
        case Sym::Const0: return false;
        case Sym::Const1: return true;
        case Sym::D: return (a && !b) || (a && !c) || (!b && !c);
        case Sym::Var: return a;
    }
    return false;
}

// Expression tree over the basis symbols; leaves are Var nodes holding a
// 0-based argument index.
struct FormulaNode {
    Sym op = Sym::Const0;
    int var = 0;
    std::vector<FormulaNode> kids;

    static FormulaNode leaf(int index) {
        FormulaNode n;
        n.op = Sym::Var;
        n.var = index;
        return n;
    }
    static FormulaNode constant(bool b) {
        FormulaNode n;
        n.op = b ? Sym::Const1 : Sym::Const0;
        return n;
    }
    static FormulaNode make(Sym op, std::vector<FormulaNode> kids) {
        if (static_cast<int>(kids.size()) != sym_arity(op) || op == Sym::Var)
            throw input_error(std::string("formula: wrong child count for ") + sym_name(op));
        FormulaNode n;
        n.op = op;
        n.kids = std::move(kids);
        return n;
    }

    bool operator==(const FormulaNode& o) const { return op == o.op && var == o.var && kids == o.kids; }

    // Number of basis symbols (Var leaves do not count).
    int size() const {
        int s = op == Sym::Var ? 0 : 1;
        for (const auto& k : kids) s += k.size();
        return s;
    }

    int max_var() const {
        int m = op == Sym::Var ? var : -1;
        for (const auto& k : kids) m = std::max(m, k.max_var());
        return m;
    }

    template <typename Bits>
    bool eval(const Bits& args) const {
        switch (sym_arity(op)) {
            case 0: return op == Sym::Var ? static_cast<bool>(args[static_cast<std::size_t>(var)]) : apply_sym(op, false);
            case 1: return apply_sym(op, kids[0].eval(args));
            case 2: return apply_sym(op, kids[0].eval(args), kids[1].eval(args));
            default: return apply_sym(op, kids[0].eval(args), kids[1].eval(args), kids[2].eval(args));
        }
    }

    bool uses_only(std::initializer_list<Sym> allowed) const {
        if (op != Sym::Var) {
            bool ok = false;
            for (Sym s : allowed) ok = ok || s == op;
            if (!ok) return false;
        }
        for (const auto& k : kids)
            if (!k.uses_only(allowed)) return false;
        return true;
    }
};

// One circuit gate. Var gates read a 0-based input; every other gate reads
// the outputs of strictly earlier gates, so the list is acyclic by
// construction. The last gate is the circuit output.
struct Gate {
    Sym op = Sym::Var;
    int var = 0;            // input index for Var gates
    std::vector<int> args;  // indices of earlier gates otherwise

    bool operator==(const Gate& o) const { return op == o.op && var == o.var && args == o.args; }
};

struct Circuit {
    std::vector<Gate> gates;

    bool operator==(const Circuit& o) const { return gates == o.gates; }

    int size() const { return static_cast<int>(gates.size()); }

    void validate(int arity) const {
        if (gates.empty()) throw input_error("circuit: no gates");
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const Gate& g = gates[i];
            if (g.op == Sym::Var) {
                if (g.var < 0 || g.var >= arity) throw input_error("circuit: VAR index out of range");
                if (!g.args.empty()) throw input_error("circuit: VAR gate takes no gate arguments");
            } else {
                if (static_cast<int>(g.args.size()) != sym_arity(g.op))
                    throw input_error(std::string("circuit: wrong argument count for ") + sym_name(g.op));
                for (int a : g.args)
                    if (a < 0 || a >= static_cast<int>(i)) throw input_error("circuit: gate argument must reference an earlier gate");
            }
        }
    }

    template <typename Bits>
    bool eval(const Bits& args) const {
        std::vector<char> value(gates.size());
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const Gate& g = gates[i];
            bool v;
            switch (sym_arity(g.op)) {
                case 0:
                    v = g.op == Sym::Var ? static_cast<bool>(args[static_cast<std::size_t>(g.var)]) : apply_sym(g.op, false);
                    break;
                case 1: v = apply_sym(g.op, value[static_cast<std::size_t>(g.args[0])]); break;
                case 2: v = apply_sym(g.op, value[static_cast<std::size_t>(g.args[0])], value[static_cast<std::size_t>(g.args[1])]); break;
                default:
                    v = apply_sym(g.op, value[static_cast<std::size_t>(g.args[0])], value[static_cast<std::size_t>(g.args[1])],
                                  value[static_cast<std::size_t>(g.args[2])]);
            }
            value[i] = v;
        }
        return value.back();
    }
};

// Truth table with rows indexed by the arguments read MSB-first: the first
// argument is the most significant bit of the row index.
struct LookupTable {
    std::vector<std::uint8_t> rows;  // 2^arity entries of 0/1

    bool operator==(const LookupTable& o) const { return rows == o.rows; }

    std::string to_bit_string() const {
        std::string s(rows.size(), '0');
        for (std::size_t i = 0; i < rows.size(); ++i) s[i] = rows[i] ? '1' : '0';
        return s;
    }

    static LookupTable from_bit_string(const std::string& s) {
        LookupTable t;
        t.rows.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw input_error("lookup table: bit string may contain only 0 and 1");
            t.rows.push_back(c == '1');
        }
        return t;
    }
};

// A local transition function in one of the three representations.
class LocalFunction {
public:
    using Repr = std::variant<LookupTable, FormulaNode, Circuit>;

    LocalFunction() : arity_(0), repr_(LookupTable{{0}}) {}

    LocalFunction(int arity, Repr repr) : arity_(arity), repr_(std::move(repr)) {
        if (arity_ < 0 || arity_ > 62) throw input_error("function: arity outside 0..62");
        if (const auto* t = std::get_if<LookupTable>(&repr_)) {
            if (arity_ > 30) throw input_error("function: lookup tables support arity up to 30");
            if (t->rows.size() != (std::size_t{1} << arity_))
                throw input_error("function: lookup table must have exactly 2^arity entries");
            for (auto b : t->rows)
                if (b > 1) throw input_error("function: lookup table entries must be bits");
        } else if (const auto* f = std::get_if<FormulaNode>(&repr_)) {
            if (f->max_var() >= arity_) throw input_error("function: formula references input beyond arity");
        } else {
            std::get<Circuit>(repr_).validate(arity_);
        }
    }

    static LocalFunction lookup(int arity, const std::string& bit_string) {
        return LocalFunction(arity, LookupTable::from_bit_string(bit_string));
    }
    static LocalFunction formula(int arity, FormulaNode root) { return LocalFunction(arity, std::move(root)); }
    static LocalFunction circuit(int arity, Circuit c) { return LocalFunction(arity, std::move(c)); }

    int arity() const { return arity_; }
    const Repr& repr() const { return repr_; }

    bool is_lookup() const { return std::holds_alternative<LookupTable>(repr_); }
    bool is_formula() const { return std::holds_alternative<FormulaNode>(repr_); }
    bool is_circuit() const { return std::holds_alternative<Circuit>(repr_); }

    const LookupTable& table() const { return std::get<LookupTable>(repr_); }
    const FormulaNode& formula_root() const { return std::get<FormulaNode>(repr_); }
    const Circuit& circuit_gates() const { return std::get<Circuit>(repr_); }

    bool operator==(const LocalFunction& o) const { return arity_ == o.arity_ && repr_ == o.repr_; }

    // Evaluate on a row index (args MSB-first), the canonical fast path.
    bool eval_row(std::uint64_t row) const {
        if (const auto* t = std::get_if<LookupTable>(&repr_)) return t->rows[row];
        RowBits bits{row, arity_};
        if (const auto* f = std::get_if<FormulaNode>(&repr_)) return f->eval(bits);
        return std::get<Circuit>(repr_).eval(bits);
    }

    template <typename Bits>
    bool eval(const Bits& args) const {
        if (static_cast<int>(args.size()) != arity_) throw input_error("eval: argument count does not match arity");
        std::uint64_t row = 0;
        for (int i = 0; i < arity_; ++i) row = (row << 1) | (args[static_cast<std::size_t>(i)] ? 1u : 0u);
        return eval_row(row);
    }

private:
    struct RowBits {
        std::uint64_t row;
        int arity;
        bool operator[](std::size_t i) const { return (row >> (arity - 1 - static_cast<int>(i))) & 1u; }
    };

    int arity_;
    Repr repr_;
};

inline bool eval_local(const LocalFunction& f, const std::vector<std::uint8_t>& args) { return f.eval(args); }

// Materialize any representation as a lookup table; agrees with eval_local
// on all 2^arity inputs. Tables grow as 2^arity, so callers watch the arity.
inline LocalFunction to_lookup(const LocalFunction& f) {
    if (f.is_lookup()) return f;
    if (f.arity() > 30) throw input_error("to_lookup: arity " + std::to_string(f.arity()) + " would need 2^" +
                                          std::to_string(f.arity()) + " table entries");
    LookupTable t;
    t.rows.resize(std::size_t{1} << f.arity());
    for (std::uint64_t row = 0; row < t.rows.size(); ++row) t.rows[row] = f.eval_row(row);
    return LocalFunction(f.arity(), std::move(t));
}

// Table of f with argument `removed` identified with argument `kept`
// (the removed position is dropped; all other positions keep their order).
inline LocalFunction identify_arguments(const LocalFunction& f, int kept, int removed) {
    if (kept == removed || kept < 0 || removed < 0 || kept >= f.arity() || removed >= f.arity())
        throw input_error("identify_arguments: positions must be distinct and within arity");
    const LocalFunction lut = to_lookup(f);
    const int n = f.arity();
    LookupTable t;
    t.rows.resize(std::size_t{1} << (n - 1));
    for (std::uint64_t row = 0; row < t.rows.size(); ++row) {
        // Spread the (n-1)-bit row back onto n positions, duplicating `kept`.
        std::uint64_t full = 0;
        int src = 0;
        std::uint64_t kept_bit = 0;
        for (int pos = 0; pos < n; ++pos) {
            if (pos == removed) continue;
            std::uint64_t b = (row >> (n - 2 - src)) & 1u;
            if (pos == kept) kept_bit = b;
            full |= b << (n - 1 - pos);
            ++src;
        }
        full |= kept_bit << (n - 1 - removed);
        t.rows[row] = lut.eval_row(full);
    }
    return LocalFunction(n - 1, std::move(t));
}

// --- prefix formula format ---------------------------------------------------
// Example: "AND VAR 0 NOT VAR 1" is x0 & !x1.

inline void format_formula_rec(const FormulaNode& n, std::ostringstream& out) {
    out << sym_name(n.op);
    if (n.op == Sym::Var) out << ' ' << n.var;
    for (const auto& k : n.kids) {
        out << ' ';
        format_formula_rec(k, out);
    }
}

inline std::string format_formula(const FormulaNode& n) {
    std::ostringstream out;
    format_formula_rec(n, out);
    return out.str();
}

inline FormulaNode parse_formula_rec(const std::vector<std::string>& toks, std::size_t& pos) {
    if (pos >= toks.size()) throw input_error("formula: unexpected end of expression");
    const std::string& t = toks[pos++];
    for (Sym s : {Sym::And, Sym::Or, Sym::Not, Sym::Xor, Sym::Xnor, Sym::Const0, Sym::Const1, Sym::D}) {
        if (t == sym_name(s)) {
            std::vector<FormulaNode> kids;
            for (int i = 0; i < sym_arity(s); ++i) kids.push_back(parse_formula_rec(toks, pos));
            return FormulaNode::make(s, std::move(kids));
        }
    }
    if (t == "VAR") {
        if (pos >= toks.size()) throw input_error("formula: VAR needs an index");
        std::size_t used = 0;
        int idx = std::stoi(toks[pos], &used);
        if (used != toks[pos].size() || idx < 0) throw input_error("formula: bad VAR index '" + toks[pos] + "'");
        ++pos;
        return FormulaNode::leaf(idx);
    }
    throw input_error("formula: unknown symbol '" + t + "'");
}

inline FormulaNode parse_formula(const std::string& text) {
    std::vector<std::string> toks;
    std::istringstream in(text);
    std::string t;
    while (in >> t) toks.push_back(t);
    std::size_t pos = 0;
    FormulaNode n = parse_formula_rec(toks, pos);
    if (pos != toks.size()) throw input_error("formula: trailing tokens after expression");
    return n;
}

} // namespace fixpoint
