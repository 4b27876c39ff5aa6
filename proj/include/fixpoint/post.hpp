#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fixpoint/function.hpp"

namespace fixpoint {

// The five maximal proper clones plus the class of all boolean functions.
enum class NamedClass : std::uint8_t { R0, R1, M, L, D, BF };

inline const char* named_class_name(NamedClass c) {
    switch (c) {
        case NamedClass::R0: return "R0";
        case NamedClass::R1: return "R1";
        case NamedClass::M: return "M";
        case NamedClass::L: return "L";
        case NamedClass::D: return "D";
        case NamedClass::BF: return "BF";
    }
    return "?";
}

inline bool is_b_reproducing(const LocalFunction& f, bool b) {
    const std::uint64_t row = b ? (std::uint64_t{1} << f.arity()) - 1 : 0;
    return f.eval_row(row) == b;
}

// Checks every single-bit-flip cover of the hypercube.
inline bool is_monotone(const LocalFunction& f) {
    const LocalFunction lut = to_lookup(f);
    const std::uint64_t total = std::uint64_t{1} << f.arity();
    for (std::uint64_t row = 0; row < total; ++row)
        for (int i = 0; i < f.arity(); ++i) {
            const std::uint64_t above = row | (std::uint64_t{1} << i);
            if (above != row && lut.eval_row(row) && !lut.eval_row(above)) return false;
        }
    return true;
}

// Coefficients (a0, a1, ..., an) with f = a0 xor a1 x1 xor ... xor an xn,
// or nothing if f is not linear. Probes the constant and the unit vectors,
// then verifies the full table.
inline std::optional<std::vector<std::uint8_t>> is_linear(const LocalFunction& f) {
    const LocalFunction lut = to_lookup(f);
    const int n = f.arity();
    std::vector<std::uint8_t> coeff(static_cast<std::size_t>(n) + 1);
    coeff[0] = lut.eval_row(0);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t unit = std::uint64_t{1} << (n - 1 - i);  // x_{i+1} = 1, rest 0
        coeff[static_cast<std::size_t>(i) + 1] = lut.eval_row(unit) ^ coeff[0];
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t row = 0; row < total; ++row) {
        std::uint8_t want = coeff[0];
        for (int i = 0; i < n; ++i)
            if ((row >> (n - 1 - i)) & 1u) want ^= coeff[static_cast<std::size_t>(i) + 1];
        if (lut.eval_row(row) != static_cast<bool>(want)) return std::nullopt;
    }
    return coeff;
}

inline bool is_self_dual(const LocalFunction& f) {
    const LocalFunction lut = to_lookup(f);
    const std::uint64_t total = std::uint64_t{1} << f.arity();
    const std::uint64_t mask = total - 1;
    for (std::uint64_t row = 0; row < total; ++row)
        if (lut.eval_row(row) == lut.eval_row(~row & mask)) return false;
    return true;
}

inline bool in_named_class(const LocalFunction& f, NamedClass c) {
    switch (c) {
        case NamedClass::R0: return is_b_reproducing(f, false);
        case NamedClass::R1: return is_b_reproducing(f, true);
        case NamedClass::M: return is_monotone(f);
        case NamedClass::L: return is_linear(f).has_value();
        case NamedClass::D: return is_self_dual(f);
        case NamedClass::BF: return true;
    }
    return false;
}

// Either one of the named classes or the clone generated by an explicit
// finite basis of lookup tables.
struct FunctionClassSpec {
    std::variant<NamedClass, std::vector<LocalFunction>> spec;

    static FunctionClassSpec named(NamedClass c) { return {c}; }
    static FunctionClassSpec generated(std::vector<LocalFunction> basis) {
        if (basis.empty()) throw input_error("function class: generated basis must be nonempty");
        for (auto& f : basis) f = to_lookup(f);
        return {std::move(basis)};
    }

    bool is_named() const { return std::holds_alternative<NamedClass>(spec); }
};

// Whether the closure of the spec contains all self-dual functions. A Post
// class misses the self-dual clone exactly when it lies below one of the
// other four coatoms (R0, R1, M, L), so for generated specs it suffices to
// test coatom membership of the basis functions.
inline bool closure_contains_selfduals(const FunctionClassSpec& spec) {
    if (const auto* named = std::get_if<NamedClass>(&spec.spec))
        return *named == NamedClass::D || *named == NamedClass::BF;
    const auto& basis = std::get<std::vector<LocalFunction>>(spec.spec);
    for (NamedClass coatom : {NamedClass::R0, NamedClass::R1, NamedClass::M, NamedClass::L}) {
        bool all = true;
        for (const auto& f : basis) all = all && in_named_class(f, coatom);
        if (all) return false;
    }
    return true;
}

} // namespace fixpoint
