#pragma once

#include <string>
#include <vector>

#include "fixpoint/minor.hpp"
#include "fixpoint/planar.hpp"
#include "fixpoint/post.hpp"

namespace fixpoint {

// How the local transition functions of an instance class are encoded.
enum class ReprMode : std::uint8_t { Lookup, Formula, Circuit };

inline const char* repr_mode_name(ReprMode m) {
    switch (m) {
        case ReprMode::Lookup: return "lookup";
        case ReprMode::Formula: return "formula";
        case ReprMode::Circuit: return "circuit";
    }
    return "?";
}

// Minor-closed graph class given by its forbidden minors; the empty list is
// the class of all graphs.
struct GraphClassSpec {
    std::vector<Graph> forbidden;

    static GraphClassSpec all() { return {}; }
    static GraphClassSpec planar() { return {{k33_graph(), k5_graph()}}; }
    static GraphClassSpec vertex_cover_one() { return {{triangle_graph(), two_disjoint_edges()}}; }
    static GraphClassSpec forbidding(std::vector<Graph> minors) { return {std::move(minors)}; }
};

enum class AlgorithmTag : std::uint8_t {
    ConstantWitness0,
    ConstantWitness1,
    MonotoneIteration,
    LinearAlgebra,
    BoundedTreewidth,
    BoundedDegreeExpansion,
};

enum class ReductionTag : std::uint8_t { PlanarLookup, StarFormula };

inline const char* algorithm_tag_name(AlgorithmTag t) {
    switch (t) {
        case AlgorithmTag::ConstantWitness0: return "ConstantWitness0";
        case AlgorithmTag::ConstantWitness1: return "ConstantWitness1";
        case AlgorithmTag::MonotoneIteration: return "MonotoneIteration";
        case AlgorithmTag::LinearAlgebra: return "LinearAlgebra";
        case AlgorithmTag::BoundedTreewidth: return "BoundedTreewidth";
        case AlgorithmTag::BoundedDegreeExpansion: return "BoundedDegreeExpansion";
    }
    return "?";
}

inline const char* reduction_tag_name(ReductionTag t) {
    switch (t) {
        case ReductionTag::PlanarLookup: return "PlanarLookup";
        case ReductionTag::StarFormula: return "StarFormula";
    }
    return "?";
}

// Outcome of the dichotomy oracle: either a polynomial algorithm applies, or
// the class is NP-complete via one of the two hardness constructions.
struct Verdict {
    bool tractable = true;
    AlgorithmTag algorithm = AlgorithmTag::BoundedTreewidth;  // set when tractable
    ReductionTag reduction = ReductionTag::PlanarLookup;      // set when NP-complete

    static Verdict poly(AlgorithmTag t) { return {true, t, ReductionTag::PlanarLookup}; }
    static Verdict np_complete(ReductionTag t) { return {false, AlgorithmTag::BoundedTreewidth, t}; }

    bool operator==(const Verdict& o) const {
        if (tractable != o.tractable) return false;
        return tractable ? algorithm == o.algorithm : reduction == o.reduction;
    }

    std::string to_string() const {
        if (tractable) return std::string("Tractable(") + algorithm_tag_name(algorithm) + ")";
        return std::string("NPComplete(") + reduction_tag_name(reduction) + ")";
    }
};

namespace detail {

// The polynomial solver mandated by the coatom the class sits below. A
// generated class may sit below several coatoms at once; the strongest
// structural property wins the tag (linear, then monotone, then the
// constant-witness classes).
inline std::optional<AlgorithmTag> function_side_tag(const FunctionClassSpec& spec) {
    if (const auto* named = std::get_if<NamedClass>(&spec.spec)) {
        switch (*named) {
            case NamedClass::R1: return AlgorithmTag::ConstantWitness1;
            case NamedClass::R0: return AlgorithmTag::ConstantWitness0;
            case NamedClass::L: return AlgorithmTag::LinearAlgebra;
            case NamedClass::M: return AlgorithmTag::MonotoneIteration;
            default: return std::nullopt;
        }
    }
    const auto& basis = std::get<std::vector<LocalFunction>>(spec.spec);
    auto all_in = [&](NamedClass c) {
        for (const auto& f : basis)
            if (!in_named_class(f, c)) return false;
        return true;
    };
    if (all_in(NamedClass::L)) return AlgorithmTag::LinearAlgebra;
    if (all_in(NamedClass::M)) return AlgorithmTag::MonotoneIteration;
    if (all_in(NamedClass::R1)) return AlgorithmTag::ConstantWitness1;
    if (all_in(NamedClass::R0)) return AlgorithmTag::ConstantWitness0;
    return std::nullopt;
}

} // namespace detail

// The two dichotomy theorems as an oracle over (function class, graph class,
// representation). Lookup mode is NP-complete iff the closure contains the
// self-dual functions and the graph class contains all planar graphs, which
// holds iff no forbidden minor is itself planar (the empty list qualifies).
// Formula and circuit modes replace "planar" by "has a vertex cover of size
// one". All other cases are tractable and carry the applicable solver tag.
inline Verdict dichotomy(const FunctionClassSpec& spec_f, const GraphClassSpec& spec_g, ReprMode mode) {
    const bool selfduals = closure_contains_selfduals(spec_f);
    bool graph_side_hard = true;
    for (const Graph& minor : spec_g.forbidden) {
        const bool small_class = mode == ReprMode::Lookup ? is_planar(minor) : has_vertex_cover_one(minor);
        if (small_class) graph_side_hard = false;
    }
    if (selfduals && graph_side_hard)
        return Verdict::np_complete(mode == ReprMode::Lookup ? ReductionTag::PlanarLookup : ReductionTag::StarFormula);
    if (auto tag = detail::function_side_tag(spec_f)) return Verdict::poly(*tag);
    return Verdict::poly(mode == ReprMode::Lookup ? AlgorithmTag::BoundedTreewidth : AlgorithmTag::BoundedDegreeExpansion);
}

} // namespace fixpoint
