#pragma once

#include <descomp/interpretations.hh>
#include <descomp/structures.hh>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace descomp
{
    /// Vertex classes of the reduction. The numeric value is the class code used by the
    /// interpretation, written in binary over its four class coordinates.
    enum class VertexClass : unsigned
    {
        True = 0,
        False = 1,
        Red = 2,
        Positive = 3,
        Negative = 4,
        InputA = 5,
        InputB = 6,
        InputC = 7,
        GateD = 8,
        GateE = 9,
        Output = 10
    };

    /// Vertex numbering of the compact gadget graph on 8n+3 vertices:
    /// T, F, R, then x_i / not x_i pairs, then six vertices a..f per clause.
    struct GadgetLayout
    {
        std::size_t n = 0;

        auto vertex_count() const -> std::size_t { return 8 * n + 3; }
        auto truth() const -> Element { return 0; }
        auto falsity() const -> Element { return 1; }
        auto red() const -> Element { return 2; }
        auto literal(Element variable, bool positive) const -> Element
        {
            return static_cast<Element>(3 + 2 * variable + (positive ? 0 : 1));
        }
        /// role 0..5 = a, b, c, d, e, f
        auto gadget(Element clause, unsigned role) const -> Element
        {
            return static_cast<Element>(3 + 2 * n + 6 * clause + role);
        }
        auto vertex_class(Element v) const -> VertexClass;
        auto vertex_index(Element v) const -> Element;
    };

    enum class EmptyClauseWiring
    {
        ToTrue,
        None
    };

    /// Direct construction of the reduction graph (symmetric edge relation).
    auto build_gadget_graph(const Structure &cnf, EmptyClauseWiring wiring = EmptyClauseWiring::ToTrue) -> Structure;

    struct OrPropertyRow
    {
        std::array<bool, 3> stubs{};
        bool extendable = false;
    };

    struct OrPropertyReport
    {
        std::vector<OrPropertyRow> rows;

        /// Each row is extendable exactly when one of its stubs is true.
        auto passed() const -> bool;
    };

    /// Exhaustive colouring check of one clause gadget attached to the palette and three literal stubs.
    auto gadget_or_property_check() -> OrPropertyReport;

    /// Quantifier-free projection from the positional CNF vocabulary to graphs, k = 5.
    /// Output element (b1,b2,b3,b4,i): the bits b (min = 0, suc(min) = 1) give the class code,
    /// i the variable or clause index. Palette vertices use i = min; everything else is isolated.
    auto sat2col_interpretation() -> const Interpretation &;

    /// Universe element of the interpretation's output that plays the given vertex.
    auto sat2col_vertex(VertexClass c, Element index, std::size_t n) -> std::uint64_t;

    /// The compact graph relabelled into the interpretation's universe of size n^5.
    auto embed_gadget_graph(const Structure &compact, std::size_t n) -> Structure;

    struct EquivalenceCase
    {
        std::size_t n = 0;
        bool satisfiable = false;
        bool gadget_colourable = false;
        bool interpretation_colourable = false;
        std::string structure;

        auto agrees() const -> bool
        {
            return satisfiable == gadget_colourable && satisfiable == interpretation_colourable;
        }
    };

    struct EquivalenceReport
    {
        std::size_t cases = 0;
        std::size_t satisfiable = 0;
        std::vector<EquivalenceCase> counterexamples;

        auto passed() const -> bool { return counterexamples.empty(); }
    };

    auto check_equivalence(const Structure &cnf) -> EquivalenceCase;

    /// Exhaustive over all CNF structures with n <= min(n_max, exhaustive_max), then `trials` random
    /// structures for each larger n up to n_max.
    auto verify_equivalence(std::size_t n_max, std::size_t trials, std::uint64_t seed, std::size_t exhaustive_max = 2)
        -> EquivalenceReport;
}
