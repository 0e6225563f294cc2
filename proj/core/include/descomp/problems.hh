#pragma once

#include <descomp/logic.hh>
#include <descomp/structures.hh>

#include <cstdint>
#include <functional>
#include <vector>

namespace descomp
{
    /// Positional CNF vocabulary: Pj(v,c) / Nj(v,c) says the j-th literal of clause c is x_v / not x_v.
    auto cnf_vocabulary() -> const Vocabulary &;

    /// E/2 plus U/1 marking the universal vertices.
    auto altgraph_vocabulary() -> const Vocabulary &;

    /// S/1, where S(i) is bit i of a binary string.
    auto string_vocabulary() -> const Vocabulary &;

    struct Literal
    {
        Element variable = 0;
        bool positive = true;

        auto operator==(const Literal &) const -> bool = default;
    };

    /// Throws StructureError unless every clause is empty or has exactly one literal in each position.
    auto validate_cnf(const Structure &cnf) -> void;
    auto is_valid_cnf(const Structure &cnf) -> bool;

    /// The three positional literals of clause c, or an empty list for an unused clause.
    auto clause_literals(const Structure &cnf, Element clause) -> std::vector<Literal>;

    /// Builds a CNF structure of size n from clause lists. Clauses with one or two literals are padded
    /// by repeating the last literal; clauses beyond the given list are empty.
    auto make_cnf(std::size_t n, const std::vector<std::vector<Literal>> &clauses) -> Structure;

    auto decide_reach(const Structure &graph) -> bool;
    auto decide_reachd(const Structure &graph) -> bool;
    auto decide_reacha(const Structure &altgraph) -> bool;
    auto decide_3sat(const Structure &cnf) -> bool;
    auto decide_3col(const Structure &graph) -> bool;
    auto decide_maj(const BitString &bits) -> bool;
    auto decide_maj(const Structure &string) -> bool;

    auto max_outdegree(const Structure &graph) -> std::size_t;

    auto path_graph(std::size_t n) -> Structure;
    auto cycle_graph(std::size_t n) -> Structure;
    auto complete_graph(std::size_t n) -> Structure;
    /// Directed G(n,p) without self-loops.
    auto gnp_graph(std::size_t n, double p, std::uint64_t seed) -> Structure;
    /// Graph whose edge set is given by the bits of `mask` in adjacency-matrix order.
    auto graph_from_mask(std::size_t n, std::uint64_t mask) -> Structure;
    auto random_cnf(std::size_t n, std::uint64_t seed) -> Structure;
    /// G(n,p) edges, each vertex universal with probability q.
    auto random_altgraph(std::size_t n, double p, double q, std::uint64_t seed) -> Structure;

    /// TC[(x;y). E(x,y)](min;max)
    auto reach_formula() -> Formula;
    /// DTC[(x;y). E(x,y)](min;max)
    auto reachd_formula() -> Formula;
    /// Existential second-order sentence over R, Y, B expressing 3-colourability.
    auto three_color_sentence() -> Formula;

    /// Calls `visit` on every valid CNF structure of size n: each clause is empty or one of (2n)^3
    /// positional literal triples, so there are ((2n)^3 + 1)^n of them.
    auto for_each_cnf(std::size_t n, const std::function<void(const Structure &)> &visit) -> void;
}
