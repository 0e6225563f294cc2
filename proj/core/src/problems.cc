#include <descomp/problems.hh>
#include <descomp/random.hh>

#include <algorithm>
#include <deque>

using std::size_t;
using std::vector;

namespace descomp
{
    auto cnf_vocabulary() -> const Vocabulary &
    {
        static const Vocabulary vocab({{"P1", 2}, {"P2", 2}, {"P3", 2}, {"N1", 2}, {"N2", 2}, {"N3", 2}});
        return vocab;
    }

    auto altgraph_vocabulary() -> const Vocabulary &
    {
        static const Vocabulary vocab({{"E", 2}, {"U", 1}});
        return vocab;
    }

    auto string_vocabulary() -> const Vocabulary &
    {
        static const Vocabulary vocab({{"S", 1}});
        return vocab;
    }

    namespace
    {
        auto require_vocabulary(const Structure &s, const Vocabulary &v) -> void
        {
            if (s.vocabulary() != v)
                throw StructureError("expected vocabulary '" + v.to_string() + "', got '" +
                    s.vocabulary().to_string() + "'");
        }

        // Relation index of position j (0-based) and sign in cnf_vocabulary().
        auto cnf_relation(unsigned j, bool positive) -> size_t { return positive ? j : 3 + j; }

        auto successors(const Structure &graph) -> vector<vector<Element>>
        {
            auto n = graph.size();
            vector<vector<Element>> out(n);
            auto &table = graph.table(0);
            for (auto r = table.find_first(); r != RelationTable::npos; r = table.find_next(r))
                out[r / n].push_back(static_cast<Element>(r % n));
            return out;
        }
    }

    auto clause_literals(const Structure &cnf, Element clause) -> vector<Literal>
    {
        auto n = cnf.size();
        vector<Literal> out;
        for (unsigned j = 0; j < 3; ++j) {
            for (bool positive : {true, false}) {
                for (Element v = 0; v < n; ++v) {
                    if (cnf.holds(cnf_relation(j, positive), static_cast<std::uint64_t>(v) * n + clause))
                        out.push_back({v, positive});
                }
            }
        }
        return out;
    }

    auto validate_cnf(const Structure &cnf) -> void
    {
        require_vocabulary(cnf, cnf_vocabulary());
        auto n = cnf.size();
        for (Element c = 0; c < n; ++c) {
            unsigned filled = 0;
            for (unsigned j = 0; j < 3; ++j) {
                unsigned count = 0;
                for (bool positive : {true, false})
                    for (Element v = 0; v < n; ++v)
                        count += cnf.holds(cnf_relation(j, positive), static_cast<std::uint64_t>(v) * n + c);
                if (count > 1)
                    throw StructureError("clause " + std::to_string(c) + " has " + std::to_string(count) +
                        " literals in position " + std::to_string(j + 1));
                filled += count;
            }
            if (filled != 0 && filled != 3)
                throw StructureError("clause " + std::to_string(c) + " fills " + std::to_string(filled) +
                    " of its 3 positions; a clause is either empty or complete");
        }
    }

    auto is_valid_cnf(const Structure &cnf) -> bool
    {
        try {
            validate_cnf(cnf);
            return true;
        }
        catch (const StructureError &) {
            return false;
        }
    }

    auto make_cnf(size_t n, const vector<vector<Literal>> &clauses) -> Structure
    {
        if (clauses.size() > n)
            throw StructureError("more clauses than universe elements");
        StructureBuilder builder(cnf_vocabulary(), n);
        for (size_t c = 0; c < clauses.size(); ++c) {
            auto &clause = clauses[c];
            if (clause.size() > 3)
                throw StructureError("clause with more than 3 literals");
            if (clause.empty())
                continue;
            for (unsigned j = 0; j < 3; ++j) {
                auto &lit = clause[std::min<size_t>(j, clause.size() - 1)];
                if (lit.variable >= n)
                    throw StructureError("variable index out of range");
                Element tuple[2] = {lit.variable, static_cast<Element>(c)};
                builder.add(cnf_relation(j, lit.positive), tuple);
            }
        }
        return std::move(builder).build();
    }

    auto decide_reach(const Structure &graph) -> bool
    {
        require_vocabulary(graph, graph_vocabulary());
        auto n = graph.size();
        auto succ = successors(graph);
        vector<bool> seen(n, false);
        std::deque<Element> queue{0};
        seen[0] = true;
        while (! queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : succ[u])
                if (! seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
        }
        return seen[n - 1];
    }

    auto max_outdegree(const Structure &graph) -> size_t
    {
        size_t best = 0;
        for (auto &s : successors(graph))
            best = std::max(best, s.size());
        return best;
    }

    auto decide_reachd(const Structure &graph) -> bool
    {
        require_vocabulary(graph, graph_vocabulary());
        auto succ = successors(graph);
        auto n = graph.size();
        if (max_outdegree(graph) > 1)
            return false;
        Element u = 0;
        for (size_t step = 0; step < n; ++step) {
            if (u == n - 1)
                return true;
            if (succ[u].empty())
                return false;
            u = succ[u][0];
        }
        return u == n - 1;
    }

    auto decide_reacha(const Structure &altgraph) -> bool
    {
        require_vocabulary(altgraph, altgraph_vocabulary());
        auto n = altgraph.size();
        auto succ = successors(altgraph);
        vector<bool> reach(n, false);
        reach[n - 1] = true;
        for (bool changed = true; changed;) {
            changed = false;
            for (Element v = 0; v < n; ++v) {
                if (reach[v])
                    continue;
                bool universal = altgraph.holds(1, v);
                bool in;
                if (universal)
                    in = ! succ[v].empty() && std::all_of(succ[v].begin(), succ[v].end(), [&](Element w) { return reach[w]; });
                else
                    in = std::any_of(succ[v].begin(), succ[v].end(), [&](Element w) { return reach[w]; });
                if (in) {
                    reach[v] = true;
                    changed = true;
                }
            }
        }
        return reach[0];
    }

    auto decide_3sat(const Structure &cnf) -> bool
    {
        validate_cnf(cnf);
        auto n = cnf.size();
        if (n >= 63)
            throw Error("decide_3sat: too many variables for enumeration");
        vector<vector<Literal>> clauses;
        for (Element c = 0; c < n; ++c) {
            auto lits = clause_literals(cnf, c);
            if (! lits.empty())
                clauses.push_back(std::move(lits));
        }
        for (std::uint64_t assignment = 0; assignment < (std::uint64_t{1} << n); ++assignment) {
            bool all = std::all_of(clauses.begin(), clauses.end(), [&](const vector<Literal> &clause) {
                return std::any_of(clause.begin(), clause.end(), [&](const Literal &l) {
                    return (((assignment >> l.variable) & 1) != 0) == l.positive;
                });
            });
            if (all)
                return true;
        }
        return false;
    }

    namespace
    {
        // DSATUR-ordered backtracking over the non-isolated vertices.
        class Colourer
        {
        public:
            explicit Colourer(vector<vector<Element>> adjacency) : _adj(std::move(adjacency)), _colour(_adj.size(), -1)
            {
                for (Element v = 0; v < _adj.size(); ++v)
                    if (! _adj[v].empty())
                        _active.push_back(v);
            }

            auto solve() -> bool { return extend(0); }

        private:
            vector<vector<Element>> _adj;
            vector<int> _colour;
            vector<Element> _active;

            auto extend(size_t coloured) -> bool
            {
                if (coloured == _active.size())
                    return true;
                Element pick = 0;
                int best_saturation = -1;
                size_t best_degree = 0;
                for (auto v : _active) {
                    if (_colour[v] >= 0)
                        continue;
                    unsigned used = 0;
                    for (auto w : _adj[v])
                        if (_colour[w] >= 0)
                            used |= 1u << _colour[w];
                    int saturation = __builtin_popcount(used);
                    if (saturation > best_saturation || (saturation == best_saturation && _adj[v].size() > best_degree)) {
                        pick = v;
                        best_saturation = saturation;
                        best_degree = _adj[v].size();
                    }
                }
                if (best_saturation == 3)
                    return false;
                for (int c = 0; c < 3; ++c) {
                    bool free = std::none_of(_adj[pick].begin(), _adj[pick].end(), [&](Element w) { return _colour[w] == c; });
                    if (! free)
                        continue;
                    _colour[pick] = c;
                    if (extend(coloured + 1))
                        return true;
                }
                _colour[pick] = -1;
                return false;
            }
        };
    }

    auto decide_3col(const Structure &graph) -> bool
    {
        require_vocabulary(graph, graph_vocabulary());
        auto n = graph.size();
        vector<vector<Element>> adj(n);
        auto &table = graph.table(0);
        for (auto r = table.find_first(); r != RelationTable::npos; r = table.find_next(r)) {
            auto u = static_cast<Element>(r / n);
            auto v = static_cast<Element>(r % n);
            if (u == v)
                return false;
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto &a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        return Colourer(std::move(adj)).solve();
    }

    auto decide_maj(const BitString &bits) -> bool
    {
        size_t ones = static_cast<size_t>(std::count(bits.bits().begin(), bits.bits().end(), true));
        return 2 * ones > bits.size();
    }

    auto decide_maj(const Structure &string) -> bool
    {
        require_vocabulary(string, string_vocabulary());
        return 2 * string.table(0).count() > string.size();
    }

    auto path_graph(size_t n) -> Structure
    {
        StructureBuilder b(graph_vocabulary(), n);
        for (Element i = 0; i + 1 < n; ++i)
            b.add("E", {i, i + 1});
        return std::move(b).build();
    }

    auto cycle_graph(size_t n) -> Structure
    {
        StructureBuilder b(graph_vocabulary(), n);
        for (Element i = 0; i < n; ++i)
            b.add("E", {i, static_cast<Element>((i + 1) % n)});
        return std::move(b).build();
    }

    auto complete_graph(size_t n) -> Structure
    {
        StructureBuilder b(graph_vocabulary(), n);
        for (Element i = 0; i < n; ++i)
            for (Element j = 0; j < n; ++j)
                if (i != j)
                    b.add("E", {i, j});
        return std::move(b).build();
    }

    auto gnp_graph(size_t n, double p, std::uint64_t seed) -> Structure
    {
        if (! (p >= 0.0 && p <= 1.0))
            throw Error("gnp_graph: p must lie in [0,1]");
        Rng rng(seed);
        StructureBuilder b(graph_vocabulary(), n);
        for (Element i = 0; i < n; ++i)
            for (Element j = 0; j < n; ++j)
                if (i != j && rng.chance(p))
                    b.add("E", {i, j});
        return std::move(b).build();
    }

    auto graph_from_mask(size_t n, std::uint64_t mask) -> Structure
    {
        if (n * n > 64)
            throw Error("graph_from_mask: at most 8 vertices");
        StructureBuilder b(graph_vocabulary(), n);
        for (std::uint64_t r = 0; r < n * n; ++r)
            if ((mask >> r) & 1)
                b.set_rank(0, r);
        return std::move(b).build();
    }

    auto random_cnf(size_t n, std::uint64_t seed) -> Structure
    {
        Rng rng(seed);
        vector<vector<Literal>> clauses(n);
        for (auto &clause : clauses) {
            // roughly one clause in ten is left unused; the rest have 1 to 3 literals
            if (rng.below(10) == 0)
                continue;
            auto length = 1 + rng.below(3);
            for (std::uint64_t j = 0; j < length; ++j)
                clause.push_back({static_cast<Element>(rng.below(n)), rng.below(2) == 0});
        }
        return make_cnf(n, clauses);
    }

    auto random_altgraph(size_t n, double p, double q, std::uint64_t seed) -> Structure
    {
        if (! (p >= 0.0 && p <= 1.0) || ! (q >= 0.0 && q <= 1.0))
            throw Error("random_altgraph: probabilities must lie in [0,1]");
        Rng rng(seed);
        StructureBuilder b(altgraph_vocabulary(), n);
        for (Element i = 0; i < n; ++i)
            for (Element j = 0; j < n; ++j)
                if (i != j && rng.chance(p))
                    b.add("E", {i, j});
        for (Element i = 0; i < n; ++i)
            if (rng.chance(q))
                b.add("U", {i});
        return std::move(b).build();
    }

    auto reach_formula() -> Formula
    {
        return tc({"x"}, {"y"}, atom("E", {var("x"), var("y")}), {Term::min()}, {Term::max()});
    }

    auto reachd_formula() -> Formula
    {
        return dtc({"x"}, {"y"}, atom("E", {var("x"), var("y")}), {Term::min()}, {Term::max()});
    }

    auto three_color_sentence() -> Formula
    {
        auto x = var("x");
        auto y = var("y");
        auto both = [&](const char *colour) { return lnot(land(atom(colour, {x}), atom(colour, {y}))); };
        auto coloured = lor(lor(atom("R", {x}), atom("Y", {x})), atom("B", {x}));
        auto proper = implies(atom("E", {x, y}), land(land(both("R"), both("Y")), both("B")));
        auto body = forall(vector<std::string>{"x", "y"}, land(coloured, proper));
        return exists_rel("R", 1, exists_rel("Y", 1, exists_rel("B", 1, body)));
    }

    auto for_each_cnf(size_t n, const std::function<void(const Structure &)> &visit) -> void
    {
        auto literals = 2 * n;
        auto per_clause = literals * literals * literals + 1;
        auto total = checked_power(per_clause, static_cast<unsigned>(n));
        vector<vector<Literal>> clauses(n);
        for (std::uint64_t code = 0; code < total; ++code) {
            auto rest = code;
            for (size_t c = 0; c < n; ++c) {
                auto choice = rest % per_clause;
                rest /= per_clause;
                clauses[c].clear();
                if (choice == 0)
                    continue;
                --choice;
                for (int j = 0; j < 3; ++j) {
                    auto l = choice % literals;
                    choice /= literals;
                    clauses[c].push_back({static_cast<Element>(l / 2), l % 2 == 0});
                }
            }
            visit(make_cnf(n, clauses));
        }
    }
}
