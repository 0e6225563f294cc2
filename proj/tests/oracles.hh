#pragma once

// Reference implementations for the tests. None of them calls into the library beyond
// reading structures and walking formula trees.

#include <descomp/logic.hh>
#include <descomp/random.hh>
#include <descomp/structures.hh>

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle
{
    using descomp::Element;
    using descomp::Formula;
    using descomp::FormulaKind;
    using descomp::Structure;
    using descomp::Term;
    using descomp::Tuple;

    using Matrix = std::vector<std::vector<bool>>;

    inline auto adjacency(const Structure &g) -> Matrix
    {
        auto n = g.size();
        Matrix m(n, std::vector<bool>(n, false));
        for (auto &t : g.tuples("E"))
            m[t[0]][t[1]] = true;
        return m;
    }

    /// Distances from vertex 0, -1 when unreachable.
    inline auto bfs(const Structure &g) -> std::vector<int>
    {
        auto adj = adjacency(g);
        auto n = g.size();
        std::vector<int> dist(n, -1);
        std::deque<std::size_t> queue{0};
        dist[0] = 0;
        while (! queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (std::size_t v = 0; v < n; ++v)
                if (adj[u][v] && dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        return dist;
    }

    inline auto reachable_max(const Structure &g) -> bool { return bfs(g)[g.size() - 1] >= 0; }

    /// Walk from 0 through vertices of out-degree exactly one.
    inline auto deterministic_reach(const Structure &g) -> bool
    {
        auto adj = adjacency(g);
        auto n = g.size();
        std::size_t u = 0;
        for (std::size_t step = 0; step <= n; ++step) {
            if (u == n - 1)
                return true;
            std::size_t out = 0, next = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (adj[u][v]) {
                    ++out;
                    next = v;
                }
            if (out != 1)
                return false;
            u = next;
        }
        return false;
    }

    inline auto max_outdegree(const Structure &g) -> std::size_t
    {
        std::size_t best = 0;
        for (auto &row : adjacency(g)) {
            std::size_t d = 0;
            for (bool b : row)
                d += b;
            best = std::max(best, d);
        }
        return best;
    }

    /// Every one of the 3^n colourings; use for n <= 8.
    inline auto three_colourable_brute(const Structure &g) -> bool
    {
        auto adj = adjacency(g);
        auto n = g.size();
        std::vector<int> colour(n, 0);
        for (;;) {
            bool proper = true;
            for (std::size_t u = 0; u < n && proper; ++u)
                for (std::size_t v = 0; v < n && proper; ++v)
                    if ((adj[u][v] || adj[v][u]) && colour[u] == colour[v])
                        proper = false;
            if (proper)
                return true;
            std::size_t i = 0;
            while (i < n && colour[i] == 2)
                colour[i++] = 0;
            if (i == n)
                return false;
            ++colour[i];
        }
    }

    /// Plain backtracking over non-isolated vertices in index order.
    inline auto three_colourable_backtrack(const Structure &g) -> bool
    {
        auto n = g.size();
        std::vector<std::vector<std::size_t>> nbr(n);
        for (auto &t : g.tuples("E")) {
            if (t[0] == t[1])
                return false;
            nbr[t[0]].push_back(t[1]);
            nbr[t[1]].push_back(t[0]);
        }
        std::vector<std::size_t> order;
        for (std::size_t v = 0; v < n; ++v)
            if (! nbr[v].empty())
                order.push_back(v);
        std::vector<int> colour(n, -1);
        auto place = [&](auto &&self, std::size_t i) -> bool {
            if (i == order.size())
                return true;
            auto v = order[i];
            for (int c = 0; c < 3; ++c) {
                bool clash = false;
                for (auto w : nbr[v])
                    clash = clash || colour[w] == c;
                if (clash)
                    continue;
                colour[v] = c;
                if (self(self, i + 1))
                    return true;
            }
            colour[v] = -1;
            return false;
        };
        return place(place, 0);
    }

    struct Occurrence
    {
        Element variable;
        bool positive;
    };

    /// Clause c reads every P_j(v,c) / N_j(v,c) directly. Empty clauses are true.
    inline auto clauses(const Structure &cnf) -> std::vector<std::vector<Occurrence>>
    {
        auto n = cnf.size();
        std::vector<std::vector<Occurrence>> out(n);
        for (int j = 1; j <= 3; ++j) {
            for (bool positive : {true, false}) {
                auto name = std::string(positive ? "P" : "N") + std::to_string(j);
                for (auto &t : cnf.tuples(name))
                    out[t[1]].push_back({t[0], positive});
            }
        }
        return out;
    }

    inline auto satisfiable(const Structure &cnf) -> bool
    {
        auto cs = clauses(cnf);
        auto n = cnf.size();
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
            bool all = true;
            for (auto &c : cs) {
                if (c.empty())
                    continue;
                bool some = false;
                for (auto &o : c)
                    some = some || (((a >> o.variable) & 1) == (o.positive ? 1u : 0u));
                all = all && some;
            }
            if (all)
                return true;
        }
        return false;
    }

    /// Graph on n vertices whose edges are the set bits of `mask`, row-major.
    inline auto graph(std::size_t n, std::uint64_t mask) -> Structure
    {
        std::map<std::string, std::vector<Tuple>> tables{{"E", {}}};
        for (std::size_t i = 0; i < n * n; ++i)
            if ((mask >> i) & 1)
                tables["E"].push_back({static_cast<Element>(i / n), static_cast<Element>(i % n)});
        return Structure(descomp::graph_vocabulary(), n, tables);
    }

    inline auto random_graph(std::size_t n, double p, descomp::Rng &rng) -> Structure
    {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < n * n; ++i)
            if (rng.chance(p))
                mask |= std::uint64_t{1} << i;
        return graph(n, mask);
    }

    struct NaiveError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    /// Direct recursive semantics. TC/DTC iterate a boolean matrix to its reflexive-transitive
    /// fixpoint; second-order quantifiers try every relation.
    class NaiveEvaluator
    {
    public:
        explicit NaiveEvaluator(const Structure &s) : _s(s), _n(s.size()) {}

        auto eval(const Formula &f, std::map<std::string, Element> env) -> bool
        {
            _env = std::move(env);
            return holds(f);
        }

    private:
        auto value(const Term &t) -> Element
        {
            switch (t.kind) {
            case Term::Kind::Min:
                return 0;
            case Term::Kind::Max:
                return static_cast<Element>(_n - 1);
            case Term::Kind::Numeral:
                if (t.value >= _n)
                    throw NaiveError("numeral out of range");
                return t.value;
            case Term::Kind::Variable: {
                auto it = _env.find(t.name);
                if (it == _env.end())
                    throw NaiveError("unbound " + t.name);
                return it->second;
            }
            }
            throw NaiveError("term");
        }

        auto values(const std::vector<Term> &ts, std::size_t from, std::size_t count) -> Tuple
        {
            Tuple out;
            for (std::size_t i = from; i < from + count; ++i)
                out.push_back(value(ts[i]));
            return out;
        }

        auto atom(const Formula &f) -> bool
        {
            auto args = values(f.terms(), 0, f.terms().size());
            for (auto it = _so.rbegin(); it != _so.rend(); ++it)
                if (it->first == f.name())
                    return it->second.count(args) > 0;
            for (auto &t : _s.tuples(f.name()))
                if (t == args)
                    return true;
            return false;
        }

        auto decode(std::uint64_t rank, std::size_t k) -> Tuple
        {
            Tuple t(k);
            for (std::size_t i = k; i-- > 0;) {
                t[i] = static_cast<Element>(rank % _n);
                rank /= _n;
            }
            return t;
        }

        auto with(const std::vector<std::string> &names, std::size_t from, const Tuple &t) -> void
        {
            for (std::size_t i = 0; i < t.size(); ++i)
                _env[names[from + i]] = t[i];
        }

        auto closure(const Formula &f) -> bool
        {
            auto k = f.tc_width();
            std::size_t width = 1;
            for (std::size_t i = 0; i < k; ++i)
                width *= _n;
            auto source = values(f.terms(), 0, k);
            auto target = values(f.terms(), k, k);
            auto saved = _env;
            std::vector<std::vector<bool>> step(width, std::vector<bool>(width, false));
            for (std::uint64_t u = 0; u < width; ++u) {
                for (std::uint64_t v = 0; v < width; ++v) {
                    with(f.bound(), 0, decode(u, k));
                    with(f.bound(), k, decode(v, k));
                    step[u][v] = holds(f.child());
                }
            }
            _env = saved;
            if (f.kind() == FormulaKind::DTC) {
                for (auto &row : step) {
                    std::size_t out = 0;
                    for (bool b : row)
                        out += b;
                    if (out != 1)
                        std::fill(row.begin(), row.end(), false);
                }
            }
            auto reach = step;
            for (std::uint64_t u = 0; u < width; ++u)
                reach[u][u] = true;
            for (bool changed = true; changed;) {
                changed = false;
                for (std::uint64_t u = 0; u < width; ++u)
                    for (std::uint64_t v = 0; v < width; ++v)
                        if (reach[u][v])
                            for (std::uint64_t w = 0; w < width; ++w)
                                if (step[v][w] && ! reach[u][w]) {
                                    reach[u][w] = true;
                                    changed = true;
                                }
            }
            std::uint64_t s = 0, t = 0;
            for (std::size_t i = 0; i < k; ++i) {
                s = s * _n + source[i];
                t = t * _n + target[i];
            }
            return reach[s][t];
        }

        auto exists_rel(const Formula &f) -> bool
        {
            std::size_t cells = 1;
            for (unsigned i = 0; i < f.arity(); ++i)
                cells *= _n;
            if (cells > 12)
                throw NaiveError("relation too large to enumerate");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
                std::set<Tuple> rel;
                for (std::uint64_t r = 0; r < cells; ++r)
                    if ((mask >> r) & 1)
                        rel.insert(decode(r, f.arity()));
                _so.emplace_back(f.name(), std::move(rel));
                bool ok = holds(f.child());
                _so.pop_back();
                if (ok)
                    return true;
            }
            return false;
        }

        auto quantifier(const Formula &f, bool universal) -> bool
        {
            auto saved = _env;
            bool result = universal;
            for (Element e = 0; e < _n; ++e) {
                _env[f.name()] = e;
                if (holds(f.child()) != universal) {
                    result = ! universal;
                    break;
                }
            }
            _env = saved;
            return result;
        }

        auto holds(const Formula &f) -> bool
        {
            switch (f.kind()) {
            case FormulaKind::Atom:
                return atom(f);
            case FormulaKind::Equal:
                return value(f.terms()[0]) == value(f.terms()[1]);
            case FormulaKind::Suc:
                return value(f.terms()[0]) + 1 == value(f.terms()[1]);
            case FormulaKind::LessEq:
                return value(f.terms()[0]) <= value(f.terms()[1]);
            case FormulaKind::Not:
                return ! holds(f.child());
            case FormulaKind::And: {
                bool a = holds(f.child(0));
                bool b = holds(f.child(1));
                return a && b;
            }
            case FormulaKind::Or: {
                bool a = holds(f.child(0));
                bool b = holds(f.child(1));
                return a || b;
            }
            case FormulaKind::Implies: {
                bool a = holds(f.child(0));
                bool b = holds(f.child(1));
                return ! a || b;
            }
            case FormulaKind::Forall:
                return quantifier(f, true);
            case FormulaKind::Exists:
                return quantifier(f, false);
            case FormulaKind::TC:
            case FormulaKind::DTC:
                return closure(f);
            case FormulaKind::ExistsRel:
                return exists_rel(f);
            }
            throw NaiveError("formula kind");
        }

        const Structure &_s;
        std::size_t _n;
        std::map<std::string, Element> _env;
        std::vector<std::pair<std::string, std::set<Tuple>>> _so;
    };
}
