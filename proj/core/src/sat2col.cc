#include <descomp/sat2col.hh>

#include <descomp/problems.hh>

#include <algorithm>

using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace descomp
{
    auto GadgetLayout::vertex_class(Element v) const -> VertexClass
    {
        if (v < 3)
            return static_cast<VertexClass>(v);
        if (v < 3 + 2 * n)
            return (v - 3) % 2 == 0 ? VertexClass::Positive : VertexClass::Negative;
        return static_cast<VertexClass>(static_cast<unsigned>(VertexClass::InputA) + (v - 3 - 2 * n) % 6);
    }

    auto GadgetLayout::vertex_index(Element v) const -> Element
    {
        if (v < 3)
            return 0;
        if (v < 3 + 2 * n)
            return static_cast<Element>((v - 3) / 2);
        return static_cast<Element>((v - 3 - 2 * n) / 6);
    }

    namespace
    {
        constexpr unsigned role_a = 0, role_b = 1, role_c = 2, role_d = 3, role_e = 4, role_f = 5;

        auto add_edge(StructureBuilder &b, Element u, Element v) -> void
        {
            b.add("E", {u, v});
            b.add("E", {v, u});
        }

        // Two chained OR gates: triangle (a,b,d), edge d-e, triangle (e,c,f); f sees F and R.
        auto add_gadget(StructureBuilder &b, const GadgetLayout &layout, Element clause) -> void
        {
            auto g = [&](unsigned role) { return layout.gadget(clause, role); };
            add_edge(b, g(role_a), g(role_b));
            add_edge(b, g(role_a), g(role_d));
            add_edge(b, g(role_b), g(role_d));
            add_edge(b, g(role_d), g(role_e));
            add_edge(b, g(role_e), g(role_c));
            add_edge(b, g(role_e), g(role_f));
            add_edge(b, g(role_c), g(role_f));
            add_edge(b, g(role_f), layout.falsity());
            add_edge(b, g(role_f), layout.red());
        }
    }

    auto build_gadget_graph(const Structure &cnf, EmptyClauseWiring wiring) -> Structure
    {
        validate_cnf(cnf);
        auto n = cnf.size();
        GadgetLayout layout{n};
        StructureBuilder b(graph_vocabulary(), layout.vertex_count());
        add_edge(b, layout.truth(), layout.falsity());
        add_edge(b, layout.falsity(), layout.red());
        add_edge(b, layout.truth(), layout.red());
        for (Element v = 0; v < n; ++v) {
            add_edge(b, layout.literal(v, true), layout.literal(v, false));
            add_edge(b, layout.literal(v, true), layout.red());
            add_edge(b, layout.literal(v, false), layout.red());
        }
        for (Element c = 0; c < n; ++c) {
            add_gadget(b, layout, c);
            auto literals = clause_literals(cnf, c);
            for (unsigned j = 0; j < 3; ++j) {
                if (! literals.empty())
                    add_edge(b, layout.literal(literals[j].variable, literals[j].positive), layout.gadget(c, j));
                else if (wiring == EmptyClauseWiring::ToTrue)
                    add_edge(b, layout.truth(), layout.gadget(c, j));
            }
        }
        return std::move(b).build();
    }

    auto OrPropertyReport::passed() const -> bool
    {
        return rows.size() == 8 && std::all_of(rows.begin(), rows.end(), [](const OrPropertyRow &r) {
            return r.extendable == (r.stubs[0] || r.stubs[1] || r.stubs[2]);
        });
    }

    auto gadget_or_property_check() -> OrPropertyReport
    {
        // vertices: T F R, stubs s1 s2 s3, gadget a b c d e f
        constexpr Element T = 0, F = 1, R = 2;
        constexpr Element stub[3] = {3, 4, 5};
        constexpr Element a = 6, b = 7, c = 8, d = 9, e = 10, f = 11;
        const std::vector<std::pair<Element, Element>> edges = {
            {T, F}, {F, R}, {T, R}, {a, b}, {a, d}, {b, d}, {d, e}, {e, c}, {e, f}, {c, f}, {f, F}, {f, R},
            {stub[0], a}, {stub[1], b}, {stub[2], c}};

        OrPropertyReport report;
        for (unsigned mask = 0; mask < 8; ++mask) {
            OrPropertyRow row;
            // colours: 0 = true, 1 = false, 2 = red
            std::array<int, 12> colour{};
            colour[T] = 0;
            colour[F] = 1;
            colour[R] = 2;
            for (int j = 0; j < 3; ++j) {
                row.stubs[static_cast<size_t>(j)] = (mask >> j) & 1;
                colour[stub[j]] = row.stubs[static_cast<size_t>(j)] ? 0 : 1;
            }
            colour[f] = 0;
            for (int code = 0; code < 243 && ! row.extendable; ++code) {
                int rest = code;
                for (Element v : {a, b, c, d, e}) {
                    colour[v] = rest % 3;
                    rest /= 3;
                }
                row.extendable = std::all_of(edges.begin(), edges.end(), [&](auto &edge) {
                    return colour[edge.first] != colour[edge.second];
                });
            }
            report.rows.push_back(row);
        }
        return report;
    }

    namespace
    {
        constexpr unsigned arity = 5;

        // Class code test on four coordinates: bit 0 is "= min", bit 1 is "= suc(min)".
        auto class_is(VertexClass c, const vector<Term> &coords) -> Formula
        {
            auto code = static_cast<unsigned>(c);
            vector<Formula> parts;
            for (unsigned bit = 0; bit < 4; ++bit) {
                bool one = (code >> (3 - bit)) & 1;
                parts.push_back(one ? suc(Term::min(), coords[bit]) : eq(coords[bit], Term::min()));
            }
            return conjunction(parts);
        }

        auto build_interpretation() -> Interpretation
        {
            vector<Term> x, y;
            for (unsigned i = 1; i <= arity; ++i) {
                x.push_back(var("x" + std::to_string(i)));
                y.push_back(var("x" + std::to_string(arity + i)));
            }
            auto xi = x[4];
            auto yi = y[4];
            auto at_min = [](const Term &t) { return eq(t, Term::min()); };

            using C = VertexClass;
            auto is_palette = [](C c) { return c == C::True || c == C::False || c == C::Red; };
            // Both directions of an undirected edge between classes p and q. Palette vertices live at index min.
            enum class Index
            {
                Same,
                Any
            };
            vector<Formula> constant_cases;
            auto edge = [&](C p, C q, Index how) {
                for (int direction = 0; direction < 2; ++direction) {
                    auto &s = direction == 0 ? x : y;
                    auto &t = direction == 0 ? y : x;
                    vector<Formula> parts{class_is(p, s), class_is(q, t)};
                    if (is_palette(p))
                        parts.push_back(at_min(s[4]));
                    if (is_palette(q))
                        parts.push_back(at_min(t[4]));
                    if (how == Index::Same)
                        parts.push_back(eq(s[4], t[4]));
                    constant_cases.push_back(conjunction(parts));
                }
            };

            edge(C::True, C::False, Index::Any);
            edge(C::False, C::Red, Index::Any);
            edge(C::True, C::Red, Index::Any);
            edge(C::Positive, C::Negative, Index::Same);
            edge(C::Positive, C::Red, Index::Any);
            edge(C::Negative, C::Red, Index::Any);
            edge(C::InputA, C::InputB, Index::Same);
            edge(C::InputA, C::GateD, Index::Same);
            edge(C::InputB, C::GateD, Index::Same);
            edge(C::GateD, C::GateE, Index::Same);
            edge(C::GateE, C::InputC, Index::Same);
            edge(C::GateE, C::Output, Index::Same);
            edge(C::InputC, C::Output, Index::Same);
            edge(C::Output, C::False, Index::Any);
            edge(C::Output, C::Red, Index::Any);

            // Literal wiring: the only input-dependent edges, each copying one bit.
            vector<Formula> cases = constant_cases;
            const std::pair<C, const char *> wiring[] = {
                {C::InputA, "1"}, {C::InputB, "2"}, {C::InputC, "3"}};
            for (auto [input, position] : wiring) {
                for (bool positive : {true, false}) {
                    auto literal_class = positive ? C::Positive : C::Negative;
                    auto relation = string(positive ? "P" : "N") + position;
                    cases.push_back(land(land(class_is(literal_class, x), class_is(input, y)), atom(relation, {xi, yi})));
                    cases.push_back(land(land(class_is(input, x), class_is(literal_class, y)), atom(relation, {yi, xi})));
                }
            }
            return Interpretation{arity, cnf_vocabulary(), graph_vocabulary(), {disjunction(cases)}};
        }

    }

    auto sat2col_interpretation() -> const Interpretation &
    {
        static const Interpretation interp = build_interpretation();
        return interp;
    }

    auto sat2col_vertex(VertexClass c, Element index, size_t n) -> uint64_t
    {
        if (n < 2)
            throw Error("sat2col_vertex: the class coordinates need n >= 2");
        auto code = static_cast<unsigned>(c);
        Tuple t;
        for (unsigned bit = 0; bit < 4; ++bit)
            t.push_back((code >> (3 - bit)) & 1);
        t.push_back(index);
        return rank_lex(t, n);
    }

    auto embed_gadget_graph(const Structure &compact, size_t n) -> Structure
    {
        GadgetLayout layout{n};
        if (compact.size() != layout.vertex_count())
            throw Error("embed_gadget_graph: graph size does not match the layout for n = " + std::to_string(n));
        auto size = checked_power(n, arity);
        StructureBuilder b(graph_vocabulary(), size);
        auto place = [&](Element v) { return sat2col_vertex(layout.vertex_class(v), layout.vertex_index(v), n); };
        for (auto &e : compact.tuples(0))
            b.set_rank(0, place(e[0]) * size + place(e[1]));
        return std::move(b).build();
    }

    auto check_equivalence(const Structure &cnf) -> EquivalenceCase
    {
        EquivalenceCase c;
        c.n = cnf.size();
        c.satisfiable = decide_3sat(cnf);
        c.gadget_colourable = decide_3col(build_gadget_graph(cnf));
        c.interpretation_colourable = decide_3col(apply(sat2col_interpretation(), cnf));
        if (! c.agrees())
            c.structure = format_structure(cnf);
        return c;
    }

    auto verify_equivalence(size_t n_max, size_t trials, uint64_t seed, size_t exhaustive_max) -> EquivalenceReport
    {
        EquivalenceReport report;
        auto record = [&](const Structure &cnf) {
            auto c = check_equivalence(cnf);
            ++report.cases;
            report.satisfiable += c.satisfiable;
            if (! c.agrees())
                report.counterexamples.push_back(std::move(c));
        };
        for (size_t n = 1; n <= std::min(n_max, exhaustive_max); ++n)
            for_each_cnf(n, record);
        for (size_t n = exhaustive_max + 1; n <= n_max; ++n)
            for (size_t t = 0; t < trials; ++t)
                record(random_cnf(n, seed + 1000003 * n + t));
        return report;
    }
}
