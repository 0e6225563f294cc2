#include <descomp/suites.hh>

#include <descomp/complementation.hh>
#include <descomp/evaluator.hh>
#include <descomp/interpretations.hh>
#include <descomp/problems.hh>
#include <descomp/sat2col.hh>

#include <algorithm>
#include <functional>
#include <map>

using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace descomp
{
    auto SuiteReport::passed() const -> bool
    {
        return std::all_of(properties.begin(), properties.end(), [](const PropertyResult &r) { return r.passed; });
    }

    auto format_result(const PropertyResult &r) -> string
    {
        return string(r.passed ? "PASS " : "FAIL ") + r.id + " " + std::to_string(r.cases) + " " + std::to_string(r.seed);
    }

    auto format_report(const SuiteReport &report) -> string
    {
        string out;
        for (auto &r : report.properties)
            out += format_result(r) + "\n";
        for (auto &note : report.notes)
            out += "# " + note + "\n";
        return out;
    }

    namespace
    {
        auto one_line(string text) -> string
        {
            while (! text.empty() && text.back() == '\n')
                text.pop_back();
            std::replace(text.begin(), text.end(), '\n', ';');
            return text;
        }

        class Property
        {
        public:
            Property(string id, uint64_t seed) { _result = {std::move(id), true, 0, seed, {}}; }

            template <typename Describe>
            auto record(bool ok, Describe &&describe) -> void
            {
                ++_result.cases;
                if (! ok && _result.passed) {
                    _result.passed = false;
                    _result.detail = one_line(describe());
                }
            }

            auto finish(SuiteReport &report) -> void
            {
                if (! _result.passed)
                    report.notes.push_back(_result.id + " counterexample: " + _result.detail);
                report.properties.push_back(_result);
            }

        private:
            PropertyResult _result;
        };

        // Every graph on 1..n_max vertices, then `trials` G(n,p) graphs with n drawn from [lo, hi].
        auto for_each_graph(const SuiteConfig &config, Rng &rng, size_t lo, size_t hi,
            const std::function<void(const Structure &)> &visit) -> void
        {
            for (size_t n = 1; n <= config.n_max; ++n)
                for (uint64_t mask = 0; mask < (uint64_t{1} << (n * n)); ++mask)
                    visit(graph_from_mask(n, mask));
            for (size_t t = 0; t < config.trials; ++t) {
                auto n = lo + rng.below(hi - lo + 1);
                auto p = 0.1 + 0.4 * rng.unit();
                visit(gnp_graph(n, p, rng.next()));
            }
        }

        auto env_of(std::initializer_list<std::pair<const string, Element>> values) -> Environment
        {
            Environment env;
            env.elements = values;
            return env;
        }

        auto describe_graph(const Structure &g, const string &extra = {}) -> string
        {
            return format_structure(g) + extra;
        }

        auto suite_reach(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);
            Property formula("reach.formula", config.seed);
            auto f = reach_formula();
            for_each_graph(config, rng, 1, 8, [&](const Structure &g) {
                formula.record(decide_reach(g) == eval(g, f), [&] { return describe_graph(g); });
            });
            formula.finish(report);
            return report;
        }

        // Deterministic walk from min that only leaves vertices with exactly one successor.
        auto deterministic_walk_reaches_max(const Structure &g) -> bool
        {
            auto n = g.size();
            Element u = 0;
            for (size_t step = 0; step <= n; ++step) {
                if (u == n - 1)
                    return true;
                vector<Element> out;
                for (Element v = 0; v < n; ++v)
                    if (g.holds(0, static_cast<uint64_t>(u) * n + v))
                        out.push_back(v);
                if (out.size() != 1)
                    return false;
                u = out[0];
            }
            return false;
        }

        auto suite_dtc(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);
            Property decider("dtc.reachd", config.seed);
            Property semantics("dtc.semantics", config.seed);
            auto f = reachd_formula();
            for_each_graph(config, rng, 1, 8, [&](const Structure &g) {
                auto holds = eval(g, f);
                decider.record(decide_reachd(g) == (holds && max_outdegree(g) <= 1), [&] { return describe_graph(g); });
                semantics.record(holds == deterministic_walk_reaches_max(g), [&] { return describe_graph(g); });
            });
            decider.finish(report);
            semantics.finish(report);
            return report;
        }

        auto with_universal(const Structure &g, uint64_t universal) -> Structure
        {
            StructureBuilder b(altgraph_vocabulary(), g.size());
            b.table(0) = g.table(0);
            for (Element v = 0; v < g.size(); ++v)
                if ((universal >> v) & 1)
                    b.add("U", {v});
            return std::move(b).build();
        }

        // Game value by rounds: win_0 = {max}; win_{k+1} adds existential vertices with a winning
        // successor and universal vertices with successors, all winning.
        auto reacha_by_rounds(const Structure &g) -> bool
        {
            auto n = g.size();
            vector<char> win(n, 0);
            win[n - 1] = 1;
            for (size_t round = 0; round < n; ++round) {
                auto next = win;
                for (Element v = 0; v < n; ++v) {
                    size_t successors = 0, winning = 0;
                    for (Element w = 0; w < n; ++w) {
                        if (g.holds(0, static_cast<uint64_t>(v) * n + w)) {
                            ++successors;
                            winning += win[w];
                        }
                    }
                    bool universal = g.holds(1, v);
                    if (universal ? successors > 0 && winning == successors : winning > 0)
                        next[v] = 1;
                }
                win.swap(next);
            }
            return win[0] != 0;
        }

        auto suite_reacha(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);
            Property empty("reacha.empty-universal", config.seed);
            for_each_graph(config, rng, 1, 8, [&](const Structure &g) {
                empty.record(decide_reacha(with_universal(g, 0)) == decide_reach(g), [&] { return describe_graph(g); });
            });
            empty.finish(report);

            Property rounds("reacha.rounds", config.seed);
            for (size_t n = 1; n <= std::min<size_t>(config.n_max, 3); ++n) {
                for (uint64_t mask = 0; mask < (uint64_t{1} << (n * n)); ++mask) {
                    auto g = graph_from_mask(n, mask);
                    for (uint64_t u = 0; u < (uint64_t{1} << n); ++u) {
                        auto a = with_universal(g, u);
                        rounds.record(decide_reacha(a) == reacha_by_rounds(a), [&] { return describe_graph(a); });
                    }
                }
            }
            for (size_t t = 0; t < config.trials; ++t) {
                auto a = random_altgraph(1 + rng.below(8), 0.1 + 0.4 * rng.unit(), rng.unit(), rng.next());
                rounds.record(decide_reacha(a) == reacha_by_rounds(a), [&] { return describe_graph(a); });
            }
            rounds.finish(report);
            return report;
        }

        auto suite_fagin(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);
            Property sentence("fagin.3col", config.seed);
            auto f = three_color_sentence();
            for_each_graph(config, rng, config.n_max + 1, config.n_max + 2, [&](const Structure &g) {
                sentence.record(eval(g, f) == decide_3col(g), [&] { return describe_graph(g); });
            });
            sentence.finish(report);
            return report;
        }

        auto suite_complement(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);
            auto nonreach_f = build_nonreach();
            auto dist_f = build_dist();
            auto ndist_f = build_ndist();
            auto delta_f = build_delta();

            Property positive("complement.positive", config.seed);
            positive.record(is_tc_positive(nonreach_f), [] { return string("nonreach has a TC under negation"); });
            positive.finish(report);

            Property nonreach("complement.nonreach", config.seed);
            Property dist("complement.dist", config.seed);
            Property ndist("complement.ndist", config.seed);
            Property delta("complement.delta", config.seed);
            Property counting("complement.inductive-count", config.seed);
            for_each_graph(config, rng, config.n_max + 1, config.n_max + 3, [&](const Structure &g) {
                auto n = g.size();
                auto bfs = bfs_distances(g);
                auto within = [&](Element x, size_t d) { return bfs[x] >= 0 && static_cast<size_t>(bfs[x]) <= d; };
                CountSequence counts(n, 0);
                for (size_t d = 0; d < n; ++d)
                    for (Element x = 0; x < n; ++x)
                        counts[d] += within(x, d);

                Evaluator ev(g);
                for (Element x = 0; x < n; ++x) {
                    nonreach.record(ev.eval(nonreach_f, env_of({{"x", x}})) == (bfs[x] < 0),
                        [&] { return describe_graph(g, "x=" + std::to_string(x)); });
                    for (Element d = 0; d < n; ++d) {
                        auto env = env_of({{"x", x}, {"d", d}, {"m", static_cast<Element>(counts[d] - 1)}});
                        auto where = [&] { return describe_graph(g, "x=" + std::to_string(x) + " d=" + std::to_string(d)); };
                        dist.record(ev.eval(dist_f, env) == within(x, d), where);
                        ndist.record(ev.eval(ndist_f, env) == ! within(x, d), where);
                    }
                }
                for (Element d = 0; d + 1 < n; ++d) {
                    auto env = env_of({{"d", d}, {"m", static_cast<Element>(counts[d] - 1)}, {"d'", d + 1}});
                    auto next = ev.satisfying_assignments(delta_f, {"m'"}, env);
                    delta.record(next == vector<Tuple>{{static_cast<Element>(counts[d + 1] - 1)}},
                        [&] { return describe_graph(g, "d=" + std::to_string(d)); });
                }
                counting.record(inductive_count(g) == counts, [&] { return describe_graph(g); });
            });
            for (auto *p : {&nonreach, &dist, &ndist, &delta, &counting})
                p->finish(report);

            report.notes.push_back("ndist readings (the counting step tests the candidate vertex, or the target as written):");
            auto diagnostic = ndist_reading_diagnostic();
            size_t start = 0;
            while (start < diagnostic.size()) {
                auto end = diagnostic.find('\n', start);
                report.notes.push_back(diagnostic.substr(start, end - start));
                start = end == string::npos ? diagnostic.size() : end + 1;
            }
            return report;
        }

        // Clauses of one or two literals: unsatisfiable instances are common.
        auto short_clause_cnf(size_t n, Rng &rng) -> Structure
        {
            vector<vector<Literal>> clauses(n);
            for (auto &clause : clauses) {
                auto width = 1 + rng.below(2);
                for (size_t j = 0; j < width; ++j)
                    clause.push_back({static_cast<Element>(rng.below(n)), rng.chance(0.5)});
            }
            return make_cnf(n, clauses);
        }

        auto suite_sat2col(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);

            Property gadget("sat2col.or-gadget", config.seed);
            for (auto &row : gadget_or_property_check().rows)
                gadget.record(row.extendable == (row.stubs[0] || row.stubs[1] || row.stubs[2]), [&] {
                    return "stubs " + std::to_string(row.stubs[0]) + std::to_string(row.stubs[1]) +
                        std::to_string(row.stubs[2]);
                });
            gadget.finish(report);

            size_t satisfiable = 0, total = 0;
            auto check = [&](Property &p, const Structure &cnf) {
                auto c = check_equivalence(cnf);
                ++total;
                satisfiable += c.satisfiable;
                p.record(c.agrees(), [&] { return format_structure(cnf); });
            };
            Property exhaustive("sat2col.exhaustive", config.seed);
            for (size_t n = 1; n <= config.n_max; ++n)
                for_each_cnf(n, [&](const Structure &cnf) { check(exhaustive, cnf); });
            exhaustive.finish(report);
            report.notes.push_back("sat2col.exhaustive satisfiable " + std::to_string(satisfiable) + "/" + std::to_string(total));

            satisfiable = total = 0;
            Property random("sat2col.random", config.seed);
            for (size_t n = config.n_max + 1; n <= config.n_max + 3; ++n)
                for (size_t t = 0; t < config.trials; ++t)
                    check(random, t % 2 == 0 ? random_cnf(n, rng.next()) : short_clause_cnf(n, rng));
            random.finish(report);
            report.notes.push_back("sat2col.random satisfiable " + std::to_string(satisfiable) + "/" + std::to_string(total));

            auto &interp = sat2col_interpretation();
            Property qfp("sat2col.qfp", config.seed);
            qfp.record(is_qfp(interp), [] { return string("not a quantifier-free projection"); });
            qfp.finish(report);

            Property form("sat2col.projection-form", config.seed);
            auto checked = check_projection_form(interp, 8);
            form.record(checked.ok(), [&] { return checked.diagnostic ? checked.diagnostic->message : string(); });
            form.finish(report);

            Property dynamic("sat2col.dynamic", config.seed);
            auto dyn = dynamic_projection_test(interp, {2, 3, 4, 5}, 20, config.seed);
            for (auto &size : dyn.sizes)
                dynamic.record(! size.inconsistency, [&] { return "inconsistent at n=" + std::to_string(size.n); });
            dynamic.finish(report);
            return report;
        }

        auto random_structure(const Vocabulary &vocab, size_t n, Rng &rng) -> Structure
        {
            StructureBuilder b(vocab, n);
            for (size_t r = 0; r < vocab.size(); ++r) {
                auto cells = checked_power(n, vocab[r].arity);
                for (uint64_t rank = 0; rank < cells; ++rank)
                    if (rng.chance(0.3))
                        b.set_rank(r, rank);
            }
            return std::move(b).build();
        }

        auto suite_roundtrip(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);

            Property formulas("roundtrip.formula", config.seed);
            const Vocabulary *vocabularies[] = {&graph_vocabulary(), &cnf_vocabulary(), &altgraph_vocabulary()};
            for (size_t t = 0; t < config.trials; ++t) {
                auto &vocab = *vocabularies[t % 3];
                auto f = random_formula(vocab, rng, 1 + static_cast<unsigned>(rng.below(6)));
                auto text = print(f);
                bool ok = false;
                try {
                    auto back = parse_formula(text, vocab);
                    ok = back == f && print(back) == text;
                } catch (const Error &) {
                }
                formulas.record(ok, [&] { return text; });
            }
            formulas.finish(report);

            Property encoding("roundtrip.encode", config.seed);
            Property text("roundtrip.structure-text", config.seed);
            for (size_t n = 1; n <= config.n_max; ++n) {
                for (uint64_t mask = 0; mask < (uint64_t{1} << (n * n)); ++mask) {
                    auto g = graph_from_mask(n, mask);
                    encoding.record(decode(g.vocabulary(), n, encode(g)) == g, [&] { return describe_graph(g); });
                }
            }
            for (size_t t = 0; t < config.trials; ++t) {
                auto &vocab = *vocabularies[t % 3];
                auto s = random_structure(vocab, 1 + rng.below(6), rng);
                encoding.record(decode(vocab, s.size(), encode(s)) == s, [&] { return format_structure(s); });
                text.record(parse_structure(format_structure(s)) == s, [&] { return format_structure(s); });
            }
            encoding.finish(report);
            text.finish(report);

            Property interp("roundtrip.interpretation", config.seed);
            for (auto *i : {&sat2col_interpretation()}) {
                auto once = format_interpretation(*i);
                interp.record(format_interpretation(parse_interpretation(once)) == once, [&] { return once; });
            }
            interp.finish(report);
            return report;
        }

        auto suite_certs(const SuiteConfig &config) -> SuiteReport
        {
            SuiteReport report;
            Rng rng(config.seed);
            Property accept("certs.accept", config.seed);
            Property mutations("certs.mutations", config.seed);
            Property reachable("certs.reachable-target", config.seed);
            const size_t random_graphs = 50;
            auto visit = [&](const Structure &g) {
                auto bfs = bfs_distances(g);
                for (Element x = 0; x < g.size(); ++x) {
                    auto where = [&] { return describe_graph(g, "x=" + std::to_string(x)); };
                    if (bfs[x] >= 0) {
                        bool refused = false;
                        try {
                            make_certificate(g, x);
                        } catch (const Error &) {
                            refused = true;
                        }
                        reachable.record(refused, where);
                        continue;
                    }
                    auto cert = make_certificate(g, x);
                    auto text = serialize_certificate(cert);
                    accept.record(verify_certificate(g, x, cert).accepted() &&
                            verify_certificate_text(g, x, text).accepted() && parse_certificate(text) == cert,
                        where);
                    for (size_t t = 0; t < config.trials; ++t) {
                        auto bad = mutate_certificate(cert, g, rng);
                        bool rejected = ! verify_certificate(g, x, bad).accepted();
                        if (t % 10 == 0)
                            rejected = rejected && ! verify_certificate_text(g, x, serialize_certificate(bad)).accepted();
                        mutations.record(rejected, [&] { return where() + ";" + serialize_certificate(bad); });
                    }
                }
            };
            for (size_t n = 1; n <= config.n_max; ++n)
                for (uint64_t mask = 0; mask < (uint64_t{1} << (n * n)); ++mask)
                    visit(graph_from_mask(n, mask));
            for (size_t t = 0; t < random_graphs; ++t)
                visit(gnp_graph(config.n_max + 1 + rng.below(3), 0.1 + 0.3 * rng.unit(), rng.next()));
            accept.finish(report);
            mutations.finish(report);
            reachable.finish(report);
            return report;
        }

        using SuiteFn = SuiteReport (*)(const SuiteConfig &);

        auto registry() -> const std::map<string, std::pair<SuiteFn, SuiteConfig>> &
        {
            static const std::map<string, std::pair<SuiteFn, SuiteConfig>> suites = {
                {"reach", {suite_reach, {4, 200, 0}}},
                {"complement", {suite_complement, {4, 200, 0}}},
                {"sat2col", {suite_sat2col, {2, 100, 0}}},
                {"fagin", {suite_fagin, {4, 100, 0}}},
                {"dtc", {suite_dtc, {4, 200, 0}}},
                {"reacha", {suite_reacha, {4, 200, 0}}},
                {"roundtrip", {suite_roundtrip, {4, 1000, 0}}},
                {"certs", {suite_certs, {4, 100, 0}}},
            };
            return suites;
        }
    }

    auto suite_names() -> const vector<string> &
    {
        static const vector<string> names = {"reach", "complement", "sat2col", "fagin", "dtc", "reacha", "roundtrip", "certs"};
        return names;
    }

    auto is_suite(const string &name) -> bool { return registry().count(name) > 0; }

    auto default_suite_config(const string &name) -> SuiteConfig
    {
        auto it = registry().find(name);
        if (it == registry().end())
            throw Error("unknown suite '" + name + "'");
        return it->second.second;
    }

    auto run_suite(const string &name, const SuiteConfig &config) -> SuiteReport
    {
        auto it = registry().find(name);
        if (it == registry().end())
            throw Error("unknown suite '" + name + "'");
        if (config.n_max > 5)
            throw Error("suite " + name + ": exhaustive sweeps stop at n = 5");
        return it->second.first(config);
    }

    namespace
    {
        class FormulaGenerator
        {
        public:
            FormulaGenerator(const Vocabulary &vocab, Rng &rng) : _vocab(vocab), _rng(rng) {}

            auto formula(unsigned depth) -> Formula
            {
                if (depth == 0)
                    return atomic();
                switch (_rng.below(10)) {
                case 0:
                    return lnot(formula(depth - 1));
                case 1:
                    return land(formula(depth - 1), formula(depth - 1));
                case 2:
                    return lor(formula(depth - 1), formula(depth - 1));
                case 3:
                    return implies(formula(depth - 1), formula(depth - 1));
                case 4:
                case 5: {
                    auto name = pick_name();
                    auto body = formula(depth - 1);
                    return _rng.chance(0.5) ? forall(name, body) : exists(name, body);
                }
                case 6:
                case 7:
                    return closure(depth);
                case 8: {
                    auto name = "Q" + std::to_string(_relations.size());
                    unsigned arity = 1 + static_cast<unsigned>(_rng.below(2));
                    _relations.push_back({name, arity});
                    auto body = formula(depth - 1);
                    _relations.pop_back();
                    return exists_rel(name, arity, body);
                }
                default:
                    return atomic();
                }
            }

        private:
            auto pick_name() -> string
            {
                static const char *names[] = {"x", "y", "z", "u", "w"};
                if (! _binders.empty() && _rng.chance(0.5))
                    return _binders[_rng.below(_binders.size())];
                return names[_rng.below(5)];
            }

            auto term() -> Term
            {
                switch (_rng.below(8)) {
                case 0:
                    return Term::min();
                case 1:
                    return Term::max();
                case 2:
                    return Term::numeral(static_cast<std::uint32_t>(_rng.below(3)));
                default:
                    return var(pick_name());
                }
            }

            auto terms(unsigned count) -> vector<Term>
            {
                vector<Term> out;
                for (unsigned i = 0; i < count; ++i)
                    out.push_back(term());
                return out;
            }

            auto atomic() -> Formula
            {
                auto symbols = _vocab.relations();
                symbols.insert(symbols.end(), _relations.begin(), _relations.end());
                switch (_rng.below(6)) {
                case 0:
                    return eq(term(), term());
                case 1:
                    return neq(term(), term());
                case 2:
                    return suc(term(), term());
                case 3:
                    return leq(term(), term());
                default: {
                    auto &r = symbols[_rng.below(symbols.size())];
                    return atom(r.name, terms(r.arity));
                }
                }
            }

            auto closure(unsigned depth) -> Formula
            {
                auto k = 1 + static_cast<unsigned>(_rng.below(2));
                vector<string> pre, post;
                for (unsigned i = 0; i < k; ++i) {
                    pre.push_back("a" + std::to_string(i));
                    post.push_back("b" + std::to_string(i));
                }
                _binders.insert(_binders.end(), pre.begin(), pre.end());
                _binders.insert(_binders.end(), post.begin(), post.end());
                auto body = formula(depth - 1);
                _binders.resize(_binders.size() - 2 * k);
                auto from = terms(k), to = terms(k);
                return _rng.chance(0.5) ? tc(pre, post, body, from, to) : dtc(pre, post, body, from, to);
            }

            const Vocabulary &_vocab;
            Rng &_rng;
            vector<RelationSymbol> _relations;
            vector<string> _binders;
        };
    }

    auto random_formula(const Vocabulary &vocab, Rng &rng, unsigned depth) -> Formula
    {
        return FormulaGenerator(vocab, rng).formula(depth);
    }
}
