#include <descomp/interpretations.hh>

#include <descomp/evaluator.hh>
#include <descomp/random.hh>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace descomp
{
    auto interpretation_variables(unsigned count) -> vector<string>
    {
        vector<string> out;
        out.reserve(count);
        for (unsigned i = 1; i <= count; ++i)
            out.push_back("x" + std::to_string(i));
        return out;
    }

    namespace
    {
        auto has_second_order(const Formula &f) -> bool
        {
            if (f.kind() == FormulaKind::ExistsRel)
                return true;
            return std::any_of(f.children().begin(), f.children().end(), has_second_order);
        }
    }

    auto Interpretation::validate() const -> void
    {
        if (k < 1)
            throw InterpretationError("interpretation arity k must be at least 1");
        if (formulas.size() != target.size())
            throw InterpretationError("interpretation needs one formula per target relation (" +
                std::to_string(target.size()) + "), got " + std::to_string(formulas.size()));
        for (size_t i = 0; i < formulas.size(); ++i) {
            auto &name = target[i].name;
            try {
                check_well_formed(formulas[i], source);
            }
            catch (const FormulaError &e) {
                throw InterpretationError("formula for " + name + ": " + e.what());
            }
            if (has_second_order(formulas[i]))
                throw InterpretationError("formula for " + name + " uses a second-order quantifier");
            auto allowed = interpretation_variables(k * target[i].arity);
            for (auto &v : free_vars(formulas[i]))
                if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
                    throw InterpretationError("formula for " + name + " has free variable '" + v + "' outside x1..x" +
                        std::to_string(allowed.size()));
        }
    }

    auto identity_interpretation(const Vocabulary &vocab) -> Interpretation
    {
        Interpretation out{1, vocab, vocab, {}};
        for (auto &r : vocab.relations()) {
            vector<Term> args;
            for (auto &v : interpretation_variables(r.arity))
                args.push_back(var(v));
            out.formulas.push_back(atom(r.name, std::move(args)));
        }
        return out;
    }

    auto apply(const Interpretation &interp, const Structure &structure) -> Structure
    {
        if (structure.vocabulary() != interp.source)
            throw InterpretationError("structure vocabulary '" + structure.vocabulary().to_string() +
                "' does not match the interpretation source '" + interp.source.to_string() + "'");
        interp.validate();
        auto n = structure.size();
        auto size = checked_power(n, interp.k);
        StructureBuilder builder(interp.target, size);
        Evaluator evaluator(structure);
        for (size_t i = 0; i < interp.formulas.size(); ++i) {
            auto vars = interpretation_variables(interp.k * interp.target[i].arity);
            for (auto &t : evaluator.satisfying_assignments(interp.formulas[i], vars))
                builder.set_rank(i, rank_lex(t, n));
        }
        return std::move(builder).build();
    }

    auto parse_interpretation(std::string_view text) -> Interpretation
    {
        std::istringstream in{string(text)};
        string line;
        size_t line_number = 0;
        std::optional<Interpretation> interp;
        vector<std::optional<Formula>> formulas;

        auto fail = [&](const string &message) -> InterpretationError {
            return InterpretationError("line " + std::to_string(line_number) + ": " + message);
        };

        while (std::getline(in, line)) {
            ++line_number;
            if (auto hash = line.find('#'); hash != string::npos)
                line.erase(hash);
            auto first = line.find_first_not_of(" \t\r");
            if (first == string::npos)
                continue;
            line = line.substr(first);
            while (! line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
                line.pop_back();

            if (! interp) {
                std::istringstream header(line);
                string word, arity;
                header >> word >> arity;
                if (word != "interp" || arity.rfind("k=", 0) != 0)
                    throw fail("expected header 'interp k=<k> from <vocab> to <vocab>'");
                unsigned k = 0;
                try {
                    k = static_cast<unsigned>(std::stoul(arity.substr(2)));
                }
                catch (const std::exception &) {
                    throw fail("bad arity '" + arity + "'");
                }
                auto from = line.find(" from ");
                auto to = line.find(" to ");
                if (from == string::npos || to == string::npos || to < from)
                    throw fail("expected header 'interp k=<k> from <vocab> to <vocab>'");
                try {
                    auto source = Vocabulary::parse(line.substr(from + 6, to - from - 6));
                    auto target = Vocabulary::parse(line.substr(to + 4));
                    interp = Interpretation{k, source, target, {}};
                }
                catch (const StructureError &e) {
                    throw fail(e.what());
                }
                formulas.assign(interp->target.size(), std::nullopt);
                continue;
            }

            auto assign = line.find(":=");
            if (assign == string::npos)
                throw fail("expected '<relation> := <formula>'");
            auto name = line.substr(0, assign);
            while (! name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
                name.pop_back();
            auto index = interp->target.index_of(name);
            if (! index)
                throw fail("'" + name + "' is not a target relation");
            if (formulas[*index])
                throw fail("second definition of " + name);
            try {
                formulas[*index] = parse_formula(std::string_view(line).substr(assign + 2), interp->source);
            }
            catch (const ParseError &e) {
                throw fail(e.what());
            }
        }
        if (! interp)
            throw InterpretationError("missing 'interp' header");
        for (size_t i = 0; i < formulas.size(); ++i) {
            if (! formulas[i])
                throw InterpretationError("no formula for target relation " + interp->target[i].name);
            interp->formulas.push_back(*formulas[i]);
        }
        interp->validate();
        return *interp;
    }

    auto format_interpretation(const Interpretation &interp) -> string
    {
        string out = "interp k=" + std::to_string(interp.k) + " from " + interp.source.to_string() + " to " +
            interp.target.to_string() + "\n";
        for (size_t i = 0; i < interp.formulas.size(); ++i)
            out += interp.target[i].name + " := " + print(interp.formulas[i]) + "\n";
        return out;
    }

    // ---------------------------------------------------------------- projection form

    namespace
    {
        auto flatten(const Formula &f, FormulaKind kind, vector<Formula> &out) -> void
        {
            if (f.kind() == kind) {
                for (auto &c : f.children())
                    flatten(c, kind, out);
                return;
            }
            out.push_back(f);
        }

        auto is_literal(const Formula &f, const Vocabulary &vocab) -> bool
        {
            auto &a = f.kind() == FormulaKind::Not ? f.child() : f;
            return a.kind() == FormulaKind::Atom && vocab.index_of(a.name()).has_value();
        }

        auto first_input_atom(const Formula &f, const Vocabulary &vocab) -> string
        {
            auto atoms = input_atoms(f, vocab);
            return atoms.empty() ? print(f) : print(atoms.front());
        }

        struct ShapeResult
        {
            RelationProjection projection;
            std::optional<ProjectionDiagnostic> diagnostic;
        };

        auto match_shape(const Formula &phi, const Vocabulary &source, size_t relation) -> ShapeResult
        {
            ShapeResult result;
            auto fail = [&](ProjectionDiagnostic::Kind kind, string message) {
                ProjectionDiagnostic d;
                d.kind = kind;
                d.relation = relation;
                d.message = std::move(message);
                result.diagnostic = std::move(d);
                return result;
            };

            vector<Formula> disjuncts;
            flatten(phi, FormulaKind::Or, disjuncts);
            vector<Formula> unconditional;
            vector<ProjectionCase> literal_cases;
            for (auto &d : disjuncts) {
                if (is_numeric(d)) {
                    unconditional.push_back(d);
                    continue;
                }
                vector<Formula> conjuncts;
                flatten(d, FormulaKind::And, conjuncts);
                vector<Formula> numeric, literals, other;
                for (auto &c : conjuncts) {
                    if (is_numeric(c))
                        numeric.push_back(c);
                    else if (is_literal(c, source))
                        literals.push_back(c);
                    else
                        other.push_back(c);
                }
                if (literals.size() >= 2)
                    return fail(ProjectionDiagnostic::Kind::PayloadNotLiteral,
                        "case '" + print(d) + "' has more than one input literal: " + print(literals[0]) + " and " +
                            print(literals[1]));
                if (literals.empty())
                    return fail(ProjectionDiagnostic::Kind::NonNumericGuard,
                        "case '" + print(d) + "' has no literal payload and its guard uses input atom " +
                            first_input_atom(d, source));
                if (! other.empty())
                    return fail(ProjectionDiagnostic::Kind::NonNumericGuard,
                        "guard of case '" + print(d) + "' uses input atom " + first_input_atom(other.front(), source));
                literal_cases.push_back({conjunction(numeric), literals.front()});
            }
            if (! unconditional.empty())
                result.projection.cases.push_back({disjunction(unconditional), std::nullopt});
            for (auto &c : literal_cases)
                result.projection.cases.push_back(c);
            return result;
        }

        // Searches sizes 1..n_check for an assignment making two guards true.
        auto find_overlap(const vector<Formula> &guards, const Vocabulary &source, unsigned variables, size_t n_check,
            ProjectionDiagnostic &witness) -> bool
        {
            auto vars = interpretation_variables(variables);
            for (size_t n = 1; n <= n_check; ++n) {
                auto empty = StructureBuilder(source, n).build();
                Evaluator evaluator(empty);
                vector<std::int64_t> values(vars.size(), -1);
                bool found = false;

                std::function<void(size_t)> search = [&](size_t depth) {
                    vector<size_t> definite;
                    size_t possible = 0;
                    for (size_t g = 0; g < guards.size(); ++g) {
                        auto t = evaluator.eval_partial(guards[g], vars, values);
                        if (t == Truth::True)
                            definite.push_back(g);
                        else if (t == Truth::Unknown)
                            ++possible;
                    }
                    if (definite.size() >= 2) {
                        found = true;
                        witness.witness_size = n;
                        witness.witness_assignment.clear();
                        for (auto v : values)
                            witness.witness_assignment.push_back(static_cast<Element>(v < 0 ? 0 : v));
                        witness.overlapping_cases = {definite[0], definite[1]};
                        return;
                    }
                    if (definite.size() + possible <= 1 || depth == vars.size())
                        return;
                    for (size_t v = 0; v < n && ! found; ++v) {
                        values[depth] = static_cast<std::int64_t>(v);
                        search(depth + 1);
                    }
                    values[depth] = -1;
                };
                try {
                    search(0);
                }
                catch (const EvaluationError &) {
                    // a guard mentions a numeral outside this universe; the size is not in the domain
                    continue;
                }
                if (found)
                    return true;
            }
            return false;
        }
    }

    auto check_projection_form(const Interpretation &interp, size_t n_check) -> ProjectionCheck
    {
        if (n_check < 1)
            throw InterpretationError("n_check must be at least 1");
        interp.validate();
        ProjectionForm form;
        for (size_t i = 0; i < interp.formulas.size(); ++i) {
            auto shape = match_shape(interp.formulas[i], interp.source, i);
            if (shape.diagnostic)
                return {std::nullopt, shape.diagnostic};
            vector<Formula> guards;
            for (auto &c : shape.projection.cases)
                guards.push_back(c.guard);
            ProjectionDiagnostic witness;
            witness.kind = ProjectionDiagnostic::Kind::NotExclusive;
            witness.relation = i;
            if (guards.size() >= 2 &&
                find_overlap(guards, interp.source, interp.k * interp.target[i].arity, n_check, witness)) {
                std::ostringstream msg;
                msg << "guards of " << interp.target[i].name << " are not mutually exclusive: '"
                    << print(guards[witness.overlapping_cases.first]) << "' and '"
                    << print(guards[witness.overlapping_cases.second]) << "' both hold at n=" << witness.witness_size
                    << " with";
                for (size_t v = 0; v < witness.witness_assignment.size(); ++v)
                    msg << " x" << v + 1 << "=" << witness.witness_assignment[v];
                witness.message = msg.str();
                return {std::nullopt, witness};
            }
            form.relations.push_back(std::move(shape.projection));
        }
        return {std::move(form), std::nullopt};
    }

    auto is_fop(const Interpretation &interp, size_t n_check) -> bool
    {
        return check_projection_form(interp, n_check).ok();
    }

    auto is_qfp(const Interpretation &interp, size_t n_check) -> bool
    {
        return std::all_of(interp.formulas.begin(), interp.formulas.end(), is_quantifier_free) &&
            is_fop(interp, n_check);
    }

    auto describe(const ProjectionForm &form, const Interpretation &interp) -> string
    {
        string out;
        for (size_t i = 0; i < form.relations.size(); ++i) {
            out += interp.target[i].name + ": " + std::to_string(form.relations[i].cases.size()) + " cases\n";
            for (auto &c : form.relations[i].cases)
                out += "  [" + print(c.guard) + "] -> " + (c.literal ? print(*c.literal) : string("1")) + "\n";
        }
        return out;
    }

    // ---------------------------------------------------------------- dynamic test

    auto SizeReport::classify(uint64_t output_bit) const -> BitBehaviour
    {
        auto it = std::lower_bound(behaviour.begin(), behaviour.end(), output_bit,
            [](const std::pair<uint64_t, BitBehaviour> &e, uint64_t j) { return e.first < j; });
        if (it != behaviour.end() && it->first == output_bit)
            return it->second;
        return {};
    }

    auto DynamicProjectionReport::passed() const -> bool
    {
        return std::none_of(sizes.begin(), sizes.end(), [](const SizeReport &s) { return s.inconsistency.has_value(); });
    }

    namespace
    {
        using Bits = boost::dynamic_bitset<uint64_t>;

        auto output_bits(const Structure &s) -> Bits
        {
            Bits out;
            for (size_t r = 0; r < s.vocabulary().size(); ++r) {
                auto &t = s.table(r);
                auto offset = out.size();
                out.resize(offset + t.size());
                for (auto i = t.find_first(); i != RelationTable::npos; i = t.find_next(i))
                    out.set(offset + i);
            }
            return out;
        }

        auto to_bitstring(const Bits &bits) -> BitString
        {
            vector<bool> v(bits.size());
            for (size_t i = 0; i < bits.size(); ++i)
                v[i] = bits.test(i);
            return BitString(std::move(v));
        }

        auto run(const Interpretation &interp, size_t n, const Bits &input) -> Bits
        {
            return output_bits(apply(interp, decode(interp.source, n, to_bitstring(input))));
        }

        auto kind_name(BitBehaviour b) -> string
        {
            switch (b.kind) {
            case BitBehaviour::Kind::Zero: return "constant 0";
            case BitBehaviour::Kind::One: return "constant 1";
            case BitBehaviour::Kind::Copy: return "copy of input bit " + std::to_string(b.input_bit);
            case BitBehaviour::Kind::Negate: return "negation of input bit " + std::to_string(b.input_bit);
            }
            return {};
        }
    }

    auto dynamic_projection_test(const Interpretation &interp, const vector<size_t> &sizes, unsigned random_inputs,
        uint64_t seed) -> DynamicProjectionReport
    {
        interp.validate();
        DynamicProjectionReport report;
        Rng rng(seed);
        for (auto n : sizes) {
            SizeReport size;
            size.n = n;
            size.input_bits = encoding_length(interp.source, n);
            auto L = size.input_bits;
            Bits zeros(L);
            auto base = run(interp, n, zeros);
            size.output_bits = base.size();
            size.checked_inputs = 1;

            // first flip that changed each output bit; a second one is an inconsistency
            std::map<uint64_t, uint64_t> changed_by;
            for (uint64_t t = 0; t < L && ! size.inconsistency; ++t) {
                auto flipped = zeros;
                flipped.set(t);
                auto diff = run(interp, n, flipped) ^ base;
                ++size.checked_inputs;
                for (auto j = diff.find_first(); j != Bits::npos; j = diff.find_next(j)) {
                    auto [it, fresh] = changed_by.emplace(j, t);
                    if (! fresh) {
                        size.inconsistency = ProjectionInconsistency{n, j, to_bitstring(zeros),
                            "output bit " + std::to_string(j) + " changes when flipping input bit " +
                                std::to_string(it->second) + " and also when flipping input bit " + std::to_string(t) +
                                " of the all-zeros input"};
                        break;
                    }
                }
            }
            if (! size.inconsistency) {
                for (auto j = base.find_first(); j != Bits::npos; j = base.find_next(j))
                    if (! changed_by.contains(j))
                        size.behaviour.push_back({j, {BitBehaviour::Kind::One, 0}});
                for (auto [j, t] : changed_by)
                    size.behaviour.push_back({j, {base.test(j) ? BitBehaviour::Kind::Negate : BitBehaviour::Kind::Copy, t}});
                std::sort(size.behaviour.begin(), size.behaviour.end(),
                    [](auto &a, auto &b) { return a.first < b.first; });

                auto predict = [&](const Bits &input) {
                    Bits out(size.output_bits);
                    for (auto &[j, b] : size.behaviour) {
                        bool v = b.kind == BitBehaviour::Kind::One ||
                            (b.kind == BitBehaviour::Kind::Copy && input.test(b.input_bit)) ||
                            (b.kind == BitBehaviour::Kind::Negate && ! input.test(b.input_bit));
                        out.set(j, v);
                    }
                    return out;
                };

                vector<Bits> probes;
                probes.push_back(Bits(L).set());
                for (unsigned r = 0; r < random_inputs; ++r) {
                    Bits w(L);
                    for (uint64_t t = 0; t < L; ++t)
                        w.set(t, rng.below(2) == 1);
                    probes.push_back(std::move(w));
                }
                for (auto &w : probes) {
                    auto diff = run(interp, n, w) ^ predict(w);
                    ++size.checked_inputs;
                    if (auto j = diff.find_first(); j != Bits::npos) {
                        size.inconsistency = ProjectionInconsistency{n, j, to_bitstring(w),
                            "output bit " + std::to_string(j) + " was classified as " + kind_name(size.classify(j)) +
                                " but disagrees on a probe input"};
                        break;
                    }
                }
            }
            report.sizes.push_back(std::move(size));
        }
        return report;
    }

    // ---------------------------------------------------------------- composition

    namespace
    {
        class Composer
        {
        public:
            explicit Composer(const Interpretation &inner) : _inner(inner) {}

            auto translate(const Formula &f, std::map<string, vector<Term>> &scope) -> Formula
            {
                auto width = _inner.k;
                switch (f.kind()) {
                case FormulaKind::Atom: {
                    auto index = _inner.target.index_of(f.name());
                    if (! index)
                        throw InterpretationError("relation " + f.name() + " is not produced by the inner interpretation");
                    auto vars = interpretation_variables(width * _inner.target[*index].arity);
                    std::map<string, Term> replacement;
                    size_t position = 0;
                    for (auto &t : f.terms())
                        for (auto &component : expand(t, scope))
                            replacement.emplace(vars[position++], component);
                    return substitute(_inner.formulas[*index], replacement);
                }
                case FormulaKind::Equal: {
                    auto a = expand(f.terms()[0], scope);
                    auto b = expand(f.terms()[1], scope);
                    return tuple_equal(a, b, 0, width);
                }
                case FormulaKind::Suc: return lex_successor(expand(f.terms()[0], scope), expand(f.terms()[1], scope));
                case FormulaKind::LessEq: return lex_less_eq(expand(f.terms()[0], scope), expand(f.terms()[1], scope));
                case FormulaKind::Not: return lnot(translate(f.child(), scope));
                case FormulaKind::And: return land(translate(f.child(0), scope), translate(f.child(1), scope));
                case FormulaKind::Or: return lor(translate(f.child(0), scope), translate(f.child(1), scope));
                case FormulaKind::Implies: return implies(translate(f.child(0), scope), translate(f.child(1), scope));
                case FormulaKind::Forall:
                case FormulaKind::Exists: {
                    auto names = fresh_tuple();
                    auto saved = push(scope, f.name(), names);
                    auto body = translate(f.child(), scope);
                    pop(scope, f.name(), saved);
                    return f.kind() == FormulaKind::Forall ? forall(names, body) : exists(names, body);
                }
                case FormulaKind::TC:
                case FormulaKind::DTC: {
                    auto k = f.tc_width();
                    vector<Term> from, to;
                    for (size_t i = 0; i < k; ++i) {
                        for (auto &c : expand(f.terms()[i], scope))
                            from.push_back(c);
                        for (auto &c : expand(f.terms()[k + i], scope))
                            to.push_back(c);
                    }
                    vector<string> pre, post;
                    vector<std::pair<string, std::optional<vector<Term>>>> saved;
                    for (size_t i = 0; i < 2 * k; ++i) {
                        auto names = fresh_tuple();
                        saved.emplace_back(f.bound()[i], push(scope, f.bound()[i], names));
                        auto &into = i < k ? pre : post;
                        into.insert(into.end(), names.begin(), names.end());
                    }
                    auto body = translate(f.child(), scope);
                    for (auto it = saved.rbegin(); it != saved.rend(); ++it)
                        pop(scope, it->first, it->second);
                    return f.kind() == FormulaKind::TC ? tc(pre, post, body, from, to) : dtc(pre, post, body, from, to);
                }
                case FormulaKind::ExistsRel: throw InterpretationError("cannot compose second-order formulas");
                }
                return f;
            }

        private:
            const Interpretation &_inner;
            unsigned _counter = 0;

            auto fresh_tuple() -> vector<string>
            {
                ++_counter;
                vector<string> names;
                for (unsigned l = 1; l <= _inner.k; ++l)
                    names.push_back("v" + std::to_string(_counter) + "_" + std::to_string(l));
                return names;
            }

            static auto push(std::map<string, vector<Term>> &scope, const string &name, const vector<string> &names)
                -> std::optional<vector<Term>>
            {
                std::optional<vector<Term>> saved;
                if (auto it = scope.find(name); it != scope.end())
                    saved = it->second;
                vector<Term> terms;
                for (auto &n : names)
                    terms.push_back(var(n));
                scope[name] = std::move(terms);
                return saved;
            }

            static auto pop(std::map<string, vector<Term>> &scope, const string &name, const std::optional<vector<Term>> &saved)
                -> void
            {
                if (saved)
                    scope[name] = *saved;
                else
                    scope.erase(name);
            }

            auto expand(const Term &t, const std::map<string, vector<Term>> &scope) const -> vector<Term>
            {
                auto width = _inner.k;
                switch (t.kind) {
                case Term::Kind::Variable: {
                    auto it = scope.find(t.name);
                    if (it == scope.end())
                        throw InterpretationError("unbound variable '" + t.name + "' in outer interpretation");
                    return it->second;
                }
                case Term::Kind::Min: return vector<Term>(width, Term::min());
                case Term::Kind::Max: return vector<Term>(width, Term::max());
                case Term::Kind::Numeral: {
                    vector<Term> out(width, Term::min());
                    out.back() = t;
                    return out;
                }
                }
                return {};
            }

            static auto tuple_equal(const vector<Term> &a, const vector<Term> &b, size_t begin, size_t end) -> Formula
            {
                vector<Formula> parts;
                for (size_t i = begin; i < end; ++i)
                    parts.push_back(eq(a[i], b[i]));
                return conjunction(parts);
            }

            static auto lex_successor(const vector<Term> &a, const vector<Term> &b) -> Formula
            {
                vector<Formula> cases;
                for (size_t p = 0; p < a.size(); ++p) {
                    vector<Formula> parts;
                    for (size_t q = 0; q < p; ++q)
                        parts.push_back(eq(a[q], b[q]));
                    parts.push_back(suc(a[p], b[p]));
                    for (size_t q = p + 1; q < a.size(); ++q) {
                        parts.push_back(eq(a[q], Term::max()));
                        parts.push_back(eq(b[q], Term::min()));
                    }
                    cases.push_back(conjunction(parts));
                }
                return disjunction(cases);
            }

            static auto lex_less_eq(const vector<Term> &a, const vector<Term> &b) -> Formula
            {
                vector<Formula> cases{tuple_equal(a, b, 0, a.size())};
                for (size_t p = 0; p < a.size(); ++p) {
                    vector<Formula> parts;
                    for (size_t q = 0; q < p; ++q)
                        parts.push_back(eq(a[q], b[q]));
                    parts.push_back(leq(a[p], b[p]));
                    parts.push_back(neq(a[p], b[p]));
                    cases.push_back(conjunction(parts));
                }
                return disjunction(cases);
            }
        };
    }

    auto compose(const Interpretation &outer, const Interpretation &inner) -> Interpretation
    {
        if (outer.source != inner.target)
            throw InterpretationError("cannot compose: the outer source '" + outer.source.to_string() +
                "' differs from the inner target '" + inner.target.to_string() + "'");
        outer.validate();
        inner.validate();
        Interpretation out{outer.k * inner.k, inner.source, outer.target, {}};
        Composer composer(inner);
        for (size_t i = 0; i < outer.formulas.size(); ++i) {
            auto outer_vars = interpretation_variables(outer.k * outer.target[i].arity);
            auto composed_vars = interpretation_variables(out.k * outer.target[i].arity);
            std::map<string, vector<Term>> scope;
            for (size_t m = 0; m < outer_vars.size(); ++m) {
                vector<Term> components;
                for (unsigned l = 0; l < inner.k; ++l)
                    components.push_back(var(composed_vars[m * inner.k + l]));
                scope[outer_vars[m]] = std::move(components);
            }
            out.formulas.push_back(composer.translate(outer.formulas[i], scope));
        }
        return out;
    }
}
