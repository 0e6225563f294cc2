#include <descomp/evaluator.hh>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

using std::int64_t;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace descomp
{
    auto EvalOptions::from_environment() -> EvalOptions
    {
        EvalOptions options;
        if (const char *cap = std::getenv("DESCOMP_SOE_CAP"); cap && *cap) {
            char *end = nullptr;
            auto value = std::strtoull(cap, &end, 10);
            if (end && *end == '\0')
                options.soe_cell_cap = value;
        }
        return options;
    }

    namespace
    {
        constexpr int64_t unassigned = -1;
        constexpr uint64_t no_memo = ~uint64_t{0};

        auto kleene_not(Truth t) -> Truth
        {
            switch (t) {
            case Truth::False: return Truth::True;
            case Truth::True: return Truth::False;
            default: return Truth::Unknown;
            }
        }

        struct TermRef
        {
            Term::Kind kind = Term::Kind::Min;
            int slot = -1;
            Element value = 0;
        };

        struct SecondOrderState
        {
            string name;
            unsigned arity = 0;
            uint64_t cells = 0;
            RelationTable known;
            RelationTable value;
        };

        struct Node
        {
            FormulaKind kind = FormulaKind::Atom;
            int relation = -1;
            int so = -1;
            vector<TermRef> terms;
            vector<int> children;
            vector<int> bound;

            // TC/DTC
            vector<int> key_slots;
            bool so_dependent = false;
            std::unordered_map<uint64_t, RelationTable> memo;

            // free first-order slots and second-order indices below this node
            vector<int> free_slots;
            vector<int> free_so;
        };

        auto merge_into(vector<int> &into, const vector<int> &from) -> void
        {
            vector<int> out;
            std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
            into = std::move(out);
        }

        auto remove_from(vector<int> &from, const vector<int> &drop) -> void
        {
            std::erase_if(from, [&](int s) { return std::find(drop.begin(), drop.end(), s) != drop.end(); });
        }
    }

    struct Evaluator::Program
    {
        Formula formula;
        const Structure *structure;
        EvalOptions options;
        size_t n;
        vector<Node> nodes;
        int root = -1;
        size_t slot_count = 0;
        vector<int> var_slots;
        vector<string> env_slot_names;
        vector<int> env_slots;
        vector<SecondOrderState> so;
        vector<int> env_so;
        vector<int64_t> slots;

        Program(Formula f, const Structure &s, EvalOptions opts, const vector<string> &vars, const Environment &env) :
            formula(std::move(f)),
            structure(&s),
            options(opts),
            n(s.size())
        {
            std::map<string, vector<int>> scope;
            for (auto &v : vars) {
                if (scope.contains(v))
                    throw EvaluationError("variable '" + v + "' listed twice");
                int slot = static_cast<int>(slot_count++);
                scope[v].push_back(slot);
                var_slots.push_back(slot);
            }
            for (auto &v : free_vars(formula)) {
                if (scope.contains(v))
                    continue;
                if (! env.elements.contains(v))
                    throw EvaluationError("unbound variable '" + v + "'");
                int slot = static_cast<int>(slot_count++);
                scope[v].push_back(slot);
                env_slot_names.push_back(v);
                env_slots.push_back(slot);
            }
            vector<std::pair<string, int>> so_scope;
            for (auto &[name, rv] : env.relations) {
                if (s.vocabulary().index_of(name))
                    throw EvaluationError("relation variable '" + name + "' clashes with a vocabulary symbol");
                auto cells = checked_power(n, rv.arity);
                so.push_back({name, rv.arity, cells, RelationTable(cells), RelationTable(cells)});
                int index = static_cast<int>(so.size() - 1);
                env_so.push_back(index);
                so_scope.emplace_back(name, index);
            }
            root = compile(formula, scope, so_scope);
            slots.assign(slot_count, unassigned);
        }

        auto compile(const Formula &f, std::map<string, vector<int>> &scope, vector<std::pair<string, int>> &so_scope)
            -> int
        {
            Node node;
            node.kind = f.kind();
            auto term_ref = [&](const Term &t) {
                TermRef r;
                r.kind = t.kind;
                if (t.kind == Term::Kind::Variable) {
                    auto it = scope.find(t.name);
                    if (it == scope.end() || it->second.empty())
                        throw EvaluationError("unbound variable '" + t.name + "'");
                    r.slot = it->second.back();
                    node.free_slots.push_back(r.slot);
                }
                else if (t.kind == Term::Kind::Numeral) {
                    r.value = t.value;
                }
                return r;
            };
            auto bind = [&](const string &name) {
                int slot = static_cast<int>(slot_count++);
                scope[name].push_back(slot);
                return slot;
            };
            auto unbind = [&](const string &name) { scope[name].pop_back(); };

            switch (f.kind()) {
            case FormulaKind::Atom: {
                for (auto it = so_scope.rbegin(); it != so_scope.rend(); ++it) {
                    if (it->first == f.name()) {
                        node.so = it->second;
                        break;
                    }
                }
                if (node.so >= 0) {
                    if (so[static_cast<size_t>(node.so)].arity != f.terms().size())
                        throw EvaluationError("relation variable " + f.name() + " applied with wrong arity");
                    node.free_so.push_back(node.so);
                }
                else {
                    auto index = structure->vocabulary().index_of(f.name());
                    if (! index)
                        throw EvaluationError("unknown relation symbol '" + f.name() + "'");
                    if (structure->vocabulary()[*index].arity != f.terms().size())
                        throw EvaluationError("relation " + f.name() + " applied with wrong arity");
                    node.relation = static_cast<int>(*index);
                }
                for (auto &t : f.terms())
                    node.terms.push_back(term_ref(t));
                break;
            }
            case FormulaKind::Equal:
            case FormulaKind::Suc:
            case FormulaKind::LessEq:
                for (auto &t : f.terms())
                    node.terms.push_back(term_ref(t));
                break;
            case FormulaKind::Not:
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
                for (auto &c : f.children())
                    node.children.push_back(compile(c, scope, so_scope));
                break;
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                node.bound.push_back(bind(f.name()));
                node.children.push_back(compile(f.child(), scope, so_scope));
                unbind(f.name());
                break;
            case FormulaKind::TC:
            case FormulaKind::DTC: {
                // Source and target terms live in the enclosing scope.
                for (auto &t : f.terms())
                    node.terms.push_back(term_ref(t));
                for (auto &b : f.bound())
                    node.bound.push_back(bind(b));
                node.children.push_back(compile(f.child(), scope, so_scope));
                for (auto &b : f.bound())
                    unbind(b);
                break;
            }
            case FormulaKind::ExistsRel: {
                auto cells = checked_power(n, f.arity());
                so.push_back({f.name(), f.arity(), cells, RelationTable(cells), RelationTable(cells)});
                node.so = static_cast<int>(so.size() - 1);
                so_scope.emplace_back(f.name(), node.so);
                node.children.push_back(compile(f.child(), scope, so_scope));
                so_scope.pop_back();
                break;
            }
            }

            std::sort(node.free_slots.begin(), node.free_slots.end());
            node.free_slots.erase(std::unique(node.free_slots.begin(), node.free_slots.end()), node.free_slots.end());
            for (int c : node.children) {
                merge_into(node.free_slots, nodes[static_cast<size_t>(c)].free_slots);
                merge_into(node.free_so, nodes[static_cast<size_t>(c)].free_so);
            }
            if (! node.bound.empty()) {
                auto &body = nodes[static_cast<size_t>(node.children[0])];
                if (f.kind() == FormulaKind::TC || f.kind() == FormulaKind::DTC) {
                    node.key_slots = body.free_slots;
                    remove_from(node.key_slots, node.bound);
                    node.so_dependent = ! body.free_so.empty();
                    // free slots of the node: key slots plus those of the source/target terms
                    merge_into(node.free_slots, node.key_slots);
                }
                remove_from(node.free_slots, node.bound);
            }
            if (f.kind() == FormulaKind::ExistsRel)
                remove_from(node.free_so, {node.so});

            nodes.push_back(std::move(node));
            return static_cast<int>(nodes.size() - 1);
        }

        auto term_value(const TermRef &t) const -> int64_t
        {
            switch (t.kind) {
            case Term::Kind::Variable: return slots[static_cast<size_t>(t.slot)];
            case Term::Kind::Min: return 0;
            case Term::Kind::Max: return static_cast<int64_t>(n) - 1;
            case Term::Kind::Numeral:
                if (t.value >= n)
                    throw EvaluationError("numeral " + std::to_string(t.value) + " is outside the universe of size " +
                        std::to_string(n));
                return t.value;
            }
            return unassigned;
        }

        // Base-n rank of the term values in [begin, end); nullopt if one is unassigned.
        auto terms_rank(const Node &node, size_t begin, size_t end, uint64_t &rank) const -> bool
        {
            rank = 0;
            for (size_t i = begin; i < end; ++i) {
                auto v = term_value(node.terms[i]);
                if (v < 0)
                    return false;
                rank = rank * n + static_cast<uint64_t>(v);
            }
            return true;
        }

        auto set_tuple(const vector<int> &bound, size_t offset, size_t k, uint64_t rank) -> void
        {
            for (size_t i = k; i-- > 0;) {
                slots[static_cast<size_t>(bound[offset + i])] = static_cast<int64_t>(rank % n);
                rank /= n;
            }
        }

        auto eval(int index) -> Truth
        {
            auto &node = nodes[static_cast<size_t>(index)];
            switch (node.kind) {
            case FormulaKind::Atom: {
                uint64_t rank;
                if (! terms_rank(node, 0, node.terms.size(), rank))
                    return Truth::Unknown;
                if (node.so >= 0) {
                    auto &state = so[static_cast<size_t>(node.so)];
                    if (! state.known.test(rank))
                        return Truth::Unknown;
                    return state.value.test(rank) ? Truth::True : Truth::False;
                }
                return structure->holds(static_cast<size_t>(node.relation), rank) ? Truth::True : Truth::False;
            }
            case FormulaKind::Equal:
            case FormulaKind::Suc:
            case FormulaKind::LessEq: {
                auto a = term_value(node.terms[0]);
                auto b = term_value(node.terms[1]);
                if (a < 0 || b < 0)
                    return Truth::Unknown;
                bool r = node.kind == FormulaKind::Equal ? a == b : node.kind == FormulaKind::Suc ? b == a + 1 : a <= b;
                return r ? Truth::True : Truth::False;
            }
            case FormulaKind::Not: return kleene_not(eval(node.children[0]));
            case FormulaKind::And: {
                auto a = eval(node.children[0]);
                if (a == Truth::False)
                    return a;
                auto b = eval(node.children[1]);
                if (b == Truth::False)
                    return b;
                return a == Truth::True && b == Truth::True ? Truth::True : Truth::Unknown;
            }
            case FormulaKind::Or: {
                auto a = eval(node.children[0]);
                if (a == Truth::True)
                    return a;
                auto b = eval(node.children[1]);
                if (b == Truth::True)
                    return b;
                return a == Truth::False && b == Truth::False ? Truth::False : Truth::Unknown;
            }
            case FormulaKind::Implies: {
                auto a = eval(node.children[0]);
                if (a == Truth::False)
                    return Truth::True;
                auto b = eval(node.children[1]);
                if (b == Truth::True)
                    return b;
                return a == Truth::True && b == Truth::False ? Truth::False : Truth::Unknown;
            }
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                auto slot = static_cast<size_t>(node.bound[0]);
                auto saved = slots[slot];
                bool universal = node.kind == FormulaKind::Forall;
                auto decisive = universal ? Truth::False : Truth::True;
                auto result = universal ? Truth::True : Truth::False;
                int child = node.children[0];
                for (size_t v = 0; v < n; ++v) {
                    slots[slot] = static_cast<int64_t>(v);
                    auto r = eval(child);
                    if (r == decisive) {
                        result = decisive;
                        break;
                    }
                    if (r == Truth::Unknown)
                        result = Truth::Unknown;
                }
                slots[slot] = saved;
                return result;
            }
            case FormulaKind::TC:
            case FormulaKind::DTC: return eval_closure(index);
            case FormulaKind::ExistsRel: return eval_exists_rel(index);
            }
            return Truth::Unknown;
        }

        auto eval_closure(int index) -> Truth
        {
            auto &node = nodes[static_cast<size_t>(index)];
            auto k = node.bound.size() / 2;
            uint64_t source, target;
            if (! terms_rank(node, 0, k, source) || ! terms_rank(node, k, 2 * k, target))
                return Truth::Unknown;
            uint64_t key = 0;
            for (int s : node.key_slots) {
                auto v = slots[static_cast<size_t>(s)];
                if (v < 0)
                    return Truth::Unknown;
                key = key * n + static_cast<uint64_t>(v);
            }
            auto width = checked_power(n, static_cast<unsigned>(k));

            if (! node.so_dependent) {
                uint64_t memo_key = no_memo;
                // Keys that would overflow are simply not memoized.
                if (node.key_slots.size() < 64 && width < (uint64_t{1} << 32)) {
                    long double bound = 1;
                    for (size_t i = 0; i < node.key_slots.size(); ++i)
                        bound *= static_cast<long double>(n);
                    if (bound * static_cast<long double>(width) < 1.8e19L)
                        memo_key = key * width + source;
                }
                if (memo_key != no_memo) {
                    auto it = node.memo.find(memo_key);
                    if (it != node.memo.end())
                        return it->second.test(target) ? Truth::True : Truth::False;
                }
                auto reached = definite_closure(index, source, width);
                bool result = reached.test(target);
                if (memo_key != no_memo)
                    nodes[static_cast<size_t>(index)].memo.emplace(memo_key, std::move(reached));
                return result ? Truth::True : Truth::False;
            }

            auto [lower, upper] = three_valued_closure(index, source, width);
            if (lower.test(target))
                return Truth::True;
            if (! upper.test(target))
                return Truth::False;
            return Truth::Unknown;
        }

        struct SavedBound
        {
            vector<int64_t> values;
        };

        auto save_bound(const Node &node) const -> SavedBound
        {
            SavedBound saved;
            for (int s : node.bound)
                saved.values.push_back(slots[static_cast<size_t>(s)]);
            return saved;
        }

        auto restore_bound(const Node &node, const SavedBound &saved) -> void
        {
            for (size_t i = 0; i < node.bound.size(); ++i)
                slots[static_cast<size_t>(node.bound[i])] = saved.values[i];
        }

        // Reachable set from `source` when every body value is definite.
        auto definite_closure(int index, uint64_t source, uint64_t width) -> RelationTable
        {
            const auto &node = nodes[static_cast<size_t>(index)];
            auto k = node.bound.size() / 2;
            bool deterministic = node.kind == FormulaKind::DTC;
            int body = node.children[0];
            auto saved = save_bound(node);

            RelationTable reached(width);
            reached.set(source);
            std::deque<uint64_t> queue{source};
            while (! queue.empty()) {
                auto u = queue.front();
                queue.pop_front();
                set_tuple(node.bound, 0, k, u);
                if (deterministic) {
                    uint64_t successor = 0;
                    int count = 0;
                    for (uint64_t t = 0; t < width && count < 2; ++t) {
                        set_tuple(node.bound, k, k, t);
                        if (eval(body) == Truth::True) {
                            successor = t;
                            ++count;
                        }
                    }
                    if (count == 1 && ! reached.test(successor)) {
                        reached.set(successor);
                        queue.push_back(successor);
                    }
                }
                else {
                    for (uint64_t t = 0; t < width; ++t) {
                        if (reached.test(t))
                            continue;
                        set_tuple(node.bound, k, k, t);
                        if (eval(body) == Truth::True) {
                            reached.set(t);
                            queue.push_back(t);
                        }
                    }
                }
            }
            restore_bound(nodes[static_cast<size_t>(index)], saved);
            return reached;
        }

        // Under partially known second-order tables: lower = surely reachable, upper = possibly reachable.
        auto three_valued_closure(int index, uint64_t source, uint64_t width) -> std::pair<RelationTable, RelationTable>
        {
            const auto &node = nodes[static_cast<size_t>(index)];
            auto k = node.bound.size() / 2;
            bool deterministic = node.kind == FormulaKind::DTC;
            int body = node.children[0];
            auto saved = save_bound(node);

            vector<vector<Truth>> edges(width, vector<Truth>(width, Truth::False));
            for (uint64_t u = 0; u < width; ++u) {
                set_tuple(node.bound, 0, k, u);
                for (uint64_t t = 0; t < width; ++t) {
                    set_tuple(node.bound, k, k, t);
                    edges[u][t] = eval(body);
                }
            }
            restore_bound(nodes[static_cast<size_t>(index)], saved);

            auto definite = [&](uint64_t u, uint64_t t) {
                if (edges[u][t] != Truth::True)
                    return false;
                if (! deterministic)
                    return true;
                for (uint64_t z = 0; z < width; ++z)
                    if (z != t && edges[u][z] != Truth::False)
                        return false;
                return true;
            };
            auto possible = [&](uint64_t u, uint64_t t) {
                if (edges[u][t] == Truth::False)
                    return false;
                if (! deterministic)
                    return true;
                for (uint64_t z = 0; z < width; ++z)
                    if (z != t && edges[u][z] == Truth::True)
                        return false;
                return true;
            };
            auto closure = [&](auto &&edge) {
                RelationTable reached(width);
                reached.set(source);
                std::deque<uint64_t> queue{source};
                while (! queue.empty()) {
                    auto u = queue.front();
                    queue.pop_front();
                    for (uint64_t t = 0; t < width; ++t) {
                        if (! reached.test(t) && edge(u, t)) {
                            reached.set(t);
                            queue.push_back(t);
                        }
                    }
                }
                return reached;
            };
            return {closure(definite), closure(possible)};
        }

        auto eval_exists_rel(int index) -> Truth
        {
            vector<int> chain;
            int current = index;
            while (nodes[static_cast<size_t>(current)].kind == FormulaKind::ExistsRel) {
                chain.push_back(current);
                current = nodes[static_cast<size_t>(current)].children[0];
            }
            int body = current;

            vector<std::pair<size_t, uint64_t>> order;
            uint64_t most = 0;
            vector<std::pair<RelationTable, RelationTable>> saved;
            for (int c : chain) {
                auto &state = so[static_cast<size_t>(nodes[static_cast<size_t>(c)].so)];
                if (state.cells > options.soe_cell_cap)
                    throw EvaluationError("second-order quantifier over " + state.name + "/" +
                        std::to_string(state.arity) + " ranges over " + std::to_string(state.cells) +
                        " cells, above the cap of " + std::to_string(options.soe_cell_cap) +
                        " (set DESCOMP_SOE_CAP to raise it)");
                most = std::max(most, state.cells);
                saved.emplace_back(state.known, state.value);
                state.known.reset();
                state.value.reset();
            }
            for (uint64_t r = 0; r < most; ++r)
                for (size_t j = 0; j < chain.size(); ++j)
                    if (r < so[static_cast<size_t>(nodes[static_cast<size_t>(chain[j])].so)].cells)
                        order.emplace_back(static_cast<size_t>(nodes[static_cast<size_t>(chain[j])].so), r);

            auto result = search_cells(body, order, 0);

            for (size_t j = 0; j < chain.size(); ++j) {
                auto &state = so[static_cast<size_t>(nodes[static_cast<size_t>(chain[j])].so)];
                state.known = std::move(saved[j].first);
                state.value = std::move(saved[j].second);
            }
            return result;
        }

        auto search_cells(int body, const vector<std::pair<size_t, uint64_t>> &order, size_t position) -> Truth
        {
            auto current = eval(body);
            if (current != Truth::Unknown || position == order.size())
                return current;
            auto [index, cell] = order[position];
            auto &state = so[index];
            state.known.set(cell);
            state.value.reset(cell);
            auto without = search_cells(body, order, position + 1);
            Truth result = Truth::True;
            if (without != Truth::True) {
                state.value.set(cell);
                auto with = search_cells(body, order, position + 1);
                if (with == Truth::True)
                    result = Truth::True;
                else if (with == Truth::False && without == Truth::False)
                    result = Truth::False;
                else
                    result = Truth::Unknown;
            }
            state.known.reset(cell);
            state.value.reset(cell);
            return result;
        }

        auto load_environment(const Environment &env) -> void
        {
            for (size_t i = 0; i < env_slots.size(); ++i) {
                auto it = env.elements.find(env_slot_names[i]);
                if (it == env.elements.end())
                    throw EvaluationError("unbound variable '" + env_slot_names[i] + "'");
                if (it->second >= n)
                    throw EvaluationError("value of '" + it->first + "' is outside the universe");
                slots[static_cast<size_t>(env_slots[i])] = it->second;
            }
            for (int index : env_so) {
                auto &state = so[static_cast<size_t>(index)];
                auto it = env.relations.find(state.name);
                if (it == env.relations.end() || it->second.arity != state.arity || it->second.table.size() != state.cells)
                    throw EvaluationError("relation variable '" + state.name + "' has a table of the wrong shape");
                state.value = it->second.table;
                state.known.set();
            }
        }
    };

    Evaluator::Evaluator(const Structure &structure, EvalOptions options) :
        _structure(&structure),
        _options(options)
    {
    }

    Evaluator::~Evaluator() = default;
    Evaluator::Evaluator(Evaluator &&) noexcept = default;
    auto Evaluator::operator=(Evaluator &&) noexcept -> Evaluator & = default;

    auto Evaluator::clear_cache() -> void { _programs.clear(); }

    auto Evaluator::program(const Formula &f, const vector<string> &vars, const Environment &env) -> Program &
    {
        std::ostringstream key;
        key << f.id();
        for (auto &v : vars)
            key << ' ' << v;
        key << " |";
        for (auto &[name, rv] : env.relations)
            key << ' ' << name << '/' << rv.arity;
        auto &slot = _programs[key.str()];
        if (! slot)
            slot = std::make_unique<Program>(f, *_structure, _options, vars, env);
        return *slot;
    }

    auto Evaluator::eval(const Formula &f, const Environment &env) -> bool
    {
        auto &p = program(f, {}, env);
        p.load_environment(env);
        auto result = p.eval(p.root);
        if (result == Truth::Unknown)
            throw EvaluationError("evaluation did not reach a definite value");
        return result == Truth::True;
    }

    auto Evaluator::eval_partial(const Formula &f, const vector<string> &vars, std::span<const int64_t> values,
        const Environment &env) -> Truth
    {
        if (values.size() != vars.size())
            throw EvaluationError("eval_partial: one value per variable is required");
        auto &p = program(f, vars, env);
        p.load_environment(env);
        for (size_t i = 0; i < vars.size(); ++i) {
            if (values[i] >= static_cast<int64_t>(p.n))
                throw EvaluationError("value of '" + vars[i] + "' is outside the universe");
            p.slots[static_cast<size_t>(p.var_slots[i])] = values[i] < 0 ? unassigned : values[i];
        }
        auto result = p.eval(p.root);
        for (int s : p.var_slots)
            p.slots[static_cast<size_t>(s)] = unassigned;
        return result;
    }

    auto Evaluator::satisfying_assignments(const Formula &f, const vector<string> &vars, const Environment &env)
        -> vector<Tuple>
    {
        auto &p = program(f, vars, env);
        p.load_environment(env);
        auto n = p.n;
        auto m = vars.size();
        vector<Tuple> out;
        Tuple current(m, 0);

        auto emit_all = [&](size_t from) {
            for (size_t i = from; i < m; ++i)
                current[i] = 0;
            while (true) {
                out.push_back(current);
                size_t i = m;
                while (i > from && ++current[i - 1] == n)
                    current[--i] = 0;
                if (i == from)
                    return;
            }
        };

        std::function<void(size_t)> dfs = [&](size_t depth) {
            auto t = p.eval(p.root);
            if (t == Truth::False)
                return;
            if (t == Truth::True) {
                emit_all(depth);
                return;
            }
            if (depth == m)
                throw EvaluationError("evaluation did not reach a definite value");
            auto slot = static_cast<size_t>(p.var_slots[depth]);
            for (Element v = 0; v < n; ++v) {
                current[depth] = v;
                p.slots[slot] = v;
                dfs(depth + 1);
            }
            p.slots[slot] = unassigned;
        };
        dfs(0);
        return out;
    }

    auto eval(const Structure &structure, const Formula &f, const Environment &env) -> bool
    {
        return Evaluator(structure).eval(f, env);
    }

    auto satisfying_assignments(const Structure &structure, const Formula &f, const vector<string> &vars,
        const Environment &env) -> vector<Tuple>
    {
        return Evaluator(structure).satisfying_assignments(f, vars, env);
    }

    auto tc_closure(const vector<TuplePair> &pairs, size_t n, unsigned k) -> vector<TuplePair>
    {
        if (k < 1)
            throw Error("tc_closure: tuple width must be at least 1");
        auto width = checked_power(n, k);
        vector<vector<uint64_t>> successors(width);
        for (auto &[a, b] : pairs) {
            if (a.size() != k || b.size() != k)
                throw Error("tc_closure: tuple of the wrong width");
            successors[rank_lex(a, n)].push_back(rank_lex(b, n));
        }
        vector<TuplePair> out;
        for (uint64_t s = 0; s < width; ++s) {
            RelationTable reached(width);
            reached.set(s);
            std::deque<uint64_t> queue{s};
            while (! queue.empty()) {
                auto u = queue.front();
                queue.pop_front();
                for (auto t : successors[u]) {
                    if (! reached.test(t)) {
                        reached.set(t);
                        queue.push_back(t);
                    }
                }
            }
            auto source = unrank_lex(s, k, n);
            for (auto t = reached.find_first(); t != RelationTable::npos; t = reached.find_next(t))
                out.emplace_back(source, unrank_lex(t, k, n));
        }
        return out;
    }
}
