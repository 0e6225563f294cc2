#include <descomp/logic.hh>

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace descomp
{
    ParseError::ParseError(const string &message, size_t position) :
        Error("parse error at position " + std::to_string(position) + ": " + message),
        _message(message),
        _position(position)
    {
    }

    auto Term::to_string() const -> string
    {
        switch (kind) {
        case Kind::Variable: return name;
        case Kind::Min: return "min";
        case Kind::Max: return "max";
        case Kind::Numeral: return std::to_string(value);
        }
        return {};
    }

    auto Formula::operator==(const Formula &other) const -> bool
    {
        if (_node == other._node)
            return true;
        auto &a = *_node;
        auto &b = *other._node;
        return a.kind == b.kind && a.name == b.name && a.arity == b.arity && a.terms == b.terms &&
            a.bound == b.bound && a.children == b.children;
    }

    namespace
    {
        auto make(FormulaKind kind, string name, vector<Term> terms, vector<Formula> children) -> Formula
        {
            return Formula(FormulaNode{kind, std::move(name), 0, std::move(terms), {}, std::move(children)});
        }

        auto make_closure(FormulaKind kind, vector<string> pre, vector<string> post, Formula body, vector<Term> from,
            vector<Term> to) -> Formula
        {
            if (pre.empty() || pre.size() != post.size() || from.size() != pre.size() || to.size() != pre.size())
                throw FormulaError("TC/DTC needs four tuples of the same width k >= 1");
            vector<string> bound = std::move(pre);
            bound.insert(bound.end(), post.begin(), post.end());
            std::set<string> distinct(bound.begin(), bound.end());
            if (distinct.size() != bound.size())
                throw FormulaError("TC/DTC bound variables must be pairwise distinct");
            vector<Term> terms = std::move(from);
            terms.insert(terms.end(), to.begin(), to.end());
            return Formula(FormulaNode{kind, {}, 0, std::move(terms), std::move(bound), {std::move(body)}});
        }
    }

    auto var(string name) -> Term { return Term::var(std::move(name)); }

    auto atom(string relation, vector<Term> args) -> Formula
    {
        return make(FormulaKind::Atom, std::move(relation), std::move(args), {});
    }

    auto eq(Term a, Term b) -> Formula { return make(FormulaKind::Equal, {}, {std::move(a), std::move(b)}, {}); }
    auto neq(Term a, Term b) -> Formula { return lnot(eq(std::move(a), std::move(b))); }
    auto suc(Term a, Term b) -> Formula { return make(FormulaKind::Suc, {}, {std::move(a), std::move(b)}, {}); }
    auto leq(Term a, Term b) -> Formula { return make(FormulaKind::LessEq, {}, {std::move(a), std::move(b)}, {}); }
    auto lnot(Formula f) -> Formula { return make(FormulaKind::Not, {}, {}, {std::move(f)}); }
    auto land(Formula a, Formula b) -> Formula { return make(FormulaKind::And, {}, {}, {std::move(a), std::move(b)}); }
    auto lor(Formula a, Formula b) -> Formula { return make(FormulaKind::Or, {}, {}, {std::move(a), std::move(b)}); }

    auto implies(Formula a, Formula b) -> Formula
    {
        return make(FormulaKind::Implies, {}, {}, {std::move(a), std::move(b)});
    }

    auto forall(string v, Formula body) -> Formula { return make(FormulaKind::Forall, std::move(v), {}, {std::move(body)}); }
    auto exists(string v, Formula body) -> Formula { return make(FormulaKind::Exists, std::move(v), {}, {std::move(body)}); }

    auto forall(const vector<string> &vars, Formula body) -> Formula
    {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = forall(*it, std::move(body));
        return body;
    }

    auto exists(const vector<string> &vars, Formula body) -> Formula
    {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = exists(*it, std::move(body));
        return body;
    }

    auto tc(vector<string> pre, vector<string> post, Formula body, vector<Term> from, vector<Term> to) -> Formula
    {
        return make_closure(FormulaKind::TC, std::move(pre), std::move(post), std::move(body), std::move(from), std::move(to));
    }

    auto dtc(vector<string> pre, vector<string> post, Formula body, vector<Term> from, vector<Term> to) -> Formula
    {
        return make_closure(FormulaKind::DTC, std::move(pre), std::move(post), std::move(body), std::move(from), std::move(to));
    }

    auto exists_rel(string relation, unsigned arity, Formula body) -> Formula
    {
        if (arity < 1)
            throw FormulaError("relation variable " + relation + " needs arity >= 1");
        return Formula(FormulaNode{FormulaKind::ExistsRel, std::move(relation), arity, {}, {}, {std::move(body)}});
    }

    auto verum() -> Formula { return eq(Term::min(), Term::min()); }
    auto falsum() -> Formula { return neq(Term::min(), Term::min()); }

    auto conjunction(const vector<Formula> &parts) -> Formula
    {
        if (parts.empty())
            return verum();
        auto result = parts.front();
        for (size_t i = 1; i < parts.size(); ++i)
            result = land(result, parts[i]);
        return result;
    }

    auto disjunction(const vector<Formula> &parts) -> Formula
    {
        if (parts.empty())
            return falsum();
        auto result = parts.front();
        for (size_t i = 1; i < parts.size(); ++i)
            result = lor(result, parts[i]);
        return result;
    }

    // ---------------------------------------------------------------- parser

    namespace
    {
        enum class Tok
        {
            Ident,
            Number,
            LParen,
            RParen,
            LBracket,
            RBracket,
            Comma,
            Semicolon,
            Dot,
            Slash,
            Equal,
            NotEqual,
            LessEq,
            Bang,
            Amp,
            Pipe,
            Arrow,
            End
        };

        struct Token
        {
            Tok kind;
            string text;
            size_t position;
        };

        auto describe(const Token &t) -> string
        {
            if (t.kind == Tok::End)
                return "end of input";
            return "'" + t.text + "'";
        }

        auto tokenize(string_view text) -> vector<Token>
        {
            vector<Token> out;
            size_t i = 0;
            while (i < text.size()) {
                char c = text[i];
                if (std::isspace(static_cast<unsigned char>(c))) {
                    ++i;
                    continue;
                }
                size_t start = i;
                if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                        ++i;
                    while (i < text.size() && text[i] == '\'')
                        ++i;
                    out.push_back({Tok::Ident, string(text.substr(start, i - start)), start});
                    continue;
                }
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                        ++i;
                    out.push_back({Tok::Number, string(text.substr(start, i - start)), start});
                    continue;
                }
                auto two = text.substr(i, 2);
                if (two == "!=") {
                    out.push_back({Tok::NotEqual, "!=", start});
                    i += 2;
                    continue;
                }
                if (two == "<=") {
                    out.push_back({Tok::LessEq, "<=", start});
                    i += 2;
                    continue;
                }
                if (two == "->") {
                    out.push_back({Tok::Arrow, "->", start});
                    i += 2;
                    continue;
                }
                Tok kind;
                switch (c) {
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case '[': kind = Tok::LBracket; break;
                case ']': kind = Tok::RBracket; break;
                case ',': kind = Tok::Comma; break;
                case ';': kind = Tok::Semicolon; break;
                case '.': kind = Tok::Dot; break;
                case '/': kind = Tok::Slash; break;
                case '=': kind = Tok::Equal; break;
                case '!': kind = Tok::Bang; break;
                case '&': kind = Tok::Amp; break;
                case '|': kind = Tok::Pipe; break;
                default: throw ParseError(string("unexpected character '") + c + "'", start);
                }
                out.push_back({kind, string(1, c), start});
                ++i;
            }
            out.push_back({Tok::End, {}, text.size()});
            return out;
        }

        auto is_keyword(const string &s) -> bool
        {
            return s == "all" || s == "ex" || s == "exR" || s == "TC" || s == "DTC" || s == "suc" || s == "min" ||
                s == "max";
        }

        class Parser
        {
        public:
            Parser(string_view text, const Vocabulary &vocab, const RelationScope &extra) :
                _tokens(tokenize(text)),
                _vocab(vocab),
                _extra(extra)
            {
            }

            auto parse() -> Formula
            {
                auto f = formula();
                if (peek().kind != Tok::End)
                    throw ParseError("unexpected " + describe(peek()) + " after formula", peek().position);
                return f;
            }

        private:
            vector<Token> _tokens;
            size_t _pos = 0;
            const Vocabulary &_vocab;
            const RelationScope &_extra;
            vector<RelationSymbol> _so_scope;

            auto peek(size_t ahead = 0) const -> const Token &
            {
                return _tokens[std::min(_pos + ahead, _tokens.size() - 1)];
            }

            auto next() -> const Token & { return _tokens[std::min(_pos++, _tokens.size() - 1)]; }

            auto accept(Tok kind) -> bool
            {
                if (peek().kind == kind) {
                    ++_pos;
                    return true;
                }
                return false;
            }

            auto expect(Tok kind, const char *what) -> const Token &
            {
                if (peek().kind != kind)
                    throw ParseError(string("expected ") + what + ", got " + describe(peek()), peek().position);
                return next();
            }

            auto is_quantifier_start() const -> bool
            {
                auto &t = peek();
                return t.kind == Tok::Ident && (t.text == "all" || t.text == "ex" || t.text == "exR");
            }

            auto variable_name(const char *what) -> string
            {
                auto &t = expect(Tok::Ident, what);
                if (is_keyword(t.text))
                    throw ParseError("keyword '" + t.text + "' cannot be used as a variable", t.position);
                return t.text;
            }

            auto formula() -> Formula
            {
                if (is_quantifier_start())
                    return quantified();
                return implication();
            }

            auto quantified() -> Formula
            {
                auto &q = next();
                if (q.text == "exR") {
                    auto &name = expect(Tok::Ident, "relation variable name");
                    if (is_keyword(name.text) || is_reserved_name(name.text))
                        throw ParseError("'" + name.text + "' cannot name a relation variable", name.position);
                    if (_vocab.index_of(name.text))
                        throw ParseError("relation variable '" + name.text + "' clashes with a vocabulary symbol",
                            name.position);
                    expect(Tok::Slash, "'/'");
                    auto &arity_token = expect(Tok::Number, "arity");
                    auto arity = number_value(arity_token);
                    if (arity < 1 || arity > 8)
                        throw ParseError("relation variable arity must be between 1 and 8", arity_token.position);
                    expect(Tok::Dot, "'.'");
                    _so_scope.push_back({name.text, static_cast<unsigned>(arity)});
                    auto body = formula();
                    _so_scope.pop_back();
                    return exists_rel(name.text, static_cast<unsigned>(arity), body);
                }
                vector<string> vars;
                vars.push_back(variable_name("variable after quantifier"));
                while (peek().kind == Tok::Ident)
                    vars.push_back(variable_name("variable"));
                expect(Tok::Dot, "'.' after quantified variables");
                auto body = formula();
                return q.text == "all" ? forall(vars, body) : exists(vars, body);
            }

            auto implication() -> Formula
            {
                auto left = disjunction();
                if (accept(Tok::Arrow)) {
                    auto right = is_quantifier_start() ? quantified() : implication();
                    return implies(left, right);
                }
                return left;
            }

            auto disjunction() -> Formula
            {
                auto left = conjunction();
                while (accept(Tok::Pipe))
                    left = lor(left, is_quantifier_start() ? quantified() : conjunction());
                return left;
            }

            auto conjunction() -> Formula
            {
                auto left = unary();
                while (accept(Tok::Amp))
                    left = land(left, is_quantifier_start() ? quantified() : unary());
                return left;
            }

            auto unary() -> Formula
            {
                if (accept(Tok::Bang))
                    return lnot(unary());
                if (is_quantifier_start())
                    return quantified();
                if (accept(Tok::LParen)) {
                    auto inner = formula();
                    expect(Tok::RParen, "')'");
                    return inner;
                }
                return atomic();
            }

            auto number_value(const Token &t) -> std::uint64_t
            {
                std::uint64_t v = 0;
                for (char c : t.text) {
                    v = v * 10 + static_cast<std::uint64_t>(c - '0');
                    if (v > std::numeric_limits<std::uint32_t>::max())
                        throw ParseError("numeral too large", t.position);
                }
                return v;
            }

            auto term() -> Term
            {
                auto &t = peek();
                if (t.kind == Tok::Number) {
                    next();
                    return Term::numeral(static_cast<std::uint32_t>(number_value(t)));
                }
                if (t.kind != Tok::Ident)
                    throw ParseError("expected a term, got " + describe(t), t.position);
                next();
                if (t.text == "min")
                    return Term::min();
                if (t.text == "max")
                    return Term::max();
                if (is_keyword(t.text))
                    throw ParseError("keyword '" + t.text + "' is not a term", t.position);
                return Term::var(t.text);
            }

            auto term_list(Tok close, const char *what) -> vector<Term>
            {
                vector<Term> out;
                out.push_back(term());
                while (accept(Tok::Comma))
                    out.push_back(term());
                if (peek().kind != close)
                    throw ParseError(string("expected ") + what + ", got " + describe(peek()), peek().position);
                return out;
            }

            auto lookup_relation(const string &name) const -> const RelationSymbol *
            {
                for (auto it = _so_scope.rbegin(); it != _so_scope.rend(); ++it)
                    if (it->name == name)
                        return &*it;
                if (auto i = _vocab.index_of(name))
                    return &_vocab[*i];
                for (auto &r : _extra)
                    if (r.name == name)
                        return &r;
                return nullptr;
            }

            auto atomic() -> Formula
            {
                auto &t = peek();
                if (t.kind == Tok::Ident && (t.text == "TC" || t.text == "DTC"))
                    return closure();
                if (t.kind == Tok::Ident && t.text == "suc" && peek(1).kind == Tok::LParen) {
                    next();
                    next();
                    auto a = term();
                    expect(Tok::Comma, "','");
                    auto b = term();
                    expect(Tok::RParen, "')'");
                    return suc(a, b);
                }
                if (t.kind == Tok::Ident && ! is_keyword(t.text) && peek(1).kind == Tok::LParen) {
                    auto symbol = lookup_relation(t.text);
                    if (! symbol)
                        throw ParseError("unknown relation symbol '" + t.text + "'", t.position);
                    next();
                    next();
                    auto args = term_list(Tok::RParen, "',' or ')'");
                    next();
                    if (args.size() != symbol->arity)
                        throw ParseError("relation " + t.text + " has arity " + std::to_string(symbol->arity) +
                                " but is applied to " + std::to_string(args.size()) + " arguments",
                            t.position);
                    return atom(t.text, std::move(args));
                }
                auto left = term();
                auto &op = next();
                switch (op.kind) {
                case Tok::Equal: return eq(left, term());
                case Tok::NotEqual: return neq(left, term());
                case Tok::LessEq: return leq(left, term());
                default: throw ParseError("expected '=', '!=' or '<=' after term, got " + describe(op), op.position);
                }
            }

            auto binder_list(Tok close, const char *what) -> vector<string>
            {
                vector<string> out;
                out.push_back(variable_name("bound variable"));
                while (accept(Tok::Comma))
                    out.push_back(variable_name("bound variable"));
                if (peek().kind != close)
                    throw ParseError(string("expected ") + what + ", got " + describe(peek()), peek().position);
                next();
                return out;
            }

            auto closure() -> Formula
            {
                auto &op = next();
                expect(Tok::LBracket, "'['");
                expect(Tok::LParen, "'('");
                auto pre = binder_list(Tok::Semicolon, "';'");
                auto post = binder_list(Tok::RParen, "')'");
                expect(Tok::Dot, "'.'");
                auto body = formula();
                expect(Tok::RBracket, "']'");
                expect(Tok::LParen, "'('");
                auto from = term_list(Tok::Semicolon, "';'");
                next();
                auto to = term_list(Tok::RParen, "')'");
                next();
                if (pre.size() != post.size() || from.size() != pre.size() || to.size() != pre.size())
                    throw ParseError("all four tuples of " + op.text + " must have the same width", op.position);
                std::set<string> distinct(pre.begin(), pre.end());
                distinct.insert(post.begin(), post.end());
                if (distinct.size() != pre.size() * 2)
                    throw ParseError(op.text + " bound variables must be pairwise distinct", op.position);
                return op.text == "TC" ? tc(pre, post, body, from, to) : dtc(pre, post, body, from, to);
            }
        };
    }

    auto parse_formula(string_view text, const Vocabulary &vocab, const RelationScope &extra) -> Formula
    {
        return Parser(text, vocab, extra).parse();
    }

    // ---------------------------------------------------------------- printer

    namespace
    {
        enum Precedence
        {
            PrecQuantifier = 0,
            PrecImplies = 1,
            PrecOr = 2,
            PrecAnd = 3,
            PrecNot = 4,
            PrecAtom = 5
        };

        auto precedence(const Formula &f) -> int
        {
            switch (f.kind()) {
            case FormulaKind::Forall:
            case FormulaKind::Exists:
            case FormulaKind::ExistsRel: return PrecQuantifier;
            case FormulaKind::Implies: return PrecImplies;
            case FormulaKind::Or: return PrecOr;
            case FormulaKind::And: return PrecAnd;
            case FormulaKind::Not:
                return f.child().kind() == FormulaKind::Equal ? PrecAtom : PrecNot;
            default: return PrecAtom;
            }
        }

        auto join_terms(const vector<Term> &terms, size_t begin, size_t end) -> string
        {
            string out;
            for (size_t i = begin; i < end; ++i) {
                if (i > begin)
                    out += ',';
                out += terms[i].to_string();
            }
            return out;
        }

        auto join_names(const vector<string> &names, size_t begin, size_t end) -> string
        {
            string out;
            for (size_t i = begin; i < end; ++i) {
                if (i > begin)
                    out += ',';
                out += names[i];
            }
            return out;
        }

        auto print_at(const Formula &f, int required, string &out) -> void;

        auto print_node(const Formula &f, string &out) -> void
        {
            auto &t = f.terms();
            switch (f.kind()) {
            case FormulaKind::Atom: out += f.name() + "(" + join_terms(t, 0, t.size()) + ")"; return;
            case FormulaKind::Equal: out += t[0].to_string() + "=" + t[1].to_string(); return;
            case FormulaKind::Suc: out += "suc(" + t[0].to_string() + "," + t[1].to_string() + ")"; return;
            case FormulaKind::LessEq: out += t[0].to_string() + "<=" + t[1].to_string(); return;
            case FormulaKind::Not: {
                auto &c = f.child();
                if (c.kind() == FormulaKind::Equal) {
                    out += c.terms()[0].to_string() + "!=" + c.terms()[1].to_string();
                    return;
                }
                out += '!';
                print_at(c, PrecNot, out);
                return;
            }
            case FormulaKind::And:
                print_at(f.child(0), PrecAnd, out);
                out += " & ";
                print_at(f.child(1), PrecNot, out);
                return;
            case FormulaKind::Or:
                print_at(f.child(0), PrecOr, out);
                out += " | ";
                print_at(f.child(1), PrecAnd, out);
                return;
            case FormulaKind::Implies:
                print_at(f.child(0), PrecOr, out);
                out += " -> ";
                print_at(f.child(1), PrecImplies, out);
                return;
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                out += (f.kind() == FormulaKind::Forall ? "all " : "ex ") + f.name() + ". ";
                print_at(f.child(), PrecQuantifier, out);
                return;
            case FormulaKind::ExistsRel:
                out += "exR " + f.name() + "/" + std::to_string(f.arity()) + ". ";
                print_at(f.child(), PrecQuantifier, out);
                return;
            case FormulaKind::TC:
            case FormulaKind::DTC: {
                auto k = f.tc_width();
                out += f.kind() == FormulaKind::TC ? "TC[(" : "DTC[(";
                out += join_names(f.bound(), 0, k) + " ; " + join_names(f.bound(), k, 2 * k) + "). ";
                print_at(f.child(), PrecQuantifier, out);
                out += "](" + join_terms(t, 0, k) + " ; " + join_terms(t, k, 2 * k) + ")";
                return;
            }
            }
        }

        auto print_at(const Formula &f, int required, string &out) -> void
        {
            // Quantifiers extend as far right as possible, so they are bracketed in any operand position.
            bool parens = precedence(f) < required || (precedence(f) == PrecQuantifier && required > PrecQuantifier);
            if (parens)
                out += '(';
            print_node(f, out);
            if (parens)
                out += ')';
        }
    }

    auto print(const Formula &f) -> string
    {
        string out;
        print_at(f, PrecQuantifier, out);
        return out;
    }

    // ---------------------------------------------------------------- analyses

    namespace
    {
        auto collect_free(const Formula &f, std::multiset<string> &bound, vector<string> &out, std::set<string> &seen) -> void
        {
            auto visit_term = [&](const Term &t) {
                if (t.is_variable() && ! bound.contains(t.name) && seen.insert(t.name).second)
                    out.push_back(t.name);
            };
            switch (f.kind()) {
            case FormulaKind::Atom:
            case FormulaKind::Equal:
            case FormulaKind::Suc:
            case FormulaKind::LessEq:
                for (auto &t : f.terms())
                    visit_term(t);
                return;
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                auto it = bound.insert(f.name());
                collect_free(f.child(), bound, out, seen);
                bound.erase(it);
                return;
            }
            case FormulaKind::TC:
            case FormulaKind::DTC: {
                vector<std::multiset<string>::iterator> its;
                for (auto &b : f.bound())
                    its.push_back(bound.insert(b));
                collect_free(f.child(), bound, out, seen);
                for (auto &it : its)
                    bound.erase(it);
                for (auto &t : f.terms())
                    visit_term(t);
                return;
            }
            default:
                for (auto &c : f.children())
                    collect_free(c, bound, out, seen);
                return;
            }
        }

        auto any_node(const Formula &f, const std::function<bool(const Formula &)> &pred) -> bool
        {
            if (pred(f))
                return true;
            return std::any_of(f.children().begin(), f.children().end(), [&](const Formula &c) { return any_node(c, pred); });
        }

        auto tc_positive(const Formula &f, bool negative) -> bool
        {
            switch (f.kind()) {
            case FormulaKind::Not: return tc_positive(f.child(), ! negative);
            case FormulaKind::Implies: return tc_positive(f.child(0), ! negative) && tc_positive(f.child(1), negative);
            case FormulaKind::TC:
                if (negative)
                    return false;
                return tc_positive(f.child(), false);
            case FormulaKind::DTC:
                if (negative)
                    return false;
                return ! any_node(f.child(), [](const Formula &g) {
                    return g.kind() == FormulaKind::TC || g.kind() == FormulaKind::DTC;
                });
            default:
                return std::all_of(f.children().begin(), f.children().end(),
                    [&](const Formula &c) { return tc_positive(c, negative); });
            }
        }
    }

    auto free_vars(const Formula &f) -> vector<string>
    {
        std::multiset<string> bound;
        vector<string> out;
        std::set<string> seen;
        collect_free(f, bound, out, seen);
        return out;
    }

    auto is_numeric(const Formula &f) -> bool
    {
        return ! any_node(f, [](const Formula &g) { return g.kind() == FormulaKind::Atom || g.kind() == FormulaKind::ExistsRel; });
    }

    auto is_quantifier_free(const Formula &f) -> bool
    {
        return ! any_node(f, [](const Formula &g) {
            switch (g.kind()) {
            case FormulaKind::Forall:
            case FormulaKind::Exists:
            case FormulaKind::ExistsRel:
            case FormulaKind::TC:
            case FormulaKind::DTC: return true;
            default: return false;
            }
        });
    }

    auto is_tc_positive(const Formula &f) -> bool { return tc_positive(f, false); }

    namespace
    {
        auto check_rec(const Formula &f, const Vocabulary &vocab, vector<RelationSymbol> &scope) -> void
        {
            switch (f.kind()) {
            case FormulaKind::Atom: {
                const RelationSymbol *symbol = nullptr;
                for (auto it = scope.rbegin(); it != scope.rend() && ! symbol; ++it)
                    if (it->name == f.name())
                        symbol = &*it;
                if (! symbol)
                    if (auto i = vocab.index_of(f.name()))
                        symbol = &vocab[*i];
                if (! symbol)
                    throw FormulaError("unknown relation symbol '" + f.name() + "'");
                if (f.terms().size() != symbol->arity)
                    throw FormulaError("relation " + f.name() + " has arity " + std::to_string(symbol->arity) +
                        " but is applied to " + std::to_string(f.terms().size()) + " arguments");
                return;
            }
            case FormulaKind::Equal:
            case FormulaKind::Suc:
            case FormulaKind::LessEq:
                if (f.terms().size() != 2)
                    throw FormulaError("binary numeric atom with wrong argument count");
                return;
            case FormulaKind::ExistsRel:
                if (vocab.index_of(f.name()))
                    throw FormulaError("relation variable '" + f.name() + "' clashes with a vocabulary symbol");
                scope.push_back({f.name(), f.arity()});
                check_rec(f.child(), vocab, scope);
                scope.pop_back();
                return;
            default:
                for (auto &c : f.children())
                    check_rec(c, vocab, scope);
                return;
            }
        }
    }

    auto check_well_formed(const Formula &f, const Vocabulary &vocab, const RelationScope &extra) -> void
    {
        vector<RelationSymbol> scope(extra.begin(), extra.end());
        check_rec(f, vocab, scope);
    }

    namespace
    {
        auto collect_names(const Formula &f, std::set<string> &out) -> void
        {
            for (auto &t : f.terms())
                if (t.is_variable())
                    out.insert(t.name);
            if (f.kind() == FormulaKind::Forall || f.kind() == FormulaKind::Exists)
                out.insert(f.name());
            for (auto &b : f.bound())
                out.insert(b);
            for (auto &c : f.children())
                collect_names(c, out);
        }

        auto substitute_term(const Term &t, const std::map<string, Term> &m) -> Term
        {
            if (t.is_variable())
                if (auto it = m.find(t.name); it != m.end())
                    return it->second;
            return t;
        }

        auto substitute_terms(const vector<Term> &ts, const std::map<string, Term> &m) -> vector<Term>
        {
            vector<Term> out;
            out.reserve(ts.size());
            for (auto &t : ts)
                out.push_back(substitute_term(t, m));
            return out;
        }

        auto fresh_name(const string &base, const std::set<string> &avoid) -> string
        {
            string candidate = base + "'";
            while (avoid.contains(candidate))
                candidate += "'";
            return candidate;
        }

        auto substitute_rec(const Formula &f, const std::map<string, Term> &m) -> Formula;

        // Binds `names` over `body`; renames any binder that would capture a replacement variable.
        auto rebind(const vector<string> &names, const Formula &body, const std::map<string, Term> &m,
            vector<string> &new_names) -> Formula
        {
            std::map<string, Term> inner = m;
            for (auto &n : names)
                inner.erase(n);

            auto body_free = free_vars(body);
            std::set<string> live(body_free.begin(), body_free.end());
            std::set<string> incoming;
            for (auto &[k, t] : inner)
                if (live.contains(k) && t.is_variable())
                    incoming.insert(t.name);

            std::set<string> avoid;
            collect_names(body, avoid);
            avoid.insert(incoming.begin(), incoming.end());
            for (auto &[k, t] : inner) {
                avoid.insert(k);
                if (t.is_variable())
                    avoid.insert(t.name);
            }
            avoid.insert(names.begin(), names.end());

            new_names = names;
            for (auto &n : new_names) {
                if (incoming.contains(n)) {
                    auto fresh = fresh_name(n, avoid);
                    avoid.insert(fresh);
                    inner[n] = Term::var(fresh);
                    n = fresh;
                }
            }
            return substitute_rec(body, inner);
        }

        auto substitute_rec(const Formula &f, const std::map<string, Term> &m) -> Formula
        {
            if (m.empty())
                return f;
            switch (f.kind()) {
            case FormulaKind::Atom: return atom(f.name(), substitute_terms(f.terms(), m));
            case FormulaKind::Equal: return eq(substitute_term(f.terms()[0], m), substitute_term(f.terms()[1], m));
            case FormulaKind::Suc: return suc(substitute_term(f.terms()[0], m), substitute_term(f.terms()[1], m));
            case FormulaKind::LessEq: return leq(substitute_term(f.terms()[0], m), substitute_term(f.terms()[1], m));
            case FormulaKind::Not: return lnot(substitute_rec(f.child(), m));
            case FormulaKind::And: return land(substitute_rec(f.child(0), m), substitute_rec(f.child(1), m));
            case FormulaKind::Or: return lor(substitute_rec(f.child(0), m), substitute_rec(f.child(1), m));
            case FormulaKind::Implies: return implies(substitute_rec(f.child(0), m), substitute_rec(f.child(1), m));
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                vector<string> names;
                auto body = rebind({f.name()}, f.child(), m, names);
                return f.kind() == FormulaKind::Forall ? forall(names[0], body) : exists(names[0], body);
            }
            case FormulaKind::TC:
            case FormulaKind::DTC: {
                vector<string> names;
                auto body = rebind(f.bound(), f.child(), m, names);
                auto k = f.tc_width();
                auto terms = substitute_terms(f.terms(), m);
                vector<string> pre(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(k));
                vector<string> post(names.begin() + static_cast<std::ptrdiff_t>(k), names.end());
                vector<Term> from(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(k));
                vector<Term> to(terms.begin() + static_cast<std::ptrdiff_t>(k), terms.end());
                return f.kind() == FormulaKind::TC ? tc(pre, post, body, from, to) : dtc(pre, post, body, from, to);
            }
            case FormulaKind::ExistsRel: return exists_rel(f.name(), f.arity(), substitute_rec(f.child(), m));
            }
            return f;
        }
    }

    auto substitute(const Formula &f, const std::map<string, Term> &replacement) -> Formula
    {
        return substitute_rec(f, replacement);
    }

    auto all_variable_names(const Formula &f) -> vector<string>
    {
        std::set<string> names;
        collect_names(f, names);
        return {names.begin(), names.end()};
    }

    auto depth(const Formula &f) -> size_t
    {
        size_t d = 0;
        for (auto &c : f.children())
            d = std::max(d, depth(c));
        return d + 1;
    }

    auto node_count(const Formula &f) -> size_t
    {
        size_t n = 1;
        for (auto &c : f.children())
            n += node_count(c);
        return n;
    }

    namespace
    {
        auto collect_input_atoms(const Formula &f, const Vocabulary &vocab, vector<string> &shadowed, vector<Formula> &out)
            -> void
        {
            if (f.kind() == FormulaKind::Atom) {
                if (vocab.index_of(f.name()) && std::find(shadowed.begin(), shadowed.end(), f.name()) == shadowed.end())
                    out.push_back(f);
                return;
            }
            if (f.kind() == FormulaKind::ExistsRel)
                shadowed.push_back(f.name());
            for (auto &c : f.children())
                collect_input_atoms(c, vocab, shadowed, out);
            if (f.kind() == FormulaKind::ExistsRel)
                shadowed.pop_back();
        }
    }

    auto input_atoms(const Formula &f, const Vocabulary &vocab) -> vector<Formula>
    {
        vector<string> shadowed;
        vector<Formula> out;
        collect_input_atoms(f, vocab, shadowed, out);
        return out;
    }
}
