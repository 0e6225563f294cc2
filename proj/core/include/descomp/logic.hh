#pragma once

#include <descomp/structures.hh>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace descomp
{
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &message, std::size_t position);

        auto position() const -> std::size_t { return _position; }
        auto message() const -> const std::string & { return _message; }

    private:
        std::string _message;
        std::size_t _position;
    };

    class FormulaError : public Error
    {
    public:
        using Error::Error;
    };

    struct Term
    {
        enum class Kind : std::uint8_t
        {
            Variable,
            Min,
            Max,
            Numeral
        };

        Kind kind = Kind::Min;
        std::string name;
        std::uint32_t value = 0;

        static auto var(std::string name) -> Term { return {Kind::Variable, std::move(name), 0}; }
        static auto min() -> Term { return {Kind::Min, {}, 0}; }
        static auto max() -> Term { return {Kind::Max, {}, 0}; }
        static auto numeral(std::uint32_t v) -> Term { return {Kind::Numeral, {}, v}; }

        auto is_variable() const -> bool { return kind == Kind::Variable; }
        auto to_string() const -> std::string;

        auto operator==(const Term &) const -> bool = default;
    };

    enum class FormulaKind : std::uint8_t
    {
        Atom,
        Equal,
        Suc,
        LessEq,
        Not,
        And,
        Or,
        Implies,
        Forall,
        Exists,
        TC,
        DTC,
        ExistsRel
    };

    class Formula;

    struct FormulaNode
    {
        FormulaKind kind;
        // Atom: relation name; Forall/Exists: bound variable; ExistsRel: relation variable.
        std::string name;
        // ExistsRel only.
        unsigned arity = 0;
        // Atom/Equal/Suc/LessEq: arguments. TC/DTC: source tuple followed by target tuple.
        std::vector<Term> terms;
        // TC/DTC: pre-tuple binders followed by post-tuple binders.
        std::vector<std::string> bound;
        std::vector<Formula> children;
    };

    /// Immutable formula handle; copies share the node.
    class Formula
    {
    public:
        explicit Formula(FormulaNode node) : _node(std::make_shared<const FormulaNode>(std::move(node))) {}

        auto kind() const -> FormulaKind { return _node->kind; }
        auto name() const -> const std::string & { return _node->name; }
        auto arity() const -> unsigned { return _node->arity; }
        auto terms() const -> const std::vector<Term> & { return _node->terms; }
        auto bound() const -> const std::vector<std::string> & { return _node->bound; }
        auto children() const -> const std::vector<Formula> & { return _node->children; }
        auto child(std::size_t i = 0) const -> const Formula & { return _node->children[i]; }
        auto node() const -> const FormulaNode & { return *_node; }
        auto id() const -> const void * { return _node.get(); }

        /// Tuple width k of a TC/DTC node.
        auto tc_width() const -> std::size_t { return _node->bound.size() / 2; }

        /// Structural equality.
        auto operator==(const Formula &other) const -> bool;

    private:
        std::shared_ptr<const FormulaNode> _node;
    };

    auto atom(std::string relation, std::vector<Term> args) -> Formula;
    auto eq(Term a, Term b) -> Formula;
    auto neq(Term a, Term b) -> Formula;
    auto suc(Term a, Term b) -> Formula;
    auto leq(Term a, Term b) -> Formula;
    auto lnot(Formula f) -> Formula;
    auto land(Formula a, Formula b) -> Formula;
    auto lor(Formula a, Formula b) -> Formula;
    auto implies(Formula a, Formula b) -> Formula;
    auto forall(std::string var, Formula body) -> Formula;
    auto exists(std::string var, Formula body) -> Formula;
    auto forall(const std::vector<std::string> &vars, Formula body) -> Formula;
    auto exists(const std::vector<std::string> &vars, Formula body) -> Formula;
    auto tc(std::vector<std::string> pre, std::vector<std::string> post, Formula body, std::vector<Term> from,
        std::vector<Term> to) -> Formula;
    auto dtc(std::vector<std::string> pre, std::vector<std::string> post, Formula body, std::vector<Term> from,
        std::vector<Term> to) -> Formula;
    auto exists_rel(std::string relation, unsigned arity, Formula body) -> Formula;

    /// Left-folded conjunction / disjunction. Empty conjunction is min=min, empty disjunction min!=min.
    auto conjunction(const std::vector<Formula> &parts) -> Formula;
    auto disjunction(const std::vector<Formula> &parts) -> Formula;
    auto verum() -> Formula;
    auto falsum() -> Formula;

    auto var(std::string name) -> Term;

    /// Extra relation symbols visible to the parser (free second-order variables).
    using RelationScope = std::vector<RelationSymbol>;

    /// Grammar:
    ///
    ///     formula := ("all"|"ex") var+ "." formula | "exR" name "/" int "." formula | implication
    ///     implication := disjunction ["->" implication]
    ///     disjunction := conjunction {"|" conjunction}
    ///     conjunction := unary {"&" unary}
    ///     unary := "!" unary | quantified formula | "(" formula ")" | atom
    ///     atom := R(t,..) | suc(t,t) | t=t | t!=t | t<=t
    ///           | TC[(x1,..,xk ; y1,..,yk). formula](s1,..,sk ; t1,..,tk) | DTC[...](...)
    ///     term := identifier | min | max | decimal numeral
    auto parse_formula(std::string_view text, const Vocabulary &vocab, const RelationScope &extra = {}) -> Formula;

    auto print(const Formula &f) -> std::string;

    /// Unbound first-order variables in first-occurrence order.
    auto free_vars(const Formula &f) -> std::vector<std::string>;

    /// No input-vocabulary atoms and no second-order quantifier.
    auto is_numeric(const Formula &f) -> bool;

    /// No first-order or second-order quantifier and no TC/DTC.
    auto is_quantifier_free(const Formula &f) -> bool;

    /// No TC/DTC occurs in negative position (implication antecedents count as negative).
    /// A TC/DTC nested in a DTC body is negative, because the deterministic reduct negates the body.
    auto is_tc_positive(const Formula &f) -> bool;

    /// Arity and binder checks against a vocabulary; throws FormulaError.
    auto check_well_formed(const Formula &f, const Vocabulary &vocab, const RelationScope &extra = {}) -> void;

    /// Capture-avoiding substitution of terms for free variables.
    auto substitute(const Formula &f, const std::map<std::string, Term> &replacement) -> Formula;

    /// Every variable name occurring in f, bound or free.
    auto all_variable_names(const Formula &f) -> std::vector<std::string>;

    auto depth(const Formula &f) -> std::size_t;
    auto node_count(const Formula &f) -> std::size_t;

    /// Names of the relation atoms in f that refer to the given vocabulary (not to bound relation variables).
    auto input_atoms(const Formula &f, const Vocabulary &vocab) -> std::vector<Formula>;
}
