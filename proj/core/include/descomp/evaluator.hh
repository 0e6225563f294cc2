#pragma once

#include <descomp/logic.hh>
#include <descomp/structures.hh>

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace descomp
{
    class EvaluationError : public Error
    {
    public:
        using Error::Error;
    };

    /// Kleene truth value; Unknown arises only for partial assignments.
    enum class Truth : std::uint8_t
    {
        False,
        True,
        Unknown
    };

    struct RelationVariable
    {
        unsigned arity = 0;
        RelationTable table;
    };

    struct Environment
    {
        std::map<std::string, Element> elements;
        std::map<std::string, RelationVariable> relations;
    };

    struct EvalOptions
    {
        /// Largest table (n^arity cells) an existential second-order quantifier may range over.
        std::uint64_t soe_cell_cap = 20;

        /// Defaults, with the cap overridden by DESCOMP_SOE_CAP when set.
        static auto from_environment() -> EvalOptions;
    };

    /// Model checker bound to one structure. Compiled formulas and TC closures are cached
    /// per evaluator, so repeated queries against the same structure are cheap.
    /// Not thread-safe; use one evaluator per thread.
    class Evaluator
    {
    public:
        explicit Evaluator(const Structure &structure, EvalOptions options = EvalOptions::from_environment());
        Evaluator(Structure &&, EvalOptions = {}) = delete;
        ~Evaluator();
        Evaluator(Evaluator &&) noexcept;
        auto operator=(Evaluator &&) noexcept -> Evaluator &;

        auto structure() const -> const Structure & { return *_structure; }

        auto eval(const Formula &f, const Environment &env = {}) -> bool;

        /// Three-valued evaluation where values[i] < 0 leaves vars[i] unassigned.
        auto eval_partial(const Formula &f, const std::vector<std::string> &vars, std::span<const std::int64_t> values,
            const Environment &env = {}) -> Truth;

        /// All tuples over `vars` (lexicographic order) that satisfy f. Variables of `vars`
        /// that do not occur in f range freely.
        auto satisfying_assignments(const Formula &f, const std::vector<std::string> &vars, const Environment &env = {})
            -> std::vector<Tuple>;

        /// Drops compiled programs and memoized closures.
        auto clear_cache() -> void;

    private:
        struct Program;
        auto program(const Formula &f, const std::vector<std::string> &vars, const Environment &env) -> Program &;

        const Structure *_structure;
        EvalOptions _options;
        std::map<std::string, std::unique_ptr<Program>> _programs;
    };

    auto eval(const Structure &structure, const Formula &f, const Environment &env = {}) -> bool;

    auto satisfying_assignments(const Structure &structure, const Formula &f, const std::vector<std::string> &vars,
        const Environment &env = {}) -> std::vector<Tuple>;

    using TuplePair = std::pair<Tuple, Tuple>;

    /// Reflexive-transitive closure of a relation on k-tuples over {0..n-1}, sorted lexicographically.
    auto tc_closure(const std::vector<TuplePair> &pairs, std::size_t n, unsigned k) -> std::vector<TuplePair>;
}
