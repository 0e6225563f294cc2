#pragma once

#include <descomp/logic.hh>
#include <descomp/structures.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace descomp
{
    class InterpretationError : public Error
    {
    public:
        using Error::Error;
    };

    /// k-ary first-order mapping from source-structures to target-structures. The formula of the
    /// i-th target relation (arity a) uses the variables x1..x{k*a}; the j-th output element is
    /// the tuple (x{(j-1)k+1}, ..., x{jk}).
    struct Interpretation
    {
        unsigned k = 1;
        Vocabulary source;
        Vocabulary target;
        std::vector<Formula> formulas;

        /// Throws InterpretationError on arity, variable or vocabulary problems.
        auto validate() const -> void;
    };

    /// x1, ..., x{count}
    auto interpretation_variables(unsigned count) -> std::vector<std::string>;

    auto identity_interpretation(const Vocabulary &vocab) -> Interpretation;

    /// The structure I(A) of size n^k.
    auto apply(const Interpretation &interp, const Structure &structure) -> Structure;

    /// Interpretation file format:
    ///
    ///     interp k=1 from E/2 to E/2
    ///     E := E(x1,x2)
    auto parse_interpretation(std::string_view text) -> Interpretation;
    auto format_interpretation(const Interpretation &interp) -> std::string;

    struct ProjectionCase
    {
        Formula guard;
        /// Empty for the unconditional case, whose payload is the constant 1.
        std::optional<Formula> literal;
    };

    struct RelationProjection
    {
        /// Unconditional case first (when present), then literal cases in source order.
        std::vector<ProjectionCase> cases;
    };

    struct ProjectionForm
    {
        std::vector<RelationProjection> relations;
    };

    struct ProjectionDiagnostic
    {
        enum class Kind
        {
            NonNumericGuard,
            PayloadNotLiteral,
            NotExclusive
        };

        Kind kind = Kind::NotExclusive;
        std::size_t relation = 0;
        std::string message;
        // NotExclusive only
        std::size_t witness_size = 0;
        std::vector<Element> witness_assignment;
        std::pair<std::size_t, std::size_t> overlapping_cases{0, 0};
    };

    struct ProjectionCheck
    {
        std::optional<ProjectionForm> form;
        std::optional<ProjectionDiagnostic> diagnostic;

        auto ok() const -> bool { return form.has_value(); }
    };

    /// Shape match against guard/literal cases plus a semantic exclusivity check for sizes 1..n_check.
    auto check_projection_form(const Interpretation &interp, std::size_t n_check = 8) -> ProjectionCheck;

    auto is_fop(const Interpretation &interp, std::size_t n_check = 8) -> bool;
    auto is_qfp(const Interpretation &interp, std::size_t n_check = 8) -> bool;

    auto describe(const ProjectionForm &form, const Interpretation &interp) -> std::string;

    struct BitBehaviour
    {
        enum class Kind : std::uint8_t
        {
            Zero,
            One,
            Copy,
            Negate
        };

        Kind kind = Kind::Zero;
        std::uint64_t input_bit = 0;

        auto operator==(const BitBehaviour &) const -> bool = default;
    };

    struct ProjectionInconsistency
    {
        std::size_t n = 0;
        std::uint64_t output_bit = 0;
        BitString witness;
        std::string message;
    };

    struct SizeReport
    {
        std::size_t n = 0;
        std::uint64_t input_bits = 0;
        std::uint64_t output_bits = 0;
        /// Classification of every output bit that is not constantly 0, ordered by output bit.
        std::vector<std::pair<std::uint64_t, BitBehaviour>> behaviour;
        std::uint64_t checked_inputs = 0;
        std::optional<ProjectionInconsistency> inconsistency;

        auto classify(std::uint64_t output_bit) const -> BitBehaviour;
    };

    struct DynamicProjectionReport
    {
        std::vector<SizeReport> sizes;

        auto passed() const -> bool;
    };

    auto dynamic_projection_test(const Interpretation &interp, const std::vector<std::size_t> &sizes,
        unsigned random_inputs = 20, std::uint64_t seed = 0) -> DynamicProjectionReport;

    /// compose(I, J) behaves like I after J; its arity is k_I * k_J.
    auto compose(const Interpretation &outer, const Interpretation &inner) -> Interpretation;
}
