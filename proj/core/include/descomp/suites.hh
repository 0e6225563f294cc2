#pragma once

#include <descomp/logic.hh>
#include <descomp/random.hh>

#include <cstdint>
#include <string>
#include <vector>

namespace descomp
{
    struct SuiteConfig
    {
        /// Largest size checked exhaustively. Random instances start just above it.
        std::size_t n_max = 4;
        std::size_t trials = 200;
        std::uint64_t seed = 0;
    };

    struct PropertyResult
    {
        std::string id;
        bool passed = false;
        std::size_t cases = 0;
        std::uint64_t seed = 0;
        /// First counterexample, empty on success.
        std::string detail;
    };

    struct SuiteReport
    {
        std::vector<PropertyResult> properties;
        /// Free-form diagnostic lines, printed with a leading '#'.
        std::vector<std::string> notes;

        auto passed() const -> bool;
    };

    /// reach, complement, sat2col, fagin, dtc, reacha, roundtrip, certs
    auto suite_names() -> const std::vector<std::string> &;
    auto is_suite(const std::string &name) -> bool;

    /// Default configuration of each suite when no flags are given.
    auto default_suite_config(const std::string &name) -> SuiteConfig;

    /// Throws Error for an unknown name.
    auto run_suite(const std::string &name, const SuiteConfig &config) -> SuiteReport;

    /// `PASS|FAIL <id> <cases> <seed>`
    auto format_result(const PropertyResult &r) -> std::string;
    auto format_report(const SuiteReport &report) -> std::string;

    /// Random well-formed formula over `vocab` covering every connective, both closure
    /// operators, numerals and second-order quantifiers. Free variables are drawn from x, y, z, u, w.
    auto random_formula(const Vocabulary &vocab, Rng &rng, unsigned depth = 4) -> Formula;
}
