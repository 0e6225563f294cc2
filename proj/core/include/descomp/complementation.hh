#pragma once

#include <descomp/logic.hh>
#include <descomp/random.hh>
#include <descomp/structures.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace descomp
{
    // Counts are stored in universe elements shifted by one: element m stands for the count m+1.

    /// dist(x,d): a path of length at most d leads from min to x.
    auto build_dist(const std::string &x = "x", const std::string &d = "d") -> Formula;

    /// ndist(x,d;m): at least m+1 vertices other than x lie within distance d of min, and x != min.
    /// With m encoding the exact count, this is the negation of dist(x,d).
    auto build_ndist(const std::string &x = "x", const std::string &d = "d", const std::string &m = "m") -> Formula;

    /// ndist with the counting step testing dist(x,d) for every candidate, as the prose gloss reads.
    /// Kept for the diagnostic only.
    auto build_ndist_prose_reading(const std::string &x = "x", const std::string &d = "d", const std::string &m = "m")
        -> Formula;

    /// delta(d,m;d',m'): d' = d+1 and, when m encodes the count at d, m' encodes the count at d+1.
    auto build_delta(const std::string &d = "d", const std::string &m = "m", const std::string &d2 = "d'",
        const std::string &m2 = "m'") -> Formula;

    /// nonreach(x): x is not reachable from min, written with positive TC only.
    auto build_nonreach(const std::string &x = "x") -> Formula;

    /// counts[d] = number of vertices within distance d of min, for d = 0..n-1.
    using CountSequence = std::vector<std::size_t>;

    /// Round-by-round count: each round tests membership by re-searching paths and
    /// carries only the previous count forward.
    auto inductive_count(const Structure &graph) -> CountSequence;

    /// Plain BFS distances from min; unreachable vertices get -1.
    auto bfs_distances(const Structure &graph) -> std::vector<std::int64_t>;

    /// Truth values of both ndist readings on a small instance, one line each.
    auto ndist_reading_diagnostic() -> std::string;

    struct WitnessPath
    {
        Element vertex = 0;
        std::vector<Element> path;

        auto operator==(const WitnessPath &) const -> bool = default;
    };

    struct CertificateEntry
    {
        Element vertex = 0;
        bool reachable = false;
        /// reachable: a path from min to vertex of length at most d.
        std::vector<Element> path;
        /// not reachable: every member of the previous round, each with its path.
        std::vector<WitnessPath> witnesses;

        auto operator==(const CertificateEntry &) const -> bool = default;
    };

    struct CertificateRound
    {
        std::size_t distance = 0;
        std::size_t count = 0;
        std::vector<CertificateEntry> entries;

        auto operator==(const CertificateRound &) const -> bool = default;
    };

    /// Text form:
    ///
    ///     cert n <n> target <x>
    ///     round <d> count <c>
    ///     v <u>: <min>,...,<u>
    ///     nv <u>
    ///     w <z>: <min>,...,<z>
    ///
    /// Every round lists all vertices in increasing order. An "nv" line is followed by one "w"
    /// line per member of the previous round; none of them equals u or has an edge to u.
    struct Certificate
    {
        std::size_t n = 0;
        Element target = 0;
        std::vector<CertificateRound> rounds;

        auto operator==(const Certificate &) const -> bool = default;
    };

    auto make_certificate(const Structure &graph, Element target) -> Certificate;

    auto serialize_certificate(const Certificate &cert) -> std::string;
    auto parse_certificate(std::string_view text) -> Certificate;

    enum class CertificateVerdict
    {
        Accepted,
        BadPath,
        BadCount,
        OrderViolation,
        TargetPresent,
        Malformed,
        Incomplete
    };

    auto to_string(CertificateVerdict v) -> const char *;

    struct VerificationResult
    {
        CertificateVerdict verdict = CertificateVerdict::Incomplete;
        std::size_t line = 0;
        std::string detail;

        auto accepted() const -> bool { return verdict == CertificateVerdict::Accepted; }
    };

    /// Single pass over the certificate; state is a fixed set of counters and vertex ids.
    auto verify_certificate(const Structure &graph, Element target, const Certificate &cert) -> VerificationResult;
    auto verify_certificate_text(const Structure &graph, Element target, std::string_view text) -> VerificationResult;

    /// One random change to a field whose every alteration breaks the certificate
    /// (counts, round numbers, vertex ids, path endpoints, or an interior path vertex
    /// replaced so that an edge disappears).
    auto mutate_certificate(const Certificate &cert, const Structure &graph, Rng &rng) -> Certificate;
}
