#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace descomp
{
    /// Base class of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class StructureError : public Error
    {
    public:
        using Error::Error;
    };

    using Element = std::uint32_t;
    using Tuple = std::vector<Element>;

    struct RelationSymbol
    {
        std::string name;
        unsigned arity = 0;

        auto operator<=>(const RelationSymbol &) const = default;
    };

    /// Names that cannot be used for relation symbols.
    auto is_reserved_name(std::string_view name) -> bool;

    auto is_identifier(std::string_view name) -> bool;

    class Vocabulary
    {
    public:
        Vocabulary() = default;
        explicit Vocabulary(std::vector<RelationSymbol> relations);

        auto relations() const -> const std::vector<RelationSymbol> & { return _relations; }
        auto size() const -> std::size_t { return _relations.size(); }
        auto operator[](std::size_t i) const -> const RelationSymbol & { return _relations[i]; }
        auto index_of(std::string_view name) const -> std::optional<std::size_t>;

        /// `E/2 P/1` form, as used in structure and interpretation files.
        auto to_string() const -> std::string;
        static auto parse(std::string_view text) -> Vocabulary;

        auto operator==(const Vocabulary &) const -> bool = default;

    private:
        std::vector<RelationSymbol> _relations;
    };

    auto graph_vocabulary() -> const Vocabulary &;

    /// n^k, throwing if the result would not fit in 63 bits.
    auto checked_power(std::uint64_t n, unsigned k) -> std::uint64_t;

    /// Base-n value of the tuple read left to right.
    auto rank_lex(std::span<const Element> tuple, std::size_t n) -> std::uint64_t;
    auto unrank_lex(std::uint64_t index, unsigned k, std::size_t n) -> Tuple;

    class BitString
    {
    public:
        BitString() = default;
        explicit BitString(std::vector<bool> bits) : _bits(std::move(bits)) {}

        static auto parse(std::string_view text) -> BitString;

        auto size() const -> std::size_t { return _bits.size(); }
        auto operator[](std::size_t i) const -> bool { return _bits[i]; }
        auto bits() const -> const std::vector<bool> & { return _bits; }
        auto to_string() const -> std::string;

        auto operator==(const BitString &) const -> bool = default;

    private:
        std::vector<bool> _bits;
    };

    /// Characteristic vector of one relation: bit rank_lex(t) is set iff t is in the relation.
    using RelationTable = boost::dynamic_bitset<std::uint64_t>;

    class StructureBuilder;

    /// Finite ordered structure with universe {0, ..., n-1}. Numeric relations are not stored.
    class Structure
    {
    public:
        /// Validating constructor from explicit tuple lists keyed by relation name.
        Structure(Vocabulary vocab, std::size_t size, const std::map<std::string, std::vector<Tuple>> &tables);

        auto vocabulary() const -> const Vocabulary & { return _vocab; }
        auto size() const -> std::size_t { return _size; }

        auto table(std::size_t relation) const -> const RelationTable & { return _tables[relation]; }
        auto holds(std::size_t relation, std::span<const Element> tuple) const -> bool;
        auto holds(std::size_t relation, std::uint64_t rank) const -> bool { return _tables[relation].test(rank); }

        /// Tuples of a relation in lexicographic order.
        auto tuples(std::size_t relation) const -> std::vector<Tuple>;
        auto tuples(std::string_view relation) const -> std::vector<Tuple>;

        auto operator==(const Structure &) const -> bool = default;

    private:
        friend class StructureBuilder;
        Structure(Vocabulary vocab, std::size_t size, std::vector<RelationTable> tables);

        Vocabulary _vocab;
        std::size_t _size;
        std::vector<RelationTable> _tables;
    };

    class StructureBuilder
    {
    public:
        StructureBuilder(Vocabulary vocab, std::size_t size);

        auto add(std::size_t relation, std::span<const Element> tuple) -> StructureBuilder &;
        auto add(std::string_view relation, std::initializer_list<Element> tuple) -> StructureBuilder &;
        auto set_rank(std::size_t relation, std::uint64_t rank, bool value = true) -> StructureBuilder &;
        auto table(std::size_t relation) -> RelationTable & { return _tables[relation]; }
        auto size() const -> std::size_t { return _size; }
        auto vocabulary() const -> const Vocabulary & { return _vocab; }

        auto build() && -> Structure;
        auto build() const & -> Structure;

    private:
        Vocabulary _vocab;
        std::size_t _size;
        std::vector<RelationTable> _tables;
    };

    /// Total number of bits in the encoding of a size-n structure: sum over relations of n^arity.
    auto encoding_length(const Vocabulary &vocab, std::size_t n) -> std::uint64_t;

    auto encode(const Structure &structure) -> BitString;
    auto decode(const Vocabulary &vocab, std::size_t n, const BitString &bits) -> Structure;

    /// Structure file format:
    ///
    ///     vocab E/2
    ///     size 4
    ///     E: (0,1) (1,2) (2,3)
    ///
    /// '#' starts a comment; a missing relation line means the relation is empty.
    auto parse_structure(std::string_view text) -> Structure;
    auto format_structure(const Structure &structure) -> std::string;

    auto read_structure_file(const std::string &path) -> Structure;

    /// Writes through a temporary file followed by a rename.
    auto write_file_atomically(const std::string &path, std::string_view contents) -> void;
    auto read_file(const std::string &path) -> std::string;
}
