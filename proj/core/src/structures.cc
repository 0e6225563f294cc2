#include <descomp/structures.hh>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

using std::size_t;
using std::string;
using std::string_view;
using std::uint64_t;
using std::vector;

namespace descomp
{
    namespace
    {
        constexpr std::array reserved_names{"min", "max", "suc", "TC", "DTC", "all", "ex", "exR"};

        auto trim(string_view s) -> string_view
        {
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        auto parse_unsigned(string_view s, const char *what) -> uint64_t
        {
            s = trim(s);
            if (s.empty() || ! std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw StructureError(string("expected a non-negative integer for ") + what + ", got '" + string(s) + "'");
            uint64_t value = 0;
            for (char c : s) {
                if (value > (std::numeric_limits<uint64_t>::max() - 9) / 10)
                    throw StructureError(string("integer too large for ") + what);
                value = value * 10 + static_cast<uint64_t>(c - '0');
            }
            return value;
        }

        auto empty_tables(const Vocabulary &vocab, size_t n) -> vector<RelationTable>
        {
            vector<RelationTable> tables;
            tables.reserve(vocab.size());
            for (auto &r : vocab.relations())
                tables.emplace_back(checked_power(n, r.arity));
            return tables;
        }

        auto check_tuple(const RelationSymbol &r, std::span<const Element> tuple, size_t n) -> void
        {
            if (tuple.size() != r.arity)
                throw StructureError("arity mismatch for " + r.name + ": expected " + std::to_string(r.arity) +
                    " entries, got " + std::to_string(tuple.size()));
            for (auto e : tuple)
                if (e >= n)
                    throw StructureError("element " + std::to_string(e) + " of a " + r.name +
                        " tuple is out of range [0," + std::to_string(n) + ")");
        }
    }

    auto is_reserved_name(string_view name) -> bool
    {
        return std::find(reserved_names.begin(), reserved_names.end(), name) != reserved_names.end();
    }

    auto is_identifier(string_view name) -> bool
    {
        if (name.empty() || ! (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
            return false;
        size_t i = 1;
        while (i < name.size() && (std::isalnum(static_cast<unsigned char>(name[i])) || name[i] == '_'))
            ++i;
        while (i < name.size() && name[i] == '\'')
            ++i;
        return i == name.size();
    }

    Vocabulary::Vocabulary(vector<RelationSymbol> relations) : _relations(std::move(relations))
    {
        std::set<string> seen;
        for (auto &r : _relations) {
            if (! is_identifier(r.name))
                throw StructureError("invalid relation name '" + r.name + "'");
            if (is_reserved_name(r.name))
                throw StructureError("relation name '" + r.name + "' is reserved");
            if (r.arity < 1)
                throw StructureError("relation " + r.name + " must have arity >= 1");
            if (! seen.insert(r.name).second)
                throw StructureError("duplicate relation name '" + r.name + "'");
        }
    }

    auto Vocabulary::index_of(string_view name) const -> std::optional<size_t>
    {
        for (size_t i = 0; i < _relations.size(); ++i)
            if (_relations[i].name == name)
                return i;
        return std::nullopt;
    }

    auto Vocabulary::to_string() const -> string
    {
        string out;
        for (auto &r : _relations) {
            if (! out.empty())
                out += ' ';
            out += r.name + "/" + std::to_string(r.arity);
        }
        return out;
    }

    auto Vocabulary::parse(string_view text) -> Vocabulary
    {
        vector<RelationSymbol> relations;
        std::istringstream in{string(text)};
        string word;
        while (in >> word) {
            auto slash = word.find('/');
            if (slash == string::npos)
                throw StructureError("expected <name>/<arity> in vocabulary, got '" + word + "'");
            auto arity = parse_unsigned(string_view(word).substr(slash + 1), "arity");
            if (arity > 16)
                throw StructureError("arity of " + word.substr(0, slash) + " is unreasonably large");
            relations.push_back({word.substr(0, slash), static_cast<unsigned>(arity)});
        }
        return Vocabulary(std::move(relations));
    }

    auto graph_vocabulary() -> const Vocabulary &
    {
        static const Vocabulary vocab({{"E", 2}});
        return vocab;
    }

    auto checked_power(uint64_t n, unsigned k) -> uint64_t
    {
        uint64_t result = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (n != 0 && result > (uint64_t{1} << 62) / n)
                throw StructureError("size " + std::to_string(n) + "^" + std::to_string(k) + " is too large");
            result *= n;
        }
        return result;
    }

    auto rank_lex(std::span<const Element> tuple, size_t n) -> uint64_t
    {
        uint64_t rank = 0;
        for (auto e : tuple) {
            if (e >= n)
                throw StructureError("tuple entry " + std::to_string(e) + " out of range [0," + std::to_string(n) + ")");
            rank = rank * n + e;
        }
        return rank;
    }

    auto unrank_lex(uint64_t index, unsigned k, size_t n) -> Tuple
    {
        if (n == 0 || index >= checked_power(n, k))
            throw StructureError("rank " + std::to_string(index) + " out of range for " + std::to_string(k) +
                "-tuples over " + std::to_string(n) + " elements");
        Tuple t(k);
        for (unsigned i = k; i-- > 0;) {
            t[i] = static_cast<Element>(index % n);
            index /= n;
        }
        return t;
    }

    auto BitString::parse(string_view text) -> BitString
    {
        vector<bool> bits;
        bits.reserve(text.size());
        for (char c : text) {
            if (c == '0' || c == '1')
                bits.push_back(c == '1');
            else if (! std::isspace(static_cast<unsigned char>(c)))
                throw StructureError(string("invalid character '") + c + "' in bit string");
        }
        return BitString(std::move(bits));
    }

    auto BitString::to_string() const -> string
    {
        string out(_bits.size(), '0');
        for (size_t i = 0; i < _bits.size(); ++i)
            if (_bits[i])
                out[i] = '1';
        return out;
    }

    Structure::Structure(Vocabulary vocab, size_t size, const std::map<string, vector<Tuple>> &tables) :
        _vocab(std::move(vocab)),
        _size(size)
    {
        if (_size < 1)
            throw StructureError("structure size must be at least 1");
        _tables = empty_tables(_vocab, _size);
        for (auto &[name, tuples] : tables) {
            auto index = _vocab.index_of(name);
            if (! index)
                throw StructureError("unknown relation '" + name + "'");
            for (auto &t : tuples) {
                check_tuple(_vocab[*index], t, _size);
                _tables[*index].set(rank_lex(t, _size));
            }
        }
    }

    Structure::Structure(Vocabulary vocab, size_t size, vector<RelationTable> tables) :
        _vocab(std::move(vocab)),
        _size(size),
        _tables(std::move(tables))
    {
    }

    auto Structure::holds(size_t relation, std::span<const Element> tuple) const -> bool
    {
        return _tables[relation].test(rank_lex(tuple, _size));
    }

    auto Structure::tuples(size_t relation) const -> vector<Tuple>
    {
        vector<Tuple> out;
        auto &t = _tables[relation];
        for (auto i = t.find_first(); i != RelationTable::npos; i = t.find_next(i))
            out.push_back(unrank_lex(i, _vocab[relation].arity, _size));
        return out;
    }

    auto Structure::tuples(string_view relation) const -> vector<Tuple>
    {
        auto index = _vocab.index_of(relation);
        if (! index)
            throw StructureError("unknown relation '" + string(relation) + "'");
        return tuples(*index);
    }

    StructureBuilder::StructureBuilder(Vocabulary vocab, size_t size) :
        _vocab(std::move(vocab)),
        _size(size)
    {
        if (_size < 1)
            throw StructureError("structure size must be at least 1");
        _tables = empty_tables(_vocab, _size);
    }

    auto StructureBuilder::add(size_t relation, std::span<const Element> tuple) -> StructureBuilder &
    {
        check_tuple(_vocab[relation], tuple, _size);
        _tables[relation].set(rank_lex(tuple, _size));
        return *this;
    }

    auto StructureBuilder::add(string_view relation, std::initializer_list<Element> tuple) -> StructureBuilder &
    {
        auto index = _vocab.index_of(relation);
        if (! index)
            throw StructureError("unknown relation '" + string(relation) + "'");
        return add(*index, std::span<const Element>(tuple.begin(), tuple.size()));
    }

    auto StructureBuilder::set_rank(size_t relation, uint64_t rank, bool value) -> StructureBuilder &
    {
        _tables[relation].set(rank, value);
        return *this;
    }

    auto StructureBuilder::build() && -> Structure
    {
        return Structure(std::move(_vocab), _size, std::move(_tables));
    }

    auto StructureBuilder::build() const & -> Structure
    {
        return Structure(_vocab, _size, _tables);
    }

    auto encoding_length(const Vocabulary &vocab, size_t n) -> uint64_t
    {
        uint64_t total = 0;
        for (auto &r : vocab.relations())
            total += checked_power(n, r.arity);
        return total;
    }

    auto encode(const Structure &structure) -> BitString
    {
        vector<bool> bits;
        bits.reserve(encoding_length(structure.vocabulary(), structure.size()));
        for (size_t r = 0; r < structure.vocabulary().size(); ++r) {
            auto &table = structure.table(r);
            for (size_t i = 0; i < table.size(); ++i)
                bits.push_back(table.test(i));
        }
        return BitString(std::move(bits));
    }

    auto decode(const Vocabulary &vocab, size_t n, const BitString &bits) -> Structure
    {
        auto expected = encoding_length(vocab, n);
        if (bits.size() != expected)
            throw StructureError("wrong encoding length: expected " + std::to_string(expected) + " bits, got " +
                std::to_string(bits.size()));
        StructureBuilder builder(vocab, n);
        size_t offset = 0;
        for (size_t r = 0; r < vocab.size(); ++r) {
            auto &table = builder.table(r);
            for (size_t i = 0; i < table.size(); ++i)
                table.set(i, bits[offset++]);
        }
        return std::move(builder).build();
    }

    auto parse_structure(string_view text) -> Structure
    {
        std::optional<Vocabulary> vocab;
        std::optional<size_t> size;
        std::map<string, vector<Tuple>> tables;
        std::set<string> seen_lines;

        std::istringstream in{string(text)};
        string raw;
        size_t line_number = 0;
        while (std::getline(in, raw)) {
            ++line_number;
            string_view line = raw;
            if (auto hash = line.find('#'); hash != string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            auto where = [&] { return "line " + std::to_string(line_number) + ": "; };
            try {
                if (! vocab) {
                    if (line.substr(0, 5) != "vocab" || (line.size() > 5 && ! std::isspace(static_cast<unsigned char>(line[5]))))
                        throw StructureError("expected 'vocab' header");
                    vocab = Vocabulary::parse(line.substr(5));
                    continue;
                }
                if (! size) {
                    if (line.substr(0, 4) != "size" || line.size() < 5 || ! std::isspace(static_cast<unsigned char>(line[4])))
                        throw StructureError("expected 'size <n>'");
                    auto n = parse_unsigned(line.substr(4), "size");
                    if (n < 1 || n > (1u << 20))
                        throw StructureError("size must be between 1 and 2^20");
                    size = static_cast<size_t>(n);
                    continue;
                }

                auto colon = line.find(':');
                if (colon == string_view::npos)
                    throw StructureError("expected '<relation>: (..) (..)'");
                string name{trim(line.substr(0, colon))};
                auto index = vocab->index_of(name);
                if (! index)
                    throw StructureError("unknown relation '" + name + "'");
                if (! seen_lines.insert(name).second)
                    throw StructureError("relation " + name + " listed twice");
                auto &tuples = tables[name];

                auto rest = trim(line.substr(colon + 1));
                while (! rest.empty()) {
                    if (rest.front() != '(')
                        throw StructureError("expected '(' in tuple list of " + name);
                    auto close = rest.find(')');
                    if (close == string_view::npos)
                        throw StructureError("unterminated tuple in " + name);
                    Tuple t;
                    auto body = rest.substr(1, close - 1);
                    size_t start = 0;
                    while (true) {
                        auto comma = body.find(',', start);
                        auto piece = body.substr(start, comma == string_view::npos ? string_view::npos : comma - start);
                        auto value = parse_unsigned(piece, "tuple entry");
                        if (value > std::numeric_limits<Element>::max())
                            throw StructureError("tuple entry too large");
                        t.push_back(static_cast<Element>(value));
                        if (comma == string_view::npos)
                            break;
                        start = comma + 1;
                    }
                    tuples.push_back(std::move(t));
                    rest = trim(rest.substr(close + 1));
                }
            }
            catch (const StructureError &e) {
                throw StructureError(where() + e.what());
            }
        }
        if (! vocab)
            throw StructureError("missing 'vocab' header");
        if (! size)
            throw StructureError("missing 'size' line");
        return Structure(*vocab, *size, tables);
    }

    auto format_structure(const Structure &structure) -> string
    {
        std::ostringstream out;
        out << "vocab " << structure.vocabulary().to_string() << '\n';
        out << "size " << structure.size() << '\n';
        for (size_t r = 0; r < structure.vocabulary().size(); ++r) {
            if (structure.table(r).none())
                continue;
            out << structure.vocabulary()[r].name << ':';
            for (auto &t : structure.tuples(r)) {
                out << " (";
                for (size_t i = 0; i < t.size(); ++i)
                    out << (i ? "," : "") << t[i];
                out << ')';
            }
            out << '\n';
        }
        return out.str();
    }

    auto read_file(const string &path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error("cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto read_structure_file(const string &path) -> Structure
    {
        return parse_structure(read_file(path));
    }

    auto write_file_atomically(const string &path, string_view contents) -> void
    {
        namespace fs = std::filesystem;
        fs::path target(path);
        auto temp = target;
        temp += ".tmp";
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (! out)
                throw Error("cannot write '" + temp.string() + "'");
            out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
            if (! out)
                throw Error("write to '" + temp.string() + "' failed");
        }
        std::error_code ec;
        fs::rename(temp, target, ec);
        if (ec) {
            fs::remove(temp, ec);
            throw Error("cannot rename onto '" + path + "'");
        }
    }
}
