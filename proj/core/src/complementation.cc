#include <descomp/complementation.hh>

#include <descomp/evaluator.hh>

#include <charconv>
#include <deque>
#include <sstream>

using std::int64_t;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace descomp
{
    namespace
    {
        auto require_graph(const Structure &g, const char *who) -> void
        {
            if (g.vocabulary() != graph_vocabulary())
                throw StructureError(string(who) + ": expected a graph over E/2");
        }

        auto edge(const Structure &g, Element u, Element v) -> bool
        {
            return g.holds(0, static_cast<std::uint64_t>(u) * g.size() + v);
        }

        auto rename(Formula f, const std::map<string, string> &names) -> Formula
        {
            std::map<string, Term> replacement;
            for (auto &[from, to] : names)
                if (from != to)
                    replacement.emplace(from, var(to));
            return replacement.empty() ? f : substitute(f, replacement);
        }

        auto E(const string &a, const string &b) -> Formula { return atom("E", {var(a), var(b)}); }

        auto canonical_dist() -> Formula
        {
            auto body = land(lor(E("a", "b"), eq(var("a"), var("b"))), suc(var("i"), var("j")));
            return tc({"a", "i"}, {"b", "j"}, body, {Term::min(), Term::min()}, {var("x"), var("d")});
        }

        enum class CountingTest
        {
            Candidate,
            Target
        };

        auto canonical_ndist(CountingTest test) -> Formula
        {
            auto reached = test == CountingTest::Candidate ? build_dist("v'", "d") : build_dist("x", "d");
            auto step = lor(eq(var("c"), var("c'")),
                conjunction({suc(var("c"), var("c'")), reached, neq(var("v'"), var("x"))}));
            auto beta = land(suc(var("v"), var("v'")), step);
            return land(neq(var("x"), Term::min()),
                tc({"v", "c"}, {"v'", "c'"}, beta, {Term::min(), Term::min()}, {Term::max(), var("m")}));
        }

        auto canonical_delta() -> Formula
        {
            auto certified_absent = forall("z",
                lor(build_ndist("z", "d", "m"), land(neq(var("z"), var("v'")), lnot(E("z", "v'")))));
            auto gamma = land(suc(var("v"), var("v'")),
                lor(land(suc(var("c"), var("c'")), build_dist("v'", "d'")), land(eq(var("c"), var("c'")), certified_absent)));
            return land(suc(var("d"), var("d'")),
                tc({"v", "c"}, {"v'", "c'"}, gamma, {Term::min(), Term::min()}, {Term::max(), var("m'")}));
        }

        auto canonical_nonreach() -> Formula
        {
            auto chain = tc({"d", "m"}, {"d'", "m'"}, build_delta(), {Term::min(), Term::min()}, {Term::max(), var("m")});
            return exists("m", land(chain, build_ndist("x", "max_d", "m")));
        }
    }

    auto build_dist(const string &x, const string &d) -> Formula
    {
        static const Formula f = canonical_dist();
        return rename(f, {{"x", x}, {"d", d}});
    }

    auto build_ndist(const string &x, const string &d, const string &m) -> Formula
    {
        static const Formula f = canonical_ndist(CountingTest::Candidate);
        return rename(f, {{"x", x}, {"d", d}, {"m", m}});
    }

    auto build_ndist_prose_reading(const string &x, const string &d, const string &m) -> Formula
    {
        static const Formula f = canonical_ndist(CountingTest::Target);
        return rename(f, {{"x", x}, {"d", d}, {"m", m}});
    }

    auto build_delta(const string &d, const string &m, const string &d2, const string &m2) -> Formula
    {
        static const Formula f = canonical_delta();
        return rename(f, {{"d", d}, {"m", m}, {"d'", d2}, {"m'", m2}});
    }

    auto build_nonreach(const string &x) -> Formula
    {
        static const Formula f = [] {
            // ndist at distance max: substitute the constant for the placeholder variable.
            return substitute(canonical_nonreach(), {{"max_d", Term::max()}});
        }();
        return rename(f, {{"x", x}});
    }

    auto bfs_distances(const Structure &graph) -> vector<int64_t>
    {
        require_graph(graph, "bfs_distances");
        auto n = graph.size();
        vector<int64_t> dist(n, -1);
        if (n == 0)
            return dist;
        std::deque<Element> queue{0};
        dist[0] = 0;
        while (! queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (Element v = 0; v < n; ++v) {
                if (dist[v] < 0 && edge(graph, u, v)) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        return dist;
    }

    namespace
    {
        // Fresh bounded search from min; nothing survives the call.
        auto within(const Structure &g, Element target, size_t d) -> bool
        {
            auto n = g.size();
            vector<char> seen(n, 0), next;
            seen[0] = 1;
            for (size_t step = 0; step < d && ! seen[target]; ++step) {
                next = seen;
                for (Element u = 0; u < n; ++u)
                    if (seen[u])
                        for (Element v = 0; v < n; ++v)
                            if (edge(g, u, v))
                                next[v] = 1;
                seen.swap(next);
            }
            return seen[target] != 0;
        }
    }

    auto inductive_count(const Structure &graph) -> CountSequence
    {
        require_graph(graph, "inductive_count");
        auto n = graph.size();
        CountSequence counts;
        size_t previous = 0;
        for (size_t d = 0; d < n; ++d) {
            size_t count = 0;
            for (Element u = 0; u < n; ++u) {
                if (within(graph, u, d)) {
                    ++count;
                    continue;
                }
                // Absence proof: enumerate the previous round again and check it is complete.
                size_t seen = 0;
                for (Element z = 0; z < n && d > 0; ++z) {
                    if (within(graph, z, d - 1)) {
                        ++seen;
                        if (z == u || edge(graph, z, u))
                            throw Error("inductive_count: inconsistent round " + std::to_string(d));
                    }
                }
                if (seen != previous)
                    throw Error("inductive_count: count mismatch in round " + std::to_string(d));
            }
            counts.push_back(count);
            previous = count;
        }
        return counts;
    }

    auto ndist_reading_diagnostic() -> string
    {
        // Path 0-1-2 plus the isolated vertex 3; x = 3 is unreachable, 3 vertices lie within distance max.
        StructureBuilder b(graph_vocabulary(), 4);
        b.add("E", {0, 1}).add("E", {1, 0}).add("E", {1, 2}).add("E", {2, 1});
        auto g = std::move(b).build();
        Environment env;
        env.elements = {{"x", 3}, {"d", 3}, {"m", 2}};
        auto dist = eval(g, build_dist(), env);
        auto candidate = eval(g, build_ndist(), env);
        auto prose = eval(g, build_ndist_prose_reading(), env);
        std::ostringstream out;
        out << "instance: path 0-1-2 and isolated vertex 3, x=3 d=3 m=2 (count 3)\n";
        out << "dist(x,d) = " << dist << "\n";
        out << "ndist counting dist(v',d) = " << candidate << "\n";
        out << "ndist counting dist(x,d) = " << prose << "\n";
        return out.str();
    }

    // ---------------------------------------------------------------- certificates

    namespace
    {
        auto path_to(const vector<int64_t> &dist, const Structure &g, Element v) -> vector<Element>
        {
            vector<Element> path{v};
            while (v != 0) {
                for (Element u = 0; u < g.size(); ++u) {
                    if (dist[u] == dist[v] - 1 && edge(g, u, v)) {
                        v = u;
                        break;
                    }
                }
                path.push_back(v);
            }
            return {path.rbegin(), path.rend()};
        }
    }

    auto make_certificate(const Structure &graph, Element target) -> Certificate
    {
        require_graph(graph, "make_certificate");
        auto n = graph.size();
        if (target >= n)
            throw Error("make_certificate: target " + std::to_string(target) + " is not a vertex");
        auto dist = bfs_distances(graph);
        if (dist[target] >= 0)
            throw Error("make_certificate: vertex " + std::to_string(target) + " is reachable from min");

        vector<vector<Element>> paths(n);
        for (Element v = 0; v < n; ++v)
            if (dist[v] >= 0)
                paths[v] = path_to(dist, graph, v);

        Certificate cert;
        cert.n = n;
        cert.target = target;
        for (size_t d = 0; d < n; ++d) {
            CertificateRound round;
            round.distance = d;
            for (Element u = 0; u < n; ++u) {
                CertificateEntry entry;
                entry.vertex = u;
                entry.reachable = dist[u] >= 0 && static_cast<size_t>(dist[u]) <= d;
                if (entry.reachable) {
                    entry.path = paths[u];
                    ++round.count;
                } else {
                    for (Element z = 0; z < n; ++z)
                        if (d > 0 && dist[z] >= 0 && static_cast<size_t>(dist[z]) <= d - 1)
                            entry.witnesses.push_back({z, paths[z]});
                }
                round.entries.push_back(std::move(entry));
            }
            cert.rounds.push_back(std::move(round));
        }
        return cert;
    }

    namespace
    {
        auto append_path(string &out, const vector<Element> &path) -> void
        {
            for (size_t i = 0; i < path.size(); ++i) {
                if (i)
                    out += ',';
                out += std::to_string(path[i]);
            }
        }
    }

    auto serialize_certificate(const Certificate &cert) -> string
    {
        string out = "cert n " + std::to_string(cert.n) + " target " + std::to_string(cert.target) + "\n";
        for (auto &round : cert.rounds) {
            out += "round " + std::to_string(round.distance) + " count " + std::to_string(round.count) + "\n";
            for (auto &e : round.entries) {
                if (e.reachable) {
                    out += "v " + std::to_string(e.vertex) + ": ";
                    append_path(out, e.path);
                    out += '\n';
                    continue;
                }
                out += "nv " + std::to_string(e.vertex) + "\n";
                for (auto &w : e.witnesses) {
                    out += "w " + std::to_string(w.vertex) + ": ";
                    append_path(out, w.path);
                    out += '\n';
                }
            }
        }
        return out;
    }

    namespace
    {
        enum class LineKind
        {
            Header,
            Round,
            Reachable,
            Unreachable,
            Witness
        };

        struct SyntaxError
        {
            string message;
        };

        // Splits one certificate line. Path vertices are handed to `on_vertex` one at a time.
        class LineScanner
        {
        public:
            explicit LineScanner(string_view line) : _rest(line) {}

            template <typename OnVertex>
            auto scan(LineKind &kind, std::uint64_t &a, std::uint64_t &b, OnVertex &&on_vertex) -> void
            {
                auto word = next_word();
                if (word == "cert") {
                    kind = LineKind::Header;
                    expect("n");
                    a = number();
                    expect("target");
                    b = number();
                } else if (word == "round") {
                    kind = LineKind::Round;
                    a = number();
                    expect("count");
                    b = number();
                } else if (word == "nv") {
                    kind = LineKind::Unreachable;
                    a = number();
                } else if (word == "v" || word == "w") {
                    kind = word == "v" ? LineKind::Reachable : LineKind::Witness;
                    a = number();
                    skip_space();
                    if (_rest.empty() || _rest.front() != ':')
                        throw SyntaxError{"expected ':' after vertex"};
                    _rest.remove_prefix(1);
                    for (bool first = true;; first = false) {
                        skip_space();
                        if (! first) {
                            if (_rest.empty())
                                break;
                            if (_rest.front() != ',')
                                throw SyntaxError{"expected ',' in path"};
                            _rest.remove_prefix(1);
                        }
                        on_vertex(number());
                    }
                } else {
                    throw SyntaxError{"unknown line '" + string(word) + "'"};
                }
                skip_space();
                if (! _rest.empty())
                    throw SyntaxError{"trailing text"};
            }

        private:
            auto skip_space() -> void
            {
                while (! _rest.empty() && (_rest.front() == ' ' || _rest.front() == '\t' || _rest.front() == '\r'))
                    _rest.remove_prefix(1);
            }

            auto next_word() -> string_view
            {
                skip_space();
                size_t i = 0;
                while (i < _rest.size() && std::isalpha(static_cast<unsigned char>(_rest[i])))
                    ++i;
                auto word = _rest.substr(0, i);
                _rest.remove_prefix(i);
                return word;
            }

            auto expect(string_view word) -> void
            {
                if (next_word() != word)
                    throw SyntaxError{"expected '" + string(word) + "'"};
            }

            auto number() -> std::uint64_t
            {
                skip_space();
                std::uint64_t value = 0;
                auto [end, ec] = std::from_chars(_rest.data(), _rest.data() + _rest.size(), value);
                if (ec != std::errc{} || end == _rest.data())
                    throw SyntaxError{"expected a number"};
                _rest.remove_prefix(static_cast<size_t>(end - _rest.data()));
                return value;
            }

            string_view _rest;
        };

        template <typename OnLine>
        auto for_each_line(string_view text, OnLine &&on_line) -> void
        {
            size_t number = 0;
            while (! text.empty()) {
                auto end = text.find('\n');
                auto line = text.substr(0, end);
                text.remove_prefix(end == string_view::npos ? text.size() : end + 1);
                ++number;
                if (line.find_first_not_of(" \t\r") == string_view::npos)
                    continue;
                on_line(line, number);
            }
        }
    }

    auto parse_certificate(string_view text) -> Certificate
    {
        Certificate cert;
        bool header = false;
        for_each_line(text, [&](string_view line, size_t number) {
            LineKind kind{};
            std::uint64_t a = 0, b = 0;
            vector<Element> path;
            try {
                LineScanner(line).scan(kind, a, b, [&](std::uint64_t v) { path.push_back(static_cast<Element>(v)); });
            } catch (const SyntaxError &e) {
                throw Error("certificate line " + std::to_string(number) + ": " + e.message);
            }
            auto fail = [&](const string &what) {
                throw Error("certificate line " + std::to_string(number) + ": " + what);
            };
            if (kind == LineKind::Header) {
                if (header)
                    fail("duplicate header");
                header = true;
                cert.n = a;
                cert.target = static_cast<Element>(b);
                return;
            }
            if (! header)
                fail("missing header");
            if (kind == LineKind::Round) {
                cert.rounds.push_back({a, b, {}});
                return;
            }
            if (cert.rounds.empty())
                fail("entry before the first round");
            auto &entries = cert.rounds.back().entries;
            if (kind == LineKind::Witness) {
                if (entries.empty() || entries.back().reachable)
                    fail("witness outside an 'nv' block");
                entries.back().witnesses.push_back({static_cast<Element>(a), std::move(path)});
                return;
            }
            CertificateEntry e;
            e.vertex = static_cast<Element>(a);
            e.reachable = kind == LineKind::Reachable;
            e.path = std::move(path);
            entries.push_back(std::move(e));
        });
        if (! header)
            throw Error("certificate: missing header");
        return cert;
    }

    auto to_string(CertificateVerdict v) -> const char *
    {
        switch (v) {
        case CertificateVerdict::Accepted:
            return "accepted";
        case CertificateVerdict::BadPath:
            return "bad-path";
        case CertificateVerdict::BadCount:
            return "bad-count";
        case CertificateVerdict::OrderViolation:
            return "order-violation";
        case CertificateVerdict::TargetPresent:
            return "target-present";
        case CertificateVerdict::Malformed:
            return "malformed";
        case CertificateVerdict::Incomplete:
            return "incomplete";
        }
        return "?";
    }

    namespace
    {
        struct Reject
        {
            CertificateVerdict verdict;
            string detail;
        };

        // Every field below is a counter or a vertex id.
        class StreamingVerifier
        {
        public:
            StreamingVerifier(const Structure &g, Element target) : _g(g), _n(g.size()), _target(target) {}

            auto header(std::uint64_t n, std::uint64_t target) -> void
            {
                if (_have_header)
                    reject(CertificateVerdict::Malformed, "duplicate header");
                _have_header = true;
                if (n != _n)
                    reject(CertificateVerdict::Malformed, "header size " + std::to_string(n) + " differs from the graph");
                if (target != _target)
                    reject(CertificateVerdict::Malformed, "header target differs from the queried vertex");
            }

            auto round(std::uint64_t d, std::uint64_t count) -> void
            {
                need_header();
                close_round();
                if (d != _rounds_done)
                    reject(CertificateVerdict::OrderViolation, "expected round " + std::to_string(_rounds_done));
                if (d >= _n)
                    reject(CertificateVerdict::Malformed, "too many rounds");
                _in_round = true;
                _claimed = count;
                _reachable = 0;
                _next_vertex = 0;
            }

            auto reachable(std::uint64_t u) -> void
            {
                open_entry(u);
                if (u == _target)
                    reject(CertificateVerdict::TargetPresent, "target listed as reachable");
                ++_reachable;
                begin_path(u, _rounds_done);
            }

            auto unreachable(std::uint64_t u) -> void
            {
                open_entry(u);
                _nv_open = true;
                _nv_vertex = u;
                _witnesses = 0;
                _last_witness = -1;
            }

            auto witness(std::uint64_t z) -> void
            {
                end_path();
                if (! _nv_open)
                    reject(CertificateVerdict::Malformed, "witness outside an 'nv' block");
                if (static_cast<int64_t>(z) <= _last_witness)
                    reject(CertificateVerdict::OrderViolation, "witnesses must increase");
                if (z >= _n)
                    reject(CertificateVerdict::BadPath, "witness is not a vertex");
                if (z == _nv_vertex || edge(_g, static_cast<Element>(z), static_cast<Element>(_nv_vertex)))
                    reject(CertificateVerdict::BadPath, "witness " + std::to_string(z) + " reaches the absent vertex");
                if (_rounds_done == 0)
                    reject(CertificateVerdict::BadPath, "round 0 has no previous members");
                _last_witness = static_cast<int64_t>(z);
                ++_witnesses;
                begin_path(z, _rounds_done - 1);
            }

            auto path_vertex(std::uint64_t v) -> void
            {
                if (v >= _n)
                    reject(CertificateVerdict::BadPath, "path vertex out of range");
                if (_path_steps < 0) {
                    if (v != 0)
                        reject(CertificateVerdict::BadPath, "path does not start at min");
                } else {
                    if (! edge(_g, static_cast<Element>(_path_last), static_cast<Element>(v)))
                        reject(CertificateVerdict::BadPath,
                            "no edge " + std::to_string(_path_last) + "->" + std::to_string(v));
                    if (static_cast<std::uint64_t>(_path_steps) + 1 > _path_limit)
                        reject(CertificateVerdict::BadPath, "path too long for its round");
                }
                ++_path_steps;
                _path_last = v;
            }

            auto finish() -> void
            {
                need_header();
                close_round();
                if (_rounds_done != _n)
                    reject(CertificateVerdict::Incomplete,
                        "certificate stops after " + std::to_string(_rounds_done) + " of " + std::to_string(_n) + " rounds");
            }

            auto end_path() -> void
            {
                if (! _path_open)
                    return;
                _path_open = false;
                if (_path_steps < 0)
                    reject(CertificateVerdict::BadPath, "empty path");
                if (_path_last != _path_end)
                    reject(CertificateVerdict::BadPath, "path ends at " + std::to_string(_path_last) + ", not " +
                        std::to_string(_path_end));
            }

        private:
            [[noreturn]] static auto reject(CertificateVerdict v, string detail) -> void { throw Reject{v, std::move(detail)}; }

            auto need_header() -> void
            {
                if (! _have_header)
                    reject(CertificateVerdict::Malformed, "missing header");
            }

            auto begin_path(std::uint64_t end, std::uint64_t limit) -> void
            {
                _path_open = true;
                _path_end = end;
                _path_limit = limit;
                _path_steps = -1;
                _path_last = 0;
            }

            auto open_entry(std::uint64_t u) -> void
            {
                end_path();
                close_block();
                if (! _in_round)
                    reject(CertificateVerdict::Malformed, "entry before the first round");
                if (u != _next_vertex)
                    reject(CertificateVerdict::OrderViolation, "expected vertex " + std::to_string(_next_vertex));
                ++_next_vertex;
            }

            auto close_block() -> void
            {
                if (! _nv_open)
                    return;
                _nv_open = false;
                if (_witnesses != _previous)
                    reject(CertificateVerdict::BadCount, "absence of " + std::to_string(_nv_vertex) + " lists " +
                        std::to_string(_witnesses) + " members, previous round has " + std::to_string(_previous));
            }

            auto close_round() -> void
            {
                end_path();
                close_block();
                if (! _in_round)
                    return;
                _in_round = false;
                if (_next_vertex != _n)
                    reject(CertificateVerdict::Incomplete, "round " + std::to_string(_rounds_done) + " lists " +
                        std::to_string(_next_vertex) + " of " + std::to_string(_n) + " vertices");
                if (_reachable != _claimed)
                    reject(CertificateVerdict::BadCount, "round " + std::to_string(_rounds_done) + " claims " +
                        std::to_string(_claimed) + " but proves " + std::to_string(_reachable));
                _previous = _claimed;
                ++_rounds_done;
            }

            const Structure &_g;
            std::uint64_t _n;
            std::uint64_t _target;
            bool _have_header = false;
            bool _in_round = false;
            std::uint64_t _rounds_done = 0;
            std::uint64_t _claimed = 0;
            std::uint64_t _reachable = 0;
            std::uint64_t _previous = 0;
            std::uint64_t _next_vertex = 0;
            bool _nv_open = false;
            std::uint64_t _nv_vertex = 0;
            std::uint64_t _witnesses = 0;
            int64_t _last_witness = -1;
            bool _path_open = false;
            std::uint64_t _path_end = 0;
            std::uint64_t _path_limit = 0;
            int64_t _path_steps = -1;
            std::uint64_t _path_last = 0;
        };

        template <typename Run>
        auto run_verifier(const Structure &graph, Element target, Run &&run) -> VerificationResult
        {
            require_graph(graph, "verify_certificate");
            StreamingVerifier verifier(graph, target);
            VerificationResult result;
            try {
                run(verifier, result.line);
                verifier.finish();
                result.verdict = CertificateVerdict::Accepted;
            } catch (const Reject &r) {
                result.verdict = r.verdict;
                result.detail = r.detail;
            }
            return result;
        }
    }

    auto verify_certificate(const Structure &graph, Element target, const Certificate &cert) -> VerificationResult
    {
        return run_verifier(graph, target, [&](StreamingVerifier &v, size_t &line) {
            auto feed_path = [&](const vector<Element> &path) {
                for (auto x : path)
                    v.path_vertex(x);
                v.end_path();
            };
            line = 1;
            v.header(cert.n, cert.target);
            for (auto &round : cert.rounds) {
                ++line;
                v.round(round.distance, round.count);
                for (auto &e : round.entries) {
                    ++line;
                    if (e.reachable) {
                        v.reachable(e.vertex);
                        feed_path(e.path);
                        continue;
                    }
                    v.unreachable(e.vertex);
                    for (auto &w : e.witnesses) {
                        ++line;
                        v.witness(w.vertex);
                        feed_path(w.path);
                    }
                }
            }
            line = 0;
        });
    }

    auto verify_certificate_text(const Structure &graph, Element target, string_view text) -> VerificationResult
    {
        return run_verifier(graph, target, [&](StreamingVerifier &v, size_t &line_number) {
            for_each_line(text, [&](string_view line, size_t number) {
                line_number = number;
                // The line kind is known before the path, so the entry is opened on the first path vertex.
                LineKind kind{};
                std::uint64_t a = 0, b = 0;
                bool opened = false;
                auto open = [&] {
                    if (kind == LineKind::Reachable)
                        v.reachable(a);
                    else
                        v.witness(a);
                    opened = true;
                };
                try {
                    LineScanner(line).scan(kind, a, b, [&](std::uint64_t x) {
                        if (! opened)
                            open();
                        v.path_vertex(x);
                    });
                } catch (const SyntaxError &e) {
                    throw Reject{CertificateVerdict::Malformed, e.message};
                }
                switch (kind) {
                case LineKind::Header:
                    v.header(a, b);
                    break;
                case LineKind::Round:
                    v.round(a, b);
                    break;
                case LineKind::Unreachable:
                    v.unreachable(a);
                    break;
                case LineKind::Reachable:
                case LineKind::Witness:
                    v.end_path();
                    break;
                }
            });
            line_number = 0;
        });
    }

    auto mutate_certificate(const Certificate &cert, const Structure &graph, Rng &rng) -> Certificate
    {
        require_graph(graph, "mutate_certificate");
        if (cert.rounds.empty())
            throw Error("mutate_certificate: empty certificate");
        auto n = cert.n;
        auto other = [&](std::uint64_t value, std::uint64_t range) {
            // uniform over [0, range] without `value`
            auto r = rng.below(range);
            return r >= value ? r + 1 : r;
        };

        for (;;) {
            auto out = cert;
            auto &round = out.rounds[rng.below(out.rounds.size())];
            auto &entry = round.entries[rng.below(round.entries.size())];
            vector<Element> *path = nullptr;
            Element *owner = nullptr;
            if (entry.reachable) {
                path = &entry.path;
                owner = &entry.vertex;
            } else if (! entry.witnesses.empty()) {
                auto &w = entry.witnesses[rng.below(entry.witnesses.size())];
                path = &w.path;
                owner = &w.vertex;
            }

            switch (rng.below(8)) {
            case 0:
                round.count = other(round.count, n + 1);
                return out;
            case 1:
                round.distance = other(round.distance, n + 1);
                return out;
            case 2:
                entry.vertex = static_cast<Element>(other(entry.vertex, n));
                return out;
            case 3:
                if (! path || entry.reachable)
                    break;
                *owner = static_cast<Element>(other(*owner, n));
                return out;
            case 4:
                if (! path)
                    break;
                path->back() = static_cast<Element>(other(path->back(), n));
                return out;
            case 5:
                if (! path || path->size() < 2)
                    break;
                path->front() = static_cast<Element>(other(path->front(), n));
                return out;
            case 6: {
                if (! path || path->size() < 3)
                    break;
                auto i = 1 + rng.below(path->size() - 2);
                auto prev = (*path)[i - 1], next = (*path)[i + 1];
                vector<Element> breaking;
                for (Element r = 0; r < n; ++r)
                    if (r != (*path)[i] && (! edge(graph, prev, r) || ! edge(graph, r, next)))
                        breaking.push_back(r);
                if (breaking.empty())
                    break;
                (*path)[i] = breaking[rng.below(breaking.size())];
                return out;
            }
            case 7:
                if (rng.chance(0.5))
                    out.n = other(out.n, n + 1);
                else
                    out.target = static_cast<Element>(other(out.target, n));
                return out;
            }
        }
    }
}
