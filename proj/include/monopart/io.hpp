#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "monopart/colored_graph.hpp"
#include "monopart/errors.hpp"
#include "monopart/family.hpp"
#include "monopart/oracle.hpp"
#include "monopart/rational.hpp"
#include "monopart/rng.hpp"

namespace monopart {

namespace detail {

inline std::string chomp(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

inline bool blank(const std::string& s) {
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace detail

// Coloring file: "n <N>" then N-1 rows; row i (1-based) has N-i characters,
// the j-th being the color of the edge between vertices i and i+j.
inline ColoredCompleteGraph read_coloring(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("coloring: missing header", 1);
    std::istringstream head(detail::chomp(line));
    std::string tag;
    long long n = 0;
    if (!(head >> tag >> n) || tag != "n" || !(head >> std::ws).eof())
        throw parse_error("coloring: header must be \"n <N>\"", 1);
    if (n < 1 || n > 100000) throw parse_error("coloring: vertex count out of range", 1);

    Graph red(static_cast<int>(n));
    for (long long i = 1; i < n; ++i) {
        if (!std::getline(in, line))
            throw parse_error("coloring: missing row for vertex " + std::to_string(i), i + 1);
        std::string row = detail::chomp(line);
        if (static_cast<long long>(row.size()) != n - i)
            throw parse_error("coloring: row has wrong length", i + 1);
        for (long long j = 1; j <= n - i; ++j) {
            char ch = row[static_cast<std::size_t>(j - 1)];
            if (ch == 'R')
                red.add_edge(static_cast<int>(i - 1), static_cast<int>(i + j - 1));
            else if (ch != 'B')
                throw parse_error("coloring: colors must be R or B", i + 1);
        }
    }
    long long extra_line = n + 1;
    while (std::getline(in, line)) {
        if (!detail::blank(line)) throw parse_error("coloring: trailing content", extra_line);
        ++extra_line;
    }
    return ColoredCompleteGraph(std::move(red));
}

inline void write_coloring(std::ostream& out, const ColoredCompleteGraph& g) {
    int n = g.vertex_count();
    out << "n " << n << "\n";
    for (int i = 0; i < n - 1; ++i) {
        std::string row(static_cast<std::size_t>(n - 1 - i), 'B');
        for (int j = i + 1; j < n; ++j)
            if (g.color(i, j) == Color::Red) row[static_cast<std::size_t>(j - i - 1)] = 'R';
        out << row << "\n";
    }
}

inline ColoredCompleteGraph read_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open coloring file: " + path);
    return read_coloring(in);
}

inline void write_coloring_file(const std::string& path, const ColoredCompleteGraph& g) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open output file: " + path);
    write_coloring(out, g);
}

// Certificate file:
//   certificate n=<N> pieces=<P>
//   piece <id> color=<R|B> family=<name> n=<m>
//   map <fv>:<hv> ... (family vertices 1..m, host vertices 1..N)
inline void write_certificate(std::ostream& out, const PartitionCertificate& cert) {
    out << "certificate n=" << cert.host_n << " pieces=" << cert.pieces.size() << "\n";
    for (std::size_t id = 0; id < cert.pieces.size(); ++id) {
        const CertPiece& piece = cert.pieces[id];
        out << "piece " << id + 1 << " color=" << color_char(piece.color)
            << " family=" << piece.family_name << " n=" << piece.member_n << "\n";
        out << "map";
        for (std::size_t i = 0; i < piece.host_vertices.size(); ++i)
            out << " " << i + 1 << ":" << piece.host_vertices[i] + 1;
        out << "\n";
    }
}

inline PartitionCertificate read_certificate(std::istream& in) {
    std::string line;
    long lineno = 0;
    auto next_line = [&](const char* what) {
        while (std::getline(in, line)) {
            ++lineno;
            line = detail::chomp(line);
            if (!detail::blank(line)) return;
        }
        throw parse_error(std::string("certificate: missing ") + what, lineno);
    };

    next_line("header");
    long long n = 0, p = 0;
    {
        std::istringstream head(line);
        std::string tag, nfield, pfield;
        if (!(head >> tag >> nfield >> pfield) || tag != "certificate" ||
            nfield.rfind("n=", 0) != 0 || pfield.rfind("pieces=", 0) != 0 ||
            !(head >> std::ws).eof())
            throw parse_error("certificate: bad header", lineno);
        try {
            n = std::stoll(nfield.substr(2));
            p = std::stoll(pfield.substr(7));
        } catch (...) {
            throw parse_error("certificate: bad header numbers", lineno);
        }
    }
    if (n < 0 || p < 0) throw parse_error("certificate: negative counts", lineno);

    PartitionCertificate cert;
    cert.host_n = static_cast<int>(n);
    for (long long id = 1; id <= p; ++id) {
        next_line("piece line");
        std::istringstream ps(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ps >> tok) tokens.push_back(tok);
        if (tokens.size() < 5 || tokens[0] != "piece")
            throw parse_error("certificate: bad piece line", lineno);
        if (tokens[1] != std::to_string(id))
            throw parse_error("certificate: piece ids must be 1..P in order", lineno);
        if (tokens[2] != "color=R" && tokens[2] != "color=B")
            throw parse_error("certificate: bad color", lineno);
        const std::string& last = tokens.back();
        if (last.rfind("n=", 0) != 0 || tokens[3].rfind("family=", 0) != 0)
            throw parse_error("certificate: bad piece fields", lineno);
        std::string family = tokens[3].substr(7);
        for (std::size_t t = 4; t + 1 < tokens.size(); ++t) family += " " + tokens[t];
        long long m = 0;
        try {
            m = std::stoll(last.substr(2));
        } catch (...) {
            throw parse_error("certificate: bad member size", lineno);
        }
        if (m < 1) throw parse_error("certificate: member size must be positive", lineno);

        CertPiece piece;
        piece.color = tokens[2] == "color=R" ? Color::Red : Color::Blue;
        piece.family_name = family;
        piece.member_n = static_cast<int>(m);
        piece.host_vertices.assign(static_cast<std::size_t>(m), -1);

        next_line("map line");
        std::istringstream ms(line);
        if (!(ms >> tok) || tok != "map")
            throw parse_error("certificate: expected map line", lineno);
        long long seen = 0;
        while (ms >> tok) {
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw parse_error("certificate: map entries are <fv>:<hv>", lineno);
            long long fv = 0, hv = 0;
            try {
                fv = std::stoll(tok.substr(0, colon));
                hv = std::stoll(tok.substr(colon + 1));
            } catch (...) {
                throw parse_error("certificate: bad map entry", lineno);
            }
            if (fv < 1 || fv > m) throw parse_error("certificate: family vertex out of range", lineno);
            if (hv < 1 || hv > n) throw parse_error("certificate: host vertex out of range", lineno);
            if (piece.host_vertices[static_cast<std::size_t>(fv - 1)] != -1)
                throw parse_error("certificate: family vertex mapped twice", lineno);
            piece.host_vertices[static_cast<std::size_t>(fv - 1)] = static_cast<int>(hv - 1);
            ++seen;
        }
        if (seen != m) throw parse_error("certificate: map must cover family vertices 1..n", lineno);
        cert.pieces.push_back(std::move(piece));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::blank(line)) throw parse_error("certificate: trailing content", lineno);
    }
    return cert;
}

inline PartitionCertificate read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open certificate file: " + path);
    return read_certificate(in);
}

inline void write_certificate_file(const std::string& path, const PartitionCertificate& cert) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open output file: " + path);
    write_certificate(out, cert);
}

struct VerifyReport {
    bool accepted = false;
    std::vector<std::string> violations;
};

// Checks a certificate against the coloring and the two families, without
// trusting anything the partitioner did: disjointness, exact coverage, and
// every piece being a correctly colored copy of the right family member.
inline VerifyReport verify_certificate(const ColoredCompleteGraph& g, const GraphFamily& f_red,
                                       const GraphFamily& f_blue, const PartitionCertificate& cert) {
    VerifyReport rep;
    auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

    if (cert.host_n != g.vertex_count()) {
        fail("certificate is for n=" + std::to_string(cert.host_n) + " but the coloring has n=" +
             std::to_string(g.vertex_count()));
        return rep;
    }

    std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t id = 0; id < cert.pieces.size(); ++id) {
        const CertPiece& piece = cert.pieces[id];
        std::string tag = "piece " + std::to_string(id + 1);
        const GraphFamily& fam = piece.color == Color::Red ? f_red : f_blue;
        if (piece.family_name != fam.name()) {
            fail(tag + ": family \"" + piece.family_name + "\" does not match the " +
                 color_name(piece.color) + " family \"" + fam.name() + "\"");
            continue;
        }
        if (static_cast<int>(piece.host_vertices.size()) != piece.member_n) {
            fail(tag + ": map size disagrees with member size");
            continue;
        }
        bool in_range = true;
        for (int h : piece.host_vertices)
            if (h < 0 || h >= g.vertex_count()) {
                fail(tag + ": host vertex out of range");
                in_range = false;
                break;
            }
        if (!in_range) continue;
        for (int h : piece.host_vertices) {
            if (owner[static_cast<std::size_t>(h)] == static_cast<int>(id)) {
                fail(tag + ": host vertex " + std::to_string(h + 1) + " used twice within the piece");
            } else if (owner[static_cast<std::size_t>(h)] != -1) {
                fail(tag + ": host vertex " + std::to_string(h + 1) + " already used by piece " +
                     std::to_string(owner[static_cast<std::size_t>(h)] + 1));
            } else {
                owner[static_cast<std::size_t>(h)] = static_cast<int>(id);
            }
        }
        const Graph* member = nullptr;
        try {
            member = &fam.member(piece.member_n);
        } catch (const std::exception& e) {
            fail(tag + ": family has no member of size " + std::to_string(piece.member_n) + " (" +
                 e.what() + ")");
            continue;
        }
        for (auto [u, v] : member->edges()) {
            int hu = piece.host_vertices[static_cast<std::size_t>(u)];
            int hv = piece.host_vertices[static_cast<std::size_t>(v)];
            if (hu == hv) continue;  // already reported as a duplicate
            if (g.color(hu, hv) != piece.color)
                fail(tag + ": edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                     " lands on a " + color_name(other(piece.color)) + " host edge");
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (owner[static_cast<std::size_t>(v)] == -1)
            fail("vertex " + std::to_string(v + 1) + " is not covered by any piece");

    rep.accepted = rep.violations.empty();
    return rep;
}

// --- coloring generators ---

inline ColoredCompleteGraph gen_random(int n, const Rational& p, std::uint64_t seed) {
    if (n < 1) throw precondition_error("gen_random: n must be >= 1");
    if (p < Rational(0) || Rational(1) < p)
        throw precondition_error("gen_random: p must lie in [0,1]");
    Rng rng(seed);
    Graph red(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p.num(), p.den())) red.add_edge(u, v);
    return ColoredCompleteGraph(std::move(red));
}

// red across the split, blue inside the two classes {1..s} and {s+1..n}
inline ColoredCompleteGraph gen_bipartite_split(int n, int s) {
    if (n < 1) throw precondition_error("gen_bipartite_split: n must be >= 1");
    if (s < 0 || s > n) throw precondition_error("gen_bipartite_split: split out of range");
    Graph red(n);
    for (int u = 0; u < s; ++u)
        for (int v = s; v < n; ++v) red.add_edge(u, v);
    return ColoredCompleteGraph(std::move(red));
}

struct AdversarialResult {
    ColoredCompleteGraph coloring{Graph(1)};
    long long mono_triangles = 0;
    int steps_used = 0;
};

// Hill-climbs edge recolorings to minimize the number of monochromatic
// triangles, starting from a balanced random coloring. Deterministic in the
// seed; stops at a local minimum or after max_steps flips.
inline AdversarialResult gen_adversarial(int n, int max_steps, std::uint64_t seed) {
    if (n < 1) throw precondition_error("gen_adversarial: n must be >= 1");
    Rng rng(seed);
    std::vector<Bitset> red(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    std::vector<Bitset> blue(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (rng.chance(1, 2)) {
                red[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
                red[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
            } else {
                blue[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
                blue[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
            }
        }

    auto mono_through = [&](const std::vector<Bitset>& adj, int u, int v) {
        return static_cast<long long>(
            Bitset::count_and(adj[static_cast<std::size_t>(u)], adj[static_cast<std::size_t>(v)]));
    };
    long long total = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (red[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)))
                total += mono_through(red, u, v);
            else
                total += mono_through(blue, u, v);
        }
    total /= 3;

    int steps = 0;
    while (steps < max_steps) {
        long long best_delta = 0;
        int bu = -1, bv = -1;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                bool is_red = red[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
                long long delta = is_red ? mono_through(blue, u, v) - mono_through(red, u, v)
                                         : mono_through(red, u, v) - mono_through(blue, u, v);
                if (delta < best_delta) {
                    best_delta = delta;
                    bu = u;
                    bv = v;
                }
            }
        if (bu < 0) break;
        auto& from = red[static_cast<std::size_t>(bu)].test(static_cast<std::size_t>(bv)) ? red : blue;
        auto& to = red[static_cast<std::size_t>(bu)].test(static_cast<std::size_t>(bv)) ? blue : red;
        from[static_cast<std::size_t>(bu)].reset(static_cast<std::size_t>(bv));
        from[static_cast<std::size_t>(bv)].reset(static_cast<std::size_t>(bu));
        to[static_cast<std::size_t>(bu)].set(static_cast<std::size_t>(bv));
        to[static_cast<std::size_t>(bv)].set(static_cast<std::size_t>(bu));
        total += best_delta;
        ++steps;
    }

    Graph red_graph(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (red[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)))
                red_graph.add_edge(u, v);
    AdversarialResult res{ColoredCompleteGraph(std::move(red_graph)), total, steps};
    return res;
}

// Family specs accepted by the command line: the builtins plus
// "lower_bound:D[:SEED]" and "dir:PATH". The default seed fills in when a
// spec omits one.
inline GraphFamily family_from_spec(const std::string& spec, std::uint64_t default_seed) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw precondition_error("empty family spec");
    const std::string& head = parts[0];
    if (head == "dir") {
        std::string path = spec.substr(4);
        if (path.empty()) throw precondition_error("dir family spec needs a path");
        return GraphFamily::from_directory(path);
    }
    if (head == "lower_bound" && (parts.size() == 2 || parts.size() == 3))
        return GraphFamily::lower_bound(std::stoi(parts[1]),
                                        parts.size() == 3 ? std::stoull(parts[2]) : default_seed);
    if (head == "random_bounded" && parts.size() == 2)
        return GraphFamily::random_bounded(std::stoi(parts[1]), default_seed);
    return builtin_family(spec);
}

}  // namespace monopart
