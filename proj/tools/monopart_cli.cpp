#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monopart/monopart.hpp"

namespace {

using namespace monopart;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct FamilyArgs {
    std::string family1, family2, family;
    bool bipartite = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family1", family1, "red family spec");
        cmd->add_option("--family2", family2, "blue family spec");
        cmd->add_flag("--bipartite", bipartite, "single bipartite family for both colors");
        cmd->add_option("--family", family, "family spec for --bipartite mode");
    }

    void validate() const {
        if (bipartite) {
            if (family.empty() || !family1.empty() || !family2.empty())
                throw precondition_error("--bipartite takes --family and excludes --family1/--family2");
        } else {
            if (family1.empty() || family2.empty() || !family.empty())
                throw precondition_error("need --family1 and --family2 (or --bipartite --family)");
        }
    }
};

struct ParamArgs {
    std::string epsilon, d, delta;
    int k = 0;
    int piece_budget = 0;
    int min_part = 0;
    long time_limit_ms = 0;
    std::uint64_t seed = 0;
    bool theoretical = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--epsilon", epsilon, "regularity tolerance (rational, e.g. 0.25 or 1/4)");
        cmd->add_option("--d", d, "density threshold");
        cmd->add_option("--delta", delta, "minimum-degree fraction (default 1/(2*Delta))");
        cmd->add_option("--k", k, "cylinder part count (default Delta+2)");
        cmd->add_option("--piece-budget", piece_budget, "abort past this many pieces");
        cmd->add_option("--min-part", min_part, "smallest usable cylinder part");
        cmd->add_option("--time-limit", time_limit_ms, "per-search budget in ms (advisory)");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_flag("--theoretical", theoretical,
                      "print the parameter choices of the existence proof, then run normally");
    }

    PipelineParams resolve() const {
        PipelineParams p;
        if (!epsilon.empty()) p.epsilon = Rational::from_decimal(epsilon);
        if (!d.empty()) p.d = Rational::from_decimal(d);
        if (!delta.empty()) p.delta = Rational::from_decimal(delta);
        if (k > 0) p.k = k;
        if (piece_budget > 0) p.piece_budget = piece_budget;
        if (min_part > 0) p.min_part = min_part;
        if (time_limit_ms > 0) {
            p.search_time_limit_ms = time_limit_ms;
            p.embed_node_budget = p.nodes_for_time_limit();
        }
        p.seed = seed;
        return p;
    }
};

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void write_cert_out(const PartitionCertificate& cert, const std::string& out) {
    if (out.empty()) {
        write_certificate(std::cout, cert);
    } else {
        write_certificate_file(out, cert);
    }
}

int cmd_gen(const std::string& mode, int n, const std::string& p, int split, int steps,
            std::uint64_t seed, const std::string& out) {
    std::optional<ColoredCompleteGraph> g;
    if (mode == "random") {
        g = gen_random(n, p.empty() ? Rational(1, 2) : Rational::from_decimal(p), seed);
    } else if (mode == "split") {
        g = gen_bipartite_split(n, split >= 0 ? split : n / 2);
    } else if (mode == "adversarial") {
        auto res = gen_adversarial(n, steps > 0 ? steps : 200, seed);
        std::cerr << "adversarial: " << res.mono_triangles << " monochromatic triangles after "
                  << res.steps_used << " flips\n";
        g = std::move(res.coloring);
    } else {
        throw precondition_error("gen: mode must be random, split, or adversarial");
    }
    if (out.empty())
        write_coloring(std::cout, *g);
    else
        write_coloring_file(out, *g);
    return kExitOk;
}

int cmd_partition(const FamilyArgs& fams, const ParamArgs& pargs, const std::string& coloring,
                  const std::string& out) {
    fams.validate();
    auto g = read_coloring_file(coloring);
    PipelineParams params = pargs.resolve();

    PartitionCertificate cert;
    long long t0 = now_ms();
    if (fams.bipartite) {
        GraphFamily fam = family_from_spec(fams.family, params.seed);
        if (pargs.theoretical) std::cerr << theoretical_parameters(fam.max_degree());
        cert = partition_bipartite(g, fam, params);
        write_cert_out(cert, out);
        auto rep = verify_certificate(g, fam, fam, cert);
        std::cerr << "n=" << g.vertex_count() << " pieces=" << cert.pieces.size()
                  << " wall_ms=" << now_ms() - t0 << " verified=" << (rep.accepted ? 1 : 0) << "\n";
        return rep.accepted ? kExitOk : kExitReject;
    }
    GraphFamily f1 = family_from_spec(fams.family1, params.seed);
    GraphFamily f2 = family_from_spec(fams.family2, derive_seed(params.seed, 2));
    if (pargs.theoretical)
        std::cerr << theoretical_parameters(std::max(f1.max_degree(), f2.max_degree()));
    cert = partition(g, f1, f2, params);
    write_cert_out(cert, out);
    auto rep = verify_certificate(g, f1, f2, cert);
    std::cerr << "n=" << g.vertex_count() << " pieces=" << cert.pieces.size()
              << " wall_ms=" << now_ms() - t0 << " verified=" << (rep.accepted ? 1 : 0) << "\n";
    return rep.accepted ? kExitOk : kExitReject;
}

int cmd_verify(const FamilyArgs& fams, const std::string& coloring, const std::string& certificate,
               std::uint64_t seed) {
    fams.validate();
    auto g = read_coloring_file(coloring);
    auto cert = read_certificate_file(certificate);
    GraphFamily f1 = fams.bipartite ? family_from_spec(fams.family, seed)
                                    : family_from_spec(fams.family1, seed);
    GraphFamily f2 = fams.bipartite ? f1 : family_from_spec(fams.family2, derive_seed(seed, 2));
    auto rep = verify_certificate(g, f1, f2, cert);
    if (rep.accepted) {
        std::cout << "accepted: " << cert.pieces.size() << " pieces partition n="
                  << cert.host_n << "\n";
        return kExitOk;
    }
    std::cout << "rejected: " << rep.violations.size() << " violation(s)\n";
    for (const auto& v : rep.violations) std::cout << "  " << v << "\n";
    return kExitReject;
}

int cmd_oracle(const std::string& family1, const std::string& family2, const std::string& coloring,
               const std::string& out, std::uint64_t seed) {
    auto g = read_coloring_file(coloring);
    GraphFamily f1 = family_from_spec(family1, seed);
    GraphFamily f2 = family_from_spec(family2, derive_seed(seed, 2));
    auto res = min_partition_exact(g, f1, f2);
    std::cout << "pieces " << res.pieces << "\n";
    if (!out.empty()) write_certificate_file(out, res.certificate);
    return kExitOk;
}

void bench_row(const ColoredCompleteGraph& g, const GraphFamily& f1, const GraphFamily& f2,
               bool bipartite_mode, const std::string& label, std::uint64_t seed) {
    PipelineParams params;
    params.seed = seed;
    long long t0 = now_ms();
    PartitionCertificate cert =
        bipartite_mode ? partition_bipartite(g, f1, params) : partition(g, f1, f2, params);
    long long wall = now_ms() - t0;
    auto rep = verify_certificate(g, f1, f2, cert);
    std::string oracle_str = "NA";
    if (g.vertex_count() <= kOracleCap) {
        auto res = min_partition_exact(g, f1, f2);
        oracle_str = std::to_string(res.pieces);
    }
    std::cout << g.vertex_count() << "\t" << label << "\t" << seed << "\t" << cert.pieces.size()
              << "\t" << oracle_str << "\t" << wall << "\t" << (rep.accepted ? 1 : 0) << "\n";
}

int cmd_bench(const std::string& suite, std::uint64_t seed) {
    std::cout << "n\tfamily\tseed\tpieces\toracle_pieces_or_NA\twall_ms\tverified\n";
    if (suite == "small") {
        auto cyc = GraphFamily::cycles();
        auto mat = GraphFamily::matchings();
        for (int n : {6, 8, 10, 12})
            for (std::uint64_t s : {seed + 1, seed + 2, seed + 3}) {
                bench_row(gen_random(n, Rational(1, 2), s), cyc, cyc, false, "cycles+cycles", s);
                bench_row(gen_random(n, Rational(1, 2), s), mat, cyc, false, "matchings+cycles", s);
            }
        return kExitOk;
    }
    if (suite == "grid") {
        auto cyc = GraphFamily::cycles();
        auto cp2 = GraphFamily::cycle_power(2);
        for (int n : {50, 100, 200, 300})
            for (auto p : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
                std::uint64_t s = seed + static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(p.num());
                bench_row(gen_random(n, p, s), cyc, cyc, false, "cycles+cycles", s);
                bench_row(gen_random(n, p, s), cp2, cyc, false, "cycle_power(2)+cycles", s);
            }
        return kExitOk;
    }
    if (suite == "bipartite") {
        auto paths = GraphFamily::paths();
        for (int n : {20, 40, 60, 81})
            for (std::uint64_t s : {seed + 1, seed + 2}) {
                bench_row(gen_random(n, Rational(1, 2), s), paths, paths, true, "paths(doubled)", s);
            }
        return kExitOk;
    }
    throw precondition_error("bench: suite must be small, grid, or bipartite");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partition 2-edge-colored complete graphs into monochromatic family members"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a coloring file");
    std::string gen_mode = "random", gen_p, gen_out;
    int gen_n = 0, gen_split = -1, gen_steps = 0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--mode", gen_mode, "random | split | adversarial");
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--p", gen_p, "red edge probability for random mode");
    gen->add_option("--split", gen_split, "size of the first class for split mode");
    gen->add_option("--steps", gen_steps, "flip budget for adversarial mode");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output file (stdout if omitted)");

    auto* part = app.add_subcommand("partition", "partition a coloring into monochromatic members");
    FamilyArgs part_fams;
    ParamArgs part_params;
    std::string part_coloring, part_out;
    part->add_option("--coloring", part_coloring, "coloring file")->required();
    part->add_option("--out", part_out, "certificate file (stdout if omitted)");
    part_fams.attach(part);
    part_params.attach(part);

    auto* ver = app.add_subcommand("verify", "check a certificate against a coloring");
    FamilyArgs ver_fams;
    std::string ver_coloring, ver_cert;
    std::uint64_t ver_seed = 0;
    ver->add_option("--coloring", ver_coloring, "coloring file")->required();
    ver->add_option("--certificate", ver_cert, "certificate file")->required();
    ver->add_option("--seed", ver_seed, "seed for seeded family specs");
    ver_fams.attach(ver);

    auto* ora = app.add_subcommand("oracle", "exact minimum piece count (small n)");
    std::string ora_coloring, ora_f1, ora_f2, ora_out;
    std::uint64_t ora_seed = 0;
    ora->add_option("--coloring", ora_coloring, "coloring file")->required();
    ora->add_option("--family1", ora_f1, "red family spec")->required();
    ora->add_option("--family2", ora_f2, "blue family spec")->required();
    ora->add_option("--out", ora_out, "write the optimal certificate here");
    ora->add_option("--seed", ora_seed, "seed for seeded family specs");

    auto* ben = app.add_subcommand("bench", "run a benchmark suite, TSV on stdout");
    std::string ben_suite = "small";
    std::uint64_t ben_seed = 0;
    ben->add_option("--suite", ben_suite, "small | grid | bipartite");
    ben->add_option("--seed", ben_seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_mode, gen_n, gen_p, gen_split, gen_steps, gen_seed, gen_out);
        if (part->parsed()) return cmd_partition(part_fams, part_params, part_coloring, part_out);
        if (ver->parsed()) return cmd_verify(ver_fams, ver_coloring, ver_cert, ver_seed);
        if (ora->parsed()) return cmd_oracle(ora_f1, ora_f2, ora_coloring, ora_out, ora_seed);
        if (ben->parsed()) return cmd_bench(ben_suite, ben_seed);
    } catch (const budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const parse_error& e) {
        std::cerr << "parse: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
