// slnfoam: bigraded sl_n foam homology of colored braid closures and PD diagrams.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "sln/pipeline.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitOracle = 4;

constexpr const char* kCacheEnv = "SLNFOAM_CACHE";

std::vector<int> parse_colors(const std::string& s) {
    std::vector<int> out;
    std::string tok;
    std::istringstream in(s);
    int col = 1;
    while (std::getline(in, tok, ',')) {
        try {
            size_t used = 0;
            int c = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(c);
        } catch (const std::exception&) {
            throw sln::ParseError("expected a comma-separated list of colors", 1, col);
        }
        col += static_cast<int>(tok.size()) + 1;
    }
    return out;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bigraded sl_n foam homology of colored, framed, oriented links"};
    sln::PipelineOptions opt;
    std::string colors, braid, pd_file, ring = "rational", format = "text", cache_path, pivot = "lowest";
    int strands = 0;
    bool no_cache = false;

    app.add_option("--n", opt.n, "rank n of sl_n (n >= 2)")->required()->check(CLI::Range(2, 64));
    app.add_option("--colors", colors, "comma-separated colors, one per component or a single one for all");
    auto* b = app.add_option("--braid", braid, "braid word: signed generator indices, e.g. \"1 -2 1 -2\"");
    auto* p = app.add_option("--pd-file", pd_file, "planar diagram file ('-' reads stdin)");
    b->excludes(p);
    p->excludes(b);
    app.add_option("--strands", strands, "number of braid strands (default: largest generator + 1)");
    app.add_option("--ring", ring, "coefficient ring")->check(CLI::IsMember({"rational", "integer"}));
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cache", cache_path, std::string("evaluation cache file (default: $") + kCacheEnv + ")");
    app.add_flag("--no-cache", no_cache, "ignore the cache environment variable");
    app.add_flag("--oracle", opt.oracle, "compare the Euler characteristic with the decategorified invariant");
    app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--pivot", pivot, "elimination pivot order")->check(CLI::IsMember({"lowest", "highest"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }
    if (!b->count() && !p->count()) {
        std::cerr << "error: one of --braid or --pd-file is required\n";
        return kExitParse;
    }
    opt.ring = ring == "integer" ? sln::Ring::Integer : sln::Ring::Rational;
    opt.pivot = pivot == "highest" ? sln::PivotOrder::HighestFirst : sln::PivotOrder::LowestFirst;
    if (cache_path.empty() && !no_cache)
        if (const char* env = std::getenv(kCacheEnv)) cache_path = env;

    sln::TangleDiagram diagram;
    try {
        std::vector<int> cl = colors.empty() ? std::vector<int>{} : parse_colors(colors);
        if (b->count())
            diagram = sln::TangleDiagram::parse_braid(braid, cl, strands);
        else
            diagram = sln::TangleDiagram::parse_pd(read_file(pd_file), cl);
        diagram.resolved_colors(opt.n);
    } catch (const sln::ParseError& e) {
        std::cerr << (p->count() ? pd_file : std::string("braid")) << ":" << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    std::unique_ptr<sln::EvalCache> cache;
    if (!cache_path.empty()) {
        cache = std::make_unique<sln::EvalCache>(cache_path);
        opt.cache = cache.get();
    }

    try {
        sln::Report r = sln::run_pipeline(diagram, opt);
        std::cout << (format == "json" ? sln::report_json(r) : sln::report_text(r)) << std::flush;
    } catch (const sln::OracleMismatch& e) {
        std::cerr << "oracle mismatch: " << e.what() << "\n";
        return kExitOracle;
    } catch (const sln::InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const sln::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    if (cache) cache->flush();
    return 0;
}
