// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sln/homology.hpp"
#include "sln/rep.hpp"
#include "support/suites.hpp"

using namespace sln;
using namespace sln::testing;

namespace {

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<Verdict()> run;
};

std::string table_str(const HomologyTable& t) {
    std::string s;
    for (auto& e : t.entries) {
        s += "(" + std::to_string(e.h) + "," + std::to_string(e.q) + "):" + std::to_string(e.rank);
        for (auto& x : e.torsion) s += "+Z/" + x;
        s += " ";
    }
    return s;
}

// corpus runs are shared by several criteria
std::map<std::pair<std::string, int>, LinkRun>& runs() {
    static std::map<std::pair<std::string, int>, LinkRun> r;
    return r;
}

const LinkRun& corpus_run(const std::string& name, int n) {
    auto key = std::pair{name, n};
    auto it = runs().find(key);
    if (it != runs().end()) return it->second;
    for (auto& e : link_corpus())
        if (e.name == name) return runs().emplace(key, run_link(e, n, false, 8)).first->second;
    throw std::runtime_error("no corpus entry " + name);
}

Verdict unknots() {
    Verdict v;
    int count = 0;
    for (int n : {2, 3, 4})
        for (auto& [braid, strands] : std::vector<std::pair<std::string, int>>{{"", 1}, {"1", 2}, {"1 2", 3}}) {
            LinkRun r = run_link({"unknot", braid, strands}, n, false, 8);
            std::vector<HomologyEntry> want;
            for (int q = 1 - n; q <= n - 1; q += 2) want.push_back({0, q, 1, {}});
            ++count;
            if (r.homology.entries != want)
                v.fail("n=" + std::to_string(n) + " braid \"" + braid + "\": " + table_str(r.homology));
        }
    v.summary = std::to_string(count) + " unknot diagrams";
    return v;
}

Verdict euler_oracle() {
    Verdict v;
    int count = 0;
    for (int n : {2, 3})
        for (const char* name : {"hopf", "trefoil", "mirror-trefoil", "figure-eight"}) {
            const LinkRun& r = corpus_run(name, n);
            ++count;
            // recorded global unit: +q^0
            if (!(r.homology.euler() == r.decat))
                v.fail(std::string(name) + " n=" + std::to_string(n) + ": euler " + r.homology.euler().str() + " vs decat " +
                       r.decat.str());
        }
    v.summary = std::to_string(count) + " links, unit +q^0";
    return v;
}

Verdict invariance() {
    Verdict v;
    int count = 0;
    for (int n : {2, 3})
        for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{{"trefoil", "trefoil-r2"},
                                                                             {"figure-eight", "figure-eight-conj"}}) {
            ++count;
            const LinkRun &x = corpus_run(a, n), &y = corpus_run(b, n);
            if (!(x.homology == y.homology))
                v.fail(std::string(a) + " vs " + b + " n=" + std::to_string(n) + ": " + table_str(x.homology) + "| " +
                       table_str(y.homology));
        }
    v.summary = std::to_string(count) + " diagram pairs";
    return v;
}

Verdict dsquared_and_biorthogonality() {
    Verdict v;
    size_t decs = 0;
    for (int n : {2, 3})
        for (auto& e : link_corpus()) {
            const LinkRun& r = corpus_run(e.name, n);
            if (!r.d2) v.fail(e.name + " n=" + std::to_string(n) + ": d^2 != 0");
            std::string why;
            if (!biorthogonal(r, &why)) v.fail(e.name + " n=" + std::to_string(n) + ": " + why);
            decs += r.decompositions.size();
        }
    v.summary = std::to_string(runs().size()) + " complexes, " + std::to_string(decs) + " decompositions";
    return v;
}

Verdict integral_trefoil() {
    Verdict v;
    LinkRun z = run_link(link_corpus()[1], 2, true, 8);
    const LinkRun& q = corpus_run("trefoil", 2);
    HomologyTable free_part;
    std::string torsion;
    for (auto& e : z.homology.entries) {
        if (e.rank) free_part.entries.push_back({e.h, e.q, e.rank, {}});
        for (auto& t : e.torsion) torsion += " Z/" + t + " at (" + std::to_string(e.h) + "," + std::to_string(e.q) + ")";
    }
    if (!z.d2) v.fail("d^2 != 0 over Z");
    if (!(free_part == q.homology)) v.fail("integral ranks " + table_str(free_part) + "differ from " + table_str(q.homology));
    v.summary = "ranks match; torsion:" + (torsion.empty() ? std::string(" none") : torsion);
    return v;
}

Verdict pivot_orders() {
    Verdict v;
    for (auto& [key, r] : runs()) {
        auto lo = homology(gaussian_eliminate(r.complex, PivotOrder::LowestFirst));
        auto hi = homology(gaussian_eliminate(r.complex, PivotOrder::HighestFirst));
        if (!(lo == hi)) v.fail(key.first + " n=" + std::to_string(key.second));
    }
    v.summary = std::to_string(runs().size()) + " complexes";
    return v;
}

} // namespace

int main() {
    std::vector<Criterion> crit{
        {1, "algebra suite", 1, [] { return algebra_suite(); }},
        {2, "representation suite", 10, [] { return rep_suite(); }},
        {3, "KLR relation probes", 120, [] { return klr_suite(); }},
        {4, "foam degree corpus", 60, [] { return foam_suite(); }},
        {5, "unknot diagrams, n = 2, 3, 4", 30, unknots},
        {6, "Euler characteristic vs decategorified invariant", 600, euler_oracle},
        {7, "invariance under R2 and conjugation", 600, invariance},
        {8, "d^2 = 0 and proj o inc = id", 600, dsquared_and_biorthogonality},
        {9, "integral trefoil, n = 2", 600, integral_trefoil},
        {10, "pivot-order independence", 600, pivot_orders},
    };
    int failed = 0;
    for (auto& c : crit) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > c.budget_s) v.fail("took " + std::to_string(s) + " s, budget " + std::to_string(c.budget_s) + " s");
        if (!v.pass) ++failed;
        std::printf("[%s] %2d %s (%.2f s): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), s, v.text().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(crit.size()) - failed, crit.size());
    return failed ? 1 : 0;
}
