#include "sln/pipeline.hpp"

#include <sstream>

#include <json.hpp>

#include "sln/rep.hpp"

namespace sln {

std::optional<std::pair<int, int>> unit_between(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) {
        if (a.is_zero() && b.is_zero()) return std::pair{1, 0};
        return std::nullopt;
    }
    int p = a.min_degree() - b.min_degree();
    for (int sign : {1, -1}) {
        LaurentPoly c = b.shifted(p);
        if (sign < 0) c = -c;
        if (c == a) return std::pair{sign, p};
    }
    return std::nullopt;
}

Report run_pipeline(const TangleDiagram& d, const PipelineOptions& opt) {
    Report r;
    r.n = opt.n;
    r.colors = d.resolved_colors(opt.n);
    r.diagram = d.canonical();
    r.diagram_hash = d.hash();
    r.ring = opt.ring;

    WebComplex wc = build_complex(compile_tangle(d, opt.n));
    ScalarizeOptions so;
    so.integral = opt.ring == Ring::Integer;
    so.jobs = opt.jobs;
    so.cache = opt.cache;
    ScalarComplex sc = scalarize(wc, so);
    if (!d_squared_zero(sc)) throw InvariantError("d^2 != 0 on the scalarized complex");
    r.generators = sc.total();
    r.homology = homology(gaussian_eliminate(std::move(sc), opt.pivot));
    r.euler = r.homology.euler();

    if (opt.oracle) {
        r.decat = decat_invariant(d, opt.n);
        r.unit = unit_between(r.euler, *r.decat);
        if (!r.unit)
            throw OracleMismatch("euler characteristic " + r.euler.str() + " differs from decategorified invariant " +
                                 r.decat->str());
    }
    return r;
}

namespace {

std::string hex64(uint64_t x) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << x;
    return os.str();
}

const char* ring_name(Ring r) { return r == Ring::Integer ? "integer" : "rational"; }

} // namespace

std::string report_text(const Report& r) {
    std::ostringstream os;
    os << "n " << r.n << "\n";
    os << "colors";
    for (int c : r.colors) os << " " << c;
    os << "\n";
    os << "diagram " << r.diagram << "\n";
    os << "hash " << hex64(r.diagram_hash) << "\n";
    os << "ring " << ring_name(r.ring) << "\n";
    os << "generators " << r.generators << "\n";
    os << "homology\n";
    for (auto& e : r.homology.entries) {
        os << "  h=" << e.h << " q=" << e.q << " rank=" << e.rank;
        if (!e.torsion.empty()) {
            os << " torsion=";
            for (size_t i = 0; i < e.torsion.size(); ++i) os << (i ? "," : "") << e.torsion[i];
        }
        os << "\n";
    }
    os << "euler " << r.euler.str() << "\n";
    if (r.decat) os << "decat " << r.decat->str() << "\n";
    if (r.unit) os << "unit " << (r.unit->first < 0 ? "-" : "+") << "q^" << r.unit->second << "\n";
    return os.str();
}

std::string report_json(const Report& r) {
    using json = nlohmann::ordered_json;
    auto poly = [](const LaurentPoly& p) {
        json a = json::array();
        for (auto& [e, c] : p.terms()) a.push_back({{"q", e}, {"coeff", c.str()}});
        return a;
    };
    json j;
    j["schema_version"] = Report::schema_version;
    j["n"] = r.n;
    j["colors"] = r.colors;
    j["diagram"] = r.diagram;
    j["diagram_hash"] = hex64(r.diagram_hash);
    j["ring"] = ring_name(r.ring);
    j["generators"] = r.generators;
    json pc = json::array();
    for (auto& e : r.homology.entries) {
        json x{{"h", e.h}, {"q", e.q}, {"rank", e.rank}};
        if (!e.torsion.empty()) x["torsion"] = e.torsion;
        pc.push_back(std::move(x));
    }
    j["poincare"] = std::move(pc);
    j["euler"] = poly(r.euler);
    j["decat"] = r.decat ? poly(*r.decat) : json(nullptr);
    j["unit"] = r.unit ? json{{"sign", r.unit->first}, {"q_power", r.unit->second}} : json(nullptr);
    return j.dump(2) + "\n";
}

} // namespace sln
