#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sln/homology.hpp"
#include "sln/web.hpp"

namespace sln {

enum class Ring { Rational, Integer };

struct PipelineOptions {
    int n = 2;
    Ring ring = Ring::Rational;
    int jobs = 1;
    EvalCache* cache = nullptr;
    bool oracle = false; // also compute the decategorified invariant and compare
    PivotOrder pivot = PivotOrder::LowestFirst;
};

class OracleMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Report {
    static constexpr int schema_version = 1;

    int n = 2;
    std::vector<int> colors;
    std::string diagram;    // canonical text of the input
    uint64_t diagram_hash = 0;
    Ring ring = Ring::Rational;
    size_t generators = 0;  // chain groups after scalarization
    HomologyTable homology;
    LaurentPoly euler;
    std::optional<LaurentPoly> decat;
    // euler = sign * q^qpow * decat (present with the oracle)
    std::optional<std::pair<int, int>> unit;
};

// Compiles, scalarizes, checks d^2 = 0, eliminates and takes homology.
// Throws ParseError/DomainError for bad input, InvariantError for an
// internal consistency breach and OracleMismatch when the Euler
// characteristic is not a unit multiple of the decategorified invariant.
Report run_pipeline(const TangleDiagram& d, const PipelineOptions& opt);

// sign and power with a = sign * q^power * b, if any
std::optional<std::pair<int, int>> unit_between(const LaurentPoly& a, const LaurentPoly& b);

std::string report_text(const Report& r);
std::string report_json(const Report& r);

} // namespace sln
