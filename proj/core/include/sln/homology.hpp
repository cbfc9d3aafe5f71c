#pragma once

#include <map>
#include <string>
#include <vector>

#include "sln/exactalg.hpp"
#include "sln/klr.hpp"
#include "sln/ladder.hpp"
#include "sln/web.hpp"

namespace sln {

// ------------------------------------------------------------------------
// Decomposition of a closed web into shifted trivial webs.
//
// inc_j : 1 -> W are cup diagrams (thin cups, crossings and dots, then merges
// into the thick letters of W); proj_j : W -> 1 are linear combinations of
// the upside-down images of the same candidates, chosen so that
// proj_j ∘ inc_k evaluates to δ_jk. The graded rank is taken from the web
// evaluation; candidates are added until every degree block has full rank.
// ------------------------------------------------------------------------

struct DecomposeOptions {
    long max_candidates = 400000; // enumeration budget (candidates looked at)
    int max_dots = -1;            // per cup; -1 means n-1
};

struct Decomposition {
    LadderWeb web;
    std::vector<int> degree;   // foam degree of inc_j
    std::vector<KLRWord> inc;  // 1 -> W
    std::vector<KLRWord> caps; // W -> 1
    // proj_j = Σ_i proj_coeff[j][i] · caps[i]
    std::vector<std::vector<Scalar>> proj_coeff;
    long candidates_seen = 0;

    size_t size() const { return inc.size(); }
    // q-shift of summand j in W ≅ ⊕ q^{shift_j} 1
    int shift(size_t j) const { return -degree[j]; }
};

Decomposition decompose_web(const LadderWeb& w, const DecomposeOptions& opt = {});

// upside-down image of a diagram (cups <-> caps, splits <-> merges)
KLRWord mirror(const KLRWord& d);

// matrix [evaluate_closed(proj_j ∘ inc_k)]_{jk}, computed from the diagrams
std::vector<std::vector<Scalar>> biorthogonality_matrix(const Decomposition& dec);

// ------------------------------------------------------------------------
// Complexes.
// ------------------------------------------------------------------------

// Cube of resolutions before scalarization: objects are closed webs with
// (h, q) shifts, edges are placed crossing differentials.
struct WebComplex {
    struct Object {
        LadderWeb web;
        int h = 0, q = 0;
        std::vector<int> vertex;
    };
    struct Edge {
        int from = 0, to = 0;
        int sign = 1;
        KLRWord foam; // domain: the source web's rung word
    };
    int n = 2;
    std::vector<Object> objects;
    std::vector<Edge> edges;
    int q_correction = 0, h_correction = 0; // framing
};

WebComplex build_complex(const CubeSkeleton& cube);

// Complex of free modules over Q (or Z): generators with bigradings and
// matrices d[h] : C_h -> C_{h+1} (rows index C_{h+1}).
struct ScalarComplex {
    struct Gen {
        int h = 0, q = 0;
        int object = -1, index = -1;
    };
    using Matrix = std::vector<std::vector<Scalar>>;
    std::map<int, std::vector<Gen>> gens;
    std::map<int, Matrix> d;
    bool integral = false;

    size_t total() const;
    const Matrix& diff(int h) const; // empty matrix if none
    Matrix& diff_mut(int h);
};

struct ScalarizeOptions {
    bool integral = false;
    int jobs = 1;
    EvalCache* cache = nullptr;
    DecomposeOptions decompose;
    // optional: receives each decomposition (for biorthogonality checks)
    std::vector<Decomposition>* decompositions = nullptr;
};

// Replaces every object by its decomposition and every edge by the matrix of
// proj ∘ foam ∘ inc. Throws InvariantError when an edge's degree does not
// match its shift difference, or when integral mode meets a non-integral entry.
ScalarComplex scalarize(const WebComplex& c, const ScalarizeOptions& opt = {});

class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// true iff d[h+1] d[h] = 0 for every h
bool d_squared_zero(const ScalarComplex& c);

enum class PivotOrder { LowestFirst, HighestFirst };

// Cancels invertible entries (any nonzero over Q, ±1 over Z).
ScalarComplex gaussian_eliminate(ScalarComplex c, PivotOrder order = PivotOrder::LowestFirst);

struct HomologyEntry {
    int h = 0, q = 0;
    long rank = 0;
    std::vector<std::string> torsion; // invariant factors > 1 (integral mode)
    friend bool operator==(const HomologyEntry&, const HomologyEntry&) = default;
};

struct HomologyTable {
    std::vector<HomologyEntry> entries; // sorted by (h, q)
    bool operator==(const HomologyTable& o) const { return entries == o.entries; }
    LaurentPoly euler() const; // Σ (-1)^h q^j rank
};

// Bigraded homology.
HomologyTable homology(const ScalarComplex& c);

} // namespace sln
