#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sln/klr.hpp"
#include "sln/ladder.hpp"

namespace sln {

// Input error with a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col);
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

// One crossing of a planar diagram. Edge labels are listed counterclockwise
// starting at the incoming under-strand edge; the under strand runs
// legs[0] -> legs[2]. The over strand runs legs[1] -> legs[3] when
// `over_forward` is set, legs[3] -> legs[1] otherwise.
struct PDCrossing {
    std::array<int, 4> legs{};
    bool over_forward = false;
    int sign() const { return over_forward ? -1 : 1; }
};

enum class DiagramKind { Braid, PD };

// A colored, framed, oriented link diagram: either the closure of a braid
// word or a planar crossing list. Colors and target framings are listed per
// component; components are ordered by their smallest strand position
// (braids) or smallest edge label (PD).
struct TangleDiagram {
    DiagramKind kind = DiagramKind::Braid;
    int strands = 1;              // braid: number of strands
    std::vector<int> braid;       // braid: ±i is σ_i^{±1}, 1-based
    std::vector<PDCrossing> pd;   // PD: crossing list
    std::vector<int> colors;      // per component
    std::vector<int> framing;     // per component, target framing (default 0)

    static TangleDiagram braid_closure(int strands, std::vector<int> word, std::vector<int> colors = {});
    // whitespace-separated signed integers; strands default to max|i| + 1
    static TangleDiagram parse_braid(const std::string& text, std::vector<int> colors = {}, int strands = 0);
    // see docs/FORMATS.md
    static TangleDiagram parse_pd(const std::string& text, std::vector<int> colors = {});

    int components() const;
    int crossings() const;
    // component index of every braid strand position / PD edge label
    std::vector<int> component_of_strand() const;
    // writhe of each component counting only its self-crossings
    std::vector<int> self_writhe() const;
    // colors broadcast to one per component and range-checked against n
    std::vector<int> resolved_colors(int n) const;
    std::string canonical() const;
    uint64_t hash() const;
};

// A Morse presentation: cups, caps and crossings of two upward strands,
// read bottom to top. A cup at `pos` inserts a pair of strand ends at
// positions pos, pos+1 (left end oriented up iff `left_up`); a cap removes
// the pair at pos, pos+1; a crossing swaps the upward strands at pos, pos+1.
enum class MorseKind { Cup, Cap, Cross };

struct MorseEvent {
    MorseKind kind = MorseKind::Cup;
    int pos = 0;
    int sign = 0;        // Cross: ±1 (+1: the bottom-left strand is over)
    bool left_up = true; // Cup
    int color = 0;       // Cup: color of the arc
};

struct MorseDiagram {
    std::vector<MorseEvent> events;
    int max_width = 0;
};

// throws DomainError when the crossing list cannot be swept (non-planar,
// inconsistent orientations, split pieces nested inside faces)
MorseDiagram morse_presentation(const TangleDiagram& d, int n);

// ------------------------------------------------------------------------
// Cube of resolutions.
// ------------------------------------------------------------------------

// One term of a crossing complex: the rungs replacing the crossing (operator
// order, last acts first), placed at homological degree h with q-shift q.
struct CrossingTerm {
    int s = 0;
    int h = 0, q = 0;
    std::vector<Rung> rungs;
};

// Shifted Rickard complex of an upward crossing of labels (a,b) on slots
// (i, i+1), 1-based rung index i.
struct CrossingComplex {
    int i = 1;
    int a = 1, b = 1;
    int sign = 1;
    int n = 2;
    std::vector<CrossingTerm> terms; // indexed by s, truncated at the first zero web
    int lambda() const { return a - b; }
    int min_ab() const { return a < b ? a : b; }
};

// The slices of the crossing differential between terms s and s+1 (positive
// crossings, from s to s+1) or s+1 and s (negative crossings, from s+1 to s),
// acting on the crossing's own rung word.
struct CrossingDifferential {
    int from = 0, to = 0;           // term indices
    std::vector<Strand> source;     // operator order
    std::vector<KLRSlice> slices;
};
CrossingDifferential crossing_differential(const CrossingComplex& c, int s);

struct CubeSegment {
    bool is_crossing = false;
    std::vector<Rung> rungs; // fixed segment, application order (first acts first)
    int crossing = -1;
};

struct CubeSkeleton {
    int n = 2;
    GlWeight bottom;                 // [n,0,n,0,...]
    std::vector<CubeSegment> segments; // bottom to top
    std::vector<CrossingComplex> crossings;
    std::vector<int> colors;         // per component
    std::vector<int> writhe;         // self-writhe per component
    std::vector<int> framing;        // target framing per component

    // all vertices: one term index per crossing
    std::vector<std::vector<int>> vertices() const;
    int vertex_h(const std::vector<int>& v) const;
    int vertex_q(const std::vector<int>& v) const;
    LadderWeb vertex_web(const std::vector<int>& v) const;
    // offset (in the operator-order rung word of a vertex) of crossing c's rungs
    int crossing_offset(const std::vector<int>& v, int c) const;
    // total framing correction (q, h) to add to every grading
    std::pair<int, int> framing_correction() const;
};

CubeSkeleton compile_tangle(const TangleDiagram& d, int n);

// Shift (q-exponent, homological) produced by `writhe` positive curls on an
// a-colored strand: q^{-w a(n-a+1)} in q and -w a in homological degree.
std::pair<int, int> framing_normalization(int a, int n, int writhe);

} // namespace sln
