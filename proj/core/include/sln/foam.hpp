#pragma once

#include <string>
#include <vector>

#include "sln/exactalg.hpp"
#include "sln/klr.hpp"
#include "sln/ladder.hpp"

namespace sln {

// Elementary ladder foams. Positions index the rung word in operator order
// (left to right, the last rung acts first), so a move at `pos` touches the
// rungs pos and pos+1.
//
//   Zip        merges the rungs at pos, pos+1 (same kind and index) into one
//   Unzip      splits the rung at pos into thickness `a` (left) and k-a
//   CupFE      creates F_i^{(k)} E_i^{(k)} at pos
//   CupEF      creates E_i^{(k)} F_i^{(k)} at pos
//   CapFE      removes an adjacent F_i^{(k)} E_i^{(k)}
//   CapEF      removes an adjacent E_i^{(k)} F_i^{(k)}
//   SeamSplit  interchanges two rungs on neighbouring indices, the left one
//              having the smaller index (their seams cross in a singular vertex)
//   SeamMerge  the same with the left rung on the larger index
//   DigonCup   CupFE/CupEF of thickness a+b followed by splitting its left leg
//              into (a, b); a digon facet is born
//   DigonCap   the reverse: zips the legs at pos, pos+1 and caps the result
//   Decorate   multiplies the facet of the rung at pos by a Schur function
//   Isotopy    interchanges two rungs whose indices differ by at least 2
enum class FoamMoveKind {
    Zip, Unzip, CupFE, CupEF, CapFE, CapEF, SeamSplit, SeamMerge, DigonCup, DigonCap, Decorate, Isotopy
};

struct FoamMove {
    FoamMoveKind kind = FoamMoveKind::Decorate;
    int pos = 0;
    int i = 1;        // cups: rung index
    int k = 1;        // cups: thickness
    int a = 1, b = 1; // Unzip: left thickness in `a`; digons: leg thicknesses
    bool fe = true;   // digons: orientation of the underlying cup
    Partition decoration;

    static FoamMove zip(int pos);
    static FoamMove unzip(int pos, int left);
    static FoamMove cup(int pos, Orient o, int i, int k);
    static FoamMove cap(int pos, Orient o);
    static FoamMove seam(int pos, bool split);
    static FoamMove digon_cup(int pos, Orient o, int i, int a, int b);
    static FoamMove digon_cap(int pos, Orient o);
    static FoamMove decorate(int pos, Partition p);
    static FoamMove isotopy(int pos);
    std::string str() const;
};

struct FoamWord {
    LadderWeb source;
    std::vector<FoamMove> moves;
    Scalar coeff{1};

    // rung words after each move, source first; throws DomainError when a
    // move does not match the current web
    std::vector<std::vector<Rung>> replay() const;
    LadderWeb target() const;
    FoamWord then(const FoamWord& above) const;

    // one move per line; see to_text
    std::string to_text() const;
    static FoamWord from_text(const std::string& text);
};

// Sum of generator degrees: -ab for zips, k(k±λ) for cups and caps, the
// Cartan pairing for seam moves, 0 for isotopies, 2|λ| for decorations.
int foam_degree(const FoamWord& f);

// The same number obtained from the weighted Euler characteristic of an
// explicit cell decomposition of every slab of the movie, plus decorations.
// Throws DomainError beyond `max_moves`.
int weighted_euler_validate(const FoamWord& f, int max_moves = 12);

// Weighted Euler characteristic of a ladder web graph (uprights and rungs).
long web_euler(const LadderWeb& w);

// Preimage in the thick KLR calculus; cups and caps carry their rescaling signs.
KLRWord foam_to_klr(const FoamWord& f);

} // namespace sln
