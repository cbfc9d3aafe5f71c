#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "sln/exactalg.hpp"
#include "sln/ladder.hpp"

namespace sln {

struct TangleDiagram;

// A basis state: one subset of {1..n} per slot, stored as bit masks
// (bit j-1 set <=> j in the subset).
using SubsetTuple = std::vector<uint32_t>;

// Basis of the weight space of ∧^{a_1}C^n ⊗ ... ⊗ ∧^{a_m}C^n.
// Order: slot by slot; within a slot subsets are compared as increasing
// element lists, lexicographically ({1,2} < {1,3} < {2,3}).
class WeightBasis {
public:
    explicit WeightBasis(const GlWeight& w);
    const GlWeight& weight() const { return w_; }
    const std::vector<SubsetTuple>& states() const { return states_; }
    size_t size() const { return states_.size(); }
    // -1 if not a state of this weight
    long index_of(const SubsetTuple& s) const;

private:
    GlWeight w_;
    std::vector<SubsetTuple> states_;
    std::map<SubsetTuple, long> index_;
};

// sorted list of all k-subsets of {1..n} as masks, in the documented order
std::vector<uint32_t> subsets_of_size(int n, int k);
std::vector<uint32_t> subsets_of_mask(uint32_t mask, int k);

class RepMatrix {
public:
    RepMatrix() = default;
    RepMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}
    static RepMatrix identity(size_t d);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    LaurentPoly at(size_t r, size_t c) const;
    void add(size_t r, size_t c, const LaurentPoly& v);
    const std::map<std::pair<size_t, size_t>, LaurentPoly>& entries() const { return e_; }

    RepMatrix operator*(const RepMatrix& o) const; // this after o
    RepMatrix operator+(const RepMatrix& o) const;
    RepMatrix operator-(const RepMatrix& o) const;
    RepMatrix scaled(const LaurentPoly& c) const;
    bool is_zero() const { return e_.empty(); }
    friend bool operator==(const RepMatrix& a, const RepMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::map<std::pair<size_t, size_t>, LaurentPoly> e_;
};

// Matrix of E_i^{(k)} / F_i^{(k)} from weight w to the shifted weight.
// Moving the set Z picks up q^{Σ_{z∈Z} Σ_{j>z, j∉Z} κ_j} for E and
// q^{-Σ_{z∈Z} Σ_{j<z, j∉Z} κ_j} for F, where κ_j = +1 if j lies only in slot
// i, -1 if only in slot i+1, 0 otherwise. Returns an empty matrix when the
// target weight is inadmissible.
RepMatrix act_divided(RungKind side, int i, int k, const GlWeight& w);

// cached variant used by web evaluation
const RepMatrix& act_divided_cached(RungKind side, int i, int k, const GlWeight& w);

// matrix of a whole web (domain basis -> codomain basis)
RepMatrix web_matrix(const LadderWeb& w);

LaurentPoly eval_closed_web(const LadderWeb& w);

// Decategorified invariant of a closed diagram, computed by multiplying rung
// matrices through the closure layout. Crossings use
// T 1_λ = Σ_s (-q)^s F^{(λ+s)} E^{(s)} 1_λ (mirror form for λ < 0) scaled by
// (-1)^{min(a,b)} q^{-min(a,b)}, and its inverse form for negative crossings.
// Framing is not corrected; see framing_normalization.
LaurentPoly decat_invariant(const TangleDiagram& d, int n);

} // namespace sln
