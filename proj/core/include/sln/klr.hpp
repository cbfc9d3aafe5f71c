#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "sln/exactalg.hpp"
#include "sln/ladder.hpp"

namespace sln {

// Strands are labelled by rungs: E_i^{(k)} points up, F_i^{(k)} points down.
// A slice word lists strands left to right; its rightmost region carries the
// ambient weight. Thin strands have k = 1.
using Strand = Rung;

enum class SliceKind { Dot, Decorate, Crossing, Cup, Cap, Split, Merge };

// Cups create the adjacent pair (F,E) or (E,F) at `pos`; caps remove it.
enum class Orient { FE, EF };

struct KLRSlice {
    SliceKind kind = SliceKind::Dot;
    int pos = 0;
    int count = 1;         // Dot: multiplicity
    Partition decoration;  // Decorate: Schur polynomial in the strand's variables
    Orient orient = Orient::FE;
    int i = 1, k = 1;      // Cup: colour and thickness of the created pair
    int left = 1;          // Split: thickness of the left output strand

    static KLRSlice dot(int pos, int count = 1);
    static KLRSlice decorate(int pos, Partition p);
    static KLRSlice crossing(int pos);
    static KLRSlice cup(int pos, Orient o, int i, int k = 1);
    static KLRSlice cap(int pos);
    static KLRSlice split(int pos, int left);
    static KLRSlice merge(int pos);
    std::string str() const;
};

// A string diagram read bottom to top: `domain` is the bottom word, each slice
// rewrites the current word.
struct KLRWord {
    GlWeight weight;              // rightmost region
    std::vector<Strand> domain;
    std::vector<KLRSlice> slices;
    Scalar coeff{1};

    // words seen between slices (domain first); throws on malformed input
    std::vector<std::vector<Strand>> words() const;
    std::vector<Strand> codomain() const;
    // region weights left of every strand of `word`, rightmost region last;
    // nullopt if some weight leaves [0,n]
    static std::optional<std::vector<GlWeight>> regions(const GlWeight& w, const std::vector<Strand>& word);
    bool is_zero_by_weights() const;
    bool closed() const { return domain.empty() && codomain().empty(); }
    int degree() const;
    KLRWord then(const KLRWord& above) const; // vertical composition
    std::string canonical() const;            // stable text used for hashing
    uint64_t hash() const;
};

// q-degree of one slice acting on `word` at rightmost weight `w`
int slice_degree(const KLRSlice& s, const std::vector<Strand>& word, const GlWeight& w);

// Applies one slice to a word, without evaluation (validation + new word).
std::vector<Strand> slice_target(const KLRSlice& s, const std::vector<Strand>& word);

// ------------------------------------------------------------------------
// Localized evaluation.
//
// Each element j of {1..n} carries a generic rational x_j. A state of a slice
// word is a subset tuple for the rightmost region plus, for every strand, the
// set of elements it moves (E moves from slot i+1 to slot i, F back). Dots
// multiply by x of the strand's element; crossings act by divided differences
// or by swapping with a linear factor; cups/caps pair states with Lagrange
// interpolation weights. Closed diagrams of degree zero evaluate to their
// scalar value; closed diagrams of nonzero degree evaluate to zero.
// ------------------------------------------------------------------------

struct StateHash {
    size_t operator()(const std::vector<uint32_t>& v) const noexcept;
};

template <class T>
using StateVec = std::unordered_map<std::vector<uint32_t>, T, StateHash>;

// Modular field used for fast rank searches.
struct ModP {
    static constexpr uint64_t P = 2305843009213693951ull; // 2^61 - 1
    uint64_t v = 0;
    ModP() = default;
    ModP(long long a);
    static ModP from_mpq(const mpq_class& q);
    ModP operator+(ModP o) const;
    ModP operator-(ModP o) const;
    ModP operator*(ModP o) const;
    ModP operator-() const { return ModP() - *this; }
    ModP inv() const;
    ModP operator/(ModP o) const { return *this * o.inv(); }
    ModP& operator+=(ModP o) { return *this = *this + o; }
    ModP& operator-=(ModP o) { return *this = *this - o; }
    ModP& operator*=(ModP o) { return *this = *this * o; }
    bool is_zero() const { return v == 0; }
    friend bool operator==(ModP a, ModP b) { return a.v == b.v; }
};

template <class T>
class Localization {
public:
    using Vec = StateVec<T>;

    explicit Localization(int n, std::vector<T> x = {});

    int n() const { return n_; }
    const std::vector<T>& x() const { return x_; }

    // the vector supported on the states of the empty word at weight w
    // (value 1 on every region state; a single state for trivial weights)
    Vec unit(const GlWeight& w) const;
    // all states of a word at weight w
    std::vector<std::vector<uint32_t>> states(const GlWeight& w, const std::vector<Strand>& word) const;

    // pushes a vector through one slice; `word` is updated in place
    Vec apply(const KLRSlice& s, const GlWeight& w, std::vector<Strand>& word, const Vec& v) const;
    // pulls a covector back through one slice applied to `word` (word is the
    // source of the slice and is left unchanged)
    Vec pullback(const KLRSlice& s, const GlWeight& w, const std::vector<Strand>& word, const Vec& cov) const;

    Vec run(const KLRWord& d, const Vec& start) const;
    // value of a closed diagram at the chosen x (no degree filtering)
    T raw_closed(const KLRWord& d) const;

private:
    int n_;
    std::vector<T> x_;

    using Emit = std::function<void(const std::vector<uint32_t>&, const T&)>;
    void emit(const KLRSlice& s, const GlWeight& w, const std::vector<Strand>& word,
              const std::vector<uint32_t>& state, const T& c, const Emit& out) const;
    void emit_upward_crossing(const std::vector<Strand>& word, int pos,
                              const std::vector<uint32_t>& state, const T& c, const Emit& out) const;
    void emit_composite(const std::vector<KLRSlice>& seq, const GlWeight& w, const std::vector<Strand>& word,
                        const std::vector<uint32_t>& state, const T& c, const Emit& out) const;
    std::vector<uint32_t> region_right_of(const GlWeight& w, const std::vector<Strand>& word,
                                          const std::vector<uint32_t>& state, int pos) const;
};

extern template class Localization<mpq_class>;
extern template class Localization<ModP>;

// default generic evaluation point for n elements
std::vector<mpq_class> generic_point(int n, int variant = 0);

// Exact evaluation of a closed diagram at a trivial-object weight.
Scalar evaluate_closed(const KLRWord& d);

// ------------------------------------------------------------------------
// Bubbles and rewriting.
// ------------------------------------------------------------------------

enum class BubbleOrient { Clockwise, CounterClockwise };

struct Bubble {
    int i = 1;
    BubbleOrient orient = BubbleOrient::Clockwise;
    int dots = 0;  // may be negative for fake bubbles
    int lambda = 0; // λ_i of the region the bubble sits in
    // degree: 2*dots + 2 - 2*lambda (clockwise), 2*dots + 2 + 2*lambda (ccw)
    int degree() const;
};

// Scalar value where it is forced; nullopt when it must stay symbolic.
// `trivial_region` tells whether the ambient weight is a trivial object.
std::optional<Scalar> bubble_value(const Bubble& b, bool trivial_region);

// fake bubble of the given orientation and degree at λ, expressed through the
// infinite Grassmannian relation as a polynomial in real bubbles; returned as
// a map from multisets of real-bubble degrees (sorted) to coefficients
std::map<std::vector<int>, Scalar> fake_bubble_expansion(BubbleOrient o, int degree, int lambda);

// Linear combination of diagrams.
struct KLRSum {
    std::vector<KLRWord> terms;
};

struct ReduceStats {
    long steps = 0;
    bool degree_ok = true;
};

// Local rewriting to a normal form: double crossings, dot slides through
// same-colour crossings (dots pushed down), zigzags, adjacent bubbles with
// forced values. Every rule strictly decreases (crossings, dots-above-crossings,
// slice count).
KLRSum reduce(const KLRWord& w, ReduceStats* stats = nullptr, long max_steps = 100000);

// One rewrite at slice index j: the replacement terms (empty when the site
// vanishes), or nullopt when no rule applies there.
std::optional<std::vector<KLRWord>> rewrite_step(const KLRWord& w, size_t j);

// Thick strands replaced by thin ones: E^{(a)} becomes a thin strands; the
// resulting word carries the e_a idempotent pattern (longest braid word with
// dots a-1, a-2, ..., 0 from the left) at the bottom.
struct ExplodedWord {
    KLRWord word;
    int shift = 0; // Σ a(a-1)/2
};
ExplodedWord explode_thick(const GlWeight& w, const std::vector<Strand>& word);

// ------------------------------------------------------------------------
// Persistent scalar cache: append-only `hash<TAB>scalar` lines.
// ------------------------------------------------------------------------
class EvalCache {
public:
    EvalCache() = default;
    explicit EvalCache(std::filesystem::path file);
    ~EvalCache();

    std::optional<Scalar> find(uint64_t key) const;
    void insert(uint64_t key, const Scalar& v);
    size_t size() const;
    size_t skipped_lines() const { return skipped_; }
    void flush();

private:
    std::filesystem::path file_;
    std::unordered_map<uint64_t, Scalar> map_;
    std::vector<std::pair<uint64_t, Scalar>> pending_;
    mutable std::shared_mutex mu_;
    size_t skipped_ = 0;
};

} // namespace sln
