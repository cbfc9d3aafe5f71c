#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sln/exactalg.hpp"

namespace sln {

// gl_m weight; entries outside [0,n] denote the zero object
struct GlWeight {
    int n = 2;
    std::vector<int> a;

    int m() const { return static_cast<int>(a.size()); }
    bool admissible() const;
    bool trivial() const; // every entry is 0 or n
    int lambda(int i) const { return a[i - 1] - a[i]; } // 1-based simple root index
    std::string str() const;
    friend bool operator==(const GlWeight&, const GlWeight&) = default;
    friend auto operator<=>(const GlWeight&, const GlWeight&) = default;
};

enum class RungKind { E, F };

// E_i^{(k)} moves k units from slot i+1 to slot i; F_i^{(k)} moves them back.
// The index i is 1-based: slots i and i+1.
struct Rung {
    RungKind kind = RungKind::E;
    int i = 1;
    int k = 1;

    Rung() = default;
    Rung(RungKind kind_, int i_, int k_);
    std::string str() const;
    friend bool operator==(const Rung&, const Rung&) = default;
    friend auto operator<=>(const Rung&, const Rung&) = default;
};

inline Rung E(int i, int k = 1) { return Rung(RungKind::E, i, k); }
inline Rung F(int i, int k = 1) { return Rung(RungKind::F, i, k); }

// returns nullopt when the result leaves [0,n] (the zero object)
std::optional<GlWeight> apply_rung(const GlWeight& w, const Rung& r);

// Ladder web. The word is read like an operator product: the last rung in
// `rungs` acts first on `domain`.
class LadderWeb {
public:
    LadderWeb() = default;
    LadderWeb(GlWeight domain, std::vector<Rung> rungs);

    int n() const { return domain_.n; }
    const GlWeight& domain() const { return domain_; }
    const std::vector<Rung>& rungs() const { return rungs_; }
    bool zero() const { return zero_; }
    GlWeight codomain() const;
    // weights seen while applying the rungs, domain first; empty if zero
    std::vector<GlWeight> weights() const;
    bool closed() const { return !zero_ && domain_.trivial() && codomain().trivial(); }

    // composition: (*this) after `below`
    LadderWeb after(const LadderWeb& below) const;
    std::string str() const;
    friend bool operator==(const LadderWeb& x, const LadderWeb& y) {
        return x.domain_ == y.domain_ && x.rungs_ == y.rungs_;
    }

private:
    GlWeight domain_;
    std::vector<Rung> rungs_;
    bool zero_ = false;
};

struct ShiftedWeb {
    LadderWeb web;
    int qshift = 0;
};

// formal graded direct sum; zero webs are dropped by normalize()
struct WebSum {
    std::vector<ShiftedWeb> terms;
    void normalize();
};

} // namespace sln
