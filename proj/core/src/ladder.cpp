#include "sln/ladder.hpp"

#include <algorithm>

namespace sln {

bool GlWeight::admissible() const {
    return std::all_of(a.begin(), a.end(), [&](int x) { return x >= 0 && x <= n; });
}

bool GlWeight::trivial() const {
    return std::all_of(a.begin(), a.end(), [&](int x) { return x == 0 || x == n; });
}

std::string GlWeight::str() const {
    std::string s = "[";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + "]";
}

Rung::Rung(RungKind kind_, int i_, int k_) : kind(kind_), i(i_), k(k_) {
    if (k < 1) throw DomainError("rung thickness must be positive");
    if (i < 1) throw DomainError("rung index must be positive");
}

std::string Rung::str() const {
    return std::string(kind == RungKind::E ? "E" : "F") + std::to_string(i) + "^" + std::to_string(k);
}

std::optional<GlWeight> apply_rung(const GlWeight& w, const Rung& r) {
    if (r.i < 1 || r.i >= w.m()) throw DomainError("rung index out of range");
    GlWeight out = w;
    int d = r.kind == RungKind::E ? r.k : -r.k;
    out.a[r.i - 1] += d;
    out.a[r.i] -= d;
    if (!out.admissible()) return std::nullopt;
    return out;
}

LadderWeb::LadderWeb(GlWeight domain, std::vector<Rung> rungs)
    : domain_(std::move(domain)), rungs_(std::move(rungs)) {
    zero_ = !domain_.admissible();
    GlWeight w = domain_;
    for (auto it = rungs_.rbegin(); !zero_ && it != rungs_.rend(); ++it) {
        auto nx = apply_rung(w, *it);
        if (!nx) zero_ = true;
        else w = *nx;
    }
}

GlWeight LadderWeb::codomain() const {
    GlWeight w = domain_;
    for (auto it = rungs_.rbegin(); it != rungs_.rend(); ++it) {
        int d = it->kind == RungKind::E ? it->k : -it->k;
        w.a[it->i - 1] += d;
        w.a[it->i] -= d;
    }
    return w;
}

std::vector<GlWeight> LadderWeb::weights() const {
    std::vector<GlWeight> out;
    if (zero_) return out;
    out.push_back(domain_);
    for (auto it = rungs_.rbegin(); it != rungs_.rend(); ++it) out.push_back(*apply_rung(out.back(), *it));
    return out;
}

LadderWeb LadderWeb::after(const LadderWeb& below) const {
    if (below.codomain() != domain_) throw DomainError("web composition: weight mismatch");
    std::vector<Rung> r = rungs_;
    r.insert(r.end(), below.rungs_.begin(), below.rungs_.end());
    return LadderWeb(below.domain_, r);
}

std::string LadderWeb::str() const {
    std::string s;
    for (auto& r : rungs_) s += r.str() + " ";
    return s + "1_" + domain_.str();
}

void WebSum::normalize() {
    std::erase_if(terms, [](const ShiftedWeb& t) { return t.web.zero(); });
}

} // namespace sln
