#include <sstream>

#include "sln/klr.hpp"

namespace sln {

KLRSlice KLRSlice::dot(int pos, int count) {
    KLRSlice s;
    s.kind = SliceKind::Dot;
    s.pos = pos;
    s.count = count;
    return s;
}

KLRSlice KLRSlice::decorate(int pos, Partition p) {
    KLRSlice s;
    s.kind = SliceKind::Decorate;
    s.pos = pos;
    s.decoration = std::move(p);
    return s;
}

KLRSlice KLRSlice::crossing(int pos) {
    KLRSlice s;
    s.kind = SliceKind::Crossing;
    s.pos = pos;
    return s;
}

KLRSlice KLRSlice::cup(int pos, Orient o, int i, int k) {
    KLRSlice s;
    s.kind = SliceKind::Cup;
    s.pos = pos;
    s.orient = o;
    s.i = i;
    s.k = k;
    return s;
}

KLRSlice KLRSlice::cap(int pos) {
    KLRSlice s;
    s.kind = SliceKind::Cap;
    s.pos = pos;
    return s;
}

KLRSlice KLRSlice::split(int pos, int left) {
    KLRSlice s;
    s.kind = SliceKind::Split;
    s.pos = pos;
    s.left = left;
    return s;
}

KLRSlice KLRSlice::merge(int pos) {
    KLRSlice s;
    s.kind = SliceKind::Merge;
    s.pos = pos;
    return s;
}

std::string KLRSlice::str() const {
    std::ostringstream os;
    switch (kind) {
    case SliceKind::Dot: os << "dot " << pos << " " << count; break;
    case SliceKind::Decorate: os << "dec " << pos << " " << decoration.str(); break;
    case SliceKind::Crossing: os << "x " << pos; break;
    case SliceKind::Cup: os << "cup " << pos << (orient == Orient::FE ? " FE " : " EF ") << i << " " << k; break;
    case SliceKind::Cap: os << "cap " << pos; break;
    case SliceKind::Split: os << "split " << pos << " " << left; break;
    case SliceKind::Merge: os << "merge " << pos; break;
    }
    return os.str();
}

namespace {

void check_pos(const std::vector<Strand>& word, int pos, int width) {
    if (pos < 0 || pos + width > static_cast<int>(word.size()))
        throw DomainError("slice position out of range");
}

} // namespace

std::vector<Strand> slice_target(const KLRSlice& s, const std::vector<Strand>& word) {
    std::vector<Strand> out = word;
    switch (s.kind) {
    case SliceKind::Dot:
    case SliceKind::Decorate:
        check_pos(word, s.pos, 1);
        break;
    case SliceKind::Crossing:
        check_pos(word, s.pos, 2);
        std::swap(out[s.pos], out[s.pos + 1]);
        break;
    case SliceKind::Cup: {
        if (s.pos < 0 || s.pos > static_cast<int>(word.size())) throw DomainError("cup position out of range");
        Strand a = s.orient == Orient::FE ? F(s.i, s.k) : E(s.i, s.k);
        Strand b = s.orient == Orient::FE ? E(s.i, s.k) : F(s.i, s.k);
        out.insert(out.begin() + s.pos, {a, b});
        break;
    }
    case SliceKind::Cap: {
        check_pos(word, s.pos, 2);
        const Strand &a = word[s.pos], &b = word[s.pos + 1];
        if (a.i != b.i || a.k != b.k || a.kind == b.kind) throw DomainError("cap on a non-matching pair");
        out.erase(out.begin() + s.pos, out.begin() + s.pos + 2);
        break;
    }
    case SliceKind::Split: {
        check_pos(word, s.pos, 1);
        const Strand& a = word[s.pos];
        if (s.left < 1 || s.left >= a.k) throw DomainError("split thickness out of range");
        out[s.pos] = Rung(a.kind, a.i, s.left);
        out.insert(out.begin() + s.pos + 1, Rung(a.kind, a.i, a.k - s.left));
        break;
    }
    case SliceKind::Merge: {
        check_pos(word, s.pos, 2);
        const Strand &a = word[s.pos], &b = word[s.pos + 1];
        if (a.i != b.i || a.kind != b.kind) throw DomainError("merge of different strands");
        out[s.pos] = Rung(a.kind, a.i, a.k + b.k);
        out.erase(out.begin() + s.pos + 1);
        break;
    }
    }
    return out;
}

std::optional<std::vector<GlWeight>> KLRWord::regions(const GlWeight& w, const std::vector<Strand>& word) {
    std::vector<GlWeight> out(word.size() + 1);
    out.back() = w;
    if (!w.admissible()) return std::nullopt;
    for (int p = static_cast<int>(word.size()) - 1; p >= 0; --p) {
        auto nx = apply_rung(out[p + 1], word[p]);
        if (!nx) return std::nullopt;
        out[p] = *nx;
    }
    return out;
}

std::vector<std::vector<Strand>> KLRWord::words() const {
    std::vector<std::vector<Strand>> out{domain};
    for (auto& s : slices) out.push_back(slice_target(s, out.back()));
    return out;
}

std::vector<Strand> KLRWord::codomain() const { return words().back(); }

bool KLRWord::is_zero_by_weights() const {
    for (auto& wd : words())
        if (!regions(weight, wd)) return true;
    return false;
}

namespace {

int root_pairing(int i, int j) {
    if (i == j) return 2;
    if (i - j == 1 || j - i == 1) return -1;
    return 0;
}

} // namespace

int slice_degree(const KLRSlice& s, const std::vector<Strand>& word, const GlWeight& w) {
    switch (s.kind) {
    case SliceKind::Dot: return 2 * s.count;
    case SliceKind::Decorate: return 2 * s.decoration.size();
    case SliceKind::Crossing: {
        const Strand &a = word[s.pos], &b = word[s.pos + 1];
        if (a.kind == b.kind) return -root_pairing(a.i, b.i) * a.k * b.k;
        return 0;
    }
    case SliceKind::Cup:
    case SliceKind::Cap: {
        // weight of the outer region
        int right = s.kind == SliceKind::Cup ? s.pos : s.pos + 2;
        GlWeight r = w;
        for (int p = static_cast<int>(word.size()) - 1; p >= right; --p) {
            auto nx = apply_rung(r, word[p]);
            r = nx ? *nx : GlWeight{r.n, std::vector<int>(r.a.size(), -1)};
        }
        int i = s.kind == SliceKind::Cup ? s.i : word[s.pos].i;
        int k = s.kind == SliceKind::Cup ? s.k : word[s.pos].k;
        bool fe = s.kind == SliceKind::Cup ? s.orient == Orient::FE : word[s.pos].kind == RungKind::F;
        int lam = r.lambda(i);
        return fe ? k * (k + lam) : k * (k - lam);
    }
    case SliceKind::Split: {
        int a = s.left, b = word[s.pos].k - s.left;
        return -a * b;
    }
    case SliceKind::Merge: return -word[s.pos].k * word[s.pos + 1].k;
    }
    return 0;
}

int KLRWord::degree() const {
    int d = 0;
    std::vector<Strand> cur = domain;
    for (auto& s : slices) {
        d += slice_degree(s, cur, weight);
        cur = slice_target(s, cur);
    }
    return d;
}

KLRWord KLRWord::then(const KLRWord& above) const {
    if (!(above.weight == weight) || above.domain != codomain()) throw DomainError("KLR composition mismatch");
    KLRWord r = *this;
    r.slices.insert(r.slices.end(), above.slices.begin(), above.slices.end());
    r.coeff *= above.coeff;
    return r;
}

std::string KLRWord::canonical() const {
    std::ostringstream os;
    os << "n" << weight.n << " w" << weight.str() << " |";
    for (auto& s : domain) os << " " << s.str();
    os << " |";
    for (auto& s : slices) os << " " << s.str() << ";";
    return os.str();
}

uint64_t KLRWord::hash() const {
    // FNV-1a over the canonical text; stable across runs and platforms
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace sln
