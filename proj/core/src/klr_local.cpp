#include <bit>
#include <random>

#include "sln/klr.hpp"
#include "sln/rep.hpp"

namespace sln {

size_t StateHash::operator()(const std::vector<uint32_t>& v) const noexcept {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (uint32_t x : v) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<size_t>(h ^ (h >> 31));
}

// ---------------------------------------------------------------- ModP

ModP::ModP(long long a) {
    long long r = a % static_cast<long long>(P);
    if (r < 0) r += static_cast<long long>(P);
    v = static_cast<uint64_t>(r);
}

ModP ModP::operator+(ModP o) const {
    ModP r;
    r.v = v + o.v;
    if (r.v >= P) r.v -= P;
    return r;
}

ModP ModP::operator-(ModP o) const {
    ModP r;
    r.v = v >= o.v ? v - o.v : v + P - o.v;
    return r;
}

ModP ModP::operator*(ModP o) const {
    __uint128_t t = static_cast<__uint128_t>(v) * o.v;
    uint64_t lo = static_cast<uint64_t>(t & P), hi = static_cast<uint64_t>(t >> 61);
    ModP r;
    r.v = lo + hi;
    if (r.v >= P) r.v -= P;
    return r;
}

ModP ModP::inv() const {
    if (v == 0) throw DomainError("modular inverse of zero");
    ModP base = *this, acc(1);
    uint64_t e = P - 2;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

ModP ModP::from_mpq(const mpq_class& q) {
    mpz_class pz(std::to_string(P));
    mpz_class a = q.get_num() % pz, b = q.get_den() % pz;
    if (a < 0) a += pz;
    ModP x, y;
    x.v = std::stoull(a.get_str());
    y.v = std::stoull(b.get_str());
    return x / y;
}

// ---------------------------------------------------------------- helpers

namespace {

template <class T>
T from_long(long v) {
    if constexpr (std::is_same_v<T, ModP>) return ModP(v);
    else return T(v);
}

template <class T>
bool is_zero(const T& v) {
    if constexpr (std::is_same_v<T, ModP>) return v.is_zero();
    else return sgn(v) == 0;
}

template <class T>
T schur_at(const Partition& p, const std::vector<T>& x) {
    int len = p.length();
    if (len > static_cast<int>(x.size())) return from_long<T>(0);
    if (len == 0) return from_long<T>(1);
    int top = p[0] + len;
    std::vector<T> h(top + 1, from_long<T>(0));
    h[0] = from_long<T>(1);
    for (auto& xi : x)
        for (int k = 1; k <= top; ++k) h[k] += xi * h[k - 1];
    std::vector<std::vector<T>> m(len, std::vector<T>(len));
    for (int i = 0; i < len; ++i)
        for (int j = 0; j < len; ++j) {
            int k = p[i] - i + j;
            m[i][j] = k < 0 ? from_long<T>(0) : h[k];
        }
    T det = from_long<T>(1);
    for (int c = 0; c < len; ++c) {
        int piv = -1;
        for (int r = c; r < len; ++r)
            if (!is_zero(m[r][c])) { piv = r; break; }
        if (piv < 0) return from_long<T>(0);
        if (piv != c) { std::swap(m[piv], m[c]); det = -det; }
        det *= m[c][c];
        for (int r = c + 1; r < len; ++r) {
            if (is_zero(m[r][c])) continue;
            T f = m[r][c] / m[c][c];
            for (int k = c; k < len; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

std::vector<int> elements(uint32_t m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

// applies strand s moving the set z to the region r (in place); false if invalid
bool move(std::vector<uint32_t>& r, const Strand& s, uint32_t z) {
    int a = s.i - 1, b = s.i;
    if (s.kind == RungKind::E) std::swap(a, b);
    // elements leave slot a and enter slot b
    if ((r[a] & z) != z || (r[b] & z)) return false;
    r[a] &= ~z;
    r[b] |= z;
    return true;
}

} // namespace

std::vector<mpq_class> generic_point(int n, int variant) {
    static const long num[] = {3, -5, 7, 2, -11, 13, 1, -17, 19, 23, -29, 31, 37, -41, 43, 47};
    static const long den[] = {1, 2, 3, 5, 7, 4, 9, 11, 6, 13, 8, 17, 10, 19, 12, 23};
    std::vector<mpq_class> x(n);
    for (int j = 0; j < n; ++j) {
        int a = (j + variant * 5) % 16, b = (j * 3 + variant) % 16;
        x[j] = mpq_class(num[a] * (variant + 1) + j * 101, den[b]);
        x[j].canonicalize();
    }
    return x;
}

// ---------------------------------------------------------------- engine

template <class T>
Localization<T>::Localization(int n, std::vector<T> x) : n_(n), x_(std::move(x)) {
    if (n < 1 || n > 30) throw DomainError("unsupported n");
    if (x_.empty()) {
        if constexpr (std::is_same_v<T, ModP>) {
            std::mt19937_64 rng(0x5eed + n);
            for (int j = 0; j < n; ++j) x_.push_back(ModP(static_cast<long long>(rng() >> 4)));
        } else {
            x_ = generic_point(n);
        }
    }
    if (static_cast<int>(x_.size()) != n) throw DomainError("evaluation point has wrong size");
}

template <class T>
typename Localization<T>::Vec Localization<T>::unit(const GlWeight& w) const {
    Vec v;
    WeightBasis b(w);
    for (auto& s : b.states()) v.emplace(s, from_long<T>(1));
    return v;
}

template <class T>
std::vector<std::vector<uint32_t>> Localization<T>::states(const GlWeight& w, const std::vector<Strand>& word) const {
    std::vector<std::vector<uint32_t>> out;
    WeightBasis b(w);
    int m = w.m(), L = static_cast<int>(word.size());
    for (auto& t : b.states()) {
        std::vector<uint32_t> st(t.begin(), t.end());
        st.resize(m + L, 0);
        std::vector<uint32_t> region(t.begin(), t.end());
        std::function<void(int)> rec = [&](int p) {
            if (p < 0) {
                out.push_back(st);
                return;
            }
            const Strand& s = word[p];
            int from = s.kind == RungKind::E ? s.i : s.i - 1;
            int to = s.kind == RungKind::E ? s.i - 1 : s.i;
            uint32_t avail = region[from] & ~region[to];
            for (uint32_t z : subsets_of_mask(avail, s.k)) {
                auto saved = region;
                move(region, s, z);
                st[m + p] = z;
                rec(p - 1);
                region = saved;
            }
        };
        rec(L - 1);
    }
    return out;
}

template <class T>
std::vector<uint32_t> Localization<T>::region_right_of(const GlWeight& w, const std::vector<Strand>& word,
                                                       const std::vector<uint32_t>& state, int pos) const {
    int m = w.m();
    std::vector<uint32_t> r(state.begin(), state.begin() + m);
    for (int p = static_cast<int>(word.size()) - 1; p > pos; --p) move(r, word[p], state[m + p]);
    return r;
}

template <class T>
void Localization<T>::emit_upward_crossing(const std::vector<Strand>& word, int pos,
                                           const std::vector<uint32_t>& state, const T& c, const Emit& out) const {
    const Strand &a = word[pos], &b = word[pos + 1];
    int m = static_cast<int>(state.size()) - static_cast<int>(word.size());
    uint32_t za = state[m + pos], zb = state[m + pos + 1];
    if (a.i == b.i) {
        if (a.k != 1 || b.k != 1) throw DomainError("thick same-colour crossing is not supported");
        int u = std::countr_zero(za), v = std::countr_zero(zb);
        T coef = c / (x_[u] - x_[v]);
        out(state, coef);
        auto sw = state;
        std::swap(sw[m + pos], sw[m + pos + 1]);
        out(sw, coef);
        return;
    }
    auto sw = state;
    std::swap(sw[m + pos], sw[m + pos + 1]);
    int d = a.i - b.i;
    if (d == 1 || d == -1) {
        if (za & zb) return;
        if (a.i < b.i) {
            T coef = c;
            for (int u : elements(za))
                for (int v : elements(zb)) coef *= x_[v] - x_[u];
            out(sw, coef);
        } else {
            out(sw, c);
        }
        return;
    }
    out(sw, c);
}

template <class T>
void Localization<T>::emit_composite(const std::vector<KLRSlice>& seq, const GlWeight& w,
                                     const std::vector<Strand>& word, const std::vector<uint32_t>& state,
                                     const T& c, const Emit& out) const {
    Vec v;
    v.emplace(state, c);
    std::vector<Strand> cur = word;
    for (auto& s : seq) v = apply(s, w, cur, v);
    for (auto& [st, val] : v) out(st, val);
}

template <class T>
void Localization<T>::emit(const KLRSlice& s, const GlWeight& w, const std::vector<Strand>& word,
                           const std::vector<uint32_t>& state, const T& c, const Emit& out) const {
    int m = w.m();
    switch (s.kind) {
    case SliceKind::Dot: {
        T f = from_long<T>(0);
        for (int u : elements(state[m + s.pos])) f += x_[u];
        T coef = c;
        for (int j = 0; j < s.count; ++j) coef *= f;
        out(state, coef);
        return;
    }
    case SliceKind::Decorate: {
        std::vector<T> xs;
        for (int u : elements(state[m + s.pos])) xs.push_back(x_[u]);
        out(state, c * schur_at(s.decoration, xs));
        return;
    }
    case SliceKind::Crossing: {
        const Strand &a = word[s.pos], &b = word[s.pos + 1];
        int p = s.pos;
        if (a.kind == RungKind::E && b.kind == RungKind::E) {
            emit_upward_crossing(word, p, state, c, out);
        } else if (a.kind == RungKind::E && b.kind == RungKind::F) {
            // E_i F_j -> F_j E_i : rotate an upward crossing clockwise
            emit_composite({KLRSlice::cup(p, Orient::FE, b.i, b.k), KLRSlice::crossing(p + 1), KLRSlice::cap(p + 2)},
                           w, word, state, c, out);
        } else if (a.kind == RungKind::F && b.kind == RungKind::E) {
            // F_j E_i -> E_i F_j
            emit_composite({KLRSlice::cup(p + 2, Orient::EF, a.i, a.k), KLRSlice::crossing(p + 1), KLRSlice::cap(p)},
                           w, word, state, c, out);
        } else {
            // F_i F_j -> F_j F_i : upward crossing turned upside down
            emit_composite({KLRSlice::cup(p, Orient::FE, b.i, b.k), KLRSlice::cup(p + 1, Orient::FE, a.i, a.k),
                            KLRSlice::crossing(p + 2), KLRSlice::cap(p + 3), KLRSlice::cap(p + 2)},
                           w, word, state, c, out);
        }
        return;
    }
    case SliceKind::Cup: {
        std::vector<uint32_t> r = region_right_of(w, word, state, s.pos - 1);
        int sl = s.i - 1, tl = s.i;
        uint32_t P = r[sl] & ~r[tl], Q = r[tl] & ~r[sl];
        auto base = state;
        base.insert(base.begin() + m + s.pos, {0u, 0u});
        if (s.orient == Orient::FE) {
            for (uint32_t z : subsets_of_mask(Q, s.k)) {
                base[m + s.pos] = z;
                base[m + s.pos + 1] = z;
                out(base, c);
            }
        } else {
            int np = std::popcount(P), nq = std::popcount(Q), k = s.k;
            bool neg = ((k * (np - k) + k * nq) & 1) != 0;
            for (uint32_t z : subsets_of_mask(P, s.k)) {
                T num = neg ? -c : c, den = from_long<T>(1);
                for (int u : elements(z)) {
                    for (int b : elements(Q)) num *= x_[b] - x_[u];
                    for (int v : elements(P & ~z)) den *= x_[v] - x_[u];
                }
                base[m + s.pos] = z;
                base[m + s.pos + 1] = z;
                out(base, num / den);
            }
        }
        return;
    }
    case SliceKind::Cap: {
        uint32_t za = state[m + s.pos], zb = state[m + s.pos + 1];
        if (za != zb) return;
        const Strand& a = word[s.pos];
        auto rest = state;
        rest.erase(rest.begin() + m + s.pos, rest.begin() + m + s.pos + 2);
        if (a.kind == RungKind::E) {
            out(rest, c);
            return;
        }
        std::vector<uint32_t> r = region_right_of(w, word, state, s.pos + 1);
        int sl = a.i - 1, tl = a.i;
        uint32_t P = r[sl] & ~r[tl], Q = r[tl] & ~r[sl];
        int np = std::popcount(P), nq = std::popcount(Q), k = a.k;
        bool neg = ((k * (nq - k) + k * np) & 1) != 0;
        T num = neg ? -c : c, den = from_long<T>(1);
        for (int u : elements(za)) {
            for (int b : elements(P)) num *= x_[b] - x_[u];
            for (int v : elements(Q & ~za)) den *= x_[v] - x_[u];
        }
        out(rest, num / den);
        return;
    }
    case SliceKind::Split: {
        // downward strands: the upward merge rotated by a half turn
        bool down = word[s.pos].kind == RungKind::F;
        uint32_t z = state[m + s.pos];
        auto base = state;
        base.insert(base.begin() + m + s.pos + 1, 0u);
        for (uint32_t zl : subsets_of_mask(z, s.left)) {
            uint32_t zr = z & ~zl;
            base[m + s.pos] = zl;
            base[m + s.pos + 1] = zr;
            if (!down) {
                out(base, c);
                continue;
            }
            T den = from_long<T>(1);
            for (int u : elements(zr))
                for (int v : elements(zl)) den *= x_[u] - x_[v];
            out(base, c / den);
        }
        return;
    }
    case SliceKind::Merge: {
        // downward strands: the upward split rotated by a half turn
        bool down = word[s.pos].kind == RungKind::F;
        uint32_t zl = state[m + s.pos], zr = state[m + s.pos + 1];
        T den = from_long<T>(1);
        if (!down)
            for (int u : elements(zl))
                for (int v : elements(zr)) den *= x_[u] - x_[v];
        auto rest = state;
        rest[m + s.pos] = zl | zr;
        rest.erase(rest.begin() + m + s.pos + 1);
        out(rest, c / den);
        return;
    }
    }
}

template <class T>
typename Localization<T>::Vec Localization<T>::apply(const KLRSlice& s, const GlWeight& w, std::vector<Strand>& word,
                                                     const Vec& v) const {
    std::vector<Strand> target = slice_target(s, word);
    Vec out;
    Emit sink = [&](const std::vector<uint32_t>& st, const T& c) {
        if (is_zero(c)) return;
        auto [it, fresh] = out.emplace(st, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) out.erase(it);
        }
    };
    for (auto& [st, c] : v) emit(s, w, word, st, c, sink);
    word = std::move(target);
    return out;
}

template <class T>
typename Localization<T>::Vec Localization<T>::pullback(const KLRSlice& s, const GlWeight& w,
                                                        const std::vector<Strand>& word, const Vec& cov) const {
    Vec out;
    for (auto& st : states(w, word)) {
        T acc = from_long<T>(0);
        Emit sink = [&](const std::vector<uint32_t>& o, const T& c) {
            auto it = cov.find(o);
            if (it != cov.end()) acc += c * it->second;
        };
        emit(s, w, word, st, from_long<T>(1), sink);
        if (!is_zero(acc)) out.emplace(st, acc);
    }
    return out;
}

template <class T>
typename Localization<T>::Vec Localization<T>::run(const KLRWord& d, const Vec& start) const {
    std::vector<Strand> cur = d.domain;
    Vec v = start;
    for (auto& s : d.slices) v = apply(s, d.weight, cur, v);
    T co;
    if constexpr (std::is_same_v<T, ModP>) co = ModP::from_mpq(d.coeff.value());
    else co = d.coeff.value();
    if (!(co == from_long<T>(1)))
        for (auto& [st, c] : v) c *= co;
    return v;
}

template <class T>
T Localization<T>::raw_closed(const KLRWord& d) const {
    if (!d.closed()) throw DomainError("raw_closed: diagram is not closed");
    Vec v = run(d, unit(d.weight));
    T acc = from_long<T>(0);
    for (auto& [st, c] : v) acc += c;
    return acc;
}

template class Localization<mpq_class>;
template class Localization<ModP>;

Scalar evaluate_closed(const KLRWord& d) {
    if (!d.closed()) throw DomainError("evaluate_closed: diagram is not closed");
    if (!d.weight.trivial()) throw DomainError("evaluate_closed: ambient weight must be trivial");
    if (d.is_zero_by_weights() || d.coeff.is_zero()) return Scalar(0);
    if (d.degree() != 0) return Scalar(0);
    Localization<mpq_class> loc(d.weight.n);
    return Scalar(loc.raw_closed(d));
}

} // namespace sln
