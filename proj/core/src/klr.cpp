#include <algorithm>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sln/klr.hpp"

namespace sln {

// ---------------------------------------------------------------- bubbles

int Bubble::degree() const {
    return orient == BubbleOrient::Clockwise ? 2 * dots + 2 - 2 * lambda : 2 * dots + 2 + 2 * lambda;
}

std::optional<Scalar> bubble_value(const Bubble& b, bool trivial_region) {
    int d = b.degree();
    if (d < 0) return Scalar(0);
    if (d == 0) return Scalar(1);
    if (trivial_region) return Scalar(0);
    return std::nullopt;
}

std::map<std::vector<int>, Scalar> fake_bubble_expansion(BubbleOrient o, int degree, int lambda) {
    (void)o;
    (void)lambda;
    if (degree < 0 || degree % 2) throw DomainError("fake bubble degree must be even and nonnegative");
    // b_t := bubble of degree 2t of the requested orientation,
    // c_t := bubble of degree 2t of the opposite orientation.
    // Σ_{j=0}^t b_j c_{t-j} = δ_{t,0} with b_0 = c_0 = 1 gives
    // b_t = -Σ_{j<t} b_j c_{t-j}.
    int t = degree / 2;
    std::vector<std::map<std::vector<int>, Scalar>> b(t + 1);
    b[0][{}] = Scalar(1);
    for (int s = 1; s <= t; ++s) {
        for (int j = 0; j < s; ++j)
            for (auto& [mono, c] : b[j]) {
                std::vector<int> m2 = mono;
                m2.push_back(2 * (s - j));
                std::sort(m2.begin(), m2.end());
                auto [it, fresh] = b[s].emplace(m2, -c);
                if (!fresh) {
                    it->second -= c;
                    if (it->second.is_zero()) b[s].erase(it);
                }
            }
    }
    return b[t];
}

// ---------------------------------------------------------------- explode

ExplodedWord explode_thick(const GlWeight& w, const std::vector<Strand>& word) {
    ExplodedWord out;
    out.word.weight = w;
    std::vector<Strand> thin;
    std::vector<std::pair<int, int>> blocks; // (start, size)
    for (auto& s : word) {
        blocks.emplace_back(static_cast<int>(thin.size()), s.k);
        for (int j = 0; j < s.k; ++j) thin.push_back(Rung(s.kind, s.i, 1));
        out.shift += s.k * (s.k - 1) / 2;
    }
    out.word.domain = thin;
    for (auto [start, a] : blocks) {
        if (a < 2) continue;
        // longest element as a reduced word (bubble-sort network)
        for (int r = 0; r < a - 1; ++r)
            for (int c = 0; c < a - 1 - r; ++c) out.word.slices.push_back(KLRSlice::crossing(start + c));
        for (int j = 0; j < a - 1; ++j) out.word.slices.push_back(KLRSlice::dot(start + j, a - 1 - j));
    }
    return out;
}

// ---------------------------------------------------------------- reduce

namespace {

struct Measure {
    long crossings = 0, dots_above = 0, slices = 0;
    auto key() const { return std::tuple(crossings, dots_above, slices); }
};

Measure measure(const KLRWord& w) {
    Measure m;
    m.slices = static_cast<long>(w.slices.size());
    long crossings_below = 0;
    for (auto& s : w.slices) {
        if (s.kind == SliceKind::Crossing) {
            ++m.crossings;
            ++crossings_below;
        }
        if (s.kind == SliceKind::Dot) m.dots_above += crossings_below * s.count;
    }
    return m;
}

bool thin_same(const Strand& a, const Strand& b) {
    return a.kind == b.kind && a.i == b.i && a.k == 1 && b.k == 1;
}

// tries one rewrite at slice index j; on success fills `out` and returns true
bool rewrite_at(const KLRWord& w, const std::vector<std::vector<Strand>>& words, size_t j, std::vector<KLRWord>& out) {
    const KLRSlice& s = w.slices[j];
    const std::vector<Strand>& before = words[j];
    auto replaced = [&](size_t from, size_t to, std::vector<KLRSlice> mid, Scalar c) {
        KLRWord r = w;
        r.slices.erase(r.slices.begin() + from, r.slices.begin() + to);
        r.slices.insert(r.slices.begin() + from, mid.begin(), mid.end());
        r.coeff *= c;
        return r;
    };
    if (j + 1 < w.slices.size()) {
        const KLRSlice& t = w.slices[j + 1];
        // double crossings
        if (s.kind == SliceKind::Crossing && t.kind == SliceKind::Crossing && s.pos == t.pos) {
            const Strand &a = before[s.pos], &b = before[s.pos + 1];
            if (a.kind == b.kind) {
                if (thin_same(a, b)) return true; // ψ² = 0
                int d = a.i - b.i;
                if (d > 1 || d < -1) {
                    out.push_back(replaced(j, j + 2, {}, Scalar(1)));
                    return true;
                }
                if (a.k == 1 && b.k == 1) {
                    // Q_ij(y_left, y_right) with t_{i,i+1} = -1, t_{i+1,i} = 1
                    int sl = a.i < b.i ? -1 : 1;
                    out.push_back(replaced(j, j + 2, {KLRSlice::dot(s.pos, 1)}, Scalar(sl)));
                    out.push_back(replaced(j, j + 2, {KLRSlice::dot(s.pos + 1, 1)}, Scalar(-sl)));
                    return true;
                }
            }
        }
        // dots above an upward crossing move below it
        if (s.kind == SliceKind::Crossing && t.kind == SliceKind::Dot && t.count >= 1 &&
            (t.pos == s.pos || t.pos == s.pos + 1)) {
            const Strand &a = before[s.pos], &b = before[s.pos + 1];
            if (a.kind == b.kind && a.k == 1 && b.k == 1) {
                int below = t.pos == s.pos ? s.pos + 1 : s.pos;
                std::vector<KLRSlice> moved{KLRSlice::dot(below, 1), s};
                if (t.count > 1) moved.push_back(KLRSlice::dot(t.pos, t.count - 1));
                out.push_back(replaced(j, j + 2, moved, Scalar(1)));
                if (a.i == b.i) {
                    // upward: ψ x_below-left = x_above-right ψ + 1, ψ x_below-right = x_above-left ψ - 1;
                    // downward strands carry the opposite sign
                    std::vector<KLRSlice> rest;
                    if (t.count > 1) rest.push_back(KLRSlice::dot(t.pos, t.count - 1));
                    int sg = (t.pos == s.pos ? 1 : -1) * (a.kind == RungKind::E ? 1 : -1);
                    out.push_back(replaced(j, j + 2, rest, Scalar(sg)));
                }
                return true;
            }
        }
        // zigzags
        if (s.kind == SliceKind::Cup && t.kind == SliceKind::Cap) {
            const std::vector<Strand>& mid = words[j + 1];
            if (t.pos == s.pos + 1 && s.pos + 2 < static_cast<int>(mid.size()) && s.orient == Orient::FE) {
                out.push_back(replaced(j, j + 2, {}, Scalar(1)));
                return true;
            }
            if (t.pos == s.pos - 1 && s.orient == Orient::FE) {
                out.push_back(replaced(j, j + 2, {}, Scalar(1)));
                return true;
            }
            if ((t.pos == s.pos + 1 || t.pos == s.pos - 1) && s.orient == Orient::EF) {
                out.push_back(replaced(j, j + 2, {}, Scalar(1)));
                return true;
            }
        }
    }
    // bubbles: cup, dots on the pair, cap at the same position
    if (s.kind == SliceKind::Cup && s.k == 1) {
        int dots = 0;
        size_t e = j + 1;
        while (e < w.slices.size() && w.slices[e].kind == SliceKind::Dot &&
               (w.slices[e].pos == s.pos || w.slices[e].pos == s.pos + 1)) {
            dots += w.slices[e].count;
            ++e;
        }
        if (e < w.slices.size() && w.slices[e].kind == SliceKind::Cap && w.slices[e].pos == s.pos) {
            auto regs = KLRWord::regions(w.weight, before);
            if (!regs) return true; // zero object
            const GlWeight& outer = (*regs)[s.pos];
            Bubble b;
            b.i = s.i;
            b.dots = dots;
            b.orient = s.orient == Orient::FE ? BubbleOrient::CounterClockwise : BubbleOrient::Clockwise;
            b.lambda = outer.lambda(s.i);
            // positive-degree endomorphisms of a trivial object vanish
            bool trivial = outer.trivial();
            if (auto v = bubble_value(b, trivial)) {
                if (!v->is_zero()) out.push_back(replaced(j, e + 1, {}, *v));
                return true;
            }
        }
    }
    return false;
}

} // namespace

std::optional<std::vector<KLRWord>> rewrite_step(const KLRWord& w, size_t j) {
    if (j >= w.slices.size()) return std::nullopt;
    auto words = w.words();
    std::vector<KLRWord> out;
    if (!rewrite_at(w, words, j, out)) return std::nullopt;
    return out;
}

KLRSum reduce(const KLRWord& w, ReduceStats* stats, long max_steps) {
    KLRSum done;
    std::deque<KLRWord> work{w};
    long steps = 0;
    bool degree_ok = true;
    while (!work.empty()) {
        KLRWord cur = std::move(work.front());
        work.pop_front();
        if (cur.coeff.is_zero()) continue;
        if (cur.is_zero_by_weights()) continue;
        auto words = cur.words();
        bool changed = false;
        for (size_t j = 0; j < cur.slices.size() && !changed; ++j) {
            std::vector<KLRWord> out;
            if (rewrite_at(cur, words, j, out)) {
                changed = true;
                ++steps;
                if (steps > max_steps) throw std::runtime_error("reduce: step limit exceeded");
                int d0 = cur.degree();
                auto m0 = measure(cur).key();
                for (auto& r : out) {
                    if (r.is_zero_by_weights()) continue;
                    if (r.degree() != d0) degree_ok = false;
                    if (!(measure(r).key() < m0)) throw std::logic_error("reduce: measure did not decrease");
                    work.push_back(std::move(r));
                }
            }
        }
        if (!changed) done.terms.push_back(std::move(cur));
    }
    if (stats) {
        stats->steps = steps;
        stats->degree_ok = degree_ok;
    }
    return done;
}

// ---------------------------------------------------------------- cache

EvalCache::EvalCache(std::filesystem::path file) : file_(std::move(file)) {
    std::ifstream in(file_);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tab = line.find('\t');
        bool ok = tab != std::string::npos && tab > 0;
        uint64_t key = 0;
        if (ok) {
            try {
                size_t used = 0;
                key = std::stoull(line.substr(0, tab), &used, 16);
                ok = used == tab;
                if (ok) map_[key] = Scalar::parse(line.substr(tab + 1));
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) {
            ++skipped_;
            std::cerr << "warning: skipping corrupt cache line " << lineno << " in " << file_.string() << "\n";
        }
    }
}

EvalCache::~EvalCache() {
    try {
        flush();
    } catch (...) {
    }
}

std::optional<Scalar> EvalCache::find(uint64_t key) const {
    std::shared_lock lk(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void EvalCache::insert(uint64_t key, const Scalar& v) {
    std::unique_lock lk(mu_);
    if (map_.emplace(key, v).second) pending_.emplace_back(key, v);
}

size_t EvalCache::size() const {
    std::shared_lock lk(mu_);
    return map_.size();
}

void EvalCache::flush() {
    std::unique_lock lk(mu_);
    if (file_.empty() || pending_.empty()) return;
    std::ofstream out(file_, std::ios::app);
    for (auto& [k, v] : pending_) {
        std::ostringstream hex;
        hex << std::hex << k;
        out << hex.str() << '\t' << v.str() << '\n';
    }
    pending_.clear();
}

} // namespace sln
