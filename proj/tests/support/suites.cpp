#include "suites.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "sln/foam.hpp"
#include "sln/klr.hpp"
#include "sln/rep.hpp"

#ifndef SLN_FIXTURE_DIR
#define SLN_FIXTURE_DIR "tests/fixtures"
#endif

namespace sln::testing {

void Verdict::fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
}

std::string Verdict::text() const {
    std::string s = summary;
    for (size_t i = 0; i < failures.size() && i < 3; ++i) s += "\n    " + failures[i];
    if (failures.size() > 3) s += "\n    ... " + std::to_string(failures.size() - 3) + " more";
    return s;
}

// ======================================================================
// algebra
// ======================================================================

namespace {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

LaurentPoly pascal_qbinom(int n, int k) {
    if (k < 0 || k > n) return LaurentPoly();
    if (k == 0 || k == n) return LaurentPoly(1);
    return pascal_qbinom(n - 1, k).shifted(k) + pascal_qbinom(n - 1, k - 1).shifted(k - n);
}

// number of semistandard tableaux of shape `shape` with content `content`
// (a composition), by peeling horizontal strips of the largest letter
long kostka(const std::vector<int>& shape, const std::vector<int>& content) {
    if (content.empty()) {
        for (int x : shape)
            if (x) return 0;
        return 1;
    }
    int r = content.back();
    std::vector<int> rest(content.begin(), content.end() - 1);
    long total = 0;
    std::vector<int> mu(shape);
    // choose mu with shape/mu a horizontal strip of size r
    std::function<void(size_t, int)> rec = [&](size_t row, int left) {
        if (row == shape.size()) {
            if (left == 0) {
                std::vector<int> m2 = mu;
                while (!m2.empty() && m2.back() == 0) m2.pop_back();
                total += kostka(m2, rest);
            }
            return;
        }
        int lo = row + 1 < shape.size() ? shape[row + 1] : 0; // strip condition
        for (int v = shape[row]; v >= lo && shape[row] - v <= left; --v) {
            mu[row] = v;
            rec(row + 1, left - (shape[row] - v));
        }
        mu[row] = shape[row];
    };
    rec(0, r);
    return total;
}

void compositions(int total, int parts, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
    if (static_cast<int>(cur.size()) == parts - 1) {
        cur.push_back(total);
        f(cur);
        cur.pop_back();
        return;
    }
    for (int x = 0; x <= total; ++x) {
        cur.push_back(x);
        compositions(total - x, parts, cur, f);
        cur.pop_back();
    }
}

using Monomials = std::map<std::vector<int>, mpq_class>;

Monomials schur_monomials(const Partition& p, int vars) {
    Monomials m;
    if (p.length() > vars) return m;
    std::vector<int> cur;
    compositions(p.size(), vars, cur, [&](const std::vector<int>& u) {
        long k = kostka(p.parts(), u);
        if (k) m[u] += k;
    });
    return m;
}

Monomials expand(const SymFunc& f) {
    Monomials out;
    for (auto& [p, c] : f.terms())
        for (auto& [u, k] : schur_monomials(p, f.vars())) out[u] += k * c.value();
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

Monomials multiply(const Monomials& a, const Monomials& b) {
    Monomials out;
    for (auto& [u, x] : a)
        for (auto& [v, y] : b) {
            std::vector<int> w(u.size());
            for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
            out[w] += x * y;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// c^gamma_{alpha beta} from monomial coefficients: peel Schur functions off
// the product in decreasing lexicographic order of partitions
std::map<Partition, long> brute_lr(const Partition& a, const Partition& b) {
    int size = a.size() + b.size();
    int vars = std::max(1, a.length() + b.length());
    Monomials prod = multiply(schur_monomials(a, vars), schur_monomials(b, vars));
    auto parts = partitions_of(size, vars);
    std::sort(parts.begin(), parts.end(), [](const Partition& x, const Partition& y) { return x.parts() > y.parts(); });
    std::map<Partition, long> out;
    for (auto& g : parts) {
        std::vector<int> key = g.parts();
        key.resize(vars, 0);
        mpq_class c = prod.count(key) ? prod[key] : mpq_class(0);
        if (c == 0) continue;
        out[g] = c.get_num().get_si();
        for (auto& [u, k] : schur_monomials(g, vars)) prod[u] -= c * k;
    }
    return out;
}

Partition brute_dual_complement(const Partition& p, int a, int b) {
    // cells of the a x b box not in p, rotated by 180 degrees, then transposed
    std::vector<std::vector<bool>> in(a, std::vector<bool>(b, false));
    for (int r = 0; r < a; ++r)
        for (int c = 0; c < b; ++c) in[r][c] = c >= p[r];
    std::vector<int> rows(a, 0);
    for (int r = 0; r < a; ++r)
        for (int c = 0; c < b; ++c)
            if (in[a - 1 - r][b - 1 - c]) ++rows[r];
    std::vector<int> cols(b, 0);
    for (int r = 0; r < a; ++r)
        for (int c = 0; c < rows[r]; ++c) ++cols[c];
    while (!cols.empty() && cols.back() == 0) cols.pop_back();
    return Partition(cols);
}

} // namespace

Verdict algebra_suite(int max) {
    Verdict v;
    long checks = 0;
    for (int k = 0; k <= 2 * max; ++k) {
        LaurentPoly ref;
        for (int j = 0; j < k; ++j) ref += LaurentPoly::q(k - 1 - 2 * j);
        ++checks;
        if (!(qint(k) == ref)) v.fail("qint(" + std::to_string(k) + ") = " + qint(k).str());
    }
    for (int n = 0; n <= max; ++n)
        for (int k = 0; k <= n; ++k) {
            LaurentPoly b = qbinom(n, k);
            checks += 4;
            if (!(b == qbinom(n, n - k))) v.fail("qbinom symmetry at " + std::to_string(n) + "," + std::to_string(k));
            if (!(b == b.bar())) v.fail("qbinom bar invariance at " + std::to_string(n) + "," + std::to_string(k));
            if (!(b.at_one() == Scalar(binomial(n, k)))) v.fail("qbinom at q=1, " + std::to_string(n) + "," + std::to_string(k));
            if (!(b == pascal_qbinom(n, k))) v.fail("qbinom vs q-Pascal at " + std::to_string(n) + "," + std::to_string(k));
        }

    std::vector<Partition> small;
    for (int s = 0; s <= max; ++s)
        for (auto& p : partitions_of(s)) small.push_back(p);
    for (auto& a : small)
        for (auto& b : small) {
            auto ref = brute_lr(a, b);
            for (auto& g : partitions_of(a.size() + b.size())) {
                ++checks;
                long want = ref.count(g) ? ref[g] : 0;
                long got = lr_coeff(a, b, g);
                if (got != want)
                    v.fail("lr(" + a.str() + "," + b.str() + "," + g.str() + ") = " + std::to_string(got) + ", brute force " +
                           std::to_string(want));
            }
        }

    for (int a = 0; a <= max; ++a)
        for (int b = 0; b <= max; ++b)
            for (auto& p : partitions_in_box(a, b)) {
                checks += 3;
                Partition d = dual_complement(p, a, b);
                if (!d.in_box(b, a)) v.fail("dual complement leaves P(b,a): " + p.str());
                if (!(dual_complement(d, b, a) == p)) v.fail("dual complement is not an involution on " + p.str());
                if (!(d == brute_dual_complement(p, a, b))) v.fail("dual complement of " + p.str() + " differs from cell count");
            }

    std::mt19937 rng(4);
    auto random_sym = [&](int vars) {
        SymFunc f(vars);
        int terms = 1 + rng() % 3;
        for (int t = 0; t < terms; ++t) {
            auto ps = partitions_of(rng() % 4, vars);
            if (ps.empty()) continue;
            f.add_term(ps[rng() % ps.size()], Scalar(static_cast<long>(rng() % 5) - 2));
        }
        return f;
    };
    for (int trial = 0; trial < 60; ++trial) {
        int vars = 1 + trial % 4;
        SymFunc f = random_sym(vars), g = random_sym(vars), h = random_sym(vars);
        checks += 3;
        SymFunc fg = schur_multiply(f, g);
        if (!(fg == schur_multiply(g, f))) v.fail("schur_multiply not commutative");
        if (!(schur_multiply(fg, h) == schur_multiply(f, schur_multiply(g, h)))) v.fail("schur_multiply not associative");
        if (expand(fg) != multiply(expand(f), expand(g))) v.fail("schur_multiply differs from monomial expansion");
    }
    for (int vars = 1; vars <= max; ++vars)
        for (int i = 0; i <= max; ++i) {
            checks += 2;
            SymFunc e = schur_expand_eh(EH::E, i, vars), h = schur_expand_eh(EH::H, i, vars);
            Monomials em, hm;
            std::vector<int> cur;
            compositions(i, vars, cur, [&](const std::vector<int>& u) {
                hm[u] = 1;
                if (*std::max_element(u.begin(), u.end()) <= 1) em[u] = 1;
            });
            if (expand(e) != em) v.fail("e_" + std::to_string(i) + " in " + std::to_string(vars) + " variables");
            if (expand(h) != hm) v.fail("h_" + std::to_string(i) + " in " + std::to_string(vars) + " variables");
        }
    v.summary = std::to_string(checks) + " checks";
    return v;
}

// ======================================================================
// rep
// ======================================================================

namespace {

struct Op {
    RepMatrix m;
    std::optional<GlWeight> target;
};

// matrix of a product of rungs (operator order) on w; zero when any weight
// leaves the admissible range
Op word_matrix(const std::vector<Rung>& word, const GlWeight& w) {
    Op out{RepMatrix::identity(WeightBasis(w).size()), w};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        auto t = apply_rung(*out.target, *it);
        if (!t) return Op{RepMatrix(), std::nullopt};
        out.m = act_divided(it->kind, it->i, it->k, *out.target) * out.m;
        out.target = t;
    }
    return out;
}

// a - b as matrices between w and the common target (zero operators allowed)
bool equal_ops(const Op& a, const Op& b) {
    bool za = !a.target || a.m.is_zero(), zb = !b.target || b.m.is_zero();
    if (za || zb) return za && zb;
    return a.target == b.target && a.m == b.m;
}

Op combine(const std::vector<std::pair<LaurentPoly, Op>>& terms) {
    Op out{RepMatrix(), std::nullopt};
    for (auto& [c, t] : terms) {
        if (!t.target || t.m.is_zero()) continue;
        RepMatrix s = t.m.scaled(c);
        if (!out.target) {
            out = Op{s, t.target};
        } else {
            out.m = out.m + s;
        }
    }
    return out;
}

std::vector<GlWeight> all_weights(int n, int m) {
    std::vector<GlWeight> out;
    std::vector<int> a(m, 0);
    std::function<void(int)> rec = [&](int j) {
        if (j == m) {
            out.push_back(GlWeight{n, a});
            return;
        }
        for (int x = 0; x <= n; ++x) {
            a[j] = x;
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

} // namespace

Verdict rep_suite(int max_n, int max_m) {
    Verdict v;
    long checks = 0;
    auto where = [](const char* what, const GlWeight& w, int i, int j = 0) {
        return std::string(what) + " at " + w.str() + " i=" + std::to_string(i) + (j ? " j=" + std::to_string(j) : "");
    };
    for (int n = 1; n <= max_n; ++n)
        for (int m = 2; m <= max_m + 1; ++m)
            for (auto& w : all_weights(n, m)) {
                size_t dim = WeightBasis(w).size();
                long bin = 1;
                for (int x : w.a) bin *= binomial(n, x);
                ++checks;
                if (static_cast<long>(dim) != bin) v.fail(where("basis size", w, 0));
                for (int i = 1; i < m; ++i)
                    for (int j = 1; j < m; ++j) {
                        int d = std::abs(i - j);
                        if (d >= 2) {
                            ++checks;
                            if (!equal_ops(word_matrix({E(i), E(j)}, w), word_matrix({E(j), E(i)}, w)))
                                v.fail(where("distant commutation", w, i, j));
                        }
                        if (m > max_m) continue; // the wider ladders only feed distant commutation
                        if (d != 0) {
                            ++checks;
                            if (!equal_ops(word_matrix({E(i), F(j)}, w), word_matrix({F(j), E(i)}, w)))
                                v.fail(where("E_i F_j commutation", w, i, j));
                        }
                        if (d == 1) {
                            for (RungKind s : {RungKind::E, RungKind::F}) {
                                Rung xi(s, i, 1), xj(s, j, 1), xi2(s, i, 2);
                                ++checks;
                                Op lhs = combine({{LaurentPoly(1), word_matrix({xi2, xj}, w)},
                                                  {LaurentPoly(1), word_matrix({xj, xi2}, w)}});
                                if (!equal_ops(lhs, word_matrix({xi, xj, xi}, w))) v.fail(where("Serre relation", w, i, j));
                            }
                        }
                    }
                if (m > max_m) continue;
                for (int i = 1; i < m; ++i) {
                    int lam = w.lambda(i);
                    ++checks;
                    Op ef = word_matrix({E(i), F(i)}, w), fe = word_matrix({F(i), E(i)}, w);
                    Op id{RepMatrix::identity(dim), w};
                    Op lhs = lam >= 0 ? combine({{LaurentPoly(1), ef}, {LaurentPoly(-1), fe}})
                                      : combine({{LaurentPoly(1), fe}, {LaurentPoly(-1), ef}});
                    Op rhs = combine({{qint(std::abs(lam)), id}});
                    if (!equal_ops(lhs, rhs)) v.fail(where("sl2 commutator", w, i));
                    for (RungKind s : {RungKind::E, RungKind::F})
                        for (int a = 1; a <= 3; ++a)
                            for (int b = 1; b <= 3; ++b) {
                                ++checks;
                                Op prod = word_matrix({Rung(s, i, a), Rung(s, i, b)}, w);
                                Op big = combine({{qbinom(a + b, a), word_matrix({Rung(s, i, a + b)}, w)}});
                                if (!equal_ops(prod, big)) v.fail(where("divided power product", w, i));
                            }
                    for (int k = 2; k <= 3; ++k) {
                        ++checks;
                        std::vector<Rung> thin(k, E(i));
                        Op lhs2 = word_matrix(thin, w);
                        Op rhs2 = combine({{qfactorial(k), word_matrix({E(i, k)}, w)}});
                        if (!equal_ops(lhs2, rhs2)) v.fail(where("E^k = [k]! E^(k)", w, i));
                    }
                }
            }
    // closed webs
    for (int n = 2; n <= max_n; ++n) {
        GlWeight w{n, {n, 0}};
        checks += 2;
        LaurentPoly c = eval_closed_web(LadderWeb(w, {E(1), F(1)}));
        if (!(c == qint(n)) && !(c == -qint(n))) v.fail("circle evaluation at n=" + std::to_string(n) + ": " + c.str());
        if (!eval_closed_web(LadderWeb(w, {F(1), E(1)})).is_zero()) v.fail("inadmissible web does not vanish");
    }
    v.summary = std::to_string(checks) + " checks";
    return v;
}

// ======================================================================
// klr probes
// ======================================================================

namespace {

struct Probe {
    KLRWord word;
    size_t site = 0; // slice index of the rewrite site
};

// A closed diagram: nested cups building a word, the site, then the caps
// undoing the cups. Dots are added at the bottom to bring the degree to 0.
class ProbeBuilder {
public:
    explicit ProbeBuilder(std::mt19937& rng) : rng_(rng) {}

    bool random_base(int min_pairs) {
        int n = 2 + rng_() % 3, m = 2 + rng_() % 3;
        weight_ = GlWeight{n, std::vector<int>(m)};
        bool mixed = false;
        for (int& x : weight_.a) x = rng_() % 2 ? n : 0;
        for (int x : weight_.a) mixed |= x != weight_.a[0];
        if (!mixed) return false;
        word_.clear();
        cups_.clear();
        int pairs = min_pairs + rng_() % 2;
        for (int t = 0; t < 40 && static_cast<int>(cups_.size()) < pairs; ++t) {
            int pos = rng_() % (word_.size() + 1);
            Orient o = rng_() % 2 ? Orient::FE : Orient::EF;
            int i = 1 + rng_() % (m - 1);
            KLRSlice c = KLRSlice::cup(pos, o, i, 1);
            auto next = slice_target(c, word_);
            if (!KLRWord::regions(weight_, next)) continue;
            word_ = next;
            cups_.push_back(c);
        }
        return static_cast<int>(cups_.size()) >= min_pairs;
    }

    const std::vector<Strand>& word() const { return word_; }
    const GlWeight& weight() const { return weight_; }

    // site slices act on word(); `restore` must bring the word back
    std::optional<Probe> build(const std::vector<KLRSlice>& site, const std::vector<KLRSlice>& restore) {
        KLRWord d;
        d.weight = weight_;
        d.slices = cups_;
        size_t dots_at = d.slices.size();
        size_t site_at = dots_at;
        d.slices.insert(d.slices.end(), site.begin(), site.end());
        d.slices.insert(d.slices.end(), restore.begin(), restore.end());
        for (auto it = cups_.rbegin(); it != cups_.rend(); ++it) d.slices.push_back(KLRSlice::cap(it->pos));
        try {
            if (!d.closed() || d.is_zero_by_weights()) return std::nullopt;
            int deg = d.degree();
            if (deg > 0 || deg % 2) return std::nullopt;
            std::vector<KLRSlice> dots;
            for (int t = 0; t < -deg / 2; ++t) dots.push_back(KLRSlice::dot(rng_() % word_.size(), 1));
            d.slices.insert(d.slices.begin() + dots_at, dots.begin(), dots.end());
            site_at += dots.size();
            if (d.degree() != 0) return std::nullopt;
        } catch (const DomainError&) {
            return std::nullopt;
        }
        return Probe{d, site_at};
    }

private:
    std::mt19937& rng_;
    GlWeight weight_;
    std::vector<Strand> word_;
    std::vector<KLRSlice> cups_;
};

struct Schema {
    std::string name;
    int min_pairs = 2;
    // site and restoring slices for the current base, or nothing if the base does not fit
    std::function<std::optional<std::pair<std::vector<KLRSlice>, std::vector<KLRSlice>>>(const ProbeBuilder&, std::mt19937&)>
        make;
};

using Site = std::optional<std::pair<std::vector<KLRSlice>, std::vector<KLRSlice>>>;

// random adjacent position whose strands satisfy `pred`
std::optional<int> pick_pair(const std::vector<Strand>& w, std::mt19937& rng,
                             const std::function<bool(const Strand&, const Strand&)>& pred) {
    std::vector<int> ok;
    for (size_t p = 0; p + 1 < w.size(); ++p)
        if (pred(w[p], w[p + 1])) ok.push_back(static_cast<int>(p));
    if (ok.empty()) return std::nullopt;
    return ok[rng() % ok.size()];
}

std::vector<Schema> schemas() {
    auto same_kind = [](int dist) {
        return [dist](const Strand& a, const Strand& b) {
            int d = std::abs(a.i - b.i);
            return a.kind == b.kind && (dist == 2 ? d >= 2 : d == dist);
        };
    };
    std::vector<Schema> s;
    s.push_back({"nilHecke double crossing", 2, [=](const ProbeBuilder& b, std::mt19937& rng) -> Site {
                     auto p = pick_pair(b.word(), rng, same_kind(0));
                     if (!p) return std::nullopt;
                     return std::pair{std::vector{KLRSlice::crossing(*p), KLRSlice::crossing(*p)}, std::vector<KLRSlice>{}};
                 }});
    s.push_back({"distant double crossing", 2, [=](const ProbeBuilder& b, std::mt19937& rng) -> Site {
                     auto p = pick_pair(b.word(), rng, same_kind(2));
                     if (!p) return std::nullopt;
                     return std::pair{std::vector{KLRSlice::crossing(*p), KLRSlice::crossing(*p)}, std::vector<KLRSlice>{}};
                 }});
    s.push_back({"adjacent double crossing", 2, [=](const ProbeBuilder& b, std::mt19937& rng) -> Site {
                     auto p = pick_pair(b.word(), rng, same_kind(1));
                     if (!p) return std::nullopt;
                     return std::pair{std::vector{KLRSlice::crossing(*p), KLRSlice::crossing(*p)}, std::vector<KLRSlice>{}};
                 }});
    for (int side = 0; side < 2; ++side) {
        s.push_back({std::string("dot slide, same colour, ") + (side ? "right" : "left"), 2,
                     [=](const ProbeBuilder& b, std::mt19937& rng) -> Site {
                         auto p = pick_pair(b.word(), rng, same_kind(0));
                         if (!p) return std::nullopt;
                         return std::pair{std::vector{KLRSlice::crossing(*p), KLRSlice::dot(*p + side, 1)},
                                          std::vector<KLRSlice>{}};
                     }});
        s.push_back({std::string("dot slide, other colour, ") + (side ? "right" : "left"), 2,
                     [=](const ProbeBuilder& b, std::mt19937& rng) -> Site {
                         auto p = pick_pair(b.word(), rng, [](const Strand& x, const Strand& y) {
                             return x.kind == y.kind && x.i != y.i;
                         });
                         if (!p) return std::nullopt;
                         return std::pair{std::vector{KLRSlice::crossing(*p), KLRSlice::dot(*p + side, 1)},
                                          std::vector{KLRSlice::crossing(*p)}};
                     }});
    }
    // zigzags: a cup next to a strand of the same colour, capped against it
    s.push_back({"zigzag", 1, [=](const ProbeBuilder& b, std::mt19937& rng) -> Site {
                     const auto& w = b.word();
                     std::vector<std::vector<KLRSlice>> options;
                     for (size_t p = 0; p < w.size(); ++p) {
                         int P = static_cast<int>(p);
                         Orient here = w[p].kind == RungKind::F ? Orient::FE : Orient::EF;
                         Orient before = w[p].kind == RungKind::E ? Orient::FE : Orient::EF;
                         // new pair to the left of strand p, cap its right leg with p
                         options.push_back({KLRSlice::cup(P, here, w[p].i, 1), KLRSlice::cap(P + 1)});
                         // new pair to the right of strand p, cap p with its left leg
                         options.push_back({KLRSlice::cup(P + 1, before, w[p].i, 1), KLRSlice::cap(P)});
                     }
                     if (options.empty()) return std::nullopt;
                     return std::pair{options[rng() % options.size()], std::vector<KLRSlice>{}};
                 }});
    s.push_back({"bubble", 1, [=](const ProbeBuilder& b, std::mt19937& rng) -> Site {
                     const auto& w = b.word();
                     int P = rng() % (w.size() + 1);
                     int i = 1 + rng() % (b.weight().m() - 1);
                     Orient o = rng() % 2 ? Orient::FE : Orient::EF;
                     int dots = rng() % b.weight().n;
                     std::vector<KLRSlice> site{KLRSlice::cup(P, o, i, 1)};
                     if (dots) site.push_back(KLRSlice::dot(P, dots));
                     site.push_back(KLRSlice::cap(P));
                     return std::pair{site, std::vector<KLRSlice>{}};
                 }});
    return s;
}

Scalar eval_sum(const std::vector<KLRWord>& terms) {
    Scalar acc(0);
    for (auto& t : terms) acc += evaluate_closed(t);
    return acc;
}

} // namespace

Verdict klr_suite(const KLRProbeOptions& opt) {
    Verdict v;
    std::mt19937 rng(opt.seed);
    std::ostringstream sum;
    long total = 0, nonzero_total = 0;
    for (auto& schema : schemas()) {
        int got = 0, nonzero = 0;
        std::set<GlWeight> weights;
        for (int attempt = 0; attempt < 20000 && got < opt.instances; ++attempt) {
            ProbeBuilder b(rng);
            if (!b.random_base(schema.min_pairs)) continue;
            auto site = schema.make(b, rng);
            if (!site) continue;
            auto probe = b.build(site->first, site->second);
            if (!probe) continue;
            auto rhs = rewrite_step(probe->word, probe->site);
            if (!rhs) continue; // rule not applicable here (e.g. symbolic bubble)
            ++got;
            weights.insert(b.weight());
            const std::string where = schema.name + " on " + probe->word.canonical();
            Scalar left = evaluate_closed(probe->word), right = eval_sum(*rhs);
            if (!left.is_zero()) ++nonzero;
            if (!(left == right))
                v.fail(where + ": " + left.str() + " vs " + right.str());
            for (auto& t : *rhs)
                if (t.degree() != probe->word.degree()) v.fail(where + ": rewrite changes the degree");
            ReduceStats st;
            KLRSum red = reduce(probe->word, &st);
            if (!st.degree_ok) v.fail(where + ": reduce changed the degree");
            if (!(eval_sum(red.terms) == left)) v.fail(where + ": reduce changes the value");
        }
        if (got < opt.instances)
            v.fail(schema.name + ": only " + std::to_string(got) + " instances found");
        total += got;
        nonzero_total += nonzero;
        sum << "; " << schema.name << " " << got << " (" << nonzero << " nonzero, " << weights.size() << " weights)";
    }

    // bubble laws directly
    for (int n = 2; n <= 4; ++n)
        for (int lam = -n; lam <= n; ++lam)
            for (auto o : {BubbleOrient::Clockwise, BubbleOrient::CounterClockwise})
                for (int dots = 0; dots <= 2 * n; ++dots) {
                    Bubble b{1, o, dots, lam};
                    auto val = bubble_value(b, false);
                    if (b.degree() < 0 && !(val && val->is_zero())) v.fail("negative bubble does not vanish");
                    if (b.degree() == 0 && !(val && val->is_one())) v.fail("degree-zero bubble is not 1");
                }
    v.summary = std::to_string(total) + " probes, " + std::to_string(nonzero_total) + " with nonzero value" + sum.str();
    return v;
}

// ======================================================================
// foams
// ======================================================================

std::filesystem::path foam_fixture_dir() { return std::filesystem::path(SLN_FIXTURE_DIR) / "foams"; }

Verdict foam_suite(const std::filesystem::path& dir) {
    Verdict v;
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dir))
        for (auto& e : std::filesystem::directory_iterator(dir))
            if (e.path().extension() == ".foam") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    const std::regex expect(R"(#\s*expect-degree\s+(-?\d+))");
    int checked = 0;
    for (auto& path : files) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        const std::string text = ss.str();
        const std::string name = path.filename().string();
        std::smatch m;
        if (!std::regex_search(text, m, expect)) {
            v.fail(name + ": no expected degree");
            continue;
        }
        int want = std::stoi(m[1]);
        try {
            FoamWord f = FoamWord::from_text(text);
            int d = foam_degree(f), e = weighted_euler_validate(f), k = foam_to_klr(f).degree();
            if (d != want || e != want || k != want)
                v.fail(name + ": expected " + std::to_string(want) + ", foam_degree " + std::to_string(d) + ", Euler " +
                       std::to_string(e) + ", KLR " + std::to_string(k));
            // additivity over every cut of the movie
            for (size_t cut = 1; cut < f.moves.size(); ++cut) {
                FoamWord lo{f.source, {f.moves.begin(), f.moves.begin() + cut}, Scalar(1)};
                FoamWord hi{lo.target(), {f.moves.begin() + cut, f.moves.end()}, Scalar(1)};
                if (foam_degree(lo) + foam_degree(hi) != d || foam_degree(lo.then(hi)) != d)
                    v.fail(name + ": degree not additive at cut " + std::to_string(cut));
            }
            if (FoamWord::from_text(f.to_text()).to_text() != f.to_text()) v.fail(name + ": text round trip");
            ++checked;
        } catch (const std::exception& ex) {
            v.fail(name + ": " + ex.what());
        }
    }
    if (checked < 50) v.fail("only " + std::to_string(checked) + " fixtures (need 50)");
    for (const char* must : {"splitter_1_2.foam", "cup_thick2.foam", "dot_degree.foam"})
        if (!std::filesystem::exists(dir / must)) v.fail(std::string("missing fixture ") + must);
    v.summary = std::to_string(checked) + " foams";
    return v;
}

// ======================================================================
// links
// ======================================================================

const std::vector<CorpusEntry>& link_corpus() {
    static const std::vector<CorpusEntry> c{
        {"hopf", "1 1", 0},
        {"trefoil", "1 1 1", 0},
        {"mirror-trefoil", "-1 -1 -1", 0},
        {"trefoil-r2", "1 1 -1 1 1", 0},
        {"figure-eight", "1 -2 1 -2", 0},
        {"figure-eight-conj", "-2 1 -2 1", 0},
    };
    return c;
}

LinkRun run_link(const CorpusEntry& e, int n, bool integral, int jobs) {
    LinkRun r;
    r.name = e.name;
    r.n = n;
    r.integral = integral;
    TangleDiagram d = TangleDiagram::parse_braid(e.braid, {}, e.strands);
    WebComplex wc = build_complex(compile_tangle(d, n));
    ScalarizeOptions so;
    so.integral = integral;
    so.jobs = jobs;
    so.decompositions = &r.decompositions;
    r.complex = scalarize(wc, so);
    r.d2 = d_squared_zero(r.complex);
    r.homology = homology(gaussian_eliminate(r.complex, PivotOrder::LowestFirst));
    r.decat = decat_invariant(d, n);
    return r;
}

bool biorthogonal(const LinkRun& r, std::string* why) {
    for (auto& dec : r.decompositions) {
        auto m = biorthogonality_matrix(dec);
        for (size_t j = 0; j < m.size(); ++j)
            for (size_t k = 0; k < m.size(); ++k)
                if (!(m[j][k] == Scalar(j == k ? 1 : 0))) {
                    if (why) *why = "proj o inc is not the identity for " + dec.web.str();
                    return false;
                }
    }
    return true;
}

} // namespace sln::testing
