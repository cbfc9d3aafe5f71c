#include "sln/exactalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sln {

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(mpq_class v, bool integral) : v_(std::move(v)), integral_(integral) {
    v_.canonicalize();
    if (integral_ && v_.get_den() != 1)
        throw DomainError("non-integer value in integral mode: " + v_.get_str());
}

Scalar Scalar::integer(const mpz_class& z) { return Scalar(mpq_class(z), true); }

Scalar Scalar::parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw DomainError("bad scalar literal: " + s);
    return Scalar(v);
}

Scalar Scalar::as_integral() const { return Scalar(v_, true); }

bool Scalar::is_unit() const {
    if (integral_) return v_ == 1 || v_ == -1;
    return !is_zero();
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.v_ = -r.v_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    v_ += o.v_;
    integral_ = integral_ || o.integral_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    v_ -= o.v_;
    integral_ = integral_ || o.integral_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    v_ *= o.v_;
    integral_ = integral_ || o.integral_;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    bool integral = integral_ || o.integral_;
    if (integral && o.v_ != 1 && o.v_ != -1) {
        mpq_class r = v_ / o.v_;
        if (r.get_den() != 1) throw DomainError("division by non-unit in integral mode");
    }
    v_ /= o.v_;
    integral_ = integral;
    return *this;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(int e, const Scalar& c) {
    LaurentPoly p;
    p.add_term(e, c);
    return p;
}

Scalar LaurentPoly::coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Scalar(0) : it->second;
}

void LaurentPoly::add_term(int e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

int LaurentPoly::min_degree() const {
    if (t_.empty()) throw DomainError("degree of zero polynomial");
    return t_.begin()->first;
}

int LaurentPoly::max_degree() const {
    if (t_.empty()) throw DomainError("degree of zero polynomial");
    return t_.rbegin()->first;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r;
    for (auto& [e, c] : t_) r.t_.emplace(-e, c);
    return r;
}

LaurentPoly LaurentPoly::shifted(int s) const {
    LaurentPoly r;
    for (auto& [e, c] : t_) r.t_.emplace(e + s, c);
    return r;
}

Scalar LaurentPoly::at_one() const {
    Scalar s;
    for (auto& [e, c] : t_) s += c;
    return s;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::divided_by(const LaurentPoly& b) const {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    LaurentPoly rem = *this, quo;
    int bt = b.max_degree();
    Scalar lc = b.coeff(bt);
    while (!rem.is_zero()) {
        int rt = rem.max_degree();
        if (rt - bt < rem.min_degree() - b.min_degree())
            throw DomainError("polynomial division is not exact");
        LaurentPoly m = monomial(rt - bt, rem.coeff(rt) / lc);
        quo += m;
        rem -= m * b;
    }
    return quo;
}

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        auto [e, c] = *it;
        bool neg = c.sign() < 0;
        Scalar a = neg ? -c : c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (e == 0) {
            os << a.str();
            continue;
        }
        if (!a.is_one()) os << a.str() << "*";
        os << "q";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

LaurentPoly qint(int k) {
    LaurentPoly r;
    if (k == 0) return r;
    int s = k > 0 ? 1 : -1;
    int m = k > 0 ? k : -k;
    for (int j = 0; j < m; ++j) r.add_term(m - 1 - 2 * j, Scalar(s));
    return r;
}

LaurentPoly qfactorial(int k) {
    if (k < 0) throw DomainError("negative quantum factorial");
    LaurentPoly r(1);
    for (int j = 2; j <= k; ++j) r *= qint(j);
    return r;
}

LaurentPoly qbinom(int n, int k) {
    if (k < 0 || k > n) throw DomainError("qbinom: k out of range");
    // coefficients of the Gaussian binomial in v = q^2 via
    // G(m, j) = G(m-1, j-1) + v^j G(m-1, j), then centred
    int r = n - k;
    std::vector<std::vector<mpz_class>> g(k + 1); // g[j] = G(j + t, j) for the current t
    for (auto& row : g) row.assign(1, 1);
    for (int t = 1; t <= r; ++t)
        for (int j = 1; j <= k; ++j) {
            std::vector<mpz_class> next(j * t + 1);
            for (size_t e = 0; e < g[j - 1].size(); ++e) next[e] += g[j - 1][e];
            for (size_t e = 0; e < g[j].size(); ++e) next[e + j] += g[j][e];
            g[j] = std::move(next);
        }
    LaurentPoly out;
    for (size_t e = 0; e < g[k].size(); ++e)
        if (g[k][e] != 0) out.add_term(2 * static_cast<int>(e) - k * r, Scalar(mpq_class(g[k][e])));
    return out;
}

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : p_(std::move(parts)) {
    while (!p_.empty() && p_.back() == 0) p_.pop_back();
    for (size_t i = 0; i < p_.size(); ++i) {
        if (p_[i] <= 0) throw DomainError("partition parts must be positive");
        if (i && p_[i] > p_[i - 1]) throw DomainError("partition must be weakly decreasing");
    }
}

int Partition::size() const {
    int s = 0;
    for (int x : p_) s += x;
    return s;
}

bool Partition::in_box(int a, int b) const {
    return length() <= a && (p_.empty() || p_[0] <= b);
}

Partition Partition::transpose() const {
    std::vector<int> t;
    if (!p_.empty()) {
        t.assign(p_[0], 0);
        for (int x : p_)
            for (int j = 0; j < x; ++j) ++t[j];
    }
    return Partition(t);
}

std::string Partition::str() const {
    std::string s = "(";
    for (size_t i = 0; i < p_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p_[i]);
    }
    return s + ")";
}

std::vector<Partition> partitions_of(int size, int max_parts, int max_part) {
    std::vector<Partition> out;
    if (max_part < 0) max_part = size;
    if (max_parts < 0) max_parts = size;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_parts) return;
        for (int x = std::min(left, cap); x >= 1; --x) {
            cur.push_back(x);
            rec(left - x, x);
            cur.pop_back();
        }
    };
    rec(size, max_part);
    return out;
}

std::vector<Partition> partitions_in_box(int a, int b) {
    std::vector<Partition> out;
    for (int s = 0; s <= a * b; ++s)
        for (auto& p : partitions_of(s, a, b)) out.push_back(p);
    return out;
}

Partition dual_complement(const Partition& alpha, int a, int b) {
    if (!alpha.in_box(a, b)) throw DomainError("dual_complement: partition not in box");
    std::vector<int> c(a);
    for (int i = 0; i < a; ++i) c[i] = b - alpha[a - 1 - i];
    return Partition(c).transpose();
}

long lr_coeff(const Partition& alpha, const Partition& beta, const Partition& gamma) {
    if (alpha.size() + beta.size() != gamma.size()) return 0;
    int rows = gamma.length();
    if (alpha.length() > rows) return 0;
    for (int i = 0; i < rows; ++i)
        if (alpha[i] > gamma[i]) return 0;
    int kinds = beta.length();
    if (kinds == 0) return alpha == gamma ? 1 : 0;

    // fill skew cells row by row, right to left (reverse reading order)
    std::vector<std::vector<int>> fill(rows);
    for (int i = 0; i < rows; ++i) fill[i].assign(gamma[i], 0);
    std::vector<int> used(kinds, 0);
    long count = 0;
    std::function<void(int, int)> rec = [&](int r, int c) {
        if (r == rows) {
            ++count;
            return;
        }
        if (c < alpha[r]) {
            rec(r + 1, r + 1 < rows ? gamma[r + 1] - 1 : 0);
            return;
        }
        int hi = kinds;
        if (c + 1 < gamma[r]) hi = std::min(hi, fill[r][c + 1]);
        for (int v = 1; v <= hi; ++v) {
            if (used[v - 1] >= beta[v - 1]) continue;
            if (v > 1 && used[v - 1] + 1 > used[v - 2]) continue;
            if (r > 0 && c >= alpha[r - 1] && fill[r - 1][c] >= v) continue;
            fill[r][c] = v;
            ++used[v - 1];
            if (c == 0) rec(r + 1, r + 1 < rows ? gamma[r + 1] - 1 : 0);
            else rec(r, c - 1);
            --used[v - 1];
        }
        fill[r][c] = 0;
    };
    rec(0, gamma[0] - 1);
    return count;
}

// ---------------------------------------------------------------- SymFunc

SymFunc SymFunc::one(int vars) { return schur(Partition(), vars); }

SymFunc SymFunc::schur(const Partition& p, int vars, const Scalar& c) {
    SymFunc f(vars);
    f.add_term(p, c);
    return f;
}

void SymFunc::add_term(const Partition& p, const Scalar& c) {
    if (p.length() > vars_ || c.is_zero()) return;
    auto [it, fresh] = t_.emplace(p, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

int SymFunc::degree() const {
    int d = -1;
    for (auto& [p, c] : t_) {
        if (d >= 0 && p.size() != d) throw DomainError("inhomogeneous symmetric function");
        d = p.size();
    }
    return d;
}

SymFunc& SymFunc::operator+=(const SymFunc& o) {
    if (o.vars_ != vars_) throw DomainError("variable count mismatch");
    for (auto& [p, c] : o.t_) add_term(p, c);
    return *this;
}

SymFunc SymFunc::operator*(const Scalar& c) const {
    SymFunc r(vars_);
    for (auto& [p, v] : t_) r.add_term(p, v * c);
    return r;
}

std::string SymFunc::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [p, c] : t_) {
        if (!s.empty()) s += " + ";
        if (!c.is_one()) s += c.str() + "*";
        s += "s" + p.str();
    }
    return s;
}

SymFunc schur_multiply(const SymFunc& f, const SymFunc& g) {
    if (f.vars() != g.vars()) throw DomainError("schur_multiply: variable count mismatch");
    int a = f.vars();
    SymFunc r(a);
    for (auto& [p, cp] : f.terms())
        for (auto& [q, cq] : g.terms()) {
            int total = p.size() + q.size();
            int width = (p.empty() ? 0 : p[0]) + (q.empty() ? 0 : q[0]);
            for (auto& gam : partitions_of(total, a, width)) {
                long c = lr_coeff(p, q, gam);
                if (c) r.add_term(gam, cp * cq * Scalar(c));
            }
        }
    return r;
}

SymFunc schur_expand_eh(EH kind, int i, int vars) {
    if (i < 0) throw DomainError("negative index");
    if (i == 0) return SymFunc::one(vars);
    std::vector<int> parts = kind == EH::H ? std::vector<int>{i} : std::vector<int>(i, 1);
    return SymFunc::schur(Partition(parts), vars);
}

mpq_class schur_eval(const Partition& p, const std::vector<mpq_class>& x) {
    int len = p.length();
    if (len > static_cast<int>(x.size())) return 0;
    if (len == 0) return 1;
    int top = p[0] + len;
    // complete homogeneous h_k(x) for k = 0..top
    std::vector<mpq_class> h(top + 1, 0);
    h[0] = 1;
    for (auto& xi : x)
        for (int k = 1; k <= top; ++k) h[k] += xi * h[k - 1];
    std::vector<std::vector<mpq_class>> m(len, std::vector<mpq_class>(len));
    for (int i = 0; i < len; ++i)
        for (int j = 0; j < len; ++j) {
            int k = p[i] - i + j;
            m[i][j] = k < 0 ? mpq_class(0) : h[k];
        }
    mpq_class det = 1;
    for (int c = 0; c < len; ++c) {
        int piv = -1;
        for (int r = c; r < len; ++r)
            if (sgn(m[r][c]) != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(m[piv], m[c]); det = -det; }
        det *= m[c][c];
        for (int r = c + 1; r < len; ++r) {
            if (sgn(m[r][c]) == 0) continue;
            mpq_class f = m[r][c] / m[c][c];
            for (int k = c; k < len; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

} // namespace sln
