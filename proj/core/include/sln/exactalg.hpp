#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sln {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Exact rational. In integral mode every value must stay an integer and
// division is only allowed by +-1.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : v_(v) {}
    Scalar(int v) : v_(v) {}
    Scalar(mpq_class v, bool integral = false);
    static Scalar integer(const mpz_class& z);
    static Scalar parse(const std::string& s);

    const mpq_class& value() const { return v_; }
    bool integral() const { return integral_; }
    Scalar as_integral() const;

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const;
    int sign() const { return sgn(v_); }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }

    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_{0};
    bool integral_ = false;
};

// Sparse Laurent polynomial in q. Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c) { add_term(0, Scalar(c)); }
    LaurentPoly(const Scalar& c) { add_term(0, c); }
    static LaurentPoly monomial(int e, const Scalar& c = Scalar(1));
    static LaurentPoly q(int e = 1) { return monomial(e); }

    const std::map<int, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Scalar coeff(int e) const;
    void add_term(int e, const Scalar& c);
    int min_degree() const;
    int max_degree() const;

    LaurentPoly bar() const;          // q -> q^{-1}
    LaurentPoly shifted(int e) const; // multiply by q^e
    Scalar at_one() const;
    bool is_monomial() const { return t_.size() == 1; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }

    // exact division; throws DomainError when b does not divide *this
    LaurentPoly divided_by(const LaurentPoly& b) const;

    // human readable, e.g. "q^2 + 1 - 2*q^-2" (highest degree first)
    std::string str() const;

private:
    std::map<int, Scalar> t_;
};

LaurentPoly qint(int k);
LaurentPoly qfactorial(int k);
LaurentPoly qbinom(int n, int k);

class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return p_; }
    int length() const { return static_cast<int>(p_.size()); }
    int size() const;
    int operator[](int i) const { return i < length() ? p_[i] : 0; }
    bool empty() const { return p_.empty(); }
    bool in_box(int a, int b) const; // at most a parts, each at most b
    Partition transpose() const;
    std::string str() const;

    friend auto operator<=>(const Partition&, const Partition&) = default;
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> p_;
};

// all partitions in P(a,b), ordered by size then lexicographically decreasing
std::vector<Partition> partitions_in_box(int a, int b);
std::vector<Partition> partitions_of(int size, int max_parts = -1, int max_part = -1);

Partition dual_complement(const Partition& alpha, int a, int b);
long lr_coeff(const Partition& alpha, const Partition& beta, const Partition& gamma);

// Symmetric function in `vars` variables written in the Schur basis.
class SymFunc {
public:
    explicit SymFunc(int vars = 0) : vars_(vars) {}
    static SymFunc one(int vars);
    static SymFunc schur(const Partition& p, int vars, const Scalar& c = Scalar(1));

    int vars() const { return vars_; }
    const std::map<Partition, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add_term(const Partition& p, const Scalar& c);
    // homogeneous polynomial degree; -1 for zero, throws if inhomogeneous
    int degree() const;

    SymFunc& operator+=(const SymFunc& o);
    SymFunc operator*(const Scalar& c) const;
    friend bool operator==(const SymFunc& a, const SymFunc& b) { return a.vars_ == b.vars_ && a.t_ == b.t_; }
    std::string str() const;

private:
    int vars_;
    std::map<Partition, Scalar> t_;
};

SymFunc schur_multiply(const SymFunc& f, const SymFunc& g);
enum class EH { E, H };
SymFunc schur_expand_eh(EH kind, int i, int vars);

// Schur polynomial s_p evaluated at the given rational point (bialternant-free
// evaluation through semistandard tableaux counting by Jacobi-Trudi).
mpq_class schur_eval(const Partition& p, const std::vector<mpq_class>& x);

} // namespace sln
