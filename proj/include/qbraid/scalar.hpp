#ifndef QBRAID_SCALAR_HPP
#define QBRAID_SCALAR_HPP

// Exact coefficient field for the R-matrix computations: Laurent polynomials
// in s = q^{1/2} extended by the formal radicals r2 = sqrt([2]) and
// r3 = sqrt([3]), over denominators that are products of q-number factors
// [m].  Radical exponents stay in {0,1}; squares fold back into q-numbers.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbraid {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t p, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(p) + ": " + msg),
          pos(p) {}
};

struct Term {
    Rational coeff;   // nonzero
    int spow = 0;     // exponent of s = q^{1/2}
    uint8_t a2 = 0;   // exponent of sqrt([2]), 0 or 1
    uint8_t a3 = 0;   // exponent of sqrt([3]), 0 or 1
};

inline bool operator==(const Term& a, const Term& b) {
    return a.spow == b.spow && a.a2 == b.a2 && a.a3 == b.a3 && a.coeff == b.coeff;
}

class Scalar {
  public:
    Scalar() = default;

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return rational(1); }
    static Scalar rational(const Rational& c);
    static Scalar qpow(int k);               // q^k
    static Scalar spow(int k);               // q^{k/2}
    static Scalar sqrt2();                   // sqrt([2])
    static Scalar sqrt3();                   // sqrt([3])
    static Scalar qnum(int m);               // [m]; qnum(-m) = -qnum(m); qnum(0) = 0

    // exact square root of q^{spow2} * [2]^{n2} * [3]^{n3} (exponents may be
    // negative; the reciprocal of the whole monomial when inverted).
    // Reciprocal halves rationalize, e.g. 1/sqrt([2]) = sqrt([2])/[2]
    static Scalar sqrt_monomial(int spow2, int n2, int n3, bool inverted);

    bool is_zero() const { return num_.empty(); }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // divide by [m]^p (the only division the computations need)
    Scalar div_qnum(int m, int p = 1) const;

    // equality by cross-multiplication into the radical-Laurent ring
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    double eval_float(double q) const;       // rejects q <= 0 and q == 1

    std::string print() const;
    static Scalar parse(const std::string& text);

    const std::vector<Term>& terms() const { return num_; }
    const std::map<int, int>& den() const { return den_; }

    // factor this Scalar as square = (c^2) * q^j * [2]^e2 * [3]^e3 and return
    // {root, 1/root}; throws std::domain_error if no such factorization exists
    struct Root;
    Root sqrt_as_monomial() const;

  private:
    // terms sorted by (spow, a2, a3) descending, no duplicates, no zeros
    std::vector<Term> num_;
    // q-number denominator factors: m -> power (m >= 2, power >= 1)
    std::map<int, int> den_;

    void normalize();
    void cancel_denominator();
};

struct Scalar::Root {
    Scalar root;
    Scalar inv_root;
};

}  // namespace qbraid

#endif
