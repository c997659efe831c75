#include "qbraid/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace qbraid {

namespace {

using Key = std::tuple<int, int, int>;  // (spow, a2, a3)
using TermMap = std::map<Key, Rational>;

// [m] as a radical-free Laurent polynomial in s (spow -> coeff)
std::map<int, Rational> qnum_poly(int m) {
    std::map<int, Rational> t;
    int a = m < 0 ? -m : m;
    for (int j = 0; j < a; ++j) t[2 * (a - 1 - 2 * j)] += (m > 0 ? 1 : -1);
    return t;
}

// multiply two single terms, folding r2^2 -> [2] and r3^2 -> [3]
void mul_into(TermMap& out, const Key& k1, const Rational& c1, const Key& k2,
              const Rational& c2) {
    int sp = std::get<0>(k1) + std::get<0>(k2);
    int e2 = std::get<1>(k1) + std::get<1>(k2);
    int e3 = std::get<2>(k1) + std::get<2>(k2);
    std::map<int, Rational> base{{sp, c1 * c2}};
    if (e2 == 2) {
        std::map<int, Rational> nb;
        for (auto& [p, c] : base)
            for (auto& [pq, cq] : qnum_poly(2)) nb[p + pq] += c * cq;
        base = std::move(nb);
        e2 = 0;
    }
    if (e3 == 2) {
        std::map<int, Rational> nb;
        for (auto& [p, c] : base)
            for (auto& [pq, cq] : qnum_poly(3)) nb[p + pq] += c * cq;
        base = std::move(nb);
        e3 = 0;
    }
    for (auto& [p, c] : base) out[{p, e2, e3}] += c;
}

TermMap to_map(const std::vector<Term>& v) {
    TermMap m;
    for (auto& t : v) m[{t.spow, t.a2, t.a3}] += t.coeff;
    return m;
}

TermMap mul_maps(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) mul_into(out, ka, ca, kb, cb);
    return out;
}

TermMap mul_by_qnum(const TermMap& a, int m, int power) {
    TermMap out = a;
    for (int i = 0; i < power; ++i) {
        TermMap nx;
        for (auto& [k, c] : out)
            for (auto& [p, cq] : qnum_poly(m))
                nx[{std::get<0>(k) + p, std::get<1>(k), std::get<2>(k)}] += c * cq;
        out.clear();
        for (auto& [k, c] : nx)
            if (c != 0) out[k] = c;
    }
    return out;
}

// exact Laurent division of one radical-signature component by [m];
// returns false (leaving comp untouched) when not divisible
bool divide_component(std::map<int, Rational>& comp, int m) {
    if (comp.empty()) return true;
    int shift = comp.begin()->first;
    int ddeg = 4 * (m - 1);  // ordinary degree of [m] after shifting by 2(m-1)
    std::map<int, Rational> p;
    for (auto& [e, c] : comp) p[e - shift] = c;
    auto div = qnum_poly(m);
    std::map<int, Rational> quot;
    while (!p.empty()) {
        auto lead = p.rbegin();
        if (lead->first < ddeg) return false;
        int qe = lead->first - ddeg;
        Rational qc = lead->second;
        quot[qe] = qc;
        for (auto& [e, c] : div) {
            int pe = qe + e + 2 * (m - 1);
            auto it = p.find(pe);
            Rational nv = (it == p.end() ? Rational(0) : it->second) - qc * c;
            if (nv == 0) {
                if (it != p.end()) p.erase(it);
            } else {
                p[pe] = nv;
            }
        }
    }
    std::map<int, Rational> res;
    for (auto& [e, c] : quot) res[e + shift + 2 * (m - 1)] = c;
    comp = std::move(res);
    return true;
}

// split terms into radical-signature components (a2, a3) -> Laurent poly
std::map<std::pair<int, int>, std::map<int, Rational>> components(
    const std::vector<Term>& num) {
    std::map<std::pair<int, int>, std::map<int, Rational>> out;
    for (auto& t : num) out[{t.a2, t.a3}][t.spow] = t.coeff;
    return out;
}

bool term_key_desc(const Term& a, const Term& b) {
    return std::tie(a.spow, a.a2, a.a3) > std::tie(b.spow, b.a2, b.a3);
}

double qnum_value(int m, double q) {
    double v = 0;
    int a = m < 0 ? -m : m;
    for (int j = 0; j < a; ++j) v += std::pow(q, a - 1 - 2 * j);
    return m < 0 ? -v : v;
}

bool rational_sqrt(const Rational& c, Rational& out) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (c <= 0) return false;
    BigInt n = numerator(c), d = denominator(c);
    BigInt rn = boost::multiprecision::sqrt(n);
    BigInt rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return false;
    out = Rational(rn, rd);
    return true;
}

std::vector<Term> from_map(const TermMap& m) {
    std::vector<Term> v;
    for (auto& [k, c] : m)
        if (c != 0)
            v.push_back(
                {c, std::get<0>(k), (uint8_t)std::get<1>(k), (uint8_t)std::get<2>(k)});
    std::sort(v.begin(), v.end(), term_key_desc);
    return v;
}

}  // namespace

void Scalar::normalize() {
    num_ = from_map(to_map(num_));
    if (num_.empty()) {
        den_.clear();
        return;
    }
    cancel_denominator();
}

void Scalar::cancel_denominator() {
    for (auto it = den_.begin(); it != den_.end();) {
        int m = it->first;
        while (it->second > 0) {
            auto comps = components(num_);
            bool ok = true;
            for (auto& [sig, comp] : comps)
                if (!divide_component(comp, m)) {
                    ok = false;
                    break;
                }
            if (!ok) break;
            std::vector<Term> nn;
            for (auto& [sig, comp] : comps)
                for (auto& [e, c] : comp)
                    if (c != 0)
                        nn.push_back({c, e, (uint8_t)sig.first, (uint8_t)sig.second});
            std::sort(nn.begin(), nn.end(), term_key_desc);
            num_ = std::move(nn);
            --it->second;
        }
        if (it->second == 0)
            it = den_.erase(it);
        else
            ++it;
    }
}

Scalar Scalar::rational(const Rational& c) {
    Scalar s;
    if (c != 0) s.num_.push_back({c, 0, 0, 0});
    return s;
}

Scalar Scalar::qpow(int k) {
    Scalar s;
    s.num_.push_back({Rational(1), 2 * k, 0, 0});
    return s;
}

Scalar Scalar::spow(int k) {
    Scalar s;
    s.num_.push_back({Rational(1), k, 0, 0});
    return s;
}

Scalar Scalar::sqrt2() {
    Scalar s;
    s.num_.push_back({Rational(1), 0, 1, 0});
    return s;
}

Scalar Scalar::sqrt3() {
    Scalar s;
    s.num_.push_back({Rational(1), 0, 0, 1});
    return s;
}

Scalar Scalar::qnum(int m) {
    Scalar s;
    for (auto& [e, c] : qnum_poly(m)) s.num_.push_back({c, e, 0, 0});
    std::sort(s.num_.begin(), s.num_.end(), term_key_desc);
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    for (auto& t : s.num_) t.coeff = -t.coeff;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Scalar out;
    for (auto& [m, p] : den_) out.den_[m] = p;
    for (auto& [m, p] : o.den_) {
        auto it = out.den_.find(m);
        if (it == out.den_.end() || it->second < p) out.den_[m] = p;
    }
    TermMap a = to_map(num_), b = to_map(o.num_);
    for (auto& [m, p] : out.den_) {
        auto ita = den_.find(m);
        int pa = p - (ita == den_.end() ? 0 : ita->second);
        auto itb = o.den_.find(m);
        int pb = p - (itb == o.den_.end() ? 0 : itb->second);
        if (pa > 0) a = mul_by_qnum(a, m, pa);
        if (pb > 0) b = mul_by_qnum(b, m, pb);
    }
    for (auto& [k, c] : b) a[k] += c;
    out.num_ = from_map(a);
    out.normalize();
    return out;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar out;
    out.num_ = from_map(mul_maps(to_map(num_), to_map(o.num_)));
    for (auto& [f, p] : den_) out.den_[f] += p;
    for (auto& [f, p] : o.den_) out.den_[f] += p;
    out.normalize();
    return out;
}

Scalar Scalar::div_qnum(int m, int p) const {
    if (m < 1 || p < 0) throw std::invalid_argument("div_qnum: need m >= 1, p >= 0");
    if (m == 1 || p == 0 || is_zero()) return *this;
    Scalar out = *this;
    out.den_[m] += p;
    out.normalize();
    return out;
}

bool Scalar::operator==(const Scalar& o) const {
    if (num_ == o.num_ && den_ == o.den_) return true;
    return (*this - o).is_zero();
}

double Scalar::eval_float(double q) const {
    if (q <= 0 || q == 1)
        throw std::invalid_argument("eval_float: need q > 0 and q != 1");
    double r2v = std::sqrt(q + 1 / q);
    double r3v = std::sqrt(q * q + 1 + 1 / (q * q));
    double num = 0;
    for (auto& t : num_) {
        double v = t.coeff.convert_to<double>() * std::pow(q, t.spow / 2.0);
        if (t.a2) v *= r2v;
        if (t.a3) v *= r3v;
        num += v;
    }
    double den = 1;
    for (auto& [m, p] : den_) den *= std::pow(qnum_value(m, q), p);
    return num / den;
}

std::string Scalar::print() const {
    if (num_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& t : num_) {
        bool neg = t.coeff < 0;
        Rational c = neg ? Rational(-t.coeff) : t.coeff;
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        std::vector<std::string> fs;
        if (t.spow % 2 != 0)
            fs.push_back("q^{" + std::to_string(t.spow) + "/2}");
        else if (t.spow == 2)
            fs.push_back("q");
        else if (t.spow != 0)
            fs.push_back("q^" + std::to_string(t.spow / 2));
        if (t.a2) fs.push_back("r2");
        if (t.a3) fs.push_back("r3");
        std::ostringstream cs;
        cs << c;
        if (fs.empty()) {
            out << cs.str();
        } else {
            std::string joined = fs[0];
            for (size_t i = 1; i < fs.size(); ++i) joined += "*" + fs[i];
            if (c == 1)
                out << joined;
            else
                out << cs.str() << "*" << joined;
        }
    }
    if (den_.empty()) return out.str();
    std::ostringstream d;
    bool firstf = true;
    for (auto& [m, p] : den_) {
        if (!firstf) d << "*";
        firstf = false;
        d << "[" << m << "]";
        if (p > 1) d << "^" << p;
    }
    std::string ds = d.str();
    if (den_.size() > 1) ds = "(" + ds + ")";
    return "(" + out.str() + ")/" + ds;
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;
    explicit Parser(const std::string& text) : s(text) {}

    void ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool at(char c) const { return i < s.size() && s[i] == c; }
    bool eat(char c) {
        if (at(c)) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(i, std::string("expected '") + c + "'");
    }
    bool digit() const { return i < s.size() && s[i] >= '0' && s[i] <= '9'; }

    BigInt integer() {
        bool neg = eat('-');
        if (!digit()) throw ParseError(i, "expected digit");
        BigInt v = 0;
        while (digit()) v = v * 10 + (s[i++] - '0');
        return neg ? BigInt(-v) : v;
    }

    // one multiplicative factor: rational, q power, r2, or r3
    void factor(Rational& coeff, int& spow, int& a2, int& a3) {
        if (at('q')) {
            ++i;
            if (eat('^')) {
                if (eat('{')) {
                    BigInt k = integer();
                    expect('/');
                    expect('2');
                    expect('}');
                    spow += k.convert_to<int>();
                } else {
                    spow += 2 * integer().convert_to<int>();
                }
            } else {
                spow += 2;
            }
            return;
        }
        if (i + 1 < s.size() && s[i] == 'r' && (s[i + 1] == '2' || s[i + 1] == '3')) {
            (s[i + 1] == '2' ? a2 : a3) += 1;
            i += 2;
            return;
        }
        if (digit()) {
            BigInt n = integer();
            if (at('/') && i + 1 < s.size() && s[i + 1] >= '0' && s[i + 1] <= '9') {
                ++i;
                BigInt d = integer();
                if (d == 0) throw ParseError(i, "zero denominator");
                coeff *= Rational(n, d);
            } else {
                coeff *= Rational(n);
            }
            return;
        }
        throw ParseError(i, "expected a factor (rational, q power, r2 or r3)");
    }

    Scalar term(bool neg) {
        Rational coeff = 1;
        int spow = 0, a2 = 0, a3 = 0;
        factor(coeff, spow, a2, a3);
        while (true) {
            size_t save = i;
            ws();
            if (!eat('*')) {
                i = save;
                break;
            }
            ws();
            factor(coeff, spow, a2, a3);
        }
        if (a2 > 1 || a3 > 1) throw ParseError(i, "repeated radical in one term");
        Scalar t = Scalar::spow(spow) * Scalar::rational(neg ? Rational(-coeff) : coeff);
        if (a2) t = t * Scalar::sqrt2();
        if (a3) t = t * Scalar::sqrt3();
        return t;
    }

    Scalar sum() {
        ws();
        bool neg = eat('-');
        ws();
        Scalar out = term(neg);
        while (true) {
            size_t save = i;
            ws();
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else {
                i = save;
                break;
            }
            ws();
            out = out + term(neg);
        }
        return out;
    }

    Scalar den_factor(Scalar v) {
        expect('[');
        BigInt m = integer();
        expect(']');
        int p = 1;
        if (eat('^')) p = integer().convert_to<int>();
        if (m < 2 || p < 1)
            throw ParseError(i, "denominator factor needs m >= 2, p >= 1");
        return v.div_qnum(m.convert_to<int>(), p);
    }

    Scalar scalar() {
        ws();
        Scalar v;
        if (eat('(')) {
            v = sum();
            ws();
            expect(')');
            ws();
            expect('/');
            ws();
            if (eat('(')) {
                v = den_factor(v);
                while (eat('*')) v = den_factor(v);
                expect(')');
            } else {
                v = den_factor(v);
            }
        } else if (at('0') && s.find_first_not_of(" \t", i + 1) == std::string::npos) {
            i = s.size();
            return Scalar::zero();
        } else {
            v = sum();
        }
        ws();
        if (i != s.size()) throw ParseError(i, "trailing input");
        return v;
    }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) { return Parser(text).scalar(); }

namespace {

// [m]^{e/2} for any integer e; odd parts carry the radical and negative
// halves rationalize, e.g. [2]^{-1/2} = r2/[2]
Scalar half_qnum_power(int e, int m) {
    int u = ((e % 2) + 2) % 2;
    int t = (e - u) / 2;
    Scalar out = u ? (m == 2 ? Scalar::sqrt2() : Scalar::sqrt3()) : Scalar::one();
    if (t > 0)
        for (int k = 0; k < t; ++k) out = out * Scalar::qnum(m);
    else if (t < 0)
        out = out.div_qnum(m, -t);
    return out;
}

}  // namespace

Scalar Scalar::sqrt_monomial(int spow2, int n2, int n3, bool inverted) {
    if (inverted) {
        spow2 = -spow2;
        n2 = -n2;
        n3 = -n3;
    }
    return spow(spow2) * half_qnum_power(n2, 2) * half_qnum_power(n3, 3);
}

Scalar::Root Scalar::sqrt_as_monomial() const {
    if (is_zero()) throw std::domain_error("sqrt: zero has no invertible root");
    for (auto& t : num_)
        if (t.a2 || t.a3) throw std::domain_error("sqrt: radicand has radical terms");
    std::map<int, Rational> comp;
    for (auto& t : num_) comp[t.spow] = t.coeff;
    // pull out every [2] and [3] factor of the numerator
    int e2 = 0, e3 = 0;
    while (true) {
        auto c = comp;
        if (!divide_component(c, 2)) break;
        comp = std::move(c);
        ++e2;
    }
    while (true) {
        auto c = comp;
        if (!divide_component(c, 3)) break;
        comp = std::move(c);
        ++e3;
    }
    for (auto& [m, p] : den_) {
        if (m == 2)
            e2 -= p;
        else if (m == 3)
            e3 -= p;
        else if (p % 2)
            throw std::domain_error("sqrt: odd [m] power with m > 3");
    }
    if (comp.size() != 1) throw std::domain_error("sqrt: radicand is not a monomial");
    int sp = comp.begin()->first;
    Rational c = comp.begin()->second;
    if (sp % 2) throw std::domain_error("sqrt: odd half-power of q");
    Rational rc;
    if (!rational_sqrt(c, rc))
        throw std::domain_error("sqrt: rational part is not a perfect square");
    Scalar root = Scalar::rational(rc) * Scalar::spow(sp / 2) *
                  half_qnum_power(e2, 2) * half_qnum_power(e3, 3);
    Scalar inv = Scalar::rational(Rational(1) / rc) * Scalar::spow(-sp / 2) *
                 half_qnum_power(-e2, 2) * half_qnum_power(-e3, 3);
    for (auto& [m, p] : den_)
        if (m != 2 && m != 3 && p > 0) {
            root = root.div_qnum(m, p / 2);
            for (int k = 0; k < p / 2; ++k) inv = inv * Scalar::qnum(m);
        }
    return {root, inv};
}

}  // namespace qbraid
