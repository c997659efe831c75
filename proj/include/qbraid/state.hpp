#ifndef QBRAID_STATE_HPP
#define QBRAID_STATE_HPP

// Sparse vectors over product kets |a1,...,am> with coefficients in either
// the exact Scalar field or double.  The pairing is bilinear.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qbraid/scalar.hpp"

namespace qbraid {

using Ket = std::vector<int>;

inline std::string ket_str(const Ket& k) {
    std::string s = "|";
    for (size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s + ">";
}

inline bool coeff_is_zero(const Scalar& c) { return c.is_zero(); }
inline bool coeff_is_zero(double c) { return c == 0.0; }
inline std::string coeff_str(const Scalar& c) { return c.print(); }
inline std::string coeff_str(double c) {
    std::ostringstream o;
    o.precision(17);
    o << c;
    return o.str();
}

template <class C>
struct State {
    std::map<Ket, C> amp;

    State() = default;
    explicit State(const Ket& k, const C& c) {
        if (!coeff_is_zero(c)) amp[k] = c;
    }

    bool empty() const { return amp.empty(); }

    void add_scaled(const Ket& k, const C& c) {
        if (coeff_is_zero(c)) return;
        auto [it, fresh] = amp.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (coeff_is_zero(it->second)) amp.erase(it);
        }
    }

    void add_scaled(const State& o, const C& c) {
        if (coeff_is_zero(c)) return;
        for (auto& [k, v] : o.amp) add_scaled(k, v * c);
    }

    State scaled(const C& c) const {
        State out;
        if (coeff_is_zero(c)) return out;
        for (auto& [k, v] : amp) {
            C nv = v * c;
            if (!coeff_is_zero(nv)) out.amp[k] = nv;
        }
        return out;
    }

    State operator+(const State& o) const {
        State out = *this;
        for (auto& [k, v] : o.amp) out.add_scaled(k, v);
        return out;
    }

    State operator-(const State& o) const {
        State out = *this;
        for (auto& [k, v] : o.amp) {
            C nv = v;
            nv = C() - nv;
            out.add_scaled(k, nv);
        }
        return out;
    }

    std::string print() const {
        if (amp.empty()) return "0";
        std::string s;
        for (auto& [k, v] : amp) {
            if (!s.empty()) s += " + ";
            s += "(" + coeff_str(v) + ")" + ket_str(k);
        }
        return s;
    }
};

// bilinear pairing <a|b> = sum over common kets of the coefficient product
template <class C>
C inner(const State<C>& a, const State<C>& b) {
    C out{};
    for (auto& [k, v] : a.amp) {
        auto it = b.amp.find(k);
        if (it != b.amp.end()) out += v * it->second;
    }
    return out;
}

inline bool states_equal(const State<Scalar>& a, const State<Scalar>& b) {
    // coefficients are pruned of exact zeros, so supports must agree
    if (a.amp.size() != b.amp.size()) return false;
    auto ia = a.amp.begin(), ib = b.amp.begin();
    for (; ia != a.amp.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (!(ia->second == ib->second)) return false;
    }
    return true;
}

inline double state_resid(const State<double>& a, const State<double>& b) {
    double worst = 0;
    for (auto& [k, v] : a.amp) {
        auto it = b.amp.find(k);
        double w = it == b.amp.end() ? 0 : it->second;
        worst = std::max(worst, std::abs(v - w));
    }
    for (auto& [k, v] : b.amp)
        if (!a.amp.count(k)) worst = std::max(worst, std::abs(v));
    return worst;
}

// arithmetic context: the same relation code runs exactly over Scalar or
// numerically over double, with Scalar constants lifted once per context
template <class C>
struct QCtx;

template <>
struct QCtx<Scalar> {
    Scalar q = Scalar::qpow(1);
    Scalar qinv = Scalar::qpow(-1);
    Scalar d = Scalar::qpow(1) - Scalar::qpow(-1);
    Scalar one = Scalar::one();
    Scalar lift(const Scalar& s) const { return s; }
};

template <>
struct QCtx<double> {
    double qv;
    double q, qinv, d, one;
    explicit QCtx(double qvalue)
        : qv(qvalue), q(qvalue), qinv(1.0 / qvalue), d(q - qinv), one(1.0) {}
    double lift(const Scalar& s) const { return s.eval_float(qv); }
};

}  // namespace qbraid

#endif
