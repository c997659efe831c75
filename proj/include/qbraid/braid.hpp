#ifndef QBRAID_BRAID_HPP
#define QBRAID_BRAID_HPP

// Braid generators acting on product kets through the symmetric-group
// specialization of the Hecke algebra:
//   a == b : g|..a,b..> = q|..a,b..>
//   a <  b : g|..a,b..> = |..b,a..>
//   a >  b : g|..a,b..> = (q - 1/q)|..a,b..> + |..b,a..>
// Words are written left to right; the rightmost factor acts first.

#include <stdexcept>
#include <vector>

#include "qbraid/state.hpp"

namespace qbraid {

struct Gen {
    int index = 1;
    bool inverse = false;
};

using BraidWord = std::vector<Gen>;

inline BraidWord make_word(std::initializer_list<int> idx) {
    BraidWord w;
    for (int i : idx) w.push_back({i, false});
    return w;
}

inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
    BraidWord w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

inline BraidWord inverse_word(const BraidWord& w) {
    BraidWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->index, !it->inverse});
    return out;
}

// braid word whose action on f+f sites swaps the two f-site halves:
//   f = 1: g1
//   f > 1: g_f..g_{2f-2} * (word for f-1) * g_{2f-1}..g_f
inline BraidWord r_word(int f) {
    if (f < 1) throw std::invalid_argument("r_word: need f >= 1");
    BraidWord w = make_word({1});
    for (int m = 2; m <= f; ++m) {
        BraidWord pre, post;
        for (int i = m; i <= 2 * m - 2; ++i) pre.push_back({i, false});
        for (int i = 2 * m - 1; i >= m; --i) post.push_back({i, false});
        w = concat(concat(pre, w), post);
    }
    return w;
}

template <class C>
State<C> apply_g(int i, const State<C>& s, const QCtx<C>& ctx) {
    State<C> out;
    for (auto& [k, c] : s.amp) {
        if (i < 1 || (size_t)i >= k.size())
            throw std::out_of_range("apply_g: generator index outside word");
        int a = k[i - 1], b = k[i];
        if (a == b) {
            out.add_scaled(k, c * ctx.q);
        } else {
            Ket sw = k;
            std::swap(sw[i - 1], sw[i]);
            if (a > b) out.add_scaled(k, c * ctx.d);
            out.add_scaled(sw, c);
        }
    }
    return out;
}

// g^{-1} = g - (q - 1/q)
template <class C>
State<C> apply_g_inv(int i, const State<C>& s, const QCtx<C>& ctx) {
    State<C> out;
    for (auto& [k, c] : s.amp) {
        if (i < 1 || (size_t)i >= k.size())
            throw std::out_of_range("apply_g_inv: generator index outside word");
        int a = k[i - 1], b = k[i];
        if (a == b) {
            out.add_scaled(k, c * ctx.qinv);
        } else {
            Ket sw = k;
            std::swap(sw[i - 1], sw[i]);
            if (a < b) {
                C nc = c * ctx.d;
                nc = C() - nc;
                out.add_scaled(k, nc);
            }
            out.add_scaled(sw, c);
        }
    }
    return out;
}

template <class C>
State<C> apply_word(const BraidWord& w, const State<C>& s, const QCtx<C>& ctx) {
    State<C> out = s;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out = it->inverse ? apply_g_inv(it->index, out, ctx)
                          : apply_g(it->index, out, ctx);
    return out;
}

}  // namespace qbraid

#endif
