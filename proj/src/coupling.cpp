#include "qbraid/coupling.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace qbraid {

Shape shape_parse(const std::string& text) {
    if (text == "1") return Shape::s1;
    if (text == "2") return Shape::s2;
    if (text == "11") return Shape::s11;
    if (text == "21") return Shape::s21;
    throw std::invalid_argument("unknown shape: " + text);
}

const char* shape_text(Shape s) {
    switch (s) {
        case Shape::s1: return "1";
        case Shape::s2: return "2";
        case Shape::s11: return "11";
        case Shape::s21: return "21";
    }
    return "?";
}

int shape_sites(Shape s) {
    switch (s) {
        case Shape::s1: return 1;
        case Shape::s2:
        case Shape::s11: return 2;
        case Shape::s21: return 3;
    }
    return 0;
}

int shape_min_n(Shape s) {
    switch (s) {
        case Shape::s1: return 1;
        case Shape::s2: return 1;
        case Shape::s11: return 2;
        case Shape::s21: return 3;
    }
    return 0;
}

std::string TableauLabel::text() const {
    std::string s;
    for (size_t r = 0; r < rows.size(); ++r) {
        if (r) s += "/";
        for (int x : rows[r]) s += std::to_string(x);
    }
    return s;
}

Ket TableauLabel::content() const {
    Ket out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TableauLabel> tableaux(Shape s, int n) {
    std::vector<TableauLabel> out;
    switch (s) {
        case Shape::s1:
            for (int a = 1; a <= n; ++a) out.push_back({{{a}}});
            break;
        case Shape::s2:
            for (int a = 1; a <= n; ++a)
                for (int b = a; b <= n; ++b) out.push_back({{{a, b}}});
            break;
        case Shape::s11:
            for (int a = 1; a <= n; ++a)
                for (int b = a + 1; b <= n; ++b) out.push_back({{{a}, {b}}});
            break;
        case Shape::s21:
            // rows (a,b)/(c): a <= b along the row, a < c down the column
            for (int a = 1; a <= n; ++a)
                for (int b = a; b <= n; ++b)
                    for (int c = a + 1; c <= n; ++c) out.push_back({{{a, b}, {c}}});
            break;
    }
    return out;
}

int b_index_for(const TableauLabel& w) {
    if (w.rows.size() != 2 || w.rows[0].size() != 2 || w.rows[1].size() != 1)
        throw std::invalid_argument("b_index_for: not a [21] tableau");
    int a = w.rows[0][0], b = w.rows[0][1], c = w.rows[1][0];
    if (b == c) return 0;
    if (a == b) return 1;
    return b > c ? 2 : 3;
}

BraidWord positive_lift(const Ket& target, const Ket& start) {
    {
        Ket a = target, b = start;
        std::sort(a.begin(), a.end());
        if (a != b) throw std::invalid_argument(
            "positive_lift: target is not a rearrangement of the sorted start");
    }
    // search backwards from the target using descending swaps, so the word
    // accumulates in written order; the priority queue orders by length then
    // lexicographic word, giving the minimal lex-smallest lift
    using Node = std::tuple<int, std::vector<int>, Ket>;
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
    heap.push({0, {}, target});
    std::set<Ket> seen;
    while (!heap.empty()) {
        auto [len, w, cur] = heap.top();
        heap.pop();
        if (cur == start) {
            BraidWord out;
            for (int i : w) out.push_back({i, false});
            return out;
        }
        if (!seen.insert(cur).second) continue;
        for (int i = 1; i < (int)cur.size(); ++i) {
            if (cur[i - 1] > cur[i]) {
                Ket nxt = cur;
                std::swap(nxt[i - 1], nxt[i]);
                auto nw = w;
                nw.push_back(i);
                heap.push({len + 1, std::move(nw), std::move(nxt)});
            }
        }
    }
    throw std::logic_error("positive_lift: no word found");
}

namespace detail {

namespace {

std::vector<OpTerm> make_sym2() {
    Scalar c = Scalar::sqrt_monomial(0, 1, 0, true);  // 1/sqrt([2])
    return {{{}, c * Scalar::spow(-1)}, {{0}, c * Scalar::spow(1)}};
}

std::vector<OpTerm> make_asym2() {
    Scalar c = Scalar::sqrt_monomial(0, 1, 0, true);
    return {{{}, c * Scalar::spow(1)}, {{0}, -(c * Scalar::spow(-1))}};
}

std::vector<OpTerm> make_b(int p) {
    Scalar c_half = Scalar::sqrt_monomial(1, -1, -1, false);  // sqrt(q/([2][3]))
    Scalar c_third = Scalar::sqrt_monomial(0, 0, -1, false);  // 1/sqrt([3])
    Scalar q = Scalar::qpow(1), qi = Scalar::qpow(-1);
    Scalar q2 = Scalar::qnum(2);
    switch (p) {
        case 0:
            return {{{}, c_half},
                    {{0}, c_half * q},
                    {{1, 0}, -(c_half * qi * q2)}};
        case 1:
            return {{{}, c_half * q2},
                    {{1}, -(c_half * Scalar::qpow(-2))},
                    {{0, 1}, -(c_half * qi)}};
        case 2:
            return {{{1}, Scalar::one().div_qnum(2)},
                    {{0, 1}, q.div_qnum(2)},
                    {{1, 0}, -(qi.div_qnum(2))},
                    {{1, 0, 1}, -(Scalar::one().div_qnum(2))}};
        case 3:
            return {{{}, c_third},
                    {{0}, c_third * q},
                    {{1}, -(c_third * Scalar::qpow(-2)).div_qnum(2)},
                    {{0, 1}, -(c_third * qi).div_qnum(2)},
                    {{1, 0}, -(c_third * qi).div_qnum(2)},
                    {{0, 1, 0}, -c_third.div_qnum(2)}};
    }
    throw std::invalid_argument("b_terms: p must be 0..3");
}

}  // namespace

const std::vector<OpTerm>& sym2_terms() {
    static const std::vector<OpTerm> t = make_sym2();
    return t;
}

const std::vector<OpTerm>& asym2_terms() {
    static const std::vector<OpTerm> t = make_asym2();
    return t;
}

const std::vector<OpTerm>& b_terms(int p) {
    static const std::vector<OpTerm> t[4] = {make_b(0), make_b(1), make_b(2),
                                             make_b(3)};
    if (p < 0 || p > 3) throw std::invalid_argument("b_terms: p must be 0..3");
    return t[p];
}

}  // namespace detail

namespace {

template <class C>
State<C> build_unnormalized(Shape s, const TableauLabel& wl, const TableauLabel& wr,
                            const QCtx<C>& ctx) {
    int f = shape_sites(s);
    Ket cl = wl.content(), cr = wr.content();
    Ket target = cl;
    target.insert(target.end(), cr.begin(), cr.end());
    Ket total = target;
    std::sort(total.begin(), total.end());
    BraidWord lift = positive_lift(target, total);
    State<C> st = apply_word(lift, State<C>(total, ctx.one), ctx);
    // every swap in the lift hits a strictly increasing pair: coefficient 1
    if (st.amp.size() != 1 || st.amp.begin()->first != target)
        throw std::logic_error("coupled ket: positive lift did not stay monomial");
    st = coupling_op(s, wr, f + 1, st, ctx);
    st = coupling_op(s, wl, 1, st, ctx);
    return st;
}

}  // namespace

std::vector<CoupledKet> coupled_pair_basis(Shape s, const Ket& content, int n) {
    QCtx<Scalar> ctx;
    std::vector<CoupledKet> out;
    auto ts = tableaux(s, n);
    for (auto& wl : ts)
        for (auto& wr : ts) {
            Ket cl = wl.content(), cr = wr.content();
            Ket tot = cl;
            tot.insert(tot.end(), cr.begin(), cr.end());
            std::sort(tot.begin(), tot.end());
            if (tot != content) continue;
            State<Scalar> st = build_unnormalized(s, wl, wr, ctx);
            Scalar n2 = inner(st, st);
            auto root = n2.sqrt_as_monomial();
            out.push_back({wl, wr, st.scaled(root.inv_root)});
        }
    // constructed states must form an exactly orthonormal family
    for (size_t a = 0; a < out.size(); ++a)
        for (size_t b = a; b < out.size(); ++b) {
            Scalar v = inner(out[a].expansion, out[b].expansion);
            Scalar want = a == b ? Scalar::one() : Scalar::zero();
            if (!(v == want))
                throw std::logic_error("coupled basis not orthonormal at " +
                                       out[a].pair_text() + " x " +
                                       out[b].pair_text() + ": " + v.print());
        }
    return out;
}

std::vector<Ket> content_classes(Shape s, int n) {
    std::set<Ket> classes;
    auto ts = tableaux(s, n);
    for (auto& wl : ts)
        for (auto& wr : ts) {
            Ket tot = wl.content(), cr = wr.content();
            tot.insert(tot.end(), cr.begin(), cr.end());
            std::sort(tot.begin(), tot.end());
            classes.insert(tot);
        }
    return {classes.begin(), classes.end()};
}

std::map<Ket, std::vector<CoupledKet>> coupled_pair_basis_all(Shape s, int n) {
    std::map<Ket, std::vector<CoupledKet>> out;
    for (auto& c : content_classes(s, n)) out[c] = coupled_pair_basis(s, c, n);
    return out;
}

std::vector<CoupledKetT<double>> coupled_pair_basis_float(Shape s,
                                                          const Ket& content,
                                                          int n, double q) {
    QCtx<double> ctx(q);
    std::vector<CoupledKetT<double>> out;
    auto ts = tableaux(s, n);
    for (auto& wl : ts)
        for (auto& wr : ts) {
            Ket tot = wl.content(), cr = wr.content();
            tot.insert(tot.end(), cr.begin(), cr.end());
            std::sort(tot.begin(), tot.end());
            if (tot != content) continue;
            State<double> st = build_unnormalized(s, wl, wr, ctx);
            double n2 = inner(st, st);
            if (!(n2 > 0)) throw std::logic_error("float coupled ket: bad norm");
            out.push_back({wl, wr, st.scaled(1.0 / std::sqrt(n2))});
        }
    for (size_t a = 0; a < out.size(); ++a)
        for (size_t b = a; b < out.size(); ++b) {
            double v = inner(out[a].expansion, out[b].expansion);
            double want = a == b ? 1.0 : 0.0;
            if (std::abs(v - want) > 1e-9)
                throw std::logic_error("float coupled basis not orthonormal");
        }
    return out;
}

std::map<Ket, std::vector<CoupledKetT<double>>> coupled_pair_basis_all_float(
    Shape s, int n, double q) {
    std::map<Ket, std::vector<CoupledKetT<double>>> out;
    for (auto& c : content_classes(s, n))
        out[c] = coupled_pair_basis_float(s, c, n, q);
    return out;
}

}  // namespace qbraid
