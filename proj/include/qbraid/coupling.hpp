#ifndef QBRAID_COUPLING_HPP
#define QBRAID_COUPLING_HPP

// Coupled basis vectors: images of normal-ordered letter kets under a
// positive permutation word followed by coupling operators on each factor.
// Shapes covered: [1], [2], [11], [21].

#include <string>
#include <vector>

#include "qbraid/braid.hpp"
#include "qbraid/report.hpp"

namespace qbraid {

enum class Shape { s1, s2, s11, s21 };

Shape shape_parse(const std::string& text);  // "1", "2", "11", "21"
const char* shape_text(Shape s);
int shape_sites(Shape s);  // letters per factor
int shape_min_n(Shape s);  // smallest alphabet hosting the golden table

struct TableauLabel {
    std::vector<std::vector<int>> rows;

    std::string text() const;  // rows of digits joined by '/'
    Ket content() const;       // sorted letters
    auto operator<=>(const TableauLabel&) const = default;
};

std::vector<TableauLabel> tableaux(Shape s, int n);

// minimal positive word sending the weakly increasing |start> to |target>
// by adjacent swaps; ties by lexicographically smallest word as written
BraidWord positive_lift(const Ket& target, const Ket& start);

// which of the four 3-site coupling operators a [21] tableau uses
int b_index_for(const TableauLabel& w);

namespace detail {

struct OpTerm {
    std::vector<int> word;  // generator offsets 0/1 relative to the factor
    Scalar coeff;
};

const std::vector<OpTerm>& sym2_terms();
const std::vector<OpTerm>& asym2_terms();
const std::vector<OpTerm>& b_terms(int p);

template <class C>
State<C> apply_op_terms(const std::vector<OpTerm>& terms, int offset,
                        const State<C>& v, const QCtx<C>& ctx) {
    State<C> out;
    for (auto& t : terms) {
        State<C> cur = v;
        for (auto it = t.word.rbegin(); it != t.word.rend(); ++it)
            cur = apply_g(offset + *it, cur, ctx);
        out.add_scaled(cur, ctx.lift(t.coeff));
    }
    return out;
}

}  // namespace detail

// (1/sqrt([2]))(q^{-1/2} + q^{1/2} g)
template <class C>
State<C> sym2_op(int offset, const State<C>& v, const QCtx<C>& ctx) {
    return detail::apply_op_terms(detail::sym2_terms(), offset, v, ctx);
}

// (1/sqrt([2]))(q^{1/2} - q^{-1/2} g)
template <class C>
State<C> asym2_op(int offset, const State<C>& v, const QCtx<C>& ctx) {
    return detail::apply_op_terms(detail::asym2_terms(), offset, v, ctx);
}

// the four 3-site coupling operators
template <class C>
State<C> b_op(int p, int offset, const State<C>& v, const QCtx<C>& ctx) {
    if (p < 0 || p > 3) throw std::invalid_argument("b_op: p must be 0..3");
    return detail::apply_op_terms(detail::b_terms(p), offset, v, ctx);
}

template <class C>
State<C> coupling_op(Shape s, const TableauLabel& w, int offset, const State<C>& v,
                     const QCtx<C>& ctx) {
    switch (s) {
        case Shape::s1:
            return v;
        case Shape::s2:
            return sym2_op(offset, v, ctx);
        case Shape::s11:
            return asym2_op(offset, v, ctx);
        case Shape::s21:
            return b_op(b_index_for(w), offset, v, ctx);
    }
    throw std::logic_error("coupling_op: bad shape");
}

template <class C>
struct CoupledKetT {
    TableauLabel left, right;
    State<C> expansion;
    std::string pair_text() const { return left.text() + ";" + right.text(); }
};

using CoupledKet = CoupledKetT<Scalar>;

template <class C>
nlohmann::json coupled_ket_json(Shape s, const CoupledKetT<C>& k) {
    return {{"shape", shape_text(s)},
            {"left", k.left.text()},
            {"right", k.right.text()},
            {"expansion", state_to_json(k.expansion)}};
}

// all ordered tableau pairs with the given combined content, each expansion
// unit-normalized; pairwise orthogonality is checked at construction
std::vector<CoupledKet> coupled_pair_basis(Shape s, const Ket& content, int n);

// every content class at once: class content -> basis
std::map<Ket, std::vector<CoupledKet>> coupled_pair_basis_all(Shape s, int n);

// content classes reachable by pairs of shape tableaux over alphabet n
std::vector<Ket> content_classes(Shape s, int n);

// float counterpart of the constructive pipeline (reference cross-check)
std::vector<CoupledKetT<double>> coupled_pair_basis_float(Shape s,
                                                          const Ket& content,
                                                          int n, double q);
std::map<Ket, std::vector<CoupledKetT<double>>> coupled_pair_basis_all_float(
    Shape s, int n, double q);

}  // namespace qbraid

#endif
