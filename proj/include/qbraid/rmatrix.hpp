#ifndef QBRAID_RMATRIX_HPP
#define QBRAID_RMATRIX_HPP

// R-matrix elements in the coupled basis, reference-table comparison, and
// the structural identity suites (Yang-Baxter, intertwiners, n-independence).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qbraid/coupling.hpp"
#include "qbraid/report.hpp"

namespace qbraid {

// one invariant block: all coupled pair kets sharing a letter content
template <class C>
struct BlockT {
    Ket content;
    std::vector<CoupledKetT<C>> kets;          // shared row/col ordering
    std::map<std::pair<int, int>, C> entries;  // (row, col); zeros omitted
};

template <class C>
struct BasicMatrix {
    Shape shape = Shape::s1;
    int n = 0;
    std::vector<BlockT<C>> blocks;   // ascending content
    double completeness_resid = 0;   // float pipeline only; exact asserts 0
};

using LabeledMatrix = BasicMatrix<Scalar>;

// R restricted to every content class; throws if any column fails to close
// over the constructed basis (never truncates)
LabeledMatrix compute_rmatrix(Shape s, int n);
BasicMatrix<double> compute_rmatrix_float(Shape s, int n, double q);

nlohmann::json matrix_json(const LabeledMatrix& m);

// dense form over ordered tableau pairs: index = left * t + right
template <class C>
struct Dense {
    long dim = 0;
    std::vector<C> a;

    explicit Dense(long d = 0) : dim(d), a(d * d) {}
    C& at(long r, long c) { return a[r * dim + c]; }
    const C& at(long r, long c) const { return a[r * dim + c]; }
};

template <class C>
Dense<C> dense_pair_matrix(const BasicMatrix<C>& m) {
    auto ts = tableaux(m.shape, m.n);
    std::map<TableauLabel, long> pos;
    for (long i = 0; i < (long)ts.size(); ++i) pos[ts[i]] = i;
    long t = ts.size();
    Dense<C> out(t * t);
    for (auto& blk : m.blocks)
        for (auto& [rc, v] : blk.entries) {
            auto& row = blk.kets[rc.first];
            auto& col = blk.kets[rc.second];
            out.at(pos.at(row.left) * t + pos.at(row.right),
                   pos.at(col.left) * t + pos.at(col.right)) = v;
        }
    return out;
}

template <class C>
Dense<C> dense_mul(const Dense<C>& x, const Dense<C>& y) {
    Dense<C> out(x.dim);
    for (long r = 0; r < x.dim; ++r)
        for (long k = 0; k < x.dim; ++k) {
            const C& f = x.at(r, k);
            if (coeff_is_zero(f)) continue;
            for (long c = 0; c < x.dim; ++c) {
                if (coeff_is_zero(y.at(k, c))) continue;
                out.at(r, c) += f * y.at(k, c);
            }
        }
    return out;
}

template <class C>
Dense<C> dense_kron(const Dense<C>& x, long id_left, long id_right) {
    // kron(I_{id_left}, x, I_{id_right})
    long d = id_left * x.dim * id_right;
    Dense<C> out(d);
    for (long a = 0; a < id_left; ++a)
        for (long r = 0; r < x.dim; ++r)
            for (long c = 0; c < x.dim; ++c) {
                if (coeff_is_zero(x.at(r, c))) continue;
                for (long b = 0; b < id_right; ++b)
                    out.at((a * x.dim + r) * id_right + b,
                           (a * x.dim + c) * id_right + b) = x.at(r, c);
            }
    return out;
}

// reference-table records and comparison
struct GoldenRow {
    std::string row;  // generic pair label, e.g. "jj;ii"
    Scalar value;
};

struct GoldenRelation {
    std::string col;
    std::vector<GoldenRow> rows;
};

// loads data/golden/table_<shape>.txt (directory overridable via the
// RMATRIX_GOLDEN_PATH environment variable); throws if absent or malformed
std::vector<GoldenRelation> load_golden(Shape s);

struct GoldenIssue {
    std::string instance;  // instantiated column label
    std::string row;
    std::string kind;      // "missing" | "value" | "extra"
    std::string detail;
};

struct GoldenVerdict {
    std::string col;
    bool exact = true;
    std::vector<GoldenIssue> issues;
    std::vector<std::string> computed;  // full computed column as evidence
};

struct GoldenReport {
    Shape shape = Shape::s1;
    int n = 0;
    int exact_count = 0;
    std::vector<GoldenVerdict> relations;

    bool all_exact() const { return exact_count == (int)relations.size(); }
};

GoldenReport golden_compare(Shape s, int n);

// (R x 1)(1 x R)(R x 1) == (1 x R)(R x 1)(1 x R) on three coupled factors
CheckReport ybe_check_exact(Shape s, int n);
CheckReport ybe_check_float(Shape s, int n, double q, double tol = 1e-10);

// factor-exchange relations: the half swap moves coupling operators across
// the tensor factors.  [2]/[11] run exact on 4 sites; [21] runs the float
// pipeline on 6 sites at the given q values.
std::vector<CheckReport> intertwiner_check(Shape s, int n,
                                           std::vector<double> qs = {0.7, 1.3});

// entries depend only on the relative-order pattern of their letters
CheckReport n_independence_check(Shape s, int n1, int n2);

}  // namespace qbraid

#endif
