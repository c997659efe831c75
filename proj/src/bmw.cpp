#include "qbraid/bmw.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qbraid {

namespace {

constexpr int kMaxFailures = 64;

int sign_of(int k) { return k > 0 ? 1 : k < 0 ? -1 : 0; }

// (-1)^k as parity of the integer
int parity(int k) { return std::abs(k) % 2 ? -1 : 1; }

Scalar signed_scalar(int sign, Scalar v) { return sign < 0 ? -v : v; }

// flat pair index bookkeeping over the ascending letter set
struct PairSpace {
    std::vector<int> idx;
    std::map<int, long> pos;
    long m = 0;

    explicit PairSpace(const SeriesParams& p) : idx(p.indices) {
        m = idx.size();
        for (long i = 0; i < m; ++i) pos[idx[i]] = i;
    }
    long flat(int a, int b) const { return pos.at(a) * m + pos.at(b); }
    std::string label(long f) const {
        return "|" + std::to_string(idx[f / m]) + "," +
               std::to_string(idx[f % m]) + ">";
    }
};

std::string triple_label(const std::vector<int>& idx, long f) {
    long m = idx.size();
    return "|" + std::to_string(idx[f / (m * m)]) + "," +
           std::to_string(idx[(f / m) % m]) + "," + std::to_string(idx[f % m]) +
           ">";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// coefficients of the |0,0> action row
Scalar row0_a(const SeriesParams& p, int mu) {
    int re = p.r_exponent;
    Scalar fac = Scalar::one() + Scalar::qpow(-1);  // (q - 1/q)/(q - 1)
    return Scalar::qpow(-mu - re) - Scalar::qpow(-mu + 1) +
           Scalar::qpow(-mu - 1) + Scalar::qpow(1 - 2 * mu) -
           Scalar::qpow(-2 * mu - 1) - Scalar::qpow(mu - re) +
           fac * (Scalar::qpow(-mu) - Scalar::qpow(-p.n - mu) -
                  Scalar::qpow(-2 * mu + 1) + Scalar::qpow(-2 * mu));
}

Scalar row0_b(const SeriesParams& p, int mu) {
    int re = p.r_exponent;
    Scalar fac = Scalar::one() + Scalar::qpow(-1);
    return Scalar::qpow(mu - re) - Scalar::qpow(-1) + Scalar::qpow(1) -
           Scalar::qpow(re - mu) +
           fac * (Scalar::qpow(mu) - Scalar::qpow(-p.n + mu) - Scalar::qpow(1) +
                  Scalar::one());
}

Scalar row0_c(const SeriesParams& p) {
    // 1/r + (q - q^{1-n} - 1/q + q^{-n-1})/(q - 1)
    return Scalar::qpow(-p.r_exponent) +
           (Scalar::one() + Scalar::qpow(-1)) *
               (Scalar::one() - Scalar::qpow(-p.n));
}

// doubled rho so half-integer exponents stay integral for spow
int rho2_of(Series s, int mu) {
    switch (s) {
        case Series::B: return mu == 0 ? 0 : 2 * mu - sign_of(mu);
        case Series::D: return 2 * (mu - sign_of(mu));
        case Series::C: return 2 * mu;
    }
    throw std::logic_error("rho2_of: bad series");
}

int eps_of(Series s, int mu) { return s == Series::C ? sign_of(mu) : 1; }

Dense<Scalar> scaled_eye(long dim, const Scalar& v) {
    Dense<Scalar> out(dim);
    for (long i = 0; i < dim; ++i) out.at(i, i) = v;
    return out;
}

Dense<Scalar> dense_sub(const Dense<Scalar>& x, const Dense<Scalar>& y) {
    Dense<Scalar> out(x.dim);
    for (long i = 0; i < x.dim * x.dim; ++i) out.a[i] = x.a[i] - y.a[i];
    return out;
}

Dense<Scalar> dense_scale(const Scalar& c, const Dense<Scalar>& x) {
    Dense<Scalar> out(x.dim);
    for (long i = 0; i < x.dim * x.dim; ++i)
        if (!x.a[i].is_zero()) out.a[i] = c * x.a[i];
    return out;
}

Dense<Scalar> shift_diag(const Dense<Scalar>& x, const Scalar& v) {
    Dense<Scalar> out = x;
    for (long i = 0; i < x.dim; ++i) out.at(i, i) += v;
    return out;
}

// per-column exact comparison; failures list the first offending entry
template <class LabelFn>
CheckReport report_equal(const std::string& relation, const std::string& space,
                         const Dense<Scalar>& x, const Dense<Scalar>& y,
                         LabelFn&& label) {
    CheckReport rep;
    rep.relation = relation;
    rep.space = space;
    rep.cases = x.dim;
    rep.tol = 0;
    for (long c = 0; c < x.dim; ++c)
        for (long r = 0; r < x.dim; ++r) {
            if (x.at(r, c) == y.at(r, c)) continue;
            if ((long)rep.failures.size() < kMaxFailures)
                rep.failures.push_back({label(c),
                                        label(r) + " row: " + x.at(r, c).print(),
                                        y.at(r, c).print()});
            break;
        }
    return rep;
}

template <class LabelFn>
CheckReport report_close(const std::string& relation, const std::string& space,
                         const Dense<double>& x, const Dense<double>& y,
                         double tol, LabelFn&& label) {
    CheckReport rep;
    rep.relation = relation;
    rep.space = space;
    rep.cases = x.dim;
    rep.tol = tol;
    for (long c = 0; c < x.dim; ++c) {
        long worst = -1;
        double wr = 0;
        for (long r = 0; r < x.dim; ++r) {
            double resid = std::fabs(x.at(r, c) - y.at(r, c));
            rep.max_resid = std::max(rep.max_resid, resid);
            if (resid >= tol && resid > wr) {
                wr = resid;
                worst = r;
            }
        }
        if (worst >= 0 && (long)rep.failures.size() < kMaxFailures)
            rep.failures.push_back({label(c),
                                    label(worst) + " row: " + fmt(x.at(worst, c)),
                                    fmt(y.at(worst, c))});
    }
    return rep;
}

Dense<double> eye_f(long dim) {
    Dense<double> out(dim);
    for (long i = 0; i < dim; ++i) out.at(i, i) = 1.0;
    return out;
}

Dense<double> lin_f(double a, const Dense<double>& x, double b,
                    const Dense<double>& y) {
    Dense<double> out(x.dim);
    for (long i = 0; i < x.dim * x.dim; ++i) out.a[i] = a * x.a[i] + b * y.a[i];
    return out;
}

Dense<double> inverse_f(const Dense<double>& x) {
    Eigen::MatrixXd m(x.dim, x.dim);
    for (long r = 0; r < x.dim; ++r)
        for (long c = 0; c < x.dim; ++c) m(r, c) = x.at(r, c);
    Eigen::MatrixXd inv = m.inverse();
    Dense<double> out(x.dim);
    for (long r = 0; r < x.dim; ++r)
        for (long c = 0; c < x.dim; ++c) out.at(r, c) = inv(r, c);
    return out;
}

std::string panel_space(const SeriesParams& p, bool consistent, double q) {
    std::ostringstream os;
    os << series_text(p.series) << p.n << " pairs, "
       << (consistent ? "consistent" : "literal") << " rows";
    if (q > 0) os << ", q=" << q;
    return os.str();
}

// action of the matrix on basis ket `col`, rendered over the pair labels
std::string render_action(const Dense<Scalar>& g, const PairSpace& ps,
                          long col) {
    std::string out = "g" + ps.label(col) + " =";
    bool first = true;
    for (long r = 0; r < g.dim; ++r) {
        const Scalar& v = g.at(r, col);
        if (v.is_zero()) continue;
        out += (first ? " " : " + ") + ("(" + v.print() + ")") + ps.label(r);
        first = false;
    }
    if (first) out += " 0";
    return out;
}

double cubic_resid_f(const Dense<double>& g, double r, double q) {
    long dim = g.dim;
    Dense<double> i = eye_f(dim);
    Dense<double> t1 = lin_f(1.0, g, -1.0 / r, i);
    Dense<double> t2 = lin_f(1.0, g, -q, i);
    Dense<double> t3 = lin_f(1.0, g, 1.0 / q, i);
    Dense<double> prod = dense_mul(dense_mul(t1, t2), t3);
    double worst = 0;
    for (double v : prod.a) worst = std::max(worst, std::fabs(v));
    return worst;
}

}  // namespace

Series series_parse(const std::string& text) {
    if (text == "B" || text == "b") return Series::B;
    if (text == "C" || text == "c") return Series::C;
    if (text == "D" || text == "d") return Series::D;
    throw std::invalid_argument("series_parse: expected B, C or D, got \"" +
                                text + "\"");
}

const char* series_text(Series s) {
    switch (s) {
        case Series::B: return "B";
        case Series::C: return "C";
        case Series::D: return "D";
    }
    throw std::logic_error("series_text: bad series");
}

SeriesParams series_params(Series s, int n) {
    if (n < 1) throw std::invalid_argument("series_params: need rank >= 1");
    SeriesParams p;
    p.series = s;
    p.n = n;
    for (int k = -n; k <= n; ++k)
        if (k != 0 || s == Series::B) p.indices.push_back(k);
    p.r_exponent = s == Series::B   ? 2 * n
                   : s == Series::D ? 2 * n - 1
                                    : -2 * n - 1;
    p.r = Scalar::qpow(p.r_exponent);
    p.x_literal = Scalar::zero();
    for (int k : p.indices) p.x_literal += Scalar::qpow(k);
    // 1 + (r - 1/r)/(q - 1/q)
    p.x_standard = s == Series::B   ? Scalar::one() + Scalar::qnum(2 * n)
                   : s == Series::D ? Scalar::one() + Scalar::qnum(2 * n - 1)
                                    : Scalar::one() - Scalar::qnum(2 * n + 1);
    return p;
}

Weights literal_weights(const SeriesParams& p) {
    Weights w;
    for (int k : p.indices) w[k] = k;
    return w;
}

std::optional<Weights> corrected_weights(const SeriesParams& p) {
    if (p.series == Series::C) return std::nullopt;
    Weights w;
    for (int k : p.indices)
        w[k] = p.series == Series::B ? (k == 0 ? 0 : (2 * std::abs(k) - 1) * sign_of(k))
                                     : (2 * std::abs(k) - 2) * sign_of(k);
    return w;
}

ConsistentR consistent_r(const SeriesParams& p) {
    if (p.series == Series::C)
        return {-Scalar::qpow(2 * p.n + 1), -Scalar::qpow(-2 * p.n - 1)};
    return {p.r, Scalar::qpow(-p.r_exponent)};
}

std::vector<std::string> pair_labels(const SeriesParams& p) {
    PairSpace ps(p);
    std::vector<std::string> out;
    for (long f = 0; f < ps.m * ps.m; ++f) out.push_back(ps.label(f));
    return out;
}

Dense<Scalar> build_e1(const SeriesParams& p) {
    return build_e1(p, literal_weights(p));
}

Dense<Scalar> build_e1(const SeriesParams& p, const Weights& w) {
    PairSpace ps(p);
    Dense<Scalar> e(ps.m * ps.m);
    for (int mu : p.indices) {
        long col = ps.flat(mu, -mu);
        for (int k : p.indices)
            e.at(ps.flat(k, -k), col) +=
                signed_scalar(parity(mu) * parity(k), Scalar::qpow(w.at(k)));
    }
    return e;
}

Dense<Scalar> build_g1_literal(const SeriesParams& p) {
    PairSpace ps(p);
    Dense<Scalar> g(ps.m * ps.m);
    Scalar q = Scalar::qpow(1), qi = Scalar::qpow(-1);
    Scalar d = q - qi;
    Scalar rinv = Scalar::qpow(-p.r_exponent);
    for (int a : p.indices)
        for (int b : p.indices) {
            long col = ps.flat(a, b);
            if (a == b && a != 0) {
                g.at(col, col) = q;
            } else if (a == 0 && b == 0) {
                for (int mu : p.indices) {
                    if (mu <= 0) continue;
                    g.at(ps.flat(-mu, mu), col) +=
                        signed_scalar(parity(mu), row0_a(p, mu));
                    g.at(ps.flat(mu, -mu), col) +=
                        signed_scalar(parity(mu), row0_b(p, mu));
                }
                g.at(col, col) += row0_c(p);
            } else if (b == -a && a > 0) {
                g.at(ps.flat(-a, a), col) = rinv;
            } else if (b == -a && a < 0) {
                int mu = -a;
                g.at(ps.flat(mu, -mu), col) += Scalar::qpow(mu - 1) -
                                               Scalar::qpow(mu + 1) +
                                               Scalar::qpow(p.r_exponent);
                g.at(ps.flat(-mu, mu), col) +=
                    q - qi - Scalar::qpow(1 - mu) + Scalar::qpow(-mu - 1);
                for (int k : p.indices) {
                    if (k == mu || k == -mu) continue;
                    g.at(ps.flat(k, -k), col) +=
                        signed_scalar(-parity(mu + k), d * Scalar::qpow(k));
                }
            } else if (a > b) {
                g.at(ps.flat(b, a), col) = Scalar::one();
            } else {
                g.at(col, col) += d;
                g.at(ps.flat(b, a), col) += Scalar::one();
            }
        }
    return g;
}

Dense<Scalar> build_g1_consistent(const SeriesParams& p) {
    PairSpace ps(p);
    long m = ps.m;
    Scalar q = Scalar::qpow(1), qi = Scalar::qpow(-1);
    Scalar d = q - qi;
    Dense<Scalar> u(m * m);  // unbraided form
    for (long i = 0; i < m; ++i) {
        long ii = ps.pos.at(-ps.idx[i]);
        for (long j = 0; j < m; ++j)
            u.at(i * m + j, i * m + j) +=
                i == j ? (i == ii ? Scalar::one() : q) : (j == ii ? qi : Scalar::one());
    }
    for (long i = 0; i < m; ++i) {
        int mi = ps.idx[i];
        long ii = ps.pos.at(-mi);
        for (long j = i + 1; j < m; ++j) {
            int mj = ps.idx[j];
            long jj = ps.pos.at(-mj);
            u.at(i * m + j, j * m + i) += d;
            u.at(i * m + ii, j * m + jj) += signed_scalar(
                -eps_of(p.series, mi) * eps_of(p.series, mj),
                d * Scalar::spow(rho2_of(p.series, mi) - rho2_of(p.series, mj)));
        }
    }
    // braid: compose with the letter swap
    Dense<Scalar> g(m * m);
    for (long r = 0; r < m * m; ++r)
        for (long c = 0; c < m * m; ++c)
            if (!u.at(r, c).is_zero())
                g.at((r % m) * m + r / m, c) += u.at(r, c);
    return g;
}

Dense<double> eval_matrix(const Dense<Scalar>& m, double q) {
    Dense<double> out(m.dim);
    for (long i = 0; i < m.dim * m.dim; ++i)
        if (!m.a[i].is_zero()) out.a[i] = m.a[i].eval_float(q);
    return out;
}

std::vector<CheckReport> bmw_exact_identities(const SeriesParams& p) {
    PairSpace ps(p);
    auto label = [&](long f) { return ps.label(f); };
    std::string space = panel_space(p, false, 0);
    Dense<Scalar> g = build_g1_literal(p);
    Dense<Scalar> e = build_e1(p);
    Scalar rinv = Scalar::qpow(-p.r_exponent);
    Dense<Scalar> er = dense_scale(rinv, e);
    std::vector<CheckReport> out;
    out.push_back(report_equal("g*e == e/r", space, dense_mul(g, e), er, label));
    out.push_back(report_equal("e*g == e/r", space, dense_mul(e, g), er, label));
    out.push_back(report_equal("e*e == x*e", space, dense_mul(e, e),
                               dense_scale(p.x_literal, e), label));
    return out;
}

namespace {

std::vector<CheckReport> exact_panel(const SeriesParams& p) {
    PairSpace ps(p);
    auto label = [&](long f) { return ps.label(f); };
    std::string space = panel_space(p, false, 0);
    Dense<Scalar> g = build_g1_literal(p);
    Dense<Scalar> e = build_e1(p);
    Scalar q = Scalar::qpow(1), qi = Scalar::qpow(-1);
    Scalar d = q - qi;
    Scalar rinv = Scalar::qpow(-p.r_exponent);
    long dim = g.dim;

    std::vector<CheckReport> out;
    Dense<Scalar> cubic = dense_mul(
        dense_mul(shift_diag(g, -rinv), shift_diag(g, -q)), shift_diag(g, qi));
    out.push_back(report_equal("(g - 1/r)(g - q)(g + 1/q) == 0", space, cubic,
                               Dense<Scalar>(dim), label));
    Dense<Scalar> gg = dense_mul(g, g);
    out.push_back(report_equal("g*g - 1 == (q - 1/q)*(g - e*g)", space,
                               shift_diag(gg, -Scalar::one()),
                               dense_scale(d, dense_sub(g, dense_mul(e, g))),
                               label));
    for (auto& rep : bmw_exact_identities(p)) out.push_back(rep);
    out.push_back(report_equal(
        "g*g == (q - 1/q)*(g - e/r) + 1", space, gg,
        shift_diag(dense_scale(d, dense_sub(g, dense_scale(rinv, e))),
                   Scalar::one()),
        label));
    if (ps.m <= 5) {
        Dense<Scalar> g1 = dense_kron(g, 1, ps.m);
        Dense<Scalar> g2 = dense_kron(g, ps.m, 1);
        auto label3 = [&](long f) { return triple_label(ps.idx, f); };
        out.push_back(report_equal(
            "g1*g2*g1 == g2*g1*g2", space,
            dense_mul(dense_mul(g1, g2), g1), dense_mul(dense_mul(g2, g1), g2),
            label3));
    }
    return out;
}

}  // namespace

std::vector<CheckReport> bmw_relation_panel(const SeriesParams& p,
                                            bool consistent, double q,
                                            double tol) {
    PairSpace ps(p);
    auto label = [&](long f) { return ps.label(f); };
    std::string space = panel_space(p, consistent, q);
    double d = q - 1.0 / q;

    Dense<double> g = eval_matrix(
        consistent ? build_g1_consistent(p) : build_g1_literal(p), q);
    double r = consistent ? consistent_r(p).value.eval_float(q)
                          : p.r.eval_float(q);
    double x = consistent ? 1.0 + (r - 1.0 / r) / d : p.x_literal.eval_float(q);
    Dense<double> ginv = inverse_f(g);
    // consistent rows define e through the skein relation
    Dense<double> e = consistent
                          ? lin_f(1.0, eye_f(g.dim), -1.0 / d, lin_f(1.0, g, -1.0, ginv))
                          : eval_matrix(build_e1(p), q);
    Dense<double> zero(g.dim);
    Dense<double> er = lin_f(1.0 / r, e, 0.0, zero);

    std::vector<CheckReport> out;
    {
        Dense<double> i = eye_f(g.dim);
        Dense<double> prod = dense_mul(
            dense_mul(lin_f(1.0, g, -1.0 / r, i), lin_f(1.0, g, -q, i)),
            lin_f(1.0, g, 1.0 / q, i));
        out.push_back(report_close("(g - 1/r)(g - q)(g + 1/q) == 0", space,
                                   prod, zero, tol, label));
    }
    out.push_back(report_close("e == 1 - (g - g^-1)/(q - q^-1)", space, e,
                               lin_f(1.0, eye_f(g.dim), -1.0 / d,
                                     lin_f(1.0, g, -1.0, ginv)),
                               tol, label));
    out.push_back(
        report_close("e*g == e/r", space, dense_mul(e, g), er, tol, label));
    out.push_back(
        report_close("g*e == e/r", space, dense_mul(g, e), er, tol, label));
    out.push_back(report_close("e*e == x*e", space, dense_mul(e, e),
                               lin_f(x, e, 0.0, zero), tol, label));
    out.push_back(report_close(
        "g*g == (q - 1/q)*(g - e/r) + 1", space, dense_mul(g, g),
        lin_f(d, lin_f(1.0, g, -1.0, er), 1.0, eye_f(g.dim)), tol, label));
    {
        Dense<double> g1 = dense_kron(g, 1, ps.m);
        Dense<double> g2 = dense_kron(g, ps.m, 1);
        auto label3 = [&](long f) { return triple_label(ps.idx, f); };
        out.push_back(report_close(
            "g1*g2*g1 == g2*g1*g2", space, dense_mul(dense_mul(g1, g2), g1),
            dense_mul(dense_mul(g2, g1), g2), tol, label3));
    }
    return out;
}

std::vector<CheckReport> verify_bmw(const SeriesParams& p, bool exact, double q,
                                    double tol) {
    if (exact) return exact_panel(p);
    auto out = bmw_relation_panel(p, false, q, tol);
    for (auto& rep : bmw_relation_panel(p, true, q, tol)) out.push_back(rep);
    return out;
}

CubicReport bmw_cubic_report(const SeriesParams& p, double q, double tol) {
    PairSpace ps(p);
    CubicReport out;
    out.params = p;
    out.q = q;
    ConsistentR rc = consistent_r(p);
    out.literal_r = p.r.print();
    out.corrected_r = rc.value.print();

    Dense<Scalar> lit = build_g1_literal(p);
    Dense<Scalar> cons = build_g1_consistent(p);
    Dense<double> g = eval_matrix(lit, q);
    out.corrected_resid =
        cubic_resid_f(eval_matrix(cons, q), rc.value.eval_float(q), q);

    // residual of the literal cubic, column by column
    long dim = g.dim;
    Dense<double> i = eye_f(dim);
    Dense<double> prod = dense_mul(
        dense_mul(lin_f(1.0, g, -1.0 / p.r.eval_float(q), i),
                  lin_f(1.0, g, -q, i)),
        lin_f(1.0, g, 1.0 / q, i));
    for (long c = 0; c < dim; ++c) {
        double worst = 0;
        for (long r = 0; r < dim; ++r)
            worst = std::max(worst, std::fabs(prod.at(r, c)));
        out.literal_resid = std::max(out.literal_resid, worst);
        if (worst >= tol)
            out.rows.push_back({ps.label(c), worst, render_action(lit, ps, c),
                                render_action(cons, ps, c)});
    }
    return out;
}

nlohmann::json CubicReport::to_json() const {
    nlohmann::json rows_j = nlohmann::json::array();
    for (auto& row : rows)
        rows_j.push_back({{"ket", row.ket},
                          {"resid", row.resid},
                          {"literal", row.literal_action},
                          {"corrected", row.corrected_action}});
    return {{"series", series_text(params.series)},
            {"n", params.n},
            {"q", q},
            {"literal_r", literal_r},
            {"corrected_r", corrected_r},
            {"literal_resid", literal_resid},
            {"corrected_resid", corrected_resid},
            {"violated_rows", rows_j}};
}

SeriesDiscrepancy bmw_discrepancy_report(const SeriesParams& p, double q) {
    SeriesDiscrepancy out;
    out.params = p;
    out.q = q;
    out.x_literal = p.x_literal.eval_float(q);
    out.x_standard = p.x_standard.eval_float(q);
    out.alt_weights = corrected_weights(p);
    if (out.alt_weights) {
        Dense<double> e = eval_matrix(build_e1(p, *out.alt_weights), q);
        Dense<double> diff =
            lin_f(1.0, dense_mul(e, e), -out.x_standard, e);
        for (double v : diff.a) out.alt_resid = std::max(out.alt_resid, std::fabs(v));
    }
    ConsistentR rc = consistent_r(p);
    out.consistent_r = rc.value.print();
    out.consistent_cubic = cubic_resid_f(eval_matrix(build_g1_consistent(p), q),
                                         rc.value.eval_float(q), q);
    switch (p.series) {
        case Series::B:
            out.note = p.n == 1
                           ? "literal exponents already give the standard x"
                           : "literal exponents give a nonstandard x; the "
                             "alternative exponents restore e*e = x*e with the "
                             "standard value";
            break;
        case Series::D:
            out.note = "literal exponents give a nonstandard x; the alternative "
                       "exponents restore e*e = x*e with the standard value";
            break;
        case Series::C:
            out.note = "the standard x is negative, so no real exponent vector "
                       "reproduces it; the consistent rows instead flip the "
                       "sign of r";
            break;
    }
    return out;
}

nlohmann::json SeriesDiscrepancy::to_json() const {
    nlohmann::json w_j;
    if (alt_weights) {
        w_j = nlohmann::json::object();
        for (auto& [k, v] : *alt_weights) w_j[std::to_string(k)] = v;
    }
    nlohmann::json j = {{"series", series_text(params.series)},
                        {"n", params.n},
                        {"q", q},
                        {"x_literal", x_literal},
                        {"x_standard", x_standard},
                        {"consistent_r", consistent_r},
                        {"consistent_cubic_resid", consistent_cubic},
                        {"note", note}};
    j["alt_weights"] = w_j;
    j["alt_weights_resid"] =
        alt_weights ? nlohmann::json(alt_resid) : nlohmann::json();
    return j;
}

std::pair<Scalar, Scalar> n0_squared(const SeriesParams& p) {
    if (p.series != Series::B)
        throw std::invalid_argument(
            "n0_squared: only the B series has a 0 letter");
    Scalar q = Scalar::qpow(1), qi = Scalar::qpow(-1);
    Scalar d = q - qi;
    Scalar r = p.r;
    Scalar num = Scalar::zero();
    for (int mu = 1; mu <= p.n; ++mu) {
        Scalar a = row0_a(p, mu), b = row0_b(p, mu);
        num += a * a * r * (r - Scalar::qpow(mu + 1) + Scalar::qpow(mu - 1)) +
               b * b;
    }
    Scalar c0 = row0_c(p);
    Scalar den = Scalar::one() +
                 d * (c0 - Scalar::qpow(-p.r_exponent)) + c0 * c0;
    return {num, den};
}

NormTable norm_constants(const SeriesParams& p) {
    NormTable out;
    out.params = p;
    for (int mu = 1; mu <= p.n; ++mu) {
        // r^2 - r q^mu (q - 1/q)
        Scalar n2 = Scalar::qpow(2 * p.r_exponent) -
                    Scalar::qpow(p.r_exponent + mu + 1) +
                    Scalar::qpow(p.r_exponent + mu - 1);
        out.n2[mu] = n2;
        out.n_sqrt[mu] = "sqrt(" + n2.print() + ")";
    }
    if (p.series == Series::B) out.n0_num_den = n0_squared(p);
    return out;
}

nlohmann::json NormTable::to_json() const {
    nlohmann::json entries = nlohmann::json::object();
    for (auto& [mu, v] : n2)
        entries[std::to_string(mu)] = {{"squared", v.print()},
                                       {"sqrt", n_sqrt.at(mu)}};
    nlohmann::json n0;
    if (n0_num_den)
        n0 = {{"num", n0_num_den->first.print()},
              {"den", n0_num_den->second.print()}};
    return {{"series", series_text(params.series)},
            {"n", params.n},
            {"entries", entries},
            {"n0_squared", n0}};
}

nlohmann::json bmw_matrix_json(const SeriesParams& p, const Dense<Scalar>& m,
                               const std::string& name) {
    nlohmann::json entries = nlohmann::json::array();
    for (long r = 0; r < m.dim; ++r)
        for (long c = 0; c < m.dim; ++c)
            if (!m.at(r, c).is_zero())
                entries.push_back({r, c, m.at(r, c).print()});
    return {{"series", series_text(p.series)},
            {"n", p.n},
            {"r", p.r.print()},
            {"name", name},
            {"labels", pair_labels(p)},
            {"entries", entries}};
}

}  // namespace qbraid
