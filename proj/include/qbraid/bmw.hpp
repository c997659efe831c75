#ifndef QBRAID_BMW_HPP
#define QBRAID_BMW_HPP

// Birman-Wenzl generator and contraction matrices on the vector
// representation of the B/C/D series, with relation verification.
// Two constructions are kept side by side: the literal transcription of the
// published action rows, and a relation-consistent construction whose rows
// repair the transcription damage.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbraid/rmatrix.hpp"

namespace qbraid {

enum class Series { B, C, D };

Series series_parse(const std::string& text);
const char* series_text(Series s);

struct SeriesParams {
    Series series = Series::B;
    int n = 1;                 // rank
    std::vector<int> indices;  // ascending letter set; B keeps 0, C/D drop it
    int r_exponent = 0;        // r = q^{r_exponent}
    Scalar r;
    Scalar x_literal;   // e*e = x*e for the literal contraction weights
    Scalar x_standard;  // 1 + (r - 1/r)/(q - 1/q)
};

SeriesParams series_params(Series s, int n);

using Weights = std::map<int, int>;  // letter -> exponent of q in e's column

Weights literal_weights(const SeriesParams& p);
// weights that make e*e = x_standard * e; none exists for the C series
std::optional<Weights> corrected_weights(const SeriesParams& p);

// r under which the consistent construction satisfies the cubic;
// differs from the published value only by sign for the C series
struct ConsistentR {
    Scalar value;
    Scalar inverse;
};
ConsistentR consistent_r(const SeriesParams& p);

// flat pair index = pos(first) * m + pos(second), positions ascending
std::vector<std::string> pair_labels(const SeriesParams& p);

Dense<Scalar> build_e1(const SeriesParams& p);
Dense<Scalar> build_e1(const SeriesParams& p, const Weights& w);
// literal transcription of the published g1 rows
Dense<Scalar> build_g1_literal(const SeriesParams& p);
// relation-consistent g1 (braided contraction form)
Dense<Scalar> build_g1_consistent(const SeriesParams& p);

Dense<double> eval_matrix(const Dense<Scalar>& m, double q);

// symbolic identities that hold for the literal construction: g*e == e/r
// (contraction first) and e*e == x*e; the opposite order e*g is also
// reported since the published rows break it beyond rank 1
std::vector<CheckReport> bmw_exact_identities(const SeriesParams& p);

// float relation panel at q for either construction: cubic, definition of e
// from g, both product orders, e*e, the quadratic reduction, and the braid
// relation on three sites
std::vector<CheckReport> bmw_relation_panel(const SeriesParams& p,
                                            bool consistent, double q,
                                            double tol = 1e-10);

// exact mode: symbolic checks of the literal rows (braid only while the
// 3-site space stays small); float mode: numeric panels for both
// constructions at the given q
std::vector<CheckReport> verify_bmw(const SeriesParams& p, bool exact,
                                    double q = 0.8, double tol = 1e-10);

// cubic residual per action column; every violated column carries the
// relation-consistent replacement row
struct CubicRowFix {
    std::string ket;
    double resid = 0;
    std::string literal_action;
    std::string corrected_action;
};

struct CubicReport {
    SeriesParams params;
    double q = 0;
    std::string literal_r;
    std::string corrected_r;
    double literal_resid = 0;    // max over the matrix, published r
    double corrected_resid = 0;  // consistent rows with consistent r
    std::vector<CubicRowFix> rows;

    nlohmann::json to_json() const;
};

CubicReport bmw_cubic_report(const SeriesParams& p, double q = 0.8,
                             double tol = 1e-10);

// contraction-weight discrepancy: literal exponents vs the standard x
struct SeriesDiscrepancy {
    SeriesParams params;
    double q = 0;
    double x_literal = 0;
    double x_standard = 0;
    std::optional<Weights> alt_weights;  // restores e*e = x_standard*e
    double alt_resid = 0;                // e*e - x_standard*e with alt weights
    std::string consistent_r;
    double consistent_cubic = 0;
    std::string note;

    nlohmann::json to_json() const;
};

SeriesDiscrepancy bmw_discrepancy_report(const SeriesParams& p, double q = 2.0);

// norm constants: N_mu^2 is a plain Laurent polynomial; N_0^2 (B series
// only) is a ratio of two polynomials kept as (num, den)
struct NormTable {
    SeriesParams params;
    std::map<int, Scalar> n2;            // mu > 0 -> N_mu^2
    std::map<int, std::string> n_sqrt;   // presentation "sqrt(...)"
    std::optional<std::pair<Scalar, Scalar>> n0_num_den;

    nlohmann::json to_json() const;
};

// (numerator, denominator) of N_0^2; only the B series has a 0 letter
std::pair<Scalar, Scalar> n0_squared(const SeriesParams& p);

NormTable norm_constants(const SeriesParams& p);

// matrix JSON with series metadata, mirroring the shape-matrix format
nlohmann::json bmw_matrix_json(const SeriesParams& p, const Dense<Scalar>& m,
                               const std::string& name);

}  // namespace qbraid

#endif
