#ifndef QBRAID_REPORT_HPP
#define QBRAID_REPORT_HPP

// Uniform result record for relation checks.  Exact checks list every
// failing ket with both sides printed; float checks carry the worst
// residual.  ok() is the single pass criterion either way.

#include <string>
#include <vector>

#include <json.hpp>

#include "qbraid/state.hpp"

namespace qbraid {

struct CheckReport {
    std::string relation;
    std::string space;
    long cases = 0;
    struct Failure {
        std::string ket;
        std::string lhs;
        std::string rhs;
    };
    std::vector<Failure> failures;
    double max_resid = 0.0;  // float checks; stays 0 for exact ones
    double tol = 0.0;        // 0 means exact comparison

    bool ok() const { return failures.empty() && (tol == 0.0 || max_resid < tol); }

    nlohmann::json to_json() const {
        nlohmann::json j{{"relation", relation},
                         {"space", space},
                         {"cases", cases},
                         {"failures", nlohmann::json::array()}};
        for (auto& f : failures)
            j["failures"].push_back({{"ket", f.ket}, {"lhs", f.lhs}, {"rhs", f.rhs}});
        if (tol != 0.0) {
            j["max_resid"] = max_resid;
            j["tol"] = tol;
        }
        j["ok"] = ok();
        return j;
    }
};

template <class C>
nlohmann::json state_to_json(const State<C>& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [k, c] : s.amp) {
        nlohmann::json e{{"ket", k}};
        if constexpr (std::is_same_v<C, Scalar>)
            e["coeff"] = c.print();
        else
            e["coeff"] = c;
        arr.push_back(e);
    }
    return arr;
}

inline State<Scalar> state_from_json(const nlohmann::json& arr) {
    State<Scalar> s;
    for (auto& e : arr) {
        Ket k = e.at("ket").get<std::vector<int>>();
        s.add_scaled(k, Scalar::parse(e.at("coeff").get<std::string>()));
    }
    return s;
}

}  // namespace qbraid

#endif
