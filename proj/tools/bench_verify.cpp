// Times the verification kernels with the parallel path on and off and
// checks both paths produce identical reports.  The serial path is the
// reference implementation; every sweep writes into per-ket slots, so the
// two must agree bit for bit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef QBRAID_HAVE_OPENMP
#include <omp.h>
#endif

#include "qbraid/hecke.hpp"
#include "qbraid/parallel.hpp"
#include "qbraid/rmatrix.hpp"

using namespace qbraid;

namespace {

struct Result {
    long cases = 0;
    double max_resid = 0;
    size_t failures = 0;
    bool ok = true;
};

Result fold(const std::vector<CheckReport>& reps) {
    Result r;
    for (auto& rep : reps) {
        r.cases += rep.cases;
        r.max_resid = std::max(r.max_resid, rep.max_resid);
        r.failures += rep.failures.size();
        r.ok = r.ok && rep.ok();
    }
    return r;
}

struct Workload {
    std::string name;
    std::function<Result()> run;
};

double time_ms(const std::function<Result()>& f, Result& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    std::vector<Workload> loads = {
        {"hecke relations n=3 sites=6",
         [] { return fold({verify_hecke(3, 6)}); }},
        {"quadratic 6-site float n=3 q=0.7",
         [] { return fold({verify_quadratic41_float(3, 0.7)}); }},
        {"yang-baxter float [2] n=3 q=0.7",
         [] { return fold({ybe_check_float(Shape::s2, 3, 0.7)}); }},
        {"intertwiner float [21] n=3 q=0.7",
         [] { return fold(intertwiner_check(Shape::s21, 3, {0.7})); }},
    };

#ifdef QBRAID_HAVE_OPENMP
    std::printf("parallel path: OpenMP, max %d threads\n", omp_get_max_threads());
#else
    std::printf("parallel path: compiled out (serial only)\n");
#endif
    std::printf("%-36s %10s %10s %8s  %s\n", "workload", "serial/ms",
                "parallel/ms", "speedup", "agree");

    bool all_agree = true;
    for (auto& w : loads) {
        set_parallel(false);
        Result serial;
        double ts = time_ms(w.run, serial);
        set_parallel(true);
        Result parallel;
        double tp = time_ms(w.run, parallel);

        bool agree = serial.cases == parallel.cases &&
                     serial.max_resid == parallel.max_resid &&
                     serial.failures == parallel.failures &&
                     serial.ok == parallel.ok;
        all_agree = all_agree && agree && serial.ok;
        std::printf("%-36s %10.1f %10.1f %8.2fx  %s\n", w.name.c_str(), ts, tp,
                    ts / tp, agree ? "yes" : "NO");
    }
    set_parallel(true);
    return all_agree ? 0 : 1;
}
