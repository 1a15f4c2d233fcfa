// Benchmark for the column-parallel operator composition against the serial
// reference. Both paths must produce identical results; the benchmark prints
// timings and the speedup.

#include <chrono>
#include <cstring>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "webq/stab.hpp"
#include "webq/webs.hpp"

using namespace webq;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

    // the hot path of a stabilization run: squaring a projector truncation
    int n = 4;
    int N = quick ? 2 : 4;
    Coloring gamma{N, std::vector<int>(n, quick ? 1 : 2)};
    long twists = quick ? 1 : 2;

    StateSpace top = StateSpace::make(N, gamma.labels);
    std::cout << "state space dimension " << top.dim << ", " << twists << " full twist(s)\n";

    OperatorQ p = projectorTruncation(n, gamma, N, twists);
    std::cout << "operator entries: " << p.entryCount() << "\n";

    auto t0 = Clock::now();
    OperatorQ parallel = compose(p, p);
    auto t1 = Clock::now();
    OperatorQ serial = composeSerial(p, p);
    auto t2 = Clock::now();

    if (!(parallel == serial)) {
        std::cerr << "FAIL: parallel and serial compositions disagree\n";
        return 1;
    }

    double tp = seconds(t0, t1), ts = seconds(t1, t2);
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#endif
    std::cout << "parallel: " << tp << " s\n";
    std::cout << "serial:   " << ts << " s\n";
    std::cout << "speedup:  " << (tp > 0 ? ts / tp : 0.0) << "x\n";
    std::cout << "square entries: " << parallel.entryCount() << ", digest " << parallel.digest()
              << "\n";
    return 0;
}
