// For a range of target disturbances, grid-searches the best one-qubit
// strategy at delta = 0 and prints how far its mutual information falls
// below the optimal bound.

#include <cstdio>

#include <qkdprobe/qkdprobe.hpp>

using namespace qkdprobe;

int main() {
    std::printf("%8s  %8s  %8s  %10s  %10s  %12s\n", "targetD", "a", "c", "IAE",
                "bound", "gap");
    try {
        for (double target : {0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            const BestStrategy best = best_single_qubit_strategy(target, 1200);
            std::printf("%8.2f  %8.4f  %8.4f  %10.6f  %10.6f  %12.3e\n", target,
                        best.params.a, best.params.c, best.iae, best.iae + best.gap,
                        best.gap);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
