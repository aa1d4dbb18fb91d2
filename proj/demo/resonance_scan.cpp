// Scans both probe families around the near-optimal configurations and
// prints the resonance peaks of the disturbance curve, for a few values of
// the strategy offset delta.

#include <cstdio>

#include <qkdprobe/qkdprobe.hpp>

using namespace qkdprobe;

static void report(const char* label, const SweepSpec& spec) {
    std::printf("%s\n", label);
    for (double delta : {0.05, 0.1, 0.2, 0.3}) {
        SweepSpec s = spec;
        s.fixed["delta"] = delta;
        const auto rows = run_sweep(s, 4);
        const auto peaks = find_peaks(rows, "D", 0.05);
        std::printf("  delta=%.2f: %zu peak(s)", delta, peaks.peaks.size());
        for (const Peak& p : peaks.peaks) {
            std::printf("  [%s=%.4f height=%.4f prominence=%.4f width=%.4f]",
                        spec.param.c_str(), p.location, p.height, p.prominence, p.width);
        }
        std::printf("\n");
    }
}

int main() {
    try {
        SweepSpec one;
        one.family = ProbeFamily::OneQubit;
        one.param = "c";
        one.from = 0.01;
        one.to = 0.99;
        one.steps = 1961;
        one.fixed = {{"a", 0.5}};
        report("one-qubit probe, a=0.5, sweep c:", one);

        SweepSpec two;
        two.family = ProbeFamily::TwoQubit;
        two.param = "alpha2";
        two.from = 0.8;
        two.to = 1.0;
        two.steps = 2001;
        two.fixed = {{"s", 0.5}};
        two.ties = {{"beta2", 1.8, -1.0, "alpha2"}};
        report("two-qubit probe, s=0.5, beta2 = 1.8 - alpha2, sweep alpha2:", two);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
