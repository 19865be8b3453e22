#ifndef TDU_BENCH_HPP
#define TDU_BENCH_HPP

// Trust-enforcement-time benchmark: repeated enforcement of the scenario
// request, cold (engine state rebuilt per request) vs warm (compiled and
// grounded state reused).

#include <string>
#include <vector>

namespace tdu::bench {

enum class Mode { Cold, Warm };

struct Stats {
    Mode mode = Mode::Cold;
    int iterations = 0;
    double mean_ms = 0;
    double ci95_low_ms = 0;
    double ci95_high_ms = 0;
    double min_ms = 0;
    double max_ms = 0;
    std::vector<double> samples_ms;
};

// iterations >= 2; measures one full enforcement decision per iteration on
// the three-stakeholder scenario workload.
Stats bench_tet(int iterations, Mode mode);

std::string stats_to_json(const Stats& s, int indent = 2);
// Plot-ready table: one header line, one line per mode row.
std::string stats_table_header();
std::string stats_table_row(const Stats& s);

std::string to_string(Mode m);
Mode mode_from_string(const std::string& name);

}  // namespace tdu::bench

#endif
