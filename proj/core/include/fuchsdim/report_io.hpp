#pragma once

#include "fuchsdim/boundary_metric.hpp"
#include "fuchsdim/dimension.hpp"
#include "fuchsdim/schottky.hpp"
#include "fuchsdim/words.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fuchsdim {

// Box-count run over sampled limit points, with its sampling parameters.
struct BoxCountRun {
    long k = 0;
    long j_max = 0;
    long depth = 0;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    long precision = 0;
    long s_min = 0;
    long s_max = 0;
    BoxCountResult result;
};

// Every report is an indented JSON document ending in a newline. BigReal and
// floating fields are written as {"decimal": ..., "binary": ...}.
std::string report_json(const CertificateReport& rep);
std::string report_json(const BoxCountRun& run);
std::string report_json(const OrbitReport& rep);
std::string report_json(const EscapeProfile& prof);
std::string report_json(const CoverReport& rep);
std::string report_json(const std::vector<CoverReport>& reps);
std::string report_json(const MuSumReport& rep);
std::string report_json(const ContractionSweep& sweep);
std::string report_json(const LemmaSampleReport& rep);
std::string report_json(const std::vector<PairingReport>& reps);

// CSV tables with a header row; '#' comment lines name the grid and budget.
std::string orbit_counts_csv(const OrbitReport& rep, std::uint64_t budget);
std::string poincare_csv(const OrbitReport& rep, std::uint64_t budget);
std::string word_stream_csv(const std::vector<WordCircle>& circles);
std::string escape_csv(const EscapeProfile& prof);
std::string box_counts_csv(const BoxCountRun& run);

} // namespace fuchsdim
