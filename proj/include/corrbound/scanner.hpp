#ifndef CORRBOUND_SCANNER_HPP
#define CORRBOUND_SCANNER_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "corrbound/bounds.hpp"
#include "corrbound/weights.hpp"

namespace corrbound {

// One code in a corpus, keyed by a file-derived identifier.
struct CodeRecord {
    std::string id;
    unsigned n = 0, k = 0, d = 0;
    std::filesystem::path path;
    WeightDistribution distribution;
};

// Parses one corpus file into a record; id defaults to the file stem.
// Rejects zero codes (rank 0), which have no rate/security coordinates.
CodeRecord load_code_record(const std::filesystem::path& path);

// Rate/security coordinates of one code at the reference operating point.
struct FrontierPoint {
    std::string id;
    unsigned n = 0, k = 0, d = 0;
    double rate = 0.0;           // k / n
    double security_bits = 0.0;  // -0.5 * log2(W(delta_ref^2) - 1)
    double max_delta = 0.0;      // max bias meeting the reference target
};

struct SkipRecord {
    std::string path;
    std::string error;
};

struct ScanResult {
    double delta_ref = 0.0;
    double security_ref = 0.0;
    std::vector<FrontierPoint> points;  // sorted by rate descending, then id
    std::vector<SkipRecord> skips;      // sorted by path
};

// Scans every regular file in `dir` (except index.csv) as a weight file.
// Malformed or out-of-scope files land in the skip report; they never abort
// the scan. An optional index.csv with columns id,path[,name] overrides the
// file-stem identifiers. Throws EmptyCorpus when the directory holds no
// candidate files at all.
ScanResult scan_corpus(const std::filesystem::path& dir, double delta_ref, double security_ref,
                       unsigned workers = 1, std::size_t enumeration_limit = kDefaultEnumerationLimit);

enum class FrontierObjective { security_bits, max_delta };

// Maximal points under (rate, objective) dominance; exact ties in both
// coordinates are all kept. Input order does not matter; output is sorted by
// rate descending.
std::vector<FrontierPoint> pareto_frontier(std::vector<FrontierPoint> points,
                                           FrontierObjective objective);

// CSV helpers. Floats are printed with 17 significant digits so that equal
// inputs yield byte-identical files.
std::string format_double(double v);
std::string csv_escape(const std::string& field);

void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points);
void write_skips_csv(std::ostream& out, const std::vector<SkipRecord>& skips);
void write_report_csv(std::ostream& out, const std::vector<SecurityReport>& rows);

// Writes with an IoError on failure; parent directory must exist.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace corrbound

#endif
