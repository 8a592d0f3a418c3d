#include "corrbound/scanner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <variant>

#include "corrbound/util.hpp"

namespace corrbound {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path.string());
    return os.str();
}

// index.csv rows: id,path[,name]; header row optional. Returns path-string
// (as written in the file) -> id.
std::map<std::string, std::string> parse_index(const std::filesystem::path& file) {
    std::map<std::string, std::string> ids;
    std::istringstream in(read_file(file));
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string col;
        while (std::getline(ls, col, ',')) cols.push_back(col);
        if (first && !cols.empty() && cols[0] == "id") {
            first = false;
            continue;
        }
        first = false;
        if (cols.size() >= 2) ids[cols[1]] = cols[0];
    }
    return ids;
}

}  // namespace

CodeRecord load_code_record(const std::filesystem::path& path) {
    WeightDistribution dist = parse_weights(read_file(path));
    auto d = dist.min_distance();
    if (!d) throw ValidationError("zero code (rank 0) has no rate/security tradeoff");
    CodeRecord rec{path.stem().string(), dist.n(), dist.rank(), *d, path, std::move(dist)};
    return rec;
}

ScanResult scan_corpus(const std::filesystem::path& dir, double delta_ref, double security_ref,
                       unsigned workers, std::size_t enumeration_limit) {
    (void)enumeration_limit;  // weight files carry no matrices; kept for CLI symmetry
    if (!std::filesystem::is_directory(dir))
        throw EmptyCorpus("not a directory: " + dir.string());
    if (!(delta_ref > 0.0 && delta_ref <= 1.0))
        throw InvalidParams("reference delta must lie in (0, 1]");
    if (!(security_ref > 0.0)) throw InvalidParams("reference security must be > 0 bits");

    std::vector<std::filesystem::path> files;
    std::map<std::string, std::string> index_ids;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().filename() == "index.csv") {
            index_ids = parse_index(entry.path());
            continue;
        }
        files.push_back(entry.path());
    }
    if (files.empty()) throw EmptyCorpus("no weight files in " + dir.string());
    std::sort(files.begin(), files.end());

    ScanResult result;
    result.delta_ref = delta_ref;
    result.security_ref = security_ref;

    std::vector<std::variant<std::monostate, FrontierPoint, SkipRecord>> slots(files.size());
    parallel_for(files.size(), workers, [&](std::size_t i) {
        const auto& path = files[i];
        try {
            const CodeRecord rec = load_code_record(path);
            FrontierPoint pt;
            pt.id = rec.id;
            for (const auto& [ipath, id] : index_ids)
                if (path.filename() == std::filesystem::path(ipath).filename()) pt.id = id;
            pt.n = rec.n;
            pt.k = rec.k;
            pt.d = rec.d;
            pt.rate = static_cast<double>(pt.k) / static_cast<double>(pt.n);
            pt.security_bits =
                -0.5 * eval_w_minus_1_log2(rec.distribution, delta_ref * delta_ref);
            pt.max_delta = max_bias_for_security(rec.distribution, security_ref);
            slots[i] = std::move(pt);
        } catch (const std::exception& e) {
            slots[i] = SkipRecord{path.string(), e.what()};
        }
    });

    for (auto& slot : slots) {
        if (std::holds_alternative<FrontierPoint>(slot))
            result.points.push_back(std::get<FrontierPoint>(std::move(slot)));
        else if (std::holds_alternative<SkipRecord>(slot))
            result.skips.push_back(std::get<SkipRecord>(std::move(slot)));
    }
    std::sort(result.points.begin(), result.points.end(),
              [](const FrontierPoint& a, const FrontierPoint& b) {
                  if (a.rate != b.rate) return a.rate > b.rate;
                  return a.id < b.id;
              });
    std::sort(result.skips.begin(), result.skips.end(),
              [](const SkipRecord& a, const SkipRecord& b) { return a.path < b.path; });
    return result;
}

std::vector<FrontierPoint> pareto_frontier(std::vector<FrontierPoint> points,
                                           FrontierObjective objective) {
    const auto value = [objective](const FrontierPoint& p) {
        return objective == FrontierObjective::security_bits ? p.security_bits : p.max_delta;
    };
    std::sort(points.begin(), points.end(), [&](const FrontierPoint& a, const FrontierPoint& b) {
        if (a.rate != b.rate) return a.rate > b.rate;
        if (value(a) != value(b)) return value(a) > value(b);
        return a.id < b.id;
    });

    std::vector<FrontierPoint> kept;
    double best_higher_rate = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < points.size()) {
        // One rate group at a time; only its best objective can survive, and
        // only when it strictly beats everything at higher rate.
        std::size_t j = i;
        while (j < points.size() && points[j].rate == points[i].rate) ++j;
        const double group_best = value(points[i]);
        if (group_best > best_higher_rate) {
            for (std::size_t t = i; t < j && value(points[t]) == group_best; ++t)
                kept.push_back(points[t]);
            best_higher_rate = group_best;
        }
        i = j;
    }
    return kept;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points) {
    out << "id,n,k,d,rate,security_bits,max_delta\n";
    for (const auto& p : points)
        out << csv_escape(p.id) << ',' << p.n << ',' << p.k << ',' << p.d << ','
            << format_double(p.rate) << ',' << format_double(p.security_bits) << ','
            << format_double(p.max_delta) << '\n';
}

void write_skips_csv(std::ostream& out, const std::vector<SkipRecord>& skips) {
    out << "path,error\n";
    for (const auto& s : skips) out << csv_escape(s.path) << ',' << csv_escape(s.error) << '\n';
}

void write_report_csv(std::ostream& out, const std::vector<SecurityReport>& rows) {
    out << "delta,linf,linf_log2,l2_dist,l2_dist_log2,l1_lower,l1_lower_log2,"
           "l1_upper,l1_upper_log2,tv_lower,tv_upper,prior_l1,prior_l1_log2,"
           "prior_linf_bias,prior_linf_bias_log2,security_bits\n";
    const auto opt = [](const std::optional<ValueLog2>& v, bool log2_part) {
        if (!v) return std::string();
        return format_double(log2_part ? v->log2 : v->linear);
    };
    for (const auto& r : rows) {
        out << format_double(r.delta) << ',' << format_double(r.linf_norm.linear) << ','
            << format_double(r.linf_norm.log2) << ',' << format_double(r.l2_dist.linear) << ','
            << format_double(r.l2_dist.log2) << ',' << opt(r.l1_lower, false) << ','
            << opt(r.l1_lower, true) << ',' << opt(r.l1_upper, false) << ','
            << opt(r.l1_upper, true) << ',';
        // total variation = l1 / 2
        out << (r.l1_lower ? format_double(0.5 * r.l1_lower->linear) : std::string()) << ','
            << (r.l1_upper ? format_double(0.5 * r.l1_upper->linear) : std::string()) << ',';
        out << format_double(r.prior_l1.linear) << ',' << format_double(r.prior_l1.log2) << ','
            << format_double(r.prior_linf_bias.linear) << ','
            << format_double(r.prior_linf_bias.log2) << ','
            << (r.l1_upper ? format_double(-r.l1_upper->log2) : std::string()) << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace corrbound
