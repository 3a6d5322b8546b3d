#include "qgdshock/reference_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qgdshock/format.hpp"

namespace qgdshock {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line, const std::string& msg) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view text, double& out) {
    text = trim(text);
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && !text.empty();
}

// "# key: value" directive comments carry the dataset labels.
bool directive(std::string_view comment, std::string_view key, std::string& out) {
    comment = trim(comment);
    if (!comment.starts_with(key)) return false;
    comment.remove_prefix(key.size());
    comment = trim(comment);
    if (!comment.starts_with(":")) return false;
    comment.remove_prefix(1);
    out = std::string(trim(comment));
    return true;
}

} // namespace

ReferenceDataset load_reference_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference file " + path.string());

    ReferenceDataset ds;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            sv.remove_prefix(1);
            directive(sv, "gas", ds.gas) || directive(sv, "source", ds.source);
            continue;
        }
        if (!header_seen) {
            if (sv != "Ma,recip_thickness")
                parse_fail(path, line_no, "expected header 'Ma,recip_thickness'");
            header_seen = true;
            continue;
        }
        const auto comma = sv.find(',');
        if (comma == std::string_view::npos)
            parse_fail(path, line_no, "expected two comma-separated fields");
        ReferencePoint pt{};
        if (!parse_number(sv.substr(0, comma), pt.mach) ||
            !parse_number(sv.substr(comma + 1), pt.recip_thickness))
            parse_fail(path, line_no, "malformed number");
        if (!(pt.mach >= 1.0))
            parse_fail(path, line_no, "Ma must be at least 1 (subsonic reference is meaningless)");
        if (!(pt.recip_thickness > 0.0))
            parse_fail(path, line_no, "recip_thickness must be positive");
        if (!ds.points.empty()) {
            if (pt.mach == ds.points.back().mach)
                parse_fail(path, line_no, "duplicate Ma");
            if (pt.mach < ds.points.back().mach)
                parse_fail(path, line_no, "rows must be sorted by Ma");
        }
        ds.points.push_back(pt);
    }
    if (!header_seen) throw std::runtime_error(path.string() + ": missing header line");
    if (ds.points.empty()) throw std::runtime_error(path.string() + ": no data rows");
    return ds;
}

void save_reference_csv(const ReferenceDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write reference file " + path.string());
    if (!dataset.gas.empty()) out << "# gas: " << dataset.gas << "\n";
    if (!dataset.source.empty()) out << "# source: " << dataset.source << "\n";
    out << "Ma,recip_thickness\n";
    for (const auto& pt : dataset.points)
        out << format_double(pt.mach) << "," << format_double(pt.recip_thickness) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

ComparisonReport compare_thickness(std::vector<std::pair<double, double>> model_points,
                                   const ReferenceDataset& reference) {
    if (reference.points.empty())
        throw std::runtime_error("compare_thickness: empty reference dataset");
    if (model_points.empty())
        throw std::runtime_error("compare_thickness: no model points");
    std::sort(model_points.begin(), model_points.end());

    const auto& ref = reference.points;
    const double ma_lo = ref.front().mach;
    const double ma_hi = ref.back().mach;

    ComparisonReport report;
    double sum_sq = 0.0;
    for (const auto& [ma, value] : model_points) {
        if (ma < ma_lo || ma > ma_hi) {
            report.out_of_range.push_back(ma);
            continue;
        }
        auto upper = std::lower_bound(ref.begin(), ref.end(), ma,
                                      [](const ReferencePoint& p, double m) { return p.mach < m; });
        double interpolated;
        if (upper->mach == ma) {
            interpolated = upper->recip_thickness;
        } else {
            const auto& hi = *upper;
            const auto& lo = *(upper - 1);
            const double t = (ma - lo.mach) / (hi.mach - lo.mach);
            interpolated = lo.recip_thickness + t * (hi.recip_thickness - lo.recip_thickness);
        }
        const double dev = (value - interpolated) / interpolated;
        report.points.push_back({ma, value, interpolated, dev});
        report.max_abs_relative = std::max(report.max_abs_relative, std::abs(dev));
        sum_sq += dev * dev;
    }
    if (report.points.empty())
        throw std::runtime_error("compare_thickness: no model point lies inside the "
                                 "reference Ma range");
    report.rms_relative = std::sqrt(sum_sq / static_cast<double>(report.points.size()));
    return report;
}

} // namespace qgdshock
