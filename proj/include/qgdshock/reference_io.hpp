#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qgdshock {

struct ReferencePoint {
    double mach;
    double recip_thickness;
};

// External reference data (digitized experiment or model curves) for
// reciprocal-thickness comparisons. Points are sorted by Mach number.
struct ReferenceDataset {
    std::string gas;    // optional label, from a "# gas: ..." directive
    std::string source; // optional label, from a "# source: ..." directive
    std::vector<ReferencePoint> points;
};

// CSV schema: header line "Ma,recip_thickness", one record per line, '.'
// decimal point, '#'-prefixed comments allowed. Directive comments
// "# gas: <label>" and "# source: <label>" populate the dataset labels.
// Throws std::runtime_error with the offending line number on malformed
// rows, unsorted or duplicate Mach numbers, Ma < 1, or nonpositive
// thickness; an empty data section is an error.
ReferenceDataset load_reference_csv(const std::filesystem::path& path);

// Inverse of load_reference_csv; numbers are written with round-trip
// precision so load(save(d)) == d bit for bit.
void save_reference_csv(const ReferenceDataset& dataset,
                        const std::filesystem::path& path);

struct DeviationPoint {
    double mach;
    double model_value;
    double ref_value; // linearly interpolated in Ma
    double relative_deviation; // (model - ref) / ref
};

struct ComparisonReport {
    std::vector<DeviationPoint> points;  // sorted by Ma
    std::vector<double> out_of_range;    // model Ma outside the reference range
    double max_abs_relative = 0.0;
    double rms_relative = 0.0;
};

// Compares model (Ma, lambda/delta) points against a reference curve,
// interpolating the reference linearly in Ma. Points outside the reference
// range are listed but never extrapolated. Throws std::runtime_error when
// no model point lies inside the reference range.
ComparisonReport compare_thickness(std::vector<std::pair<double, double>> model_points,
                                   const ReferenceDataset& reference);

} // namespace qgdshock
