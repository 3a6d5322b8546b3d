#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "qgdshock/reference_io.hpp"

using namespace qgdshock;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qgdshock_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const TempDir& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir.path / name;
    std::ofstream(p) << body;
    return p;
}

} // namespace

TEST_CASE("reference CSV parsing with comments and directives") {
    TempDir dir;
    const auto p = write_file(dir, "ref.csv",
                              "# gas: argon\n"
                              "# source: experiment\n"
                              "Ma,recip_thickness\n"
                              "1.5,0.18\n"
                              "# mid-file comment\n"
                              "3.0,0.31\n"
                              "6.5,0.27\n");
    const ReferenceDataset ds = load_reference_csv(p);
    CHECK(ds.gas == "argon");
    CHECK(ds.source == "experiment");
    REQUIRE(ds.points.size() == 3);
    CHECK(ds.points[1].mach == 3.0);
    CHECK(ds.points[1].recip_thickness == 0.31);
}

TEST_CASE("reference CSV rejects malformed input with line numbers") {
    TempDir dir;

    auto expect_throw_containing = [](const fs::path& p, const std::string& needle) {
        try {
            (void)load_reference_csv(p);
            FAIL("expected std::runtime_error for ", p.string());
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    expect_throw_containing(
        write_file(dir, "bad_row.csv", "Ma,recip_thickness\n2.0,0.3\nxx,0.4\n"), ":3");
    expect_throw_containing(
        write_file(dir, "unsorted.csv", "Ma,recip_thickness\n3.0,0.3\n2.0,0.4\n"), "sorted");
    expect_throw_containing(
        write_file(dir, "dup.csv", "Ma,recip_thickness\n2.0,0.3\n2.0,0.4\n"), "duplicate");
    expect_throw_containing(
        write_file(dir, "subsonic.csv", "Ma,recip_thickness\n0.8,0.3\n"), "Ma");
    expect_throw_containing(
        write_file(dir, "negative.csv", "Ma,recip_thickness\n2.0,-0.3\n"), "positive");
    expect_throw_containing(write_file(dir, "empty.csv", "Ma,recip_thickness\n"), "no data");
    expect_throw_containing(write_file(dir, "no_header.csv", "2.0,0.3\n"), "header");
    expect_throw_containing(
        write_file(dir, "one_field.csv", "Ma,recip_thickness\n2.0\n"), "two comma");
}

TEST_CASE("load -> save -> load round-trips bit-identically") {
    TempDir dir;
    const auto p = write_file(dir, "ref.csv",
                              "# gas: helium\n"
                              "# source: bimodal\n"
                              "Ma,recip_thickness\n"
                              "1.5,0.1871113263720581\n"
                              "2.25,0.30000000000000004\n"
                              "9.75,0.2734375\n");
    const ReferenceDataset first = load_reference_csv(p);
    const auto q = dir.path / "roundtrip.csv";
    save_reference_csv(first, q);
    const ReferenceDataset second = load_reference_csv(q);

    CHECK(second.gas == first.gas);
    CHECK(second.source == first.source);
    REQUIRE(second.points.size() == first.points.size());
    for (std::size_t i = 0; i < first.points.size(); ++i) {
        CHECK(second.points[i].mach == first.points[i].mach);
        CHECK(second.points[i].recip_thickness == first.points[i].recip_thickness);
    }
}

TEST_CASE("thickness comparison interpolates and aggregates deviations") {
    ReferenceDataset ref;
    ref.points = {{2.0, 0.2}, {4.0, 0.4}};

    SUBCASE("exact match on a reference point") {
        const auto rep = compare_thickness({{2.0, 0.2}}, ref);
        REQUIRE(rep.points.size() == 1);
        CHECK(rep.points[0].relative_deviation == 0.0);
        CHECK(rep.max_abs_relative == 0.0);
    }

    SUBCASE("10% high reads +0.10") {
        const auto rep = compare_thickness({{2.0, 0.22}}, ref);
        CHECK(rep.points[0].relative_deviation == doctest::Approx(0.10).epsilon(1e-12));
    }

    SUBCASE("midpoint interpolation") {
        const auto rep = compare_thickness({{3.0, 0.3}}, ref);
        CHECK(rep.points[0].ref_value == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(rep.points[0].relative_deviation == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("model points outside the range are flagged, not extrapolated") {
        const auto rep = compare_thickness({{3.0, 0.33}, {9.0, 0.5}}, ref);
        REQUIRE(rep.points.size() == 1);
        REQUIRE(rep.out_of_range.size() == 1);
        CHECK(rep.out_of_range[0] == 9.0);
    }

    SUBCASE("no overlap is an error") {
        CHECK_THROWS_AS((void)compare_thickness({{9.0, 0.5}}, ref), std::runtime_error);
    }

    SUBCASE("report is symmetric under reordering of model points") {
        const auto a = compare_thickness({{2.5, 0.3}, {3.5, 0.33}}, ref);
        const auto b = compare_thickness({{3.5, 0.33}, {2.5, 0.3}}, ref);
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(a.points[i].mach == b.points[i].mach);
            CHECK(a.points[i].relative_deviation == b.points[i].relative_deviation);
        }
        CHECK(a.max_abs_relative == b.max_abs_relative);
        CHECK(a.rms_relative == b.rms_relative);
    }
}
