#pragma once

#include <string>
#include <vector>

#include "qnr/field.hpp"

namespace qnr::verify {

struct Assertion {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct Report {
    std::string suite;
    std::string status;  // "pass" | "fail" | "not_applicable"
    std::vector<Assertion> assertions;
    std::vector<std::string> witnesses;

    bool passed() const { return status != "fail"; }
    void check(const std::string& name, const std::string& expected, const std::string& actual);
    void check_true(const std::string& name, bool ok, const std::string& detail = "");
    void finalize();  // sets status from the assertions (unless not_applicable)
};

std::string report_json(const Report& r);

// Diagonal numerical ranges over F_4 and the 16/4 matrix counts.
Report diagonal_ranges_f4();
// Hermitian <=> range inside K, sampled over L = K(beta) for the given base
// field; includes the exhaustive char-2 exception counts when |K| = 2.
Report hermitian_real_range(const Ctx& base_ctx, size_t sample_size, uint64_t seed);
// Segment and ellipse witness constructions for packaged eigen-data instances.
Report segment_ellipse_witnesses(uint64_t seed);
// The excluded-eigenvalue instance over Q(i): both eigenvalues certified
// outside the range.
Report excluded_eigenvalue();
// Direct sums: Num(A + B) vs the Delta-convex closure of Num(A) u Num(B).
Report direct_sum_hull(const Ctx& ctx, size_t trials, uint64_t seed);
// Enumerated ranges of [[0,b],[0,1]] and [[0,1],[0,0]] vs ellipse point sets.
Report ellipse_ranges(const Ctx& ctx);
// Orthonormal-frame shapes of packaged 2x2 instances over Q(i).
Report two_by_two_shapes();
// Binary64 segment filling plus the real 2x2 trichotomy.
Report segment_fill(size_t trials, double tol, uint64_t seed);

// Registry: descriptive names plus compact aliases (b102, b100, d2, d3, bb1,
// aa5, aa67, i1). "all" runs everything with the packaged parameters.
std::vector<std::string> suite_names();
std::vector<Report> run_suites(const std::string& selector, uint64_t seed);

}  // namespace qnr::verify
