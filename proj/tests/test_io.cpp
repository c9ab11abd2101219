#include <doctest.h>

#include <sstream>

#include "qnr/io.hpp"

using namespace qnr;

TEST_CASE("matrix JSON round-trip") {
    const char* text = R"({"field": "rational:alpha=-1", "n": 2,
                           "entries": [["0", "1"], ["0", "1/2+3*b"]]})";
    auto input = io::read_matrix(text);
    REQUIRE(std::holds_alternative<MatrixL>(input));
    const MatrixL& m = std::get<MatrixL>(input);
    CHECK(m.n() == 2);
    CHECK(m.at(1, 1).im() == KScalar::from_int(m.ctx(), 3));

    auto round = io::read_matrix(io::write_matrix(m));
    CHECK(std::get<MatrixL>(round) == m);

    CHECK_THROWS(io::read_matrix(R"({"n": 2, "entries": [["0","0"],["0","0"]]})"));
    CHECK_THROWS(io::read_matrix(R"({"field": "rational:alpha=-1", "n": 2, "entries": [["0"]]})"));
}

TEST_CASE("approx matrix JSON") {
    const char* text = R"({"approx": true, "n": 2,
                           "entries": [["0", "1.5-0.25*b"], ["0.5*b", "1e-2"]]})";
    auto input = io::read_matrix(text);
    REQUIRE(std::holds_alternative<approx::ApproxMatrix>(input));
    const auto& m = std::get<approx::ApproxMatrix>(input);
    CHECK(m.at(0, 1) == approx::cd(1.5, -0.25));
    CHECK(m.at(1, 0) == approx::cd(0, 0.5));
    CHECK(m.at(1, 1) == approx::cd(0.01, 0));
}

TEST_CASE("points CSV round-trip with quoting") {
    Ctx f9 = FieldCtx::make_finite(3, 2);  // coefficient lists contain commas
    FiniteExt L(f9);
    std::vector<ExtScalar> pts;
    for (uint32_t z = 0; z < 81; z += 11) pts.push_back(L.to_scalar(z));

    std::ostringstream os;
    io::write_points_csv(os, pts);
    std::istringstream is(os.str());
    auto back = io::read_points_csv(is, f9);
    CHECK(back == pts);
}

TEST_CASE("ellipse JSON") {
    Ctx q = FieldCtx::make_rational(-1);
    const char* text = R"({"kind": "two_foci", "delta1": "1", "delta2": "1",
                           "d1": "2+1*b", "d2": "1", "frame": {"a": "3", "b": "2*b"},
                           "level": 2})";
    EllipseSpec e = io::read_ellipse(text, q);
    CHECK(e.kind == EllipseSpec::Kind::TwoFoci);
    CHECK(e.level == 2);
    CHECK(e.d1 == ExtScalar{KScalar::from_int(q, 2), KScalar::from_int(q, 1)});
    CHECK(e.frame_b == ExtScalar{KScalar::zero(q), KScalar::from_int(q, 2)});
    CHECK_THROWS(io::read_ellipse(R"({"kind": "circle", "delta1": "1", "delta2": "1"})", q));
}

TEST_CASE("SVG output is deterministic and timestamp-free") {
    Ctx f3 = FieldCtx::make_finite(3, 1);
    FiniteExt L(f3);
    std::vector<ExtScalar> pts;
    for (uint32_t z = 0; z < 9; z += 2) pts.push_back(L.to_scalar(z));
    std::string a = io::svg_scatter(f3, pts);
    std::string b = io::svg_scatter(f3, pts);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    // one circle per point
    size_t count = 0, pos = 0;
    while ((pos = a.find("<circle", pos)) != std::string::npos) {
        ++count;
        pos += 7;
    }
    CHECK(count == pts.size());
}

TEST_CASE("cloud CSV") {
    std::ostringstream os;
    io::write_cloud_csv(os, {approx::cd(0.5, -1.25), approx::cd(0, 3)});
    CHECK(os.str() == "re,im\n0.5,-1.25\n0,3\n");
}
