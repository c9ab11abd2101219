#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qnr/approx.hpp"
#include "qnr/geometry.hpp"
#include "qnr/numrange.hpp"

namespace qnr::io {

// Matrix JSON: {"field": "<spec>", "n": k, "entries": [["...", ...], ...]}
// or {"approx": true, "n": k, "entries": [["0.5+1.25*b", ...], ...]}.
using MatrixInput = std::variant<MatrixL, approx::ApproxMatrix>;

MatrixInput read_matrix(const std::string& json_text);
MatrixInput read_matrix_file(const std::string& path);
std::string write_matrix(const MatrixL& m);

approx::cd parse_approx_scalar(const std::string& text);

// Ellipse JSON: {"kind":"one_focus"|"two_foci","delta1":...,"delta2":...,
//                "d1":...,"d2":...,"frame":{"a":...,"b":...},"level":n}
EllipseSpec read_ellipse(const std::string& json_text, const Ctx& ctx);
EllipseSpec read_ellipse_file(const std::string& path, const Ctx& ctx);

// CSV with header re,im; fields carrying commas are quoted
void write_points_csv(std::ostream& os, const std::vector<ExtScalar>& points);
std::vector<ExtScalar> read_points_csv(std::istream& is, const Ctx& ctx);
// vectors: header re1,im1,...,ren,imn
void write_vectors_csv(std::ostream& os, const UnitSphere& sphere);
// joint tuples: header re1,im1,...,re_k,im_k
void write_tuples_csv(std::ostream& os, const std::vector<std::vector<ExtScalar>>& tuples);
// binary64 clouds
void write_cloud_csv(std::ostream& os, const std::vector<approx::cd>& cloud);
void write_joint_cloud_csv(std::ostream& os,
                           const std::vector<std::pair<approx::cd, approx::cd>>& cloud);

// Deterministic scatter plots of L viewed as the (re, im) K-plane.
std::string svg_scatter(const Ctx& ctx, const std::vector<ExtScalar>& points);
std::string svg_scatter_cloud(const std::vector<approx::cd>& cloud);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qnr::io
