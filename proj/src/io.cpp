#include "qnr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qnr::io {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos) return s;
    return '"' + s + '"';
}

}  // namespace

approx::cd parse_approx_scalar(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.empty()) throw std::invalid_argument("empty scalar");
    auto num = [&](const std::string& s) {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad numeric literal '" + s + "'");
        return v;
    };
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "*b") == 0) {
        std::string body = text.substr(0, text.size() - 2);
        size_t sep = std::string::npos;
        for (size_t i = 1; i < body.size(); ++i) {
            char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') sep = i;
        }
        if (sep == std::string::npos) return {0.0, num(body)};
        double re = num(body.substr(0, sep));
        double im = num(body.substr(sep + 1));
        if (body[sep] == '-') im = -im;
        return {re, im};
    }
    return {num(text), 0.0};
}

MatrixInput read_matrix(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON needs \"n\" and \"entries\"");
    uint32_t n = j.at("n").get<uint32_t>();
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != n)
        throw std::invalid_argument("entries must be an n x n array of scalar strings");

    if (j.value("approx", false)) {
        approx::ApproxMatrix m(n);
        for (uint32_t i = 0; i < n; ++i) {
            if (!rows[i].is_array() || rows[i].size() != n)
                throw std::invalid_argument("entries must be an n x n array of scalar strings");
            for (uint32_t k = 0; k < n; ++k)
                m.at(i, k) = parse_approx_scalar(rows[i][k].get<std::string>());
        }
        return m;
    }
    if (!j.contains("field")) throw std::invalid_argument("matrix JSON needs a \"field\" spec");
    Ctx ctx = FieldCtx::parse(j.at("field").get<std::string>());
    MatrixL m(ctx, n);
    for (uint32_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw std::invalid_argument("entries must be an n x n array of scalar strings");
        for (uint32_t k = 0; k < n; ++k)
            m.at(i, k) = ExtScalar::parse(ctx, rows[i][k].get<std::string>());
    }
    return m;
}

MatrixInput read_matrix_file(const std::string& path) { return read_matrix(read_text_file(path)); }

std::string write_matrix(const MatrixL& m) {
    json rows = json::array();
    for (uint32_t i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (uint32_t j = 0; j < m.n(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    json j{{"field", m.ctx()->spec()}, {"n", m.n()}, {"entries", std::move(rows)}};
    return j.dump(2);
}

EllipseSpec read_ellipse(const std::string& json_text, const Ctx& ctx) {
    json j = json::parse(json_text);
    std::string kind = j.at("kind").get<std::string>();
    KScalar d1 = KScalar::parse(ctx, j.at("delta1").get<std::string>());
    KScalar d2 = KScalar::parse(ctx, j.at("delta2").get<std::string>());
    EllipseSpec e;
    if (kind == "one_focus") {
        e = EllipseSpec::one_focus(ctx, d1, d2);
    } else if (kind == "two_foci") {
        e = EllipseSpec::two_foci(ctx, d1, d2, ExtScalar::parse(ctx, j.at("d1").get<std::string>()),
                                  ExtScalar::parse(ctx, j.at("d2").get<std::string>()));
    } else {
        throw std::invalid_argument("ellipse kind must be one_focus or two_foci");
    }
    if (j.contains("frame"))
        e = e.with_frame(ExtScalar::parse(ctx, j.at("frame").at("a").get<std::string>()),
                         ExtScalar::parse(ctx, j.at("frame").at("b").get<std::string>()));
    e.level = j.value("level", 1u);
    return e;
}

EllipseSpec read_ellipse_file(const std::string& path, const Ctx& ctx) {
    return read_ellipse(read_text_file(path), ctx);
}

void write_points_csv(std::ostream& os, const std::vector<ExtScalar>& points) {
    os << "re,im\n";
    for (const auto& z : points)
        os << csv_field(z.re().str()) << ',' << csv_field(z.im().str()) << '\n';
}

std::vector<ExtScalar> read_points_csv(std::istream& is, const Ctx& ctx) {
    std::string line;
    std::vector<ExtScalar> out;
    bool header = true;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        // split top-level commas, honoring quotes
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') {
                quoted = !quoted;
            } else if (c == ',' && !quoted) {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 2) throw std::invalid_argument("points CSV rows need re,im");
        out.emplace_back(KScalar::parse(ctx, fields[0]), KScalar::parse(ctx, fields[1]));
    }
    return out;
}

void write_vectors_csv(std::ostream& os, const UnitSphere& sphere) {
    for (uint32_t k = 0; k < sphere.n; ++k) {
        if (k) os << ',';
        os << "re" << (k + 1) << ",im" << (k + 1);
    }
    os << '\n';
    for (size_t i = 0; i < sphere.size(); ++i) {
        VectorL v = sphere.vec(i);
        for (uint32_t k = 0; k < sphere.n; ++k) {
            if (k) os << ',';
            os << csv_field(v[k].re().str()) << ',' << csv_field(v[k].im().str());
        }
        os << '\n';
    }
}

void write_tuples_csv(std::ostream& os, const std::vector<std::vector<ExtScalar>>& tuples) {
    if (tuples.empty()) {
        os << "re1,im1\n";
        return;
    }
    for (size_t k = 0; k < tuples[0].size(); ++k) {
        if (k) os << ',';
        os << "re" << (k + 1) << ",im" << (k + 1);
    }
    os << '\n';
    for (const auto& row : tuples) {
        for (size_t k = 0; k < row.size(); ++k) {
            if (k) os << ',';
            os << csv_field(row[k].re().str()) << ',' << csv_field(row[k].im().str());
        }
        os << '\n';
    }
}

void write_cloud_csv(std::ostream& os, const std::vector<approx::cd>& cloud) {
    os << "re,im\n";
    for (const auto& z : cloud) os << fmt_double(z.real()) << ',' << fmt_double(z.imag()) << '\n';
}

void write_joint_cloud_csv(std::ostream& os,
                           const std::vector<std::pair<approx::cd, approx::cd>>& cloud) {
    os << "re1,im1,re2,im2\n";
    for (const auto& [a, b] : cloud)
        os << fmt_double(a.real()) << ',' << fmt_double(a.imag()) << ',' << fmt_double(b.real())
           << ',' << fmt_double(b.imag()) << '\n';
}

namespace {

std::string svg_document(const std::vector<std::pair<double, double>>& xy, double lo_x, double hi_x,
                         double lo_y, double hi_y, bool grid, int grid_n) {
    const int W = 640, H = 640, pad = 40;
    auto sx = [&](double x) {
        return pad + (x - lo_x) / (hi_x - lo_x) * (W - 2 * pad);
    };
    auto sy = [&](double y) {
        return H - pad - (y - lo_y) / (hi_y - lo_y) * (H - 2 * pad);
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "  <rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (grid) {
        os << "  <g stroke=\"#ddd\" stroke-width=\"1\">\n";
        for (int k = 0; k < grid_n; ++k) {
            os << "    <line x1=\"" << fmt_double(sx(k)) << "\" y1=\"" << fmt_double(sy(lo_y))
               << "\" x2=\"" << fmt_double(sx(k)) << "\" y2=\"" << fmt_double(sy(hi_y)) << "\"/>\n";
            os << "    <line x1=\"" << fmt_double(sx(lo_x)) << "\" y1=\"" << fmt_double(sy(k))
               << "\" x2=\"" << fmt_double(sx(hi_x)) << "\" y2=\"" << fmt_double(sy(k)) << "\"/>\n";
        }
        os << "  </g>\n";
    }
    os << "  <g fill=\"#1f6fb2\">\n";
    for (const auto& [x, y] : xy)
        os << "    <circle cx=\"" << fmt_double(sx(x)) << "\" cy=\"" << fmt_double(sy(y))
           << "\" r=\"4\"/>\n";
    os << "  </g>\n</svg>\n";
    return os.str();
}

}  // namespace

std::string svg_scatter(const Ctx& ctx, const std::vector<ExtScalar>& points) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(points.size());
    if (ctx->finite()) {
        const uint32_t q = ctx->q();
        for (const auto& z : points)
            xy.emplace_back(double(z.re().idx()), double(z.im().idx()));
        return svg_document(xy, -0.5, q - 0.5, -0.5, q - 0.5, true, int(q));
    }
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (const auto& z : points) {
        double x = double(z.re().rat().convert_to<double>());
        double y = double(z.im().rat().convert_to<double>());
        xy.emplace_back(x, y);
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    }
    double mx = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    return svg_document(xy, lo_x - 0.1 * mx, lo_x + 1.1 * mx, lo_y - 0.1 * mx, lo_y + 1.1 * mx,
                        false, 0);
}

std::string svg_scatter_cloud(const std::vector<approx::cd>& cloud) {
    std::vector<std::pair<double, double>> xy;
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (const auto& z : cloud) {
        xy.emplace_back(z.real(), z.imag());
        lo_x = std::min(lo_x, z.real());
        hi_x = std::max(hi_x, z.real());
        lo_y = std::min(lo_y, z.imag());
        hi_y = std::max(hi_y, z.imag());
    }
    double mx = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    return svg_document(xy, lo_x - 0.1 * mx, lo_x + 1.1 * mx, lo_y - 0.1 * mx, lo_y + 1.1 * mx,
                        false, 0);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

}  // namespace qnr::io
