#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "qnr/geometry.hpp"
#include "qnr/io.hpp"
#include "qnr/numrange.hpp"
#include "qnr/verify.hpp"

using namespace qnr;

namespace {

struct Out {
    std::string path;  // empty = stdout
    void emit(const std::string& content) const {
        if (path.empty()) {
            std::cout << content;
            return;
        }
        io::write_text_file(path, content);
    }
};

std::string points_csv(const std::vector<ExtScalar>& pts) {
    std::ostringstream os;
    io::write_points_csv(os, pts);
    return os.str();
}

std::string membership_str(Membership m) {
    switch (m) {
        case Membership::Member: return "member";
        case Membership::NonMember: return "non_member";
        default: return "unknown";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"numerical ranges of matrices over quadratic Galois extensions"};
    app.require_subcommand(1);

    uint64_t budget_vectors = 10'000'000;
    uint64_t seed = 42;
    std::string format = "csv";
    std::string out_path;
    double tol = 1e-8;
    app.add_option("--budget", budget_vectors, "enumeration budget (vectors)")->capture_default_str();
    app.add_option("--seed", seed, "seed for samplers")->capture_default_str();
    app.add_option("--format", format, "output format: csv|json|svg|text")->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--tol", tol, "tolerance for the binary64 engine")->capture_default_str();

    // field
    std::string field_spec;
    auto* c_field = app.add_subcommand("field", "field summary, Delta set, interval samples");
    c_field->add_option("spec", field_spec, "finite:p=..,m=.. or rational:alpha=..")->required();

    // sphere
    uint32_t sphere_n = 2;
    std::string sphere_spec;
    auto* c_sphere = app.add_subcommand("sphere", "enumerate the unit sphere C_n(1)");
    c_sphere->add_option("spec", sphere_spec)->required();
    c_sphere->add_option("-n,--dim", sphere_n, "dimension")->capture_default_str();

    // numrange
    std::string nr_matrix;
    size_t nr_count = 200;
    auto* c_numrange = app.add_subcommand("numrange", "numerical range of a matrix");
    c_numrange->add_option("matrix", nr_matrix, "matrix JSON file")->required();
    c_numrange->add_option("--count", nr_count, "sample count (rational/approx contexts)")
        ->capture_default_str();

    // joint
    std::vector<std::string> joint_files;
    auto* c_joint = app.add_subcommand("joint", "joint numerical range (finite contexts)");
    c_joint->add_option("matrices", joint_files, "matrix JSON files")->expected(-1);

    // convexity
    std::string cx_points, cx_field;
    auto* c_convex = app.add_subcommand("convexity", "test a point set for Delta-convexity");
    c_convex->add_option("points", cx_points, "points CSV (re,im)")->required();
    c_convex->add_option("--field", cx_field, "field spec")->required();

    // closure
    std::string cl_points, cl_field;
    auto* c_closure = app.add_subcommand("closure", "Delta-convex closure of a point set");
    c_closure->add_option("points", cl_points, "points CSV (re,im)")->required();
    c_closure->add_option("--field", cl_field, "field spec")->required();

    // ellipse
    std::string el_spec_file, el_field;
    size_t el_count = 50;
    auto* c_ellipse = app.add_subcommand("ellipse", "ellipse point set / sampler");
    c_ellipse->add_option("spec", el_spec_file, "ellipse JSON file")->required();
    c_ellipse->add_option("--field", el_field, "field spec")->required();
    c_ellipse->add_option("--count", el_count, "sample count (rational contexts)")
        ->capture_default_str();

    // verify
    std::string suite = "all";
    auto* c_verify = app.add_subcommand("verify", "run verification suites");
    c_verify->add_option("suite", suite, "suite name, alias, or 'all'")->capture_default_str();

    // approx
    std::string ap_matrix, ap_joint;
    size_t ap_count = 10000;
    double ap_fill = -1;
    auto* c_approx = app.add_subcommand("approx", "binary64 sampling engine");
    c_approx->add_option("matrix", ap_matrix, "matrix JSON file (approx)")->required();
    c_approx->add_option("--joint", ap_joint, "second matrix for the joint range");
    c_approx->add_option("--count", ap_count, "sample count")->capture_default_str();
    c_approx->add_option("--fill", ap_fill,
                         "s in [0,1]: certify one segment point between two sampled values");

    // global flags may appear after the subcommand
    for (CLI::App* sc : {c_field, c_sphere, c_numrange, c_joint, c_convex, c_closure, c_ellipse,
                         c_verify, c_approx})
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);
    Out out{out_path};
    Budget budget{budget_vectors};

    if (*c_field) {
        Ctx ctx = FieldCtx::parse(field_spec);
        std::ostringstream os;
        if (ctx->finite()) {
            os << "field: " << ctx->spec() << "\n";
            os << "|K| = " << ctx->q() << ", |L| = " << uint64_t(ctx->q()) * ctx->q() << "\n";
            os << (ctx->char_two() ? "beta^2 = beta + eps, eps = " : "beta^2 = alpha, alpha = ")
               << KScalar::finite(ctx, ctx->ext_param()).str() << "\n";
            os << "Delta = K (every element is a norm)\n";
            auto samples = delta_interval_sample(ctx, ctx->q());
            os << "Delta cap (1-Delta) = K, " << samples.size() << " elements:\n";
            for (const auto& s : samples)
                os << "  t = " << s.t.str() << ": norm(" << s.x.str() << ") = t, norm(" << s.y.str()
                   << ") = 1-t\n";
        } else {
            os << "field: " << ctx->spec() << "\n";
            os << "K = Q, L = Q(sqrt(" << ctx->alpha().str() << "))\n";
            os << "Delta = set of norms x^2 - (" << ctx->alpha().str() << ")*y^2\n";
            auto samples = delta_interval_sample(ctx, 5);
            os << "sample of Delta cap (1-Delta), " << samples.size() << " elements:\n";
            for (const auto& s : samples)
                os << "  t = " << s.t.str() << ": norm(" << s.x.str() << ") = t, norm(" << s.y.str()
                   << ") = 1-t\n";
        }
        out.emit(os.str());
        return 0;
    }

    if (*c_sphere) {
        Ctx ctx = FieldCtx::parse(sphere_spec);
        UnitSphere s = unit_sphere(ctx, sphere_n, budget);
        std::ostringstream os;
        io::write_vectors_csv(os, s);
        out.emit(os.str());
        return 0;
    }

    if (*c_numrange) {
        auto input = io::read_matrix_file(nr_matrix);
        if (std::holds_alternative<approx::ApproxMatrix>(input)) {
            const auto& m = std::get<approx::ApproxMatrix>(input);
            auto cloud = approx::sample_range(m, nr_count, seed);
            std::ostringstream os;
            if (format == "svg")
                os << io::svg_scatter_cloud(cloud);
            else
                io::write_cloud_csv(os, cloud);
            out.emit(os.str());
            return 0;
        }
        const auto& m = std::get<MatrixL>(input);
        std::vector<ExtScalar> pts;
        if (m.ctx()->finite()) {
            pts = num_range_finite(m, budget).points;
        } else {
            for (const auto& u : sample_unit_vectors(m.ctx(), m.n(), nr_count, seed))
                pts.push_back(nu(m, u));
            NumRangeSet dedup = make_range_set(m.ctx(), std::move(pts), false);
            pts = std::move(dedup.points);
        }
        std::ostringstream os;
        if (format == "svg")
            os << io::svg_scatter(m.ctx(), pts);
        else
            io::write_points_csv(os, pts);
        out.emit(os.str());
        return 0;
    }

    if (*c_joint) {
        std::vector<MatrixL> ms;
        for (const auto& f : joint_files) {
            auto input = io::read_matrix_file(f);
            if (!std::holds_alternative<MatrixL>(input))
                throw std::invalid_argument("joint ranges need exact matrices");
            ms.push_back(std::get<MatrixL>(input));
        }
        auto tuples = joint_num_range_finite(ms, budget);
        std::ostringstream os;
        io::write_tuples_csv(os, tuples);
        out.emit(os.str());
        return 0;
    }

    if (*c_convex) {
        Ctx ctx = FieldCtx::parse(cx_field);
        std::ifstream f(cx_points);
        if (!f) throw std::runtime_error("cannot open " + cx_points);
        auto pts = io::read_points_csv(f, ctx);
        auto res = is_delta_convex(pts, ctx);
        std::ostringstream os;
        if (res.convex) {
            os << "delta-convex: true\n";
        } else {
            os << "delta-convex: false\n";
            os << "counterexample: t*a + (1-t)*b escapes the set with a = " << res.a->str()
               << ", b = " << res.b->str() << ", t = " << res.t->str() << "\n";
        }
        out.emit(os.str());
        return 0;
    }

    if (*c_closure) {
        Ctx ctx = FieldCtx::parse(cl_field);
        std::ifstream f(cl_points);
        if (!f) throw std::runtime_error("cannot open " + cl_points);
        auto pts = io::read_points_csv(f, ctx);
        auto closed = delta_convex_closure(pts, ctx);
        out.emit(points_csv(closed));
        return 0;
    }

    if (*c_ellipse) {
        Ctx ctx = FieldCtx::parse(el_field);
        EllipseSpec spec = io::read_ellipse_file(el_spec_file, ctx);
        auto [v1, v2] = validate_ellipse_spec(spec);
        std::vector<ExtScalar> pts;
        if (ctx->finite())
            pts = ellipse_points(spec, ctx, budget).points;
        else
            pts = ellipse_sample(spec, ctx, el_count);
        std::ostringstream os;
        os << "# delta1: " << membership_str(v1.status) << ", delta2: " << membership_str(v2.status)
           << "\n";
        if (format == "svg")
            os.str(io::svg_scatter(ctx, pts));
        else
            io::write_points_csv(os, pts);
        out.emit(os.str());
        return 0;
    }

    if (*c_verify) {
        auto reports = verify::run_suites(suite, seed);
        bool all_pass = true;
        std::ostringstream os;
        os << "[\n";
        for (size_t i = 0; i < reports.size(); ++i) {
            os << verify::report_json(reports[i]);
            if (i + 1 < reports.size()) os << ",";
            os << "\n";
            all_pass = all_pass && reports[i].passed();
            std::cerr << (reports[i].status == "pass"
                              ? "PASS  "
                              : reports[i].status == "not_applicable" ? "N/A   " : "FAIL  ")
                      << reports[i].suite << "\n";
        }
        os << "]\n";
        out.emit(os.str());
        return all_pass ? 0 : 1;
    }

    if (*c_approx) {
        auto input = io::read_matrix_file(ap_matrix);
        if (!std::holds_alternative<approx::ApproxMatrix>(input))
            throw std::invalid_argument("approx mode needs a matrix with \"approx\": true");
        const auto& m = std::get<approx::ApproxMatrix>(input);
        std::ostringstream os;
        if (!ap_joint.empty()) {
            auto input2 = io::read_matrix_file(ap_joint);
            const auto& n = std::get<approx::ApproxMatrix>(input2);
            io::write_joint_cloud_csv(os, approx::sample_joint_range(m, n, ap_count, seed));
        } else if (ap_fill >= 0) {
            auto u = approx::random_unit(m.n(), seed);
            auto v = approx::random_unit(m.n(), seed + 1);
            auto w = approx::fill_segment(m, u, v, ap_fill, tol);
            auto a = approx::nu(m, u), b = approx::nu(m, v);
            auto val = approx::nu(m, w);
            os << "a = " << a << ", b = " << b << ", s = " << ap_fill << "\n";
            os << "value = " << val << ", target = " << (1.0 - ap_fill) * a + ap_fill * b << "\n";
        } else {
            auto cloud = approx::sample_range(m, ap_count, seed);
            if (format == "svg")
                os << io::svg_scatter_cloud(cloud);
            else
                io::write_cloud_csv(os, cloud);
        }
        out.emit(os.str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
