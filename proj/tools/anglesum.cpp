#include "anglesum.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace anglesum;

namespace {

enum Exit { kPass = 0, kFail = 1, kParse = 2, kGeometry = 3, kGluing = 4 };

struct RunConfig {
    std::uint64_t seed = 0xC0FFEE;
    long long samples = 100000;
    double tol = 1e-6;
    std::string format = "table";

    SamplingConfig sampling() const
    {
        SamplingConfig s;
        s.seed = seed;
        s.samples = samples;
        return s;
    }
};

struct Row {
    std::string label;
    RelationReport r;
};

struct Output {
    std::string command;
    Json body = Json::object();
    std::vector<Row> rows;
    std::optional<std::string> raw;

    void add(const RelationReport& r, std::string label = {}) { rows.push_back({std::move(label), r}); }
};

void floor_tol(RelationReport& r, double tol)
{
    if (r.residual.exact() && r.lhs.exact() && r.rhs.exact()) return;
    r.tolerance = std::max(r.tolerance, tol);
    r.pass = std::fabs(r.residual.d()) <= r.tolerance;
}

Json config_json(const RunConfig& c)
{
    Json j;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["tol"] = c.tol;
    j["format"] = c.format;
    return j;
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

int render(const Output& o, const RunConfig& cfg)
{
    bool ok = true;
    for (auto& r : o.rows) ok = ok && (r.r.pass || r.r.evidence_only);
    if (o.raw) {
        std::cout << *o.raw;
        return ok ? kPass : kFail;
    }
    if (cfg.format == "json") {
        Json j;
        j["schema"] = 1;
        j["command"] = o.command;
        j["config"] = config_json(cfg);
        for (auto& [k, v] : o.body.items()) j[k] = v;
        Json rows = Json::array();
        for (auto& r : o.rows) {
            Json x = report_to_json(r.r);
            if (!r.label.empty()) x["label"] = r.label;
            rows.push_back(x);
        }
        j["rows"] = rows;
        j["pass"] = ok;
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "# schema 1, command " << o.command << ", seed " << cfg.seed << ", samples " << cfg.samples << ", tol "
                  << cfg.tol << "\n";
        if (o.rows.empty()) {
            std::cout << "key,value\n";
            for (auto& [k, v] : o.body.items()) {
                std::string t = cell(v), q;
                for (char ch : t) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                std::cout << k << ",\"" << q << "\"\n";
            }
        } else {
            std::cout << "label,relation,k,lhs,rhs,residual,tolerance,pass\n";
            for (auto& r : o.rows)
                std::cout << r.label << "," << r.r.relation << "," << r.r.k << "," << r.r.lhs.str() << "," << r.r.rhs.str()
                          << "," << r.r.residual.str() << "," << r.r.tolerance << "," << (r.r.pass ? "pass" : "fail")
                          << (r.r.evidence_only ? " (evidence)" : "") << "\n";
        }
    } else {
        std::cout << o.command << "  [schema 1, seed " << cfg.seed << ", samples " << cfg.samples << ", tol " << cfg.tol
                  << "]\n";
        for (auto& [k, v] : o.body.items()) std::cout << "  " << k << ": " << cell(v) << "\n";
        if (!o.rows.empty()) {
            std::cout << "\n";
            for (auto& r : o.rows) {
                std::string name = r.label.empty() ? r.r.name() : r.label + " " + r.r.name();
                std::cout << "  " << std::left << std::setw(34) << name << " lhs " << std::setw(22) << r.r.lhs.str() << " rhs "
                          << std::setw(22) << r.r.rhs.str() << " residual " << std::setw(22) << r.r.residual.str() << " "
                          << (r.r.pass ? "pass" : "FAIL") << (r.r.evidence_only ? " (evidence only)" : "") << "\n";
            }
            std::cout << (ok ? "all pass" : "FAILURES") << "\n";
        }
    }
    return ok ? kPass : kFail;
}

// ---- inputs ----

struct Source {
    std::string expr, file, fixture;
    bool mc = false;
};

void add_source(CLI::App* c, Source& s)
{
    c->add_option("--expr", s.expr, "construction expression, e.g. \"Pinf tri\"");
    c->add_option("--file", s.file, "polytope JSON or .vox file");
    c->add_option("--fixture", s.fixture, "named polytope or voxel fixture");
    c->add_flag("--mc", s.mc, "Monte Carlo angles even where a closed form exists");
}

struct Loaded {
    std::string label;
    std::optional<AlphaFVector> af;
    std::optional<VoxelComplex> vox;
    bool simplicial = false;
};

bool is_vox_path(const std::string& p) { return std::filesystem::path(p).extension() == ".vox"; }

Loaded load(const Source& s, const RunConfig& cfg, bool allow_vox)
{
    int given = !s.expr.empty() + !s.file.empty() + !s.fixture.empty();
    if (given != 1) throw ParseError("give exactly one of --expr, --file, --fixture");
    Loaded L;
    auto sc = cfg.sampling();
    sc.force_monte_carlo = s.mc;
    auto from_polytope = [&](const VPolytope& p) {
        auto lat = face_lattice(p);
        L.af = AlphaFVector{angle_sums(p, lat, sc), lat.f()};
        L.simplicial = is_simplicial(lat);
    };
    if (!s.expr.empty()) {
        auto r = eval_expr(s.expr, sc);
        if (!r.af) throw GuardError("angle sums are not available for '" + s.expr + "'");
        L.label = s.expr;
        L.af = *r.af;
        if (r.geometry) L.simplicial = is_simplicial(face_lattice(*r.geometry));
        return L;
    }
    if (!s.file.empty()) {
        L.label = s.file;
        if (is_vox_path(s.file)) {
            if (!allow_vox) throw ParseError("voxel input is handled by the complex command");
            L.vox = parse_voxel(read_file(s.file), s.file);
        } else {
            from_polytope(polytope_from_json(read_file(s.file)));
        }
        return L;
    }
    L.label = s.fixture;
    if (is_polytope_fixture(s.fixture)) {
        from_polytope(polytope_fixture(s.fixture));
        return L;
    }
    if (!allow_vox) throw ParseError("unknown polytope fixture '" + s.fixture + "'");
    L.vox = fixture_by_name(s.fixture);
    return L;
}

VoxelComplex load_vox(const std::string& file, const std::string& fixture)
{
    if (file.empty() == fixture.empty()) throw ParseError("give exactly one of --file, --fixture");
    if (!file.empty()) return parse_voxel(read_file(file), file);
    return fixture_by_name(fixture);
}

VoxelComplex vox_arg(const std::string& a)
{
    if (std::filesystem::exists(a)) return parse_voxel(read_file(a), a);
    return fixture_by_name(a);
}

Json chars_json(const VoxelChars& c)
{
    Json j;
    j["alpha"] = alpha_to_json(c.a, false);
    j["f_boundary"] = f_to_json(c.f);
    j["chi_alpha"] = scalar_to_json(c.chi_alpha);
    j["chi_boundary"] = c.chi_boundary;
    Json comps = Json::array();
    for (auto& b : c.components) {
        Json x;
        x["chi"] = b.chi;
        x["chi_alpha"] = scalar_to_json(b.chi_alpha);
        x["faces"] = b.faces;
        comps.push_back(x);
    }
    j["boundary_components"] = comps;
    return j;
}

std::string vec_str(const AlphaVector& a, int from)
{
    std::string s = "(";
    for (int i = from; i <= a.d; ++i) s += (i > from ? ", " : "") + a[i].str();
    return s + ")";
}

// ---- commands ----

Output cmd_alpha(const Source& s, const RunConfig& cfg)
{
    auto L = load(s, cfg, false);
    Output o{"alpha"};
    o.body["input"] = L.label;
    o.body["dim"] = L.af->d();
    o.body["alpha_f"] = alpha_f_str(L.af->a, L.af->f);
    o.body["alpha"] = alpha_to_json(L.af->a, false);
    o.body["f"] = f_to_json(L.af->f);
    o.body["exact"] = L.af->a.exact();
    return o;
}

std::vector<std::string> split(const std::vector<std::string>& v)
{
    std::vector<std::string> out;
    for (auto& s : v) {
        std::stringstream ss(s);
        std::string t;
        while (std::getline(ss, t, ','))
            if (!t.empty()) out.push_back(t);
    }
    return out;
}

Output cmd_verify(const Source& s, const std::vector<std::string>& rels_in, const RunConfig& cfg)
{
    auto rels = split(rels_in);
    if (rels.empty()) rels = {"gram", "euler"};
    auto L = load(s, cfg, true);
    Output o{"verify"};
    o.body["input"] = L.label;
    if (L.vox) {
        auto c = voxel_chars(*L.vox);
        const int d = L.vox->d;
        o.body["dim"] = d;
        o.body["alpha"] = vec_str(c.a, 0);
        o.body["chi_alpha"] = c.chi_alpha.str();
        o.body["chi_boundary"] = c.chi_boundary;
        for (auto& r : rels) {
            if (r == "gram") o.add(make_report("gram", 0, c.chi_alpha, Scalar(sgn_pow(d - 1)), 0, 0));
            else if (r == "euler") o.add(make_report("euler", 0, Scalar(c.chi_boundary), Scalar(1 + sgn_pow(d - 1)), 0, 0));
            else if (r == "half-ratio") o.add(make_report("half-ratio", 0, c.chi_alpha, Scalar::frac(c.chi_boundary, 2), 0, 0));
            else throw ParseError("relation '" + r + "' is not defined for voxel complexes (gram, euler, half-ratio)");
        }
        return o;
    }
    const auto& af = *L.af;
    const int d = af.d();
    o.body["dim"] = d;
    o.body["alpha_f"] = alpha_f_str(af.a, af.f);
    o.body["simplicial"] = L.simplicial;
    for (auto& r : rels) {
        if (r == "gram") o.add(check_gram(af.a));
        else if (r == "euler") o.add(check_euler(af.f));
        else if (r == "perles")
            for (int k = -1; k <= d - 1; ++k) o.add(check_perles(af, k));
        else if (r == "ds")
            for (int k = -1; k <= d - 1; ++k) o.add(check_ds(af.f, k));
        else if (r == "sommerville") {
            auto x = check_perles(af, -1);
            x.relation = "sommerville";
            o.add(x);
        } else if (r == "h-perles")
            for (auto& x : check_h_perles(gamma_from_alpha(af.a), h_from_f(af.f), h_perles_sigma(af.a))) o.add(x);
        else
            throw ParseError("unknown relation '" + r + "' (gram, euler, perles, ds, sommerville, h-perles)");
    }
    for (auto& r : o.rows) floor_tol(r.r, cfg.tol);
    return o;
}

Output cmd_span(const std::string& kind, int d, double svd_tol, const RunConfig& cfg)
{
    auto k = parse_family(kind);
    auto R = span_report(k, d, cfg.sampling(), svd_tol);
    Output o{"span"};
    o.body["family"] = kind;
    o.body["d"] = d;
    Json members = Json::array();
    for (auto& m : R.members) members.push_back(m.label + "  " + alpha_f_str(m.af.a, m.af.f));
    o.body["members"] = members;
    o.body["exact"] = R.rank.exact;
    if (!R.rank.exact) o.body["singular_values"] = R.rank.singular;
    o.body["rank"] = R.rank.affine_dim;
    o.body["target"] = R.target;
    o.add(make_report("affine-rank", d, Scalar(R.rank.affine_dim), Scalar(R.target), 0, 0));
    return o;
}

Output cmd_complex_chars(const std::string& file, const std::string& fixture, const std::string& res)
{
    auto v = load_vox(file, fixture);
    Resolution r = res == "cells" ? Resolution::Cells : Resolution::Coarse;
    if (res != "cells" && res != "coarse") throw ParseError("resolution is cells or coarse");
    auto c = voxel_chars(v, r);
    Output o{"complex chars"};
    o.body["complex"] = v.label;
    o.body["dim"] = v.d;
    o.body["cells"] = static_cast<long long>(v.cells.size());
    o.body["resolution"] = res;
    auto cj = chars_json(c);
    for (auto& [k, x] : cj.items()) o.body[k] = x;
    if (c.components.size() > 1) {
        Json readings = Json::array();
        Json all;
        all["reading"] = "every boundary component";
        all["chi_boundary"] = c.chi_boundary;
        all["chi_alpha"] = scalar_to_json(c.chi_alpha);
        readings.push_back(all);
        Json outer;
        outer["reading"] = "outer component only";
        outer["chi_boundary"] = c.components[0].chi;
        outer["chi_alpha"] = scalar_to_json(c.components[0].chi_alpha);
        readings.push_back(outer);
        o.body["readings"] = readings;
    }
    return o;
}

Output cmd_complex_glue(const std::string& a, const std::string& b)
{
    auto A = vox_arg(a), B = vox_arg(b);
    auto g = glue(A, B);
    Output o{"complex glue"};
    o.body["a"] = A.label;
    o.body["b"] = B.label;
    o.body["classification"] = g.spec.str();
    o.body["a_chars"] = chars_json(g.a);
    o.body["b_chars"] = chars_json(g.b);
    o.body["c_chars"] = chars_json(g.cc);
    for (auto& r : g.valuations) o.add(r);
    if (g.predicted) {
        o.body["predicted"] = {{"chi_boundary", g.predicted->chi_boundary},
                               {"chi_alpha", scalar_to_json(g.predicted->chi_alpha)}};
        o.add(make_report("glue-chi-boundary", 0, Scalar(g.cc.chi_boundary), Scalar(g.predicted->chi_boundary), 0, 0));
        o.add(make_report("glue-chi-alpha", 0, g.cc.chi_alpha, g.predicted->chi_alpha, 0, 0));
    } else {
        o.body["predicted"] = nullptr;
    }
    if (g.half_ratio_applies) o.add(make_report("half-ratio", 0, g.cc.chi_alpha, Scalar::frac(g.cc.chi_boundary, 2), 0, 0));
    return o;
}

Output cmd_complex_fixtures()
{
    Output o{"complex fixtures"};
    o.body["voxel"] = voxel_fixture_names();
    o.body["polytope"] = polytope_fixture_names();
    o.body["curved"] = curved_fixture_names();
    return o;
}

Output cmd_complex_build(const std::string& fixture, int refinements)
{
    auto v = fixture_by_name(fixture);
    if (refinements < 0 || refinements > 3) throw GuardError("--refine takes 0..3");
    for (int i = 0; i < refinements; ++i) v = refine(v);
    Output o{"complex build"};
    o.raw = format_voxel(v);
    return o;
}

Output cmd_complex_audit(int count, const RunConfig& cfg)
{
    if (count < 1 || count > 100000) throw GuardError("--count takes 1..100000");
    auto A = random_gluing_audit(count, cfg.seed);
    Output o{"complex audit"};
    o.body["gluings"] = A.total;
    o.body["classifiable"] = A.classifiable;
    o.body["by_kind"] = A.by_kind;
    o.body["failures"] = A.failures;
    o.add(make_report("prediction-agreement", 0, Scalar(A.agree), Scalar(A.classifiable), 0, 0));
    o.add(make_report("valuations", 0, Scalar(A.valuation_pass), Scalar(A.classifiable), 0, 0));
    o.add(make_report("half-ratio", 0, Scalar(A.half_ratio_pass), Scalar(A.half_ratio_checked), 0, 0));
    return o;
}

Output cmd_complex_conjecture(int d, int count, const RunConfig& cfg)
{
    if (d != 1 && d != 3) throw GuardError("the half-ratio experiment runs in odd d = 1 or 3");
    if (count < 1 || count > 10000) throw GuardError("--count takes 1..10000");
    auto S = half_ratio_experiment(d, count, cfg.seed);
    Output o{"complex conjecture"};
    int holds = 0;
    for (size_t i = 0; i < S.size(); ++i) {
        auto r = make_report("half-ratio", 0, S[i].chars.chi_alpha, Scalar::frac(S[i].chars.chi_boundary, 2), 0, 0);
        r.evidence_only = true;
        holds += r.pass;
        o.add(r, "sample " + std::to_string(i) + " (" + std::to_string(S[i].cells) + " cells)");
    }
    o.body["d"] = d;
    o.body["samples"] = count;
    o.body["holds"] = holds;
    o.body["note"] = "evidence only";
    return o;
}

Output cmd_complex_dspe(const std::string& pair, int k, const RunConfig& cfg)
{
    std::pair<CellComplex, CellComplex> parts;
    if (pair == "delta-delta") parts = delta_delta_parts();
    else if (pair == "edge") parts = edge_contact_parts();
    else throw ParseError("unknown pair '" + pair + "' (delta-delta, edge)");
    auto R = ds_pe_gluing_check(parts.first, parts.second, k, cfg.sampling());
    Output o{"complex dspe"};
    o.body["pair"] = pair;
    o.body["classification"] = R.g.spec.str();
    o.body["ds_expected_residual"] = scalar_to_json(R.ds_expected);
    o.body["perles_expected_residual"] = scalar_to_json(R.pe_expected);
    for (auto& r : R.hypotheses) o.add(r, "hypothesis");
    for (auto& r : R.rows) o.add(r);
    for (auto& r : o.rows) floor_tol(r.r, cfg.tol);
    return o;
}

// ---- curved ----

struct CurvedSource {
    std::string file, fixture;
    bool mc = false;
};

CurvedPolytope load_curved(const CurvedSource& s)
{
    if (s.file.empty() == s.fixture.empty()) throw ParseError("give exactly one of --file, --fixture");
    if (!s.file.empty()) return curved_from_json(read_file(s.file));
    return curved_fixture(s.fixture);
}

Json curved_json(const CurvedAlpha& c)
{
    Json j;
    j["geometry"] = geometry_name(c.geometry);
    j["epsilon"] = c.epsilon();
    j["eps_half_power"] = scalar_to_json(c.eps_half_power());
    j["alpha"] = alpha_to_json(c.a, true);
    j["alpha_tilde_m1"] = scalar_to_json(c.tilde_m1());
    j["f"] = f_to_json(c.f);
    j["volume_method"] = c.volume_method;
    j["ideal_vertices"] = c.ideal;
    return j;
}

SamplingConfig curved_sampling(const CurvedSource& s, const RunConfig& cfg)
{
    auto sc = cfg.sampling();
    sc.force_monte_carlo = s.mc;
    return sc;
}

Output cmd_curved_alpha(const CurvedSource& s, const RunConfig& cfg)
{
    auto p = load_curved(s);
    auto c = curved_alpha(p, curved_sampling(s, cfg));
    Output o{"curved alpha"};
    o.body["input"] = p.label;
    o.body["dim"] = p.d;
    auto cj = curved_json(c);
    for (auto& [k, v] : cj.items()) o.body[k] = v;
    return o;
}

Output cmd_curved_gram(const CurvedSource& s, const RunConfig& cfg)
{
    auto p = load_curved(s);
    auto c = curved_alpha(p, curved_sampling(s, cfg));
    Output o{"curved gram"};
    o.body["input"] = p.label;
    auto cj = curved_json(c);
    for (auto& [k, v] : cj.items()) o.body[k] = v;
    o.add(check_generalized_gram(c));
    o.add(check_euler(c.f));
    for (auto& r : o.rows) floor_tol(r.r, cfg.tol);
    return o;
}

Output cmd_curved_perles(const CurvedSource& s, const std::string& suite, const RunConfig& cfg)
{
    Output o{"curved perles"};
    if (!suite.empty()) {
        if (suite != "hyperbolic") throw ParseError("the only suite is 'hyperbolic'");
        auto S = hyperbolic_perles_cases(cfg.sampling());
        o.body["suite"] = suite;
        o.body["cases"] = static_cast<long long>(S.cases.size());
        o.body["evidence_only"] = S.evidence();
        for (auto& c : S.cases) o.add(c.report, c.label);
        return o;
    }
    auto p = load_curved(s);
    if (p.geometry != Geometry::Spherical) throw GuardError("single-polytope Perles checks take spherical input; use --suite hyperbolic");
    o.body["input"] = p.label;
    for (int k = -1; k <= p.d - 1; ++k) o.add(spherical_perles_check(p, k, curved_sampling(s, cfg)));
    for (auto& r : o.rows) floor_tol(r.r, cfg.tol);
    return o;
}

Output cmd_curved_schlafli(int d, double h)
{
    if (d != 2 && d != 3) throw GuardError("--d takes 2 or 3");
    if (!(h > 0 && h <= 0.05)) throw GuardError("--step takes a value in (0, 0.05]");
    const double c = schlafli_calibration(h);
    Output o{"curved schlafli"};
    o.body["d"] = d;
    o.body["h"] = h;
    o.body["calibrated_c"] = c;
    auto run = [&](const std::string& label, const CurvedPolytope& p, int v, const std::vector<double>& dir) {
        auto R = schlafli_fd(p, v, dir, h, c);
        Json j;
        j["ratio"] = R.ratio;
        j["ratio_half_step"] = R.ratio_half;
        j["face_ratio"] = R.target_ratio;
        j["face_predicted"] = R.target_predicted;
        o.body[label] = j;
        for (auto& r : R.rows) o.add(r, label);
    };
    if (d == 2) {
        run("reference", schlafli_reference_triangle(), 0, {0.3, -0.5, 0.2});
        run("octant", octant_triangle(), 1, {0.2, 0, 0.4});
    } else {
        run("orthant", orthant_simplex(3), 0, orthant_edge_direction());
    }
    return o;
}

Output cmd_curved_orthant(int d)
{
    if (d < 1 || d > 64) throw GuardError("--d takes 1..64");
    Output o{"curved orthant"};
    o.body["d"] = d;
    o.add(orthant_identity(d));
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"angle sums of polytopes and polytopal complexes"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Monte Carlo samples per angle")->capture_default_str();
    app.add_option("--tol", cfg.tol, "tolerance floor for float comparisons")->capture_default_str();
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();

    std::function<Output()> run;

    Source src;
    auto* a = app.add_subcommand("alpha", "angle sums and face numbers");
    add_source(a, src);
    a->callback([&] { run = [&] { return cmd_alpha(src, cfg); }; });

    Source vsrc;
    std::vector<std::string> rels;
    auto* v = app.add_subcommand("verify", "check relations");
    add_source(v, vsrc);
    v->add_option("--rel", rels, "gram, euler, perles, ds, sommerville, h-perles, half-ratio");
    v->callback([&] { run = [&] { return cmd_verify(vsrc, rels, cfg); }; });

    std::string kind;
    int sd = 0;
    double svd_tol = 1e-4;
    auto* s = app.add_subcommand("span", "affine rank of angle-sum families");
    s->add_option("kind", kind, "simplices | general | simplicial")->required();
    s->add_option("d", sd, "dimension")->required();
    s->add_option("--svd-tol", svd_tol, "relative singular value cutoff")->capture_default_str();
    s->callback([&] { run = [&] { return cmd_span(kind, sd, svd_tol, cfg); }; });

    auto* cx = app.add_subcommand("complex", "polytopal complexes and gluing");
    cx->require_subcommand(1);
    std::string cfile, cfix, res = "coarse";
    auto* ch = cx->add_subcommand("chars", "angle and Euler characteristics");
    ch->add_option("--file", cfile, "voxel file");
    ch->add_option("--fixture", cfix, "voxel fixture");
    ch->add_option("--resolution", res, "coarse | cells")->capture_default_str();
    ch->callback([&] { run = [&] { return cmd_complex_chars(cfile, cfix, res); }; });
    std::string ga, gb;
    auto* gl = cx->add_subcommand("glue", "glue two voxel complexes");
    gl->add_option("a", ga, "voxel file or fixture")->required();
    gl->add_option("b", gb, "voxel file or fixture")->required();
    gl->callback([&] { run = [&] { return cmd_complex_glue(ga, gb); }; });
    cx->add_subcommand("fixtures", "list fixtures")->callback([&] { run = [&] { return cmd_complex_fixtures(); }; });
    std::string bfix;
    int refinements = 0;
    auto* bu = cx->add_subcommand("build", "write a fixture in voxel format");
    bu->add_option("--fixture", bfix, "voxel fixture")->required();
    bu->add_option("--refine", refinements, "refinement steps")->capture_default_str();
    bu->callback([&] { run = [&] { return cmd_complex_build(bfix, refinements); }; });
    int count = 200;
    auto* au = cx->add_subcommand("audit", "random gluing audit");
    au->add_option("--count", count, "number of gluings")->capture_default_str();
    au->callback([&] { run = [&] { return cmd_complex_audit(count, cfg); }; });
    int cd = 3, ccount = 50;
    auto* cj = cx->add_subcommand("conjecture", "half-ratio experiment on random voxel complexes");
    cj->add_option("--d", cd, "dimension")->capture_default_str();
    cj->add_option("--count", ccount, "samples")->capture_default_str();
    cj->callback([&] { run = [&] { return cmd_complex_conjecture(cd, ccount, cfg); }; });
    std::string pair;
    int dk = 0;
    auto* dp = cx->add_subcommand("dspe", "DS and Perles across a gluing of simplicial cell complexes");
    dp->add_option("--pair", pair, "delta-delta | edge")->required();
    dp->add_option("--k", dk, "index k")->required();
    dp->callback([&] { run = [&] { return cmd_complex_dspe(pair, dk, cfg); }; });

    auto* cu = app.add_subcommand("curved", "spherical and hyperbolic polytopes");
    cu->require_subcommand(1);
    CurvedSource csrc;
    auto curved_src = [&](CLI::App* c) {
        c->add_option("--file", csrc.file, "curved polytope JSON");
        c->add_option("--fixture", csrc.fixture, "curved fixture");
        c->add_flag("--mc", csrc.mc, "Monte Carlo vertex angles and volume");
    };
    auto* ca = cu->add_subcommand("alpha", "curved angle sums");
    curved_src(ca);
    ca->callback([&] { run = [&] { return cmd_curved_alpha(csrc, cfg); }; });
    auto* cg = cu->add_subcommand("gram", "generalized Gram relation");
    curved_src(cg);
    cg->callback([&] { run = [&] { return cmd_curved_gram(csrc, cfg); }; });
    std::string suite;
    auto* cp = cu->add_subcommand("perles", "spherical Perles relations or the hyperbolic case suite");
    curved_src(cp);
    cp->add_option("--suite", suite, "hyperbolic");
    cp->callback([&] { run = [&] { return cmd_curved_perles(csrc, suite, cfg); }; });
    int schd = 3;
    double h = 1e-3;
    auto* cs = cu->add_subcommand("schlafli", "finite-difference check of the normalized Schlafli formula");
    cs->add_option("--d", schd, "2 or 3")->capture_default_str();
    cs->add_option("--step", h, "finite-difference step")->capture_default_str();
    cs->callback([&] { run = [&] { return cmd_curved_schlafli(schd, h); }; });
    int od = 2;
    auto* co = cu->add_subcommand("orthant", "orthant identity in exact arithmetic");
    co->add_option("--d", od, "dimension")->capture_default_str();
    co->callback([&] { run = [&] { return cmd_curved_orthant(od); }; });

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    for (auto* sub : cx->get_subcommands({})) sub->fallthrough();
    for (auto* sub : cu->get_subcommands({})) sub->fallthrough();
    cx->fallthrough();
    cu->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kParse;
    }
    try {
        return render(run(), cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return kParse;
    } catch (const GluingError& e) {
        std::cerr << "invalid gluing: " << e.what() << "\n";
        return kGluing;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return kGeometry;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const std::out_of_range& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    }
}
