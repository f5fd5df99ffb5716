#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locdet/complex.hpp"
#include "locdet/constructions.hpp"
#include "locdet/functionals.hpp"
#include "locdet/geometry.hpp"
#include "locdet/io.hpp"
#include "locdet/ld_solver.hpp"
#include "locdet/rational.hpp"

using namespace locdet;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconsistent = 3;

std::string real_str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// euler | cd | custom:<JSON list of "p/q" strings indexed from -1>.  D is the
// largest complex dimension the functional must cover.
LinearFunctional make_functional(const std::string& spec, int D) {
    if (spec == "euler") return euler_functional(std::max(D, 0));
    if (spec == "cd") return charney_davis_functional(std::max(D, 0));
    if (spec.rfind("custom:", 0) == 0) {
        json arr;
        try {
            arr = json::parse(spec.substr(7));
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("bad custom functional: ") +
                                        e.what());
        }
        if (!arr.is_array() || arr.empty())
            throw std::invalid_argument(
                "custom functional must be a nonempty JSON list");
        std::vector<Rational> coeffs;
        for (const auto& item : arr) {
            if (!item.is_string())
                throw std::invalid_argument(
                    "custom functional entries must be \"p/q\" strings");
            coeffs.push_back(parse_rational(item.get<std::string>()));
        }
        return LinearFunctional(coeffs);
    }
    throw std::invalid_argument("unknown functional: " + spec);
}

std::vector<NamedComplex> load_family(const std::vector<std::string>& files) {
    std::vector<NamedComplex> fam;
    for (const auto& f : files) fam.push_back(load_complex(f));
    return fam;
}

int max_dim(const std::vector<NamedComplex>& fam) {
    int d = -1;
    for (const auto& nc : fam) d = std::max(d, nc.complex.dim());
    return d;
}

void emit(const json& report, bool json_mode, const std::string& human) {
    if (json_mode)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << human;
}

json rationals_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(rational_to_string(q));
    return a;
}

std::string rationals_str(const std::vector<Rational>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rational_to_string(v[i]);
    }
    return s + ")";
}

int cmd_fvector(const std::string& file, bool json_mode) {
    const NamedComplex nc = load_complex(file);
    const Complex& K = nc.complex;
    if (K.empty()) throw std::invalid_argument("empty complex");
    const FVector fv = K.f_vector();
    const Rational lambda = charney_davis_functional(K.dim()).evaluate(K);
    const bool flag = is_flag(K);
    const bool pm = is_pseudomanifold(K, std::max(K.dim(), 1));

    json rep;
    rep["command"] = "fvector";
    rep["file"] = file;
    if (!nc.name.empty()) rep["name"] = nc.name;
    rep["f"] = fv.counts;
    rep["euler"] = K.euler_characteristic();
    rep["lambda"] = rational_to_string(lambda);
    rep["flag"] = flag;
    rep["pseudomanifold"] = pm;
    rep["status"] = "ok";

    std::ostringstream os;
    if (!nc.name.empty()) os << "name: " << nc.name << "\n";
    os << "f = (";
    for (std::size_t i = 0; i < fv.counts.size(); ++i)
        os << (i ? ", " : "") << fv.counts[i];
    os << ")\n";
    os << "euler = " << K.euler_characteristic() << "\n";
    os << "lambda = " << rational_to_string(lambda) << "\n";
    os << "flag = " << (flag ? "true" : "false") << "\n";
    os << "pseudomanifold = " << (pm ? "true" : "false") << "\n";
    emit(rep, json_mode, os.str());
    return kExitOk;
}

int cmd_construct(const std::string& kind, int s, int t, int n, int m, int k,
                  const std::string& in, bool embed, const std::string& out,
                  bool json_mode) {
    NamedComplex nc;
    if (kind == "cycle") {
        nc.complex = cycle_complex(n);
        nc.name = "C_" + std::to_string(n);
        if (embed) {
            nc.has_coords = true;
            for (VertexId v = 0; v < n; ++v)
                nc.coords[v] = {std::cos(2.0 * M_PI * v / n),
                                std::sin(2.0 * M_PI * v / n)};
        }
    } else if (kind == "simplex-boundary") {
        nc.complex = simplex_boundary(k);
        nc.name = "bd_simplex_" + std::to_string(k);
        if (embed) throw std::invalid_argument("--embed not supported for kind");
    } else if (kind == "suspension") {
        if (in.empty())
            throw std::invalid_argument("suspension requires --in <file>");
        const NamedComplex base = load_complex(in);
        nc.complex = suspension(base.complex);
        nc.name = base.name.empty() ? "suspension" : "susp_" + base.name;
        if (embed) throw std::invalid_argument("--embed not supported for kind");
    } else if (kind == "tst") {
        const TFamilySpec spec{s, t, n, m};
        if (embed) {
            if (s + t < 1) throw std::invalid_argument("--embed needs s+t >= 1");
            const EmbeddedComplex E = embed_t_complex(s + t, t, n, m);
            nc.complex = E.complex;
            nc.has_coords = true;
            for (const auto& [v, x] : E.coords)
                nc.coords[v] = std::vector<double>(x.data(), x.data() + x.size());
        } else {
            nc.complex = t_complex(spec);
        }
        nc.name = "T_" + std::to_string(s) + "_" + std::to_string(t) + "_n" +
                  std::to_string(n) + "_m" + std::to_string(m);
    } else {
        throw std::invalid_argument("unknown kind: " + kind);
    }

    const std::string text = complex_to_json(nc);
    if (!out.empty()) {
        save_complex(out, nc);
        json rep;
        rep["command"] = "construct";
        rep["kind"] = kind;
        rep["out"] = out;
        rep["status"] = "ok";
        emit(rep, json_mode, "wrote " + out + "\n");
    } else {
        std::cout << text << "\n";
    }
    return kExitOk;
}

int cmd_verify_local(const std::string& fn, const std::vector<std::string>& files,
                     bool part2, const std::string& part1_E, bool json_mode) {
    if (part2 == !part1_E.empty())
        throw std::invalid_argument("choose exactly one of --part1 E, --part2");
    const auto fam = load_family(files);
    std::vector<Complex> members;
    for (const auto& nc : fam) members.push_back(nc.complex);
    const LinearFunctional F = make_functional(fn, max_dim(fam));
    const LocalFormula g = part2
                               ? local_formula_part2(F)
                               : local_formula_part1(F, parse_rational(part1_E));

    const std::vector<Rational> residuals = verify_local_formula(F, g, members);
    bool all_zero = true;
    for (const auto& r : residuals) all_zero = all_zero && r == 0;

    json rep;
    rep["command"] = "verify-local";
    rep["functional"] = fn;
    rep["mode"] = part2 ? "part2" : "part1";
    json items = json::array();
    std::ostringstream os;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        const std::string name =
            fam[i].name.empty() ? files[i] : fam[i].name;
        items.push_back({{"name", name},
                         {"residual", rational_to_string(residuals[i])},
                         {"pass", residuals[i] == 0}});
        os << name << ": residual = " << rational_to_string(residuals[i])
           << (residuals[i] == 0 ? "  [pass]" : "  [FAIL]") << "\n";
    }
    rep["items"] = items;
    rep["status"] = all_zero ? "pass" : "fail";
    os << "status: " << (all_zero ? "pass" : "fail") << "\n";
    emit(rep, json_mode, os.str());
    return all_zero ? kExitOk : kExitFail;
}

void render_system(const LDSystem& sys, const std::vector<std::string>& row_names,
                   json& rep, std::ostringstream& os) {
    json table;
    table["class_keys"] = sys.table.class_keys;
    json counts = json::array();
    for (const auto& row : sys.table.counts) counts.push_back(row);
    table["counts"] = counts;
    table["rhs"] = rationals_json(sys.rhs);
    rep["system"] = table;

    os << "link classes: " << sys.table.class_keys.size() << "\n";
    for (std::size_t r = 0; r < sys.table.counts.size(); ++r) {
        os << "  " << row_names[r] << ": [";
        for (std::size_t c = 0; c < sys.table.counts[r].size(); ++c)
            os << (c ? ", " : "") << sys.table.counts[r][c];
        os << "]  rhs = " << rational_to_string(sys.rhs[r]) << "\n";
    }
}

int render_verdict(const LDVerdict& v, json& rep, std::ostringstream& os,
                   bool json_mode) {
    rep["consistent"] = v.consistent;
    if (v.consistent) {
        rep["h"] = rationals_json(v.h_values);
        rep["status"] = "consistent";
        os << "verdict: Consistent\n";
        os << "h = " << rationals_str(v.h_values) << "\n";
    } else {
        rep["certificate"] = rationals_json(v.certificate);
        rep["pairing"] = rational_to_string(v.pairing);
        rep["status"] = "inconsistent";
        os << "verdict: Inconsistent\n";
        os << "certificate = " << rationals_str(v.certificate) << "\n";
        os << "pairing = " << rational_to_string(v.pairing) << "\n";
    }
    emit(rep, json_mode, os.str());
    return v.consistent ? kExitOk : kExitInconsistent;
}

int cmd_solve_ld(const std::string& fn, const std::vector<std::string>& files,
                 const std::vector<int>& demo, bool geometric, bool json_mode) {
    if (files.empty() == demo.empty())
        throw std::invalid_argument("choose exactly one of --family, --demo");
    if (geometric && demo.empty())
        throw std::invalid_argument("--geometric requires --demo");

    json rep;
    rep["command"] = "solve-ld";
    rep["functional"] = fn;
    std::ostringstream os;

    if (!demo.empty()) {
        const int p = demo[0], n = demo[1], m = demo[2];
        const LinearFunctional F = make_functional(fn, 2 * p - 1);
        std::vector<std::string> row_names;
        for (int u = 0; u <= p; ++u)
            row_names.push_back("T_" + std::to_string(p - u) + "_" +
                                std::to_string(u));
        if (geometric) {
            const GeometricDemoResult res = geometric_ld_demo(p, n, m, F);
            json classes = json::array();
            for (std::size_t i = 0; i < res.per_member_classes.size(); ++i) {
                classes.push_back(res.per_member_classes[i].size());
                os << row_names[i] << ": "
                   << res.per_member_classes[i].size()
                   << " star-isometry class(es)\n";
            }
            rep["star_classes_per_member"] = classes;
            render_system(res.system, row_names, rep, os);
            return render_verdict(res.verdict, rep, os, json_mode);
        }
        const LDSystem sys = build_system(counterexample_family(p, n, m), F);
        render_system(sys, row_names, rep, os);
        return render_verdict(solve(sys), rep, os, json_mode);
    }

    const auto fam = load_family(files);
    std::vector<Complex> members;
    std::vector<std::string> row_names;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        members.push_back(fam[i].complex);
        row_names.push_back(fam[i].name.empty() ? files[i] : fam[i].name);
    }
    const LinearFunctional F = make_functional(fn, max_dim(fam));
    const LDSystem sys = build_system(members, F);
    render_system(sys, row_names, rep, os);
    return render_verdict(solve(sys), rep, os, json_mode);
}

int cmd_identities(int pmax, bool json_mode) {
    const IdentityReport report = identity_suite(pmax);
    json rep;
    rep["command"] = "identities";
    rep["pmax"] = pmax;
    json items = json::array();
    std::ostringstream os;
    for (const auto& item : report.items) {
        items.push_back({{"name", item.name},
                         {"pass", item.pass},
                         {"detail", item.detail}});
        os << item.name << ": " << (item.pass ? "pass" : "FAIL");
        if (!item.detail.empty()) os << "  (" << item.detail << ")";
        os << "\n";
    }
    rep["items"] = items;
    rep["status"] = report.all_pass() ? "pass" : "fail";
    os << "status: " << (report.all_pass() ? "pass" : "fail") << "\n";
    emit(rep, json_mode, os.str());
    return report.all_pass() ? kExitOk : kExitFail;
}

int cmd_geometry_check(const std::string& file, const std::string& fn,
                       double tol, std::uint64_t seed, bool json_mode) {
    const NamedComplex nc = load_complex(file);
    if (!nc.has_coords)
        throw std::invalid_argument("geometry check needs \"coords\"");
    GeometryOptions opts;
    opts.seed = seed;
    const EmbeddedComplex E = make_embedded(nc.complex, nc.coords, opts);
    const int n = E.complex.dim();
    const LinearFunctional F = make_functional(fn, n);

    json rep;
    rep["command"] = "geometry check";
    rep["file"] = file;
    rep["functional"] = fn;
    std::ostringstream os;

    const double gram_expect = ((n % 2 == 0) ? 1.0 : -1.0) * (n - 1) / 2.0;
    double worst_gram = 0.0;
    json grams = json::array();
    for (const Simplex& f : E.complex.facets()) {
        const double r = gram_check(E, f, opts) - gram_expect;
        worst_gram = std::max(worst_gram, std::abs(r));
        grams.push_back(r);
    }
    rep["gram_residuals"] = grams;
    os << "gram residual (max |.|) = " << real_str(worst_gram) << "\n";

    const Rational lam = F.evaluate(E.complex);
    const double residual = verify_geometric_ld(E, F, opts);
    const double bound =
        tol * (1.0 + std::abs(static_cast<double>(lam.convert_to<double>())));
    rep["lambda"] = rational_to_string(lam);
    rep["phi_residual"] = residual;
    os << "lambda = " << rational_to_string(lam) << "\n";
    os << "sum(phi) - lambda-type total = " << real_str(residual) << "\n";

    const auto classes = star_isometry_classes(E);
    json cls = json::array();
    for (const auto& c : classes)
        cls.push_back({{"representative", c.representative},
                       {"size", c.members.size()}});
    rep["star_classes"] = cls;
    os << "star-isometry classes: " << classes.size() << "\n";

    const bool pass = worst_gram <= tol && std::abs(residual) <= bound;
    rep["status"] = pass ? "pass" : "fail";
    os << "status: " << (pass ? "pass" : "fail") << "\n";
    emit(rep, json_mode, os.str());
    return pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simplicial-complex functional toolkit"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable report");

    std::string file, kind, in, out, fn = "euler", part1_E;
    int s = 0, t = 0, n = 4, m = 5, k = 2, pmax = 3;
    bool embed = false, part2 = false, geometric = false;
    std::vector<std::string> family;
    std::vector<int> demo;
    double tol = 1e-8;
    std::uint64_t seed = GeometryOptions{}.seed;

    auto* c_fv = app.add_subcommand("fvector", "invariants of a complex file");
    c_fv->add_option("file", file)->required();

    auto* c_con = app.add_subcommand("construct", "emit a standard complex");
    c_con->add_option("kind", kind, "cycle|simplex-boundary|suspension|tst")
        ->required();
    c_con->add_option("--s", s);
    c_con->add_option("--t", t);
    c_con->add_option("--n", n);
    c_con->add_option("--m", m);
    c_con->add_option("--k", k);
    c_con->add_option("--in", in);
    c_con->add_option("--out", out);
    c_con->add_flag("--embed", embed);

    auto* c_vl = app.add_subcommand("verify-local", "residuals of a local formula");
    c_vl->add_option("--functional", fn);
    c_vl->add_option("--family", family)->required()->expected(-1);
    c_vl->add_option("--part1", part1_E, "Euler-characteristic constant E");
    c_vl->add_flag("--part2", part2);

    auto* c_sl = app.add_subcommand("solve-ld", "local determination system");
    c_sl->add_option("--functional", fn);
    c_sl->add_option("--family", family)->expected(-1);
    c_sl->add_option("--demo", demo, "p n m")->expected(3);
    c_sl->add_flag("--geometric", geometric);

    auto* c_id = app.add_subcommand("identities", "exact identity suite");
    c_id->add_option("--pmax", pmax);

    auto* c_ge = app.add_subcommand("geometry", "geometric checks");
    auto* c_gc = c_ge->add_subcommand("check", "verify angles and phi sums");
    c_gc->add_option("file", file)->required();
    c_gc->add_option("--functional", fn);
    c_gc->add_option("--tol", tol);
    c_gc->add_option("--seed", seed);
    c_ge->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError&) {
        std::cerr << "usage error; see --help\n";
        return kExitUsage;
    }

    try {
        if (c_fv->parsed()) return cmd_fvector(file, json_mode);
        if (c_con->parsed())
            return cmd_construct(kind, s, t, n, m, k, in, embed, out, json_mode);
        if (c_vl->parsed())
            return cmd_verify_local(fn, family, part2, part1_E, json_mode);
        if (c_sl->parsed())
            return cmd_solve_ld(fn, family, demo, geometric, json_mode);
        if (c_id->parsed()) return cmd_identities(pmax, json_mode);
        if (c_gc->parsed())
            return cmd_geometry_check(file, fn, tol, seed, json_mode);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
