// kgraph: validate, analyze, export and probe k-graph algebras from the command line.
//
// Exit codes: 0 all checks pass, 1 usage or parse error, 2 validation failure,
// 3 numeric invariant failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "kgraph/dsl.hpp"
#include "kgraph/export.hpp"
#include "kgraph/fock.hpp"
#include "kgraph/gelfand.hpp"
#include "kgraph/report.hpp"
#include "kgraph/sources.hpp"
#include "kgraph/structure.hpp"
#include "kgraph/validate.hpp"

namespace {

using namespace kgraph;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kNumeric = 3;

struct Options {
    std::vector<std::string> source;
    int trunc = 6;
    int max_grading = 8;
    double tol = 1e-9;
    std::string json_path;
    std::vector<std::string> ops;
    std::vector<std::string> right_ops;
    std::string alpha;
    int samples = 3;
    std::uint64_t seed = 1;
    int word_grading = 3;
    std::string out_dir;
};

void emit(const Options& opt, const std::string& kind, bool ok, Json report, bool to_stdout = true) {
    const std::string text = render(envelope(kind, ok, std::move(report)));
    if (!opt.json_path.empty()) {
        std::ofstream out(opt.json_path);
        out << text;
    }
    if (to_stdout) std::cout << text;
}

int failure(const std::string& error, const std::string& message, int code, std::optional<std::pair<int, int>> at = {}) {
    Json report{{"error", error}, {"message", message}};
    if (at) {
        report["line"] = at->first;
        report["column"] = at->second;
    }
    std::cout << render(envelope("error", false, std::move(report)));
    return code;
}

// Validation gate shared by the analysis commands; returns an exit code when invalid.
std::optional<int> require_valid(const Options& opt, const std::string& kind, const KGraph& g) {
    const ValidationReport v = validate(g, std::min(opt.max_grading, 6));
    if (v.valid()) return std::nullopt;
    emit(opt, kind, false, Json{{"validation", to_json(g, v)}});
    return kInvalid;
}

int cmd_validate(const Options& opt) {
    const KGraph g = resolve_graph(opt.source);
    const ValidationReport r = validate(g, opt.max_grading);
    emit(opt, "validation", r.valid(), to_json(g, r));
    return r.valid() ? kOk : kInvalid;
}

int cmd_analyze(const Options& opt) {
    const KGraph g = resolve_graph(opt.source);
    if (auto code = require_valid(opt, "analysis", g)) return *code;
    const StructureReport s = analyze(g);
    const FockPtr space = make_fock(g, opt.trunc);
    const RadicalReport radical = radical_check(space, 2);
    Json report = to_json(g, s);
    report["truncation"] = opt.trunc;
    report["radicalCheck"] = to_json(g, radical);
    bool ok = radical.ok();
    if (s.double_pure_cycle && s.double_pure_cycle->reaches_all) {
        const OrthogonalIsometries iso = orthogonal_isometries(space, *s.double_pure_cycle);
        report["orthogonalIsometries"] = to_json(iso);
        ok = ok && iso.exact();
    }
    emit(opt, "analysis", ok, std::move(report));
    return ok ? kOk : kNumeric;
}

std::string file_stem(const std::string& prefix, const std::string& word) {
    std::string s = prefix + "_";
    for (char c : word) s += (c == ' ' || c == ',' || c == '/') ? '_' : c;
    return s;
}

int cmd_fock(const Options& opt) {
    const KGraph g = resolve_graph(opt.source);
    if (auto code = require_valid(opt, "fock", g)) return *code;
    const FockPtr space = make_fock(g, opt.trunc);

    struct Export {
        std::string name;
        IntOperator op;
    };
    std::vector<Export> exports;
    for (const auto& text : opt.ops) exports.push_back({file_stem("L", text), left_op(space, parse_path(g, text))});
    for (const auto& text : opt.right_ops) exports.push_back({file_stem("R", text), right_op(space, parse_path(g, text))});

    const ResidualReport commutant = commutant_residual(space);
    const ResidualReport isometry = partial_isometry_residual(space);
    const ResidualReport orthogonal = same_degree_orthogonality(space);
    const bool ok = commutant.exact() && isometry.exact() && orthogonal.exact();

    Json names = Json::array();
    for (const auto& e : exports) names.push_back(e.name);
    Json report{{"truncation", opt.trunc},
                {"dimension", space->dimension()},
                {"operators", std::move(names)},
                {"commutant", to_json(commutant)},
                {"partialIsometry", to_json(isometry)},
                {"sameDegreeOrthogonality", to_json(orthogonal)}};

    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        std::ofstream manifest(std::filesystem::path(opt.out_dir) / "basis.tsv");
        write_basis_manifest(manifest, *space);
        for (const auto& e : exports) {
            std::ofstream mtx(std::filesystem::path(opt.out_dir) / (e.name + ".mtx"));
            write_matrix_market(mtx, e.op.matrix, e.name);
        }
        emit(opt, "fock", ok, std::move(report));
    } else {
        write_basis_manifest(std::cout, *space);
        for (const auto& e : exports) {
            std::cout << "\n";
            write_matrix_market(std::cout, e.op.matrix, e.name);
        }
        emit(opt, "fock", ok, std::move(report), false);
    }
    return ok ? kOk : kNumeric;
}

std::complex<double> parse_complex(const std::string& raw) {
    static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
    static const std::regex pure(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$)");
    std::smatch m;
    if (std::regex_match(raw, m, pure)) {
        const std::string v = m[1].str();
        return {0.0, v.empty() || v == "+" ? 1.0 : v == "-" ? -1.0 : std::stod(v)};
    }
    if (!std::regex_match(raw, m, re) || (m[1].str().empty() && m[2].str().empty())) {
        throw ParseError("cannot parse complex number '" + raw + "'", 0, 0);
    }
    const double re_part = m[1].str().empty() ? 0.0 : std::stod(m[1].str());
    double im_part = 0.0;
    if (m[2].matched) {
        im_part = m[3].str().empty() ? 1.0 : std::stod(m[3].str());
        if (m[2].str() == "-") im_part = -im_part;
    }
    return {re_part, im_part};
}

BallPoint parse_alpha(const std::string& text) {
    BallPoint out;
    std::istringstream blocks(text);
    std::string block;
    while (std::getline(blocks, block, ';')) {
        std::vector<std::complex<double>> coords;
        std::istringstream items(block);
        std::string item;
        while (std::getline(items, item, ',')) coords.push_back(parse_complex(item));
        Eigen::VectorXcd v(static_cast<Eigen::Index>(coords.size()));
        for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords[i];
        out.push_back(std::move(v));
    }
    return out;
}

int cmd_gelfand(const Options& opt) {
    const KGraph g = resolve_graph(opt.source);
    const SingleVertexLayout layout = layout_of(g);
    if (auto code = require_valid(opt, "gelfand", g)) return *code;
    const auto polys = variety_polynomials(g);

    std::vector<BallPoint> points;
    if (!opt.alpha.empty()) {
        points.push_back(parse_alpha(opt.alpha));
        check_shape(layout, points.back());
    } else {
        std::mt19937_64 rng(opt.seed);
        for (int s = 0; s < opt.samples; ++s) points.push_back(sample_variety_point(polys, layout.sizes, rng));
    }

    Json poly_text = Json::array();
    for (const auto& p : polys) poly_text.push_back(to_string(p) + " = 0");
    Json results = Json::array();
    bool ok = true;
    for (const BallPoint& alpha : points) {
        Json item{{"alpha", to_json(alpha)}};
        const double residual = variety_residual(polys, alpha);
        item["varietyResidual"] = residual;
        item["inOpenBall"] = in_open_ball(alpha);
        if (residual > opt.tol || !in_open_ball(alpha)) {
            item["error"] = residual > opt.tol ? "point is off the variety" : "point lies outside the open ball";
            ok = false;
            results.push_back(std::move(item));
            continue;
        }
        Json eigen = Json::array();
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const EigenCheck ec = eigen_check(g, e, alpha, opt.trunc, opt.tol);
            ok = ok && ec.max_residual <= opt.tol;
            eigen.push_back(to_json(ec));
        }
        item["eigen"] = std::move(eigen);
        const NormCheck norm = omega_norm_check(g, alpha, opt.trunc);
        ok = ok && norm.ok(opt.tol);
        item["norm"] = to_json(norm);
        const int n = std::min(truncation_for_tail(alpha, 1e-12), 200);
        const Character rho(g, alpha, n, true, opt.tol);
        const MultiplicativityReport mult = multiplicativity_check(rho, opt.word_grading);
        ok = ok && mult.max_residual <= opt.tol && mult.max_generator_error <= opt.tol;
        item["character"] = to_json(mult);
        results.push_back(std::move(item));
    }
    emit(opt, "gelfand", ok, Json{{"polynomials", std::move(poly_text)}, {"points", std::move(results)}});
    return ok ? kOk : kNumeric;
}

int cmd_example(const Options& opt) {
    if (opt.source.empty()) {
        for (const auto& [name, g] : canned_examples()) std::cout << name << "\n";
        return kOk;
    }
    std::cout << serialize(resolve_graph(opt.source));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computational checks for higher-rank graph algebras"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool source_required) {
        auto* src = sub->add_option("source", opt.source,
                                    "example-3-2 | cycle N K | single-vertex N1,N2 [THETA] | product F2 C3 ... | FILE");
        if (source_required) src->required();
        sub->add_option("--json", opt.json_path, "Also write the JSON report to this path");
        sub->add_option("--tol", opt.tol, "Numeric tolerance")->capture_default_str();
        sub->add_option("--max-grading", opt.max_grading, "Grading bound for validation")->capture_default_str();
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check the factorization property");
    add_common(validate_cmd, true);

    auto* analyze_cmd = app.add_subcommand("analyze", "Cycle structure, radical and reflexivity hypotheses");
    add_common(analyze_cmd, true);
    analyze_cmd->add_option("--trunc", opt.trunc, "Fock truncation for the radical check")->capture_default_str();

    auto* fock_cmd = app.add_subcommand("fock", "Export the basis and creation operators");
    add_common(fock_cmd, true);
    fock_cmd->add_option("--trunc", opt.trunc, "Fock truncation")->capture_default_str();
    fock_cmd->add_option("--op", opt.ops, "Left creation operator for an edge or word")->expected(1)->take_all();
    fock_cmd->add_option("--right-op", opt.right_ops, "Right creation operator for an edge or word")
        ->expected(1)
        ->take_all();
    fock_cmd->add_option("--out-dir", opt.out_dir, "Write basis.tsv and .mtx files here instead of stdout");

    auto* gelfand_cmd = app.add_subcommand("gelfand", "Variety, eigenvector and character checks");
    add_common(gelfand_cmd, true);
    gelfand_cmd->add_option("--trunc", opt.trunc, "Truncation for the eigenvector and norm checks")
        ->capture_default_str();
    gelfand_cmd->add_option("--alpha", opt.alpha, "Point: colours separated by ';', coordinates by ','");
    gelfand_cmd->add_option("--samples", opt.samples, "Random variety points when --alpha is absent")
        ->capture_default_str();
    gelfand_cmd->add_option("--seed", opt.seed, "Sampling seed")->capture_default_str();
    gelfand_cmd->add_option("--word-grading", opt.word_grading, "Grading bound for multiplicativity pairs")
        ->capture_default_str();

    auto* example_cmd = app.add_subcommand("example", "Print a canned spec (or list the names)");
    example_cmd->add_option("source", opt.source, "Example name or built-in source");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(opt);
        if (*analyze_cmd) return cmd_analyze(opt);
        if (*fock_cmd) return cmd_fock(opt);
        if (*gelfand_cmd) return cmd_gelfand(opt);
        if (*example_cmd) return cmd_example(opt);
    } catch (const ParseError& e) {
        if (e.line() > 0) return failure("parse", e.what(), kUsage, std::make_pair(e.line(), e.column()));
        return failure("usage", e.what(), kUsage);
    } catch (const UnsupportedGraphError& e) {
        return failure("unsupported", e.what(), kUsage);
    } catch (const DomainError& e) {
        return failure("domain", e.what(), kUsage);
    } catch (const CompositionError& e) {
        return failure("composition", e.what(), kUsage);
    } catch (const MalformedGraphError& e) {
        return failure("malformed", e.what(), kInvalid);
    } catch (const ConstructionError& e) {
        return failure("construction", e.what(), kInvalid);
    } catch (const Error& e) {
        return failure("numeric", e.what(), kNumeric);
    }
    return kUsage;
}
