// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgraph/builders.hpp"
#include "kgraph/core.hpp"
#include "kgraph/fock.hpp"
#include "kgraph/gelfand.hpp"
#include "kgraph/sources.hpp"
#include "kgraph/structure.hpp"
#include "kgraph/validate.hpp"
#include "oracles.hpp"

using namespace kgraph;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

BallPoint uniform_point(const std::vector<int>& sizes, const std::vector<std::complex<double>>& values) {
    BallPoint out;
    for (std::size_t i = 0; i < sizes.size(); ++i) out.push_back(Eigen::VectorXcd::Constant(sizes[i], values[i]));
    return out;
}

std::vector<std::pair<std::string, KGraph>> operator_suite() {
    std::vector<std::pair<std::string, KGraph>> out;
    out.emplace_back("SV(1,1)", single_vertex({1, 1}, ThetaFamily::identity()));
    for (int seed : {1, 2, 3}) {
        out.emplace_back("SV(2,2) random:" + std::to_string(seed),
                         single_vertex({2, 2}, parse_theta("random:" + std::to_string(seed), {2, 2})));
    }
    out.emplace_back("cycle(3,2)", cycle_rank(3, 2));
    out.emplace_back("acyclic-square", example_acyclic_two_graph());
    return out;
}

Outcome census() {
    const KGraph g = example_acyclic_two_graph();
    PathCatalog catalog(g);
    std::vector<std::size_t> counts;
    std::size_t total = 0;
    bool oracle_ok = true;
    for (int n = 0; n <= 4; ++n) {
        for (const Degree& d : degrees_of_grading(2, n)) {
            const std::size_t c = catalog.paths_of_degree(d).size();
            oracle_ok = oracle_ok && c == oracle::class_count(g, d);
            total += c;
            if (c > 0) counts.push_back(c);
        }
    }
    std::ostringstream os;
    os << "total " << total << ", census (";
    for (std::size_t i = 0; i < counts.size(); ++i) os << (i ? "," : "") << counts[i];
    os << ")";
    return {total == 10 && counts == std::vector<std::size_t>{3, 2, 2, 1, 1, 1} && oracle_ok, os.str()};
}

Outcome single_vertex_lattice() {
    const KGraph g = single_vertex({1, 1}, ThetaFamily::identity());
    PathCatalog catalog(g, EnumerationBudget{20});
    int bad = 0;
    for (int n = 0; n <= 10; ++n) {
        for (int m = 0; m <= 10; ++m) {
            const auto& paths = catalog.paths_of_degree(Degree{n, m});
            if (paths.size() != 1) {
                ++bad;
                continue;
            }
            const std::string expected = [&] {
                std::string s;
                for (int i = 0; i < n; ++i) s += (s.empty() ? "" : " ") + std::string("a");
                for (int i = 0; i < m; ++i) s += (s.empty() ? "" : " ") + std::string("b");
                return s.empty() ? std::string("v") : s;
            }();
            if (to_string(g, paths[0]) != expected) ++bad;
        }
    }
    return {bad == 0, "121 degrees, " + std::to_string(bad) + " mismatches"};
}

Outcome cycle_lattice() {
    const KGraph g = cycle_rank(3, 2);
    PathCatalog catalog(g);
    int bad = 0;
    for (int p = 0; p <= 8; ++p) {
        for (int q = 0; p + q <= 8; ++q) {
            if (catalog.paths_of_degree(Degree{p, q}).size() != 3) ++bad;
        }
    }
    const bool semisimple = is_semisimple(g);
    const bool dpc = double_pure_cycle_property(g).has_value();
    return {bad == 0 && semisimple && !dpc, std::to_string(bad) + " degree mismatches, semisimple " +
                                                (semisimple ? "true" : "false") + ", double pure cycle " +
                                                (dpc ? "true" : "false")};
}

Outcome commutant() {
    std::int64_t worst = 0;
    std::size_t checks = 0;
    for (const auto& [name, g] : operator_suite()) {
        const ResidualReport r = commutant_residual(make_fock(g, 6));
        worst = std::max(worst, r.max_residual);
        checks += r.checks;
    }
    return {worst == 0, std::to_string(checks) + " generator pairs at N=6, max residual " + std::to_string(worst)};
}

Outcome isometry_and_orthogonality() {
    std::int64_t iso = 0, orth = 0;
    std::size_t pairs = 0;
    for (const auto& [name, g] : operator_suite()) {
        const FockPtr f = make_fock(g, 6);
        iso = std::max(iso, partial_isometry_residual(f).max_residual);
        const ResidualReport o = same_degree_orthogonality(f);
        orth = std::max(orth, o.max_residual);
        pairs += o.checks;
    }
    return {iso == 0 && orth == 0, "isometry residual " + std::to_string(iso) + ", " + std::to_string(pairs) +
                                       " same-degree pairs, orthogonality residual " + std::to_string(orth)};
}

Outcome radical() {
    const RadicalReport r = radical_check(make_fock(example_acyclic_two_graph(), 4), 2);
    return {r.ok() && r.observed_nilpotency <= 3 && r.nilpotency_bound == 3,
            std::to_string(r.square_checks) + " square checks, " + std::to_string(r.product_checks) +
                " triple products, observed nilpotency " + std::to_string(r.observed_nilpotency)};
}

Outcome nc_oracle() {
    std::mt19937_64 rng(20260);
    int agree = 0;
    for (int i = 0; i < 50; ++i) {
        const KGraph g = oracle::random_graph(rng);
        if (nc_edges(g) == oracle::nc_by_cycles(g)) ++agree;
    }
    return {agree == 50, std::to_string(agree) + "/50 graphs agree"};
}

Outcome isometries() {
    std::ostringstream os;
    bool ok = true;
    const char* sep = "";
    for (const auto& [name, g] : std::vector<std::pair<std::string, KGraph>>{
             {"F2", free_loops(2)}, {"SV((2,1))", single_vertex({2, 1}, ThetaFamily::full_cycle({2, 1}))}}) {
        const OrthogonalIsometries r = orthogonal_isometries(make_fock(g, 8));
        ok = ok && r.exact();
        os << sep << name << ": U*V " << r.cross_residual << ", U*U-I " << r.isometry_residual << " on "
           << r.interior_dimension << " dims";
        sep = "; ";
    }
    return {ok, os.str()};
}

Outcome cycle_blocks() {
    const CycleBlockReport r = verify_cycle_blocks(3, 2, 8);
    return {r.ok(), std::to_string(r.generators.size()) + " generators, " + std::to_string(r.congruence_checked) +
                        " paths, " + std::to_string(r.congruence_violations) + " congruence violations"};
}

Outcome omega_norm() {
    const KGraph g = single_vertex({1, 1}, ThetaFamily::identity());
    const BallPoint alpha = uniform_point({1, 1}, {0.5, 0.3});
    const double reference = 1.0 / ((1.0 - 0.25) * (1.0 - 0.09));
    const NormCheck r = omega_norm_check(g, alpha, 30);
    const double gap = std::abs(r.partial - reference);
    char buf[160];
    std::snprintf(buf, sizeof buf, "||omega||^2 = %.15f, reference %.15f, gap %.3e", r.partial, reference, gap);
    return {gap <= 1e-6, buf};
}

Outcome eigen_relation() {
    const KGraph g = single_vertex({2, 2}, ThetaFamily::full_cycle({2, 2}));
    const auto polys = variety_polynomials(g);
    std::mt19937_64 rng(41);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const BallPoint alpha = sample_variety_point(polys, {2, 2}, rng);
        for (EdgeId e = 0; e < g.edge_count(); ++e) worst = std::max(worst, eigen_check(g, e, alpha, 20).max_residual);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "5 points, N=20, max residual %.3e", worst);
    return {worst <= 1e-12, buf};
}

Outcome multiplicativity() {
    const KGraph g = single_vertex({2, 2}, ThetaFamily::full_cycle({2, 2}));
    const auto polys = variety_polynomials(g);
    std::mt19937_64 rng(42);
    double worst = 0.0, generator = 0.0;
    for (int i = 0; i < 10; ++i) {
        const BallPoint alpha = sample_variety_point(polys, {2, 2}, rng);
        const Character rho(g, alpha, std::min(truncation_for_tail(alpha, 1e-12), 200));
        const MultiplicativityReport r = multiplicativity_check(rho, 3);
        worst = std::max(worst, r.max_residual);
        generator = std::max(generator, r.max_generator_error);
    }
    BallPoint off(2);
    off[0] = Eigen::VectorXcd(2);
    off[0] << 0.4, 0.1;
    off[1] = Eigen::VectorXcd(2);
    off[1] << 0.3, -0.2;
    const Character bad(g, off, std::min(truncation_for_tail(off, 1e-12), 200), false);
    const double control = multiplicativity_check(bad, 3).max_residual;
    char buf[192];
    std::snprintf(buf, sizeof buf, "max residual %.3e, generator error %.3e, off-variety residual %.3e", worst,
                  generator, control);
    return {worst <= 1e-9 && generator <= 1e-10 && control > 1e-9, buf};
}

Outcome cyclic_variety() {
    const auto polys = variety_polynomials({2, 3}, ThetaFamily::full_cycle({2, 3}));
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    double residual = 0.0;
    for (int i = 0; i < 100; ++i) {
        const BallPoint p = uniform_point({2, 3}, {{u(rng), u(rng)}, {u(rng), u(rng)}});
        residual = std::max(residual, variety_residual(polys, p));
    }
    bool flips = true;
    double radius_error = 0.0;
    for (int n : {2, 3}) {
        const double r = 1.0 / std::sqrt(static_cast<double>(n));
        radius_error = std::max(radius_error, std::abs(diagonal_ball_radius(n) - r));
        std::vector<int> sizes = {n, 1};
        const BallPoint inside = uniform_point(sizes, {r - 1e-9, 0.0});
        const BallPoint outside = uniform_point(sizes, {r + 1e-9, 0.0});
        flips = flips && in_closed_ball(inside) && !in_closed_ball(outside);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu polynomials, residual %.1e on equal coordinates, radius error %.1e%s",
                  polys.size(), residual, radius_error, flips ? "" : ", membership does not flip");
    return {!polys.empty() && residual == 0.0 && radius_error <= 1e-9 && flips, buf};
}

Outcome canned_validation() {
    std::ostringstream os;
    bool ok = true;
    std::size_t paths = 0;
    for (const auto& [name, g] : canned_examples()) {
        const ValidationReport r = validate(g, 6);
        paths += r.normal_paths_checked;
        if (!r.valid()) {
            ok = false;
            os << name << " invalid; ";
        }
    }
    os << canned_examples().size() << " examples, " << paths << " normal paths";
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"path census of the acyclic square", census},
        {"SV(1,1) one path per degree", single_vertex_lattice},
        {"cycle(3,2) lattice, semisimple, no double pure cycle", cycle_lattice},
        {"commutant on interior blocks", commutant},
        {"partial isometries and same-degree orthogonality", isometry_and_orthogonality},
        {"radical nilpotency", radical},
        {"nc edges against cycle enumeration", nc_oracle},
        {"orthogonal isometries", isometries},
        {"cycle block structure", cycle_blocks},
        {"omega norm", omega_norm},
        {"eigen relation", eigen_relation},
        {"character multiplicativity", multiplicativity},
        {"cyclic variety and diagonal radius", cyclic_variety},
        {"validation of built-in examples", canned_validation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("%s %2zu  %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
