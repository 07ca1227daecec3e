#include <doctest.h>

#include <sstream>

#include "kgraph/builders.hpp"
#include "kgraph/dsl.hpp"
#include "kgraph/export.hpp"
#include "kgraph/report.hpp"
#include "kgraph/sources.hpp"
#include "kgraph/validate.hpp"

using namespace kgraph;

namespace {

void check_error(const std::string& text, int line, int column, const std::string& fragment) {
    try {
        parse_graph(text);
        FAIL("expected a parse error for:\n" << text);
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
}

const char* kSquare = R"(colors 2
vertex x y z w
edge a1 : 1 x -> y
edge a2 : 1 z -> w
edge b1 : 2 x -> z
edge b2 : 2 y -> w
relation b2 a1 = a2 b1
)";

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("a commuting square") {
    const KGraph g = parse_graph(kSquare);
    CHECK(g.rank() == 2);
    CHECK(g.vertex_count() == 4);
    REQUIRE(g.squares().size() == 1);
    CHECK(to_string(g, normal_form(g, parse_path(g, "b2 a1"))) == "a2 b1");
    CHECK(validate(g, 4).valid());
}

TEST_CASE("relations may be written either way round") {
    std::string flipped = kSquare;
    flipped.replace(flipped.find("b2 a1 = a2 b1"), 13, "a2 b1 = b2 a1");
    const KGraph a = parse_graph(kSquare), b = parse_graph(flipped);
    CHECK(a.squares() == b.squares());
}

TEST_CASE("serialize round trips") {
    for (const auto& [name, g] : canned_examples()) {
        CAPTURE(name);
        const std::string text = serialize(g);
        const KGraph back = parse_graph(text);
        CHECK(isomorphic(g, back));
        CHECK(serialize(back) == text);
    }
    const std::string c32 = serialize(cycle_rank(3, 2));
    CHECK(c32.find("relation f2 e1 = e2 f1") != std::string::npos);
}

TEST_CASE("comments and blank lines") {
    const KGraph g = parse_graph("# a loop\n\ncolors 1\nvertex v   # one vertex\nedge e : 1 v -> v\n");
    CHECK(g.edge_count() == 1);
}

TEST_CASE("errors carry line and column") {
    check_error("vertex v\nedge e : 1 v -> v\n", 2, 1, "'colors' must precede");
    check_error("colors 2\nvertex v\nedge e : 3 v -> v\n", 3, 10, "out of range");
    check_error("colors 1\nvertex v\nedge e : 1 v -> u\n", 3, 17, "unknown vertex");
    check_error("colors 1\nvertex v\nedge e : 1 v => v\n", 3, 14, "expected '->'");
    check_error("colors 2\nvertex v\nedge a : 1 v -> v\nedge b : 2 v -> v\nrelation a b = a c\n", 5, 18,
                "unknown edge");
    check_error("colors 2\nvertex v\nedge a : 1 v -> v\nedge c : 1 v -> v\nedge b : 2 v -> v\nrelation a c = c a\n",
                6, 1, "distinct colours");
    check_error("colors 2\nvertex v\nvertex v\n", 3, 8, "duplicate vertex");
    check_error("colors x\n", 1, 8, "expected an integer");
    check_error("colours 2\n", 1, 1, "unknown declaration");
    check_error("vertex v\n", 1, 1, "missing 'colors'");
}

TEST_CASE("resolve_graph sources") {
    CHECK(resolve_graph({"cycle", "3", "2"}).edge_count() == 6);
    CHECK(resolve_graph({"single-vertex", "2,2", "cyclic"}).squares().size() == 4);
    CHECK(resolve_graph({"single-vertex", "2,2", "1-2=2,3,4,1"}).squares().size() == 4);
    CHECK(resolve_graph({"product", "F2", "C3"}).rank() == 2);
    CHECK(isomorphic(resolve_graph({"example-3-2"}), example_acyclic_two_graph()));
    CHECK_THROWS_AS(resolve_graph({"cycle", "3"}), ParseError);
    CHECK_THROWS_AS(resolve_graph({"single-vertex", "2,2", "1-2=1,1,2,3"}), ParseError);
    CHECK_THROWS_AS(resolve_graph({"no-such-thing"}), ParseError);
    CHECK_THROWS_AS(resolve_graph({}), ParseError);
}

TEST_CASE("matrix market round trip") {
    const FockPtr f = make_fock(cycle_rank(3, 2), 3);
    const auto m = to_complex(left_op(f, parse_path(f->graph(), "e1"))).matrix;
    std::stringstream ss;
    write_matrix_market(ss, m, "L e1");
    const std::string text = ss.str();
    CHECK(text.rfind("%%MatrixMarket matrix coordinate complex general\n% L e1\n", 0) == 0);
    const auto back = read_matrix_market(ss);
    CHECK(back.rows() == m.rows());
    CHECK(back.nonZeros() == m.nonZeros());
    CHECK((Eigen::MatrixXcd(back) - Eigen::MatrixXcd(m)).norm() == 0.0);

    std::istringstream bad("%%MatrixMarket matrix coordinate complex general\n2 2 1\n3 1 1 0\n");
    CHECK_THROWS_AS(read_matrix_market(bad), ParseError);
}

TEST_CASE("basis manifest") {
    const FockPtr f = make_fock(single_vertex({1, 1}, ThetaFamily::identity()), 1);
    std::ostringstream os;
    write_basis_manifest(os, *f);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "index\tword\tdegree");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("reports are deterministic and rounded") {
    Json j = {{"x", 0.1 + 0.2}, {"list", {1.0 / 3.0, 2}}};
    round_floats(j);
    CHECK(j["x"].get<double>() == 0.3);
    CHECK(j["list"][1].get<int>() == 2);
    const KGraph g = example_acyclic_two_graph();
    const std::string a = render(envelope("analyze", true, to_json(g, analyze(g))));
    const std::string b = render(envelope("analyze", true, to_json(g, analyze(g))));
    CHECK(a == b);
    const Json parsed = Json::parse(a);
    CHECK(parsed["schema"] == kReportSchema);
    CHECK(parsed["version"] == kReportVersion);
    CHECK(parsed["report"]["ncEdges"].size() == 4);
}

}
