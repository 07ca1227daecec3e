#include "kgraph/sources.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "kgraph/dsl.hpp"

namespace kgraph {

namespace {

[[noreturn]] void usage(const std::string& message) { throw ParseError(message, 0, 0); }

int to_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        usage(std::string("expected an integer for ") + what + ", got '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ',')) {
        const int n = to_int(part, "loop count");
        if (n < 1) usage("loop counts must be positive");
        out.push_back(n);
    }
    if (out.empty()) usage("single-vertex needs loop counts");
    return out;
}

KGraph factor(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'F' && s[0] != 'C')) usage("product factors are F<n> or C<n>, got '" + s + "'");
    const int n = to_int(s.substr(1), "factor size");
    if (n < 1) usage("factor size must be positive");
    return s[0] == 'F' ? free_loops(n) : directed_cycle(n);
}

}  // namespace

ThetaFamily parse_theta(const std::string& text, const std::vector<int>& sizes) {
    if (text == "id" || text.empty()) return ThetaFamily::identity();
    if (text == "cyclic") return ThetaFamily::full_cycle(sizes);
    const int k = static_cast<int>(sizes.size());
    ThetaFamily theta;
    if (text.rfind("random:", 0) == 0) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(std::stoull(text.substr(7))));
        for (int i = 1; i <= k; ++i) {
            for (int j = i + 1; j <= k; ++j) {
                std::vector<int> table(static_cast<std::size_t>(sizes[i - 1] * sizes[j - 1]));
                std::iota(table.begin(), table.end(), 0);
                std::shuffle(table.begin(), table.end(), rng);
                theta.tables[{i, j}] = std::move(table);
            }
        }
        return theta;
    }
    for (const auto& entry : split(text, ';')) {
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        const auto dash = entry.find('-');
        if (eq == std::string::npos || dash == std::string::npos || dash > eq) {
            usage("theta entries look like 1-2=2,1,4,3; got '" + entry + "'");
        }
        const int i = to_int(entry.substr(0, dash), "colour");
        const int j = to_int(entry.substr(dash + 1, eq - dash - 1), "colour");
        if (i < 1 || j <= i || j > k) usage("theta colour pair out of range in '" + entry + "'");
        std::vector<int> table;
        for (const auto& v : split(entry.substr(eq + 1), ',')) table.push_back(to_int(v, "theta image") - 1);
        const int m = sizes[i - 1] * sizes[j - 1];
        std::vector<int> check = table;
        std::sort(check.begin(), check.end());
        std::vector<int> expected(static_cast<std::size_t>(m));
        std::iota(expected.begin(), expected.end(), 0);
        if (check != expected) usage("theta table for " + std::to_string(i) + "-" + std::to_string(j) +
                                     " is not a permutation of 1.." + std::to_string(m));
        theta.tables[{i, j}] = std::move(table);
    }
    return theta;
}

std::vector<std::pair<std::string, KGraph>> canned_examples() {
    std::vector<std::pair<std::string, KGraph>> out;
    out.emplace_back("acyclic-square", example_acyclic_two_graph());
    out.emplace_back("cycle-3-2", cycle_rank(3, 2));
    out.emplace_back("cycle-2-3", cycle_rank(2, 3));
    out.emplace_back("free-2", free_loops(2));
    out.emplace_back("single-vertex-1-1", single_vertex({1, 1}, ThetaFamily::identity()));
    out.emplace_back("single-vertex-2-1", single_vertex({2, 1}, ThetaFamily::identity()));
    out.emplace_back("single-vertex-2-2-cyclic", single_vertex({2, 2}, ThetaFamily::full_cycle({2, 2})));
    out.emplace_back("single-vertex-2-3-cyclic", single_vertex({2, 3}, ThetaFamily::full_cycle({2, 3})));
    out.emplace_back("single-vertex-1-1-1", single_vertex({1, 1, 1}, ThetaFamily::identity()));
    out.emplace_back("product-F2-F3", direct_product({free_loops(2), free_loops(3)}));
    out.emplace_back("product-C2-C3", direct_product({directed_cycle(2), directed_cycle(3)}));
    return out;
}

KGraph resolve_graph(const std::vector<std::string>& args) {
    if (args.empty()) usage("missing graph source");
    const std::string& head = args[0];
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) usage("wrong number of arguments for '" + head + "'");
    };
    if (head == "example-3-2" || head == "acyclic-square") {
        arity(1, 1);
        return example_acyclic_two_graph();
    }
    if (head == "cycle") {
        arity(3, 3);
        const int n = to_int(args[1], "cycle length");
        const int k = to_int(args[2], "rank");
        if (n < 1 || k < 1) usage("cycle needs positive n and k");
        return cycle_rank(n, k);
    }
    if (head == "single-vertex") {
        arity(2, 3);
        const auto sizes = parse_sizes(args[1]);
        return single_vertex(sizes, parse_theta(args.size() == 3 ? args[2] : "id", sizes));
    }
    if (head == "product") {
        if (args.size() < 2) usage("product needs at least one factor");
        std::vector<KGraph> factors;
        for (std::size_t i = 1; i < args.size(); ++i) factors.push_back(factor(args[i]));
        return direct_product(factors);
    }
    for (auto& [name, g] : canned_examples()) {
        if (name == head) {
            arity(1, 1);
            return g;
        }
    }
    arity(1, 1);
    std::ifstream in(head);
    if (!in) usage("unknown example or unreadable file '" + head + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

}  // namespace kgraph
