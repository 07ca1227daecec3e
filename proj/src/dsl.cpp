#include "kgraph/dsl.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace kgraph {

namespace {

struct Token {
    std::string text;
    int column = 0;
};

bool is_punct(char c) { return c == ':' || c == '=' || c == '#'; }

std::vector<Token> lex_line(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;
        const int column = static_cast<int>(i) + 1;
        if (c == ':' || c == '=') {
            out.push_back({std::string(1, c), column});
            ++i;
            continue;
        }
        if (line.substr(i, 2) == "->") {
            out.push_back({"->", column});
            i += 2;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && !is_punct(line[j]) &&
               line.substr(j, 2) != "->") {
            ++j;
        }
        out.push_back({std::string(line.substr(i, j - i)), column});
        i = j;
    }
    return out;
}

int parse_int(const Token& t, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        throw ParseError("expected an integer, got '" + t.text + "'", line, t.column);
    }
    return value;
}

void expect(const std::vector<Token>& toks, std::size_t i, std::string_view what, int line, int eol) {
    if (i >= toks.size()) throw ParseError("expected '" + std::string(what) + "'", line, eol);
    if (toks[i].text != what) {
        throw ParseError("expected '" + std::string(what) + "', got '" + toks[i].text + "'", line, toks[i].column);
    }
}

const Token& identifier(const std::vector<Token>& toks, std::size_t i, int line, int eol) {
    if (i >= toks.size()) throw ParseError("expected an identifier", line, eol);
    const Token& t = toks[i];
    if (t.text == ":" || t.text == "=" || t.text == "->") {
        throw ParseError("expected an identifier, got '" + t.text + "'", line, t.column);
    }
    return t;
}

}  // namespace

SpecDocument parse_spec(std::string_view text) {
    SpecDocument doc;
    std::set<std::string> vertex_ids;
    std::map<std::string, int> edge_colors;
    std::optional<SpecDocument::Position> colors_at;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        const auto toks = lex_line(line);
        const int eol = static_cast<int>(line.size()) + 1;
        if (toks.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string& kw = toks[0].text;
        if (kw == "colors") {
            if (colors_at) throw ParseError("duplicate colors declaration", line_no, toks[0].column);
            if (toks.size() != 2) throw ParseError("expected 'colors <k>'", line_no, toks[0].column);
            doc.colors = parse_int(toks[1], line_no);
            if (doc.colors < 1) throw ParseError("colour count must be positive", line_no, toks[1].column);
            colors_at = SpecDocument::Position{line_no, toks[0].column};
        } else if (kw == "vertex") {
            if (toks.size() < 2) throw ParseError("expected at least one vertex id", line_no, eol);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const Token& t = identifier(toks, i, line_no, eol);
                if (!vertex_ids.insert(t.text).second) {
                    throw ParseError("duplicate vertex '" + t.text + "'", line_no, t.column);
                }
                doc.vertices.push_back({t.text, {line_no, t.column}});
            }
        } else if (kw == "edge") {
            if (!colors_at) throw ParseError("'colors' must precede edge declarations", line_no, toks[0].column);
            const Token& id = identifier(toks, 1, line_no, eol);
            expect(toks, 2, ":", line_no, eol);
            if (toks.size() < 4) throw ParseError("expected a colour", line_no, eol);
            const int color = parse_int(toks[3], line_no);
            if (color < 1 || color > doc.colors) {
                throw ParseError("colour " + toks[3].text + " out of range 1.." + std::to_string(doc.colors), line_no,
                                 toks[3].column);
            }
            const Token& src = identifier(toks, 4, line_no, eol);
            expect(toks, 5, "->", line_no, eol);
            const Token& dst = identifier(toks, 6, line_no, eol);
            if (toks.size() > 7) throw ParseError("unexpected '" + toks[7].text + "'", line_no, toks[7].column);
            for (const Token* v : {&src, &dst}) {
                if (!vertex_ids.count(v->text)) {
                    throw ParseError("unknown vertex '" + v->text + "'", line_no, v->column);
                }
            }
            if (!edge_colors.emplace(id.text, color).second) {
                throw ParseError("duplicate edge '" + id.text + "'", line_no, id.column);
            }
            doc.edges.push_back({id.text, color, src.text, dst.text, {line_no, id.column}});
        } else if (kw == "relation") {
            SpecDocument::RelationDecl rel;
            rel.at = {line_no, toks[0].column};
            std::size_t i = 1;
            for (std::string* slot : {&rel.left[0], &rel.left[1]}) {
                const Token& t = identifier(toks, i++, line_no, eol);
                if (!edge_colors.count(t.text)) throw ParseError("unknown edge '" + t.text + "'", line_no, t.column);
                *slot = t.text;
            }
            expect(toks, i++, "=", line_no, eol);
            for (std::string* slot : {&rel.right[0], &rel.right[1]}) {
                const Token& t = identifier(toks, i++, line_no, eol);
                if (!edge_colors.count(t.text)) throw ParseError("unknown edge '" + t.text + "'", line_no, t.column);
                *slot = t.text;
            }
            if (toks.size() > i) throw ParseError("unexpected '" + toks[i].text + "'", line_no, toks[i].column);
            if (edge_colors[rel.left[0]] == edge_colors[rel.left[1]] ||
                edge_colors[rel.right[0]] == edge_colors[rel.right[1]]) {
                throw ParseError("relation sides must use two distinct colours", line_no, rel.at.column);
            }
            doc.relations.push_back(std::move(rel));
        } else {
            throw ParseError("unknown declaration '" + kw + "'", line_no, toks[0].column);
        }
        if (end == text.size()) break;
    }
    if (!colors_at) throw ParseError("missing 'colors' declaration", 1, 1);
    return doc;
}

KGraph to_graph(const SpecDocument& doc) {
    std::vector<std::string> vertices;
    std::map<std::string, VertexId> vid;
    for (const auto& v : doc.vertices) {
        vid[v.id] = static_cast<VertexId>(vertices.size());
        vertices.push_back(v.id);
    }
    std::vector<Edge> edges;
    std::map<std::string, EdgeId> eid;
    for (const auto& e : doc.edges) {
        eid[e.id] = static_cast<EdgeId>(edges.size());
        edges.push_back({e.id, e.color, vid.at(e.src), vid.at(e.dst)});
    }
    std::vector<CommutationSquare> squares;
    for (const auto& rel : doc.relations) {
        const int line = rel.at.line;
        const int col = rel.at.column;
        const EdgeId l0 = eid.at(rel.left[0]), l1 = eid.at(rel.left[1]);
        const EdgeId r0 = eid.at(rel.right[0]), r1 = eid.at(rel.right[1]);
        const Edge &a = edges[l0], &b = edges[l1], &c = edges[r0], &d = edges[r1];
        if (a.src != b.dst || c.src != d.dst) throw ParseError("relation side is not composable", line, col);
        if (a.color != d.color || b.color != c.color) {
            throw ParseError("relation sides must swap the colour order", line, col);
        }
        if (a.dst != c.dst || b.src != d.src) throw ParseError("relation sides have different endpoints", line, col);
        if (a.color < b.color) {
            squares.push_back({l0, l1, r0, r1});
        } else {
            squares.push_back({r0, r1, l0, l1});
        }
    }
    try {
        return KGraph(doc.colors, std::move(vertices), std::move(edges), std::move(squares));
    } catch (const MalformedGraphError& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

std::string serialize(const KGraph& g) {
    std::ostringstream os;
    os << "colors " << g.rank() << "\n";
    os << "vertex";
    for (const auto& v : g.vertices()) os << ' ' << v;
    os << "\n";
    for (const Edge& e : g.edges()) {
        os << "edge " << e.name << " : " << e.color << ' ' << g.vertex_name(e.src) << " -> " << g.vertex_name(e.dst)
           << "\n";
    }
    for (const auto& s : g.squares()) {
        os << "relation " << g.edge(s.rhs_left).name << ' ' << g.edge(s.rhs_right).name << " = "
           << g.edge(s.lhs_left).name << ' ' << g.edge(s.lhs_right).name << "\n";
    }
    return os.str();
}

}  // namespace kgraph
