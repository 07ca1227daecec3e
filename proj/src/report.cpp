#include "kgraph/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

namespace kgraph {

namespace {

Json sorted_names(const KGraph& g, const std::vector<EdgeId>& edges) {
    std::vector<std::string> names;
    for (EdgeId e : edges) names.push_back(g.edge(e).name);
    std::sort(names.begin(), names.end());
    return names;
}

std::string word_text(const KGraph& g, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += g.edge(w[i]).name;
    }
    return s;
}

}  // namespace

Json envelope(const std::string& kind, bool ok, Json report) {
    return Json{{"schema", kReportSchema}, {"version", kReportVersion}, {"kind", kind}, {"ok", ok},
                {"report", std::move(report)}};
}

Json to_json(const KGraph&, const ValidationReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json item{{"kind", to_string(f.kind)}, {"detail", f.detail}, {"word", f.word}, {"count", f.count}};
        if (f.split_left) item["split"] = {f.split_left->str(), f.split_right->str()};
        failures.push_back(std::move(item));
    }
    std::sort(failures.begin(), failures.end(), [](const Json& a, const Json& b) { return a.dump() < b.dump(); });
    return Json{{"valid", r.valid()},
                {"maxGrading", r.max_grading},
                {"failureTotal", r.failure_total},
                {"failures", std::move(failures)},
                {"normalPathsChecked", r.normal_paths_checked},
                {"splitsChecked", r.splits_checked},
                {"wordsChecked", r.words_checked}};
}

Json to_json(const KGraph& g, const StructureReport& r) {
    Json out;
    out["ncEdges"] = sorted_names(g, r.nc);
    out["radicalGenerators"] = sorted_names(g, r.nc);
    out["semisimple"] = r.semisimple;
    out["nilpotencyBound"] = r.nilpotency_bound;
    if (r.double_pure_cycle) {
        const auto& w = *r.double_pure_cycle;
        Json access = Json::object();
        for (VertexId v = 0; v < w.access.size(); ++v) {
            access[g.vertex_name(v)] = w.access[v] ? Json(to_string(g, *w.access[v])) : Json(nullptr);
        }
        out["doublePureCycle"] = {{"base", g.vertex_name(w.base)},
                                  {"color", w.color},
                                  {"cycles", {word_text(g, w.first.word), word_text(g, w.second.word)}},
                                  {"reachesAll", w.reaches_all},
                                  {"access", std::move(access)}};
    } else {
        out["doublePureCycle"] = nullptr;
    }
    Json classes = Json::object();
    for (VertexId v = 0; v < r.reflexivity.vertices.size(); ++v) {
        const auto& c = r.reflexivity.vertices[v];
        Json item{{"radiating", c.radiating}, {"multiplicityOne", c.multiplicity_one},
                  {"relational", to_string(c.relational)}};
        if (c.relational_budget) item["relationalBudget"] = c.relational_budget;
        classes[g.vertex_name(v)] = std::move(item);
    }
    out["vertexClasses"] = std::move(classes);
    const auto& rf = r.reflexivity;
    out["reflexivity"] = {{"hyperReflexiveByDPC", rf.hyper_reflexive_by_dpc},
                          {"distanceConstantBound", rf.distance_constant_bound ? Json(*rf.distance_constant_bound)
                                                                               : Json(nullptr)},
                          {"reflexiveByVertexCriterion", rf.reflexive_by_vertex_criterion},
                          {"singleVertexHinfty", rf.single_vertex_hinfty}};
    Json cycles = Json::array();
    for (const auto& c : r.cycles) {
        cycles.push_back({{"base", g.vertex_name(c.base)}, {"color", c.color}, {"word", word_text(g, c.word)}});
    }
    std::sort(cycles.begin(), cycles.end(), [](const Json& a, const Json& b) { return a.dump() < b.dump(); });
    out["pureCycles"] = std::move(cycles);
    return out;
}

Json to_json(const KGraph& g, const RadicalReport& r) {
    return Json{{"generators", sorted_names(g, r.generators)},
                {"nilpotencyBound", r.nilpotency_bound},
                {"wordGrading", r.word_grading},
                {"squareChecks", r.square_checks},
                {"squareResidual", r.square_residual},
                {"idealWords", r.ideal_words},
                {"productChecks", r.product_checks},
                {"productResidual", r.product_residual},
                {"observedNilpotency", r.observed_nilpotency},
                {"ok", r.ok()}};
}

Json to_json(const ResidualReport& r) {
    return Json{{"maxResidual", r.max_residual}, {"checks", r.checks}, {"worst", r.worst}, {"exact", r.exact()}};
}

Json to_json(const OrthogonalIsometries& r) {
    return Json{{"uWords", r.u_words},
                {"vWords", r.v_words},
                {"crossResidual", r.cross_residual},
                {"isometryResidual", r.isometry_residual},
                {"interiorDimension", r.interior_dimension},
                {"exact", r.exact()}};
}

Json to_json(const CycleBlockReport& r) {
    Json gens = Json::array();
    for (const auto& g : r.generators) {
        Json blocks = Json::array();
        for (auto [i, j] : g.blocks) blocks.push_back({i, j});
        gens.push_back({{"name", g.name}, {"blocks", std::move(blocks)},
                        {"expected", {g.expected.first, g.expected.second}}, {"ok", g.ok}});
    }
    std::sort(gens.begin(), gens.end(), [](const Json& a, const Json& b) { return a["name"] < b["name"]; });
    return Json{{"n", r.n},
                {"k", r.k},
                {"truncation", r.truncation},
                {"generators", std::move(gens)},
                {"projectionsBlockDiagonal", r.projections_block_diagonal},
                {"congruenceChecked", r.congruence_checked},
                {"congruenceViolations", r.congruence_violations},
                {"ok", r.ok()}};
}

Json to_json(const NormCheck& r) {
    return Json{{"truncation", r.truncation}, {"partial", r.partial},     {"byDegrees", r.by_degrees},
                {"closedForm", r.closed_form}, {"tailBound", r.tail_bound}, {"words", r.words}};
}

Json to_json(const EigenCheck& r) {
    return Json{{"edge", r.edge}, {"truncation", r.truncation}, {"maxResidual", r.max_residual},
                {"components", r.components}};
}

Json to_json(const MultiplicativityReport& r) {
    return Json{{"truncation", r.truncation},       {"wordGrading", r.word_grading},
                {"pairs", r.pairs},                 {"maxResidual", r.max_residual},
                {"worst", r.worst},                 {"maxGeneratorError", r.max_generator_error}};
}

Json to_json(const BallPoint& alpha) {
    Json out = Json::array();
    for (const auto& block : alpha) {
        Json b = Json::array();
        for (Eigen::Index i = 0; i < block.size(); ++i) b.push_back({block(i).real(), block(i).imag()});
        out.push_back(std::move(b));
    }
    return out;
}

void round_floats(Json& j) {
    if (j.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
        double v = std::strtod(buf, nullptr);
        if (v == 0.0) v = 0.0;  // drop negative zero
        j = v;
    } else if (j.is_structured()) {
        for (auto& child : j) round_floats(child);
    }
}

std::string render(Json j) {
    round_floats(j);
    return j.dump(2) + "\n";
}

}  // namespace kgraph
