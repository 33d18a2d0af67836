#include "trim/pipeline.hpp"

#include "trim/boundary.hpp"
#include "trim/delaunay.hpp"
#include "trim/steiner.hpp"

#include <json.hpp>

namespace trim {

namespace {

[[noreturn]] void invalid(const std::string& what)
{
    throw MeshError(DiagnosticCode::InvalidParameter, what);
}

} // namespace

void validate_params(const MeshParams& params)
{
    if (!(params.factor >= 1.0 && params.factor <= 3.0))
        invalid("factor must lie in [1, 3]");
    validate_spacing(params.spacing);
}

Method parse_method(std::string_view text)
{
    if (text == "delaunay")
        return Method::Delaunay;
    if (text == "afm")
        return Method::Afm;
    if (text == "steiner")
        return Method::Steiner;
    invalid("unknown method '" + std::string(text) + "'");
}

AfmVersion parse_afm_version(std::string_view text)
{
    if (text == "first")
        return AfmVersion::FirstActiveEdge;
    if (text == "smallest")
        return AfmVersion::SmallestEdge;
    invalid("unknown AFM version '" + std::string(text) + "'");
}

std::optional<SwapCriterion> parse_swap(std::string_view text)
{
    if (text == "delaunay")
        return SwapCriterion::DelaunayMaxMin;
    if (text == "minmax")
        return SwapCriterion::MinMax;
    if (text == "none")
        return std::nullopt;
    invalid("unknown swap criterion '" + std::string(text) + "'");
}

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::Delaunay: return "delaunay";
    case Method::Afm: return "afm";
    case Method::Steiner: return "steiner";
    }
    return "?";
}

std::string_view to_string(AfmVersion version)
{
    return version == AfmVersion::FirstActiveEdge ? "first" : "smallest";
}

std::string_view swap_name(std::optional<SwapCriterion> swap)
{
    if (!swap)
        return "none";
    return *swap == SwapCriterion::DelaunayMaxMin ? "delaunay" : "minmax";
}

MeshParams params_from_json(std::string_view json)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        throw MeshError(DiagnosticCode::ParseError, std::string("params: ") + e.what());
    }
    if (!doc.is_object())
        invalid("params must be a JSON object");

    MeshParams p;
    try {
        if (auto it = doc.find("method"); it != doc.end())
            p.method = parse_method(it->get<std::string>());
        if (auto it = doc.find("afm_version"); it != doc.end())
            p.afm_version = parse_afm_version(it->get<std::string>());
        if (auto it = doc.find("swap"); it != doc.end())
            p.swap = parse_swap(it->get<std::string>());
        if (auto it = doc.find("smoothing"); it != doc.end())
            p.smoothing = it->get<bool>();
        if (auto it = doc.find("final_edge_check"); it != doc.end())
            p.final_edge_check = it->get<bool>();
        if (auto it = doc.find("factor"); it != doc.end())
            p.factor = it->get<double>();
        if (auto it = doc.find("spacing"); it != doc.end())
            p.spacing = parse_spacing(it->get<std::string>());
        if (auto it = doc.find("use_spline"); it != doc.end())
            p.use_spline = it->get<bool>();
    } catch (const nlohmann::json::exception& e) {
        invalid(std::string("params: ") + e.what());
    }
    validate_params(p);
    return p;
}

std::string params_to_json(const MeshParams& p)
{
    nlohmann::ordered_json doc;
    doc["method"] = to_string(p.method);
    doc["afm_version"] = to_string(p.afm_version);
    doc["swap"] = swap_name(p.swap);
    doc["smoothing"] = p.smoothing;
    doc["final_edge_check"] = p.final_edge_check;
    doc["factor"] = p.factor;
    doc["spacing"] = format_spacing(p.spacing);
    doc["use_spline"] = p.use_spline;
    return doc.dump();
}

std::array<QualityHistogram, 5> all_stats(const Mesh& mesh, const SpacingField& spacing, Warnings* warnings)
{
    std::array<QualityHistogram, 5> out;
    for (int k = 1; k <= 5; ++k)
        out[static_cast<std::size_t>(k - 1)] = stmsh(mesh, spacing, static_cast<StatKind>(k), k == 1 ? warnings : nullptr);
    return out;
}

MeshRun run_mesh(std::string_view mg_text, const MeshParams& params)
{
    validate_params(params);
    MeshRun run;
    const Domain domain = parse_mg(mg_text, &run.warnings);

    MeshResult result;
    if (params.method == Method::Steiner) {
        SteinerFlags flags;
        flags.use_spline = params.use_spline;
        flags.do_smoothing = params.smoothing;
        flags.final_edge_check = params.final_edge_check;
        flags.factor = params.factor;
        flags.final_swap = params.swap;
        result = steiner_mesh(domain, params.spacing, flags);
    } else {
        DiscretizeOptions opt;
        opt.use_spline = params.use_spline;
        const DiscretizedBoundary boundary = discretize_boundary(domain, params.spacing, opt);
        if (params.method == Method::Delaunay) {
            result = dlny_domain(boundary);
        } else {
            AfmOptions afm;
            afm.version = params.afm_version;
            result = afm_mesh(boundary, params.spacing, afm);
            if (params.smoothing)
                smooth(result.mesh, 1000, 1e-3, &result.warnings);
        }
        if (params.swap)
            edswap(result.mesh, *params.swap);
        if (params.final_edge_check && !crossing_pairs(result.mesh).empty())
            throw MeshError(DiagnosticCode::EdgeCrossingDetected, "edge-crossing in the final mesh");
    }

    run.mesh = std::move(result.mesh);
    run.warnings.insert(run.warnings.end(), result.warnings.begin(), result.warnings.end());
    run.stats = all_stats(run.mesh, params.spacing, &run.warnings);
    return run;
}

std::string stats_json(const std::array<QualityHistogram, 5>& stats)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& h : stats) {
        nlohmann::ordered_json item;
        item["kind"] = static_cast<int>(h.kind);
        item["name"] = to_string(h.kind);
        item["width"] = h.width;
        item["total"] = h.population();
        item["bins"] = h.bins;
        arr.push_back(std::move(item));
    }
    return arr.dump();
}

} // namespace trim
