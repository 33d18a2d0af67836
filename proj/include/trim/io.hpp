#pragma once

#include "trim/mesh.hpp"

#include <string>
#include <string_view>

namespace trim {

/// Canonical mesh JSON: `nodes` [[x,y]...], `edges` [[a,b,left,right,boundary]...]
/// with -1 for a missing triangle, `triangles` [[n1,n2,n3]...]. Numbers use
/// 17 significant digits, so import_json(export_json(m)) reproduces m.
std::string export_json(const Mesh& mesh);

/// Throws MeshError(ParseError) on malformed input.
Mesh import_json(std::string_view text);

struct SvgStyle
{
    double line_width = 1.0;
    std::string interior_color = "#4a6fa5";
    std::string boundary_color = "#b22222";
    double boundary_width = 2.0;
};

/// One <line> per edge, y axis pointing up, viewBox = bounding box plus a
/// 5 % margin.
std::string render_svg(const Mesh& mesh, const SvgStyle& style = {});

} // namespace trim
