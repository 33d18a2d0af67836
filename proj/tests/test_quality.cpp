#include "support.hpp"

#include "trim/quality.hpp"
#include "trim/refine.hpp"

#include <doctest.h>

using namespace trim;

namespace {

// Triangular lattice of unit equilateral triangles, rows x cols.
Mesh lattice(int rows, int cols)
{
    std::vector<Point2> pts;
    const double h = std::sqrt(3.0) / 2.0;
    for (int j = 0; j <= rows; ++j)
        for (int i = 0; i <= cols; ++i)
            pts.push_back({i + 0.5 * (j % 2), j * h});
    auto id = [&](int i, int j) { return static_cast<NodeId>(j * (cols + 1) + i); };
    std::vector<std::array<NodeId, 3>> tris;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            if (j % 2 == 0) {
                tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
                tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            }
        }
    return support::build_mesh(std::move(pts), tris);
}

} // namespace

TEST_SUITE("quality")
{
    TEST_CASE("equilateral triangle angles")
    {
        const Mesh m = support::build_mesh({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}, {{0, 1, 2}});
        const auto h = stmsh(m, UniformSpacing{1.0}, StatKind::AngleRatio);
        CHECK(h.bins[6] == 3);
        CHECK(h.population() == 3);
        CHECK(stmsh(m, UniformSpacing{1.0}, StatKind::AreaRatio).bins[5] == 1);
        CHECK(stmsh(m, UniformSpacing{1.0}, StatKind::EdgeLengthRatio).bins[5] == 3);
    }

    TEST_CASE("right isosceles angles")
    {
        const Mesh m = support::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
        const auto h = stmsh(m, UniformSpacing{1.0}, StatKind::AngleRatio);
        CHECK(h.bins[10] == 2);
        CHECK(h.bins[5] == 4);
        CHECK(h.population() == 6);
    }

    TEST_CASE("fan valences")
    {
        const Mesh m = support::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}},
                                           {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
        const auto h = stmsh(m, UniformSpacing{1.0}, StatKind::NodeValence);
        CHECK(h.bins[3] == 4);
        CHECK(h.bins[4] == 1);
        CHECK(h.population() == 5);
        const auto t = stmsh(m, UniformSpacing{1.0}, StatKind::TrianglesPerNode);
        CHECK(t.bins[2] == 4);
        CHECK(t.bins[4] == 1);
    }

    TEST_CASE("populations")
    {
        const Mesh m = support::perturbed_grid(6, 0.3, 2);
        CHECK(stmsh(m, UniformSpacing{0.2}, StatKind::AngleRatio).population() == static_cast<std::int64_t>(3 * m.nt()));
        CHECK(stmsh(m, UniformSpacing{0.2}, StatKind::EdgeLengthRatio).population() == static_cast<std::int64_t>(m.nl()));
        CHECK(stmsh(m, UniformSpacing{0.2}, StatKind::AreaRatio).population() == static_cast<std::int64_t>(m.nt()));
        CHECK(stmsh(m, UniformSpacing{0.2}, StatKind::NodeValence).population() == static_cast<std::int64_t>(m.nn()));
    }

    TEST_CASE("overflow bins")
    {
        const Mesh m = support::build_mesh({{0, 0}, {10, 0}, {0, 10}}, {{0, 1, 2}});
        CHECK(stmsh(m, UniformSpacing{1.0}, StatKind::AreaRatio).bins[20] == 1);
        CHECK(stmsh(m, UniformSpacing{1.0}, StatKind::EdgeLengthRatio).bins[20] == 3);
    }

    TEST_CASE("equilateral lattice concentrates around 100 percent")
    {
        const Mesh m = lattice(6, 8);
        for (auto kind : {StatKind::AreaRatio, StatKind::EdgeLengthRatio}) {
            const auto h = stmsh(m, UniformSpacing{1.0}, kind);
            const auto near = h.bins[4] + h.bins[5] + h.bins[6];
            CHECK(static_cast<double>(near) >= 0.95 * static_cast<double>(h.population()));
        }
    }

    TEST_CASE("Euler mismatch is reported")
    {
        Mesh m = support::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
        Warnings w;
        stmsh(m, UniformSpacing{1.0}, StatKind::NodeValence, &w);
        CHECK(w.empty());
        m.points.push_back({5, 5});
        stmsh(m, UniformSpacing{1.0}, StatKind::NodeValence, &w);
        REQUIRE(w.size() == 1);
        CHECK(w[0].code == DiagnosticCode::EulerViolation);
    }

    TEST_CASE("report layout")
    {
        const Mesh m = support::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
        const std::string angles = format_report(stmsh(m, UniformSpacing{1.0}, StatKind::AngleRatio));
        CHECK(angles.find("total 6, bins of 15%\n") != std::string::npos);
        CHECK(angles.find("\n150%..165%: 2\n") != std::string::npos);
        CHECK(angles.find("\n300%..inf: 0\n") != std::string::npos);
        const std::string valence = format_report(stmsh(m, UniformSpacing{1.0}, StatKind::NodeValence));
        CHECK(valence.find("\n3: 2\n") != std::string::npos);
        CHECK(valence.find("\n20+: 0\n") != std::string::npos);
        CHECK(std::count(angles.begin(), angles.end(), '\n') == 22);
    }
}
