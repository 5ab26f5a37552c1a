#include "support.hpp"

#include "isocone/cli.hpp"
#include "isocone/error.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace isocone;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(JobConfig cfg)
{
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("isocone_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed())
                                            + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text)
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string fixture(const std::string& name) { return write(name + ".txt", fixture_text(name)); }

    fs::path dir_;
};

// "key: value" lines of a report; repeated keys keep the last value.
std::map<std::string, std::string> fields(const std::string& report)
{
    std::map<std::string, std::string> out;
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line)) {
        const auto colon = line.find(": ");
        if (colon != std::string::npos)
            out[line.substr(0, colon)] = line.substr(colon + 2);
    }
    return out;
}

} // namespace

TEST(CliParsing, ChoicesAndGaussians)
{
    EXPECT_EQ(parse_choices("all"), std::nullopt);
    EXPECT_EQ(parse_choices("sample:12"), std::optional<std::size_t>{12});
    for (const char* bad : {"sample:0", "sample:", "some", "sample:-3"})
        EXPECT_THROW(parse_choices(bad), ParseError) << bad;
    EXPECT_TRUE(parse_gaussian("3+1i") == Cx(3, 1));
    EXPECT_TRUE(parse_gaussian("1/2-2i") == Cx(Rat(1, 2), -2));
    EXPECT_TRUE(parse_gaussian("5") == Cx(5));
    EXPECT_TRUE(parse_gaussian("-i") == Cx(0, -1));
    EXPECT_THROW(parse_gaussian("3+"), ParseError);
}

TEST_F(CliTest, FixturesCommand)
{
    const Outcome o = call({{"fixtures", "small_tree"}});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, fixture_text("small_tree"));
    EXPECT_EQ(call({{"fixtures", "missing"}}).code, 2);
}

TEST_F(CliTest, ExitCodes)
{
    JobConfig heights{{"surface", "heights"}, fixture("square_torus")};
    const Outcome h = call(heights);
    EXPECT_EQ(h.code, 1);
    EXPECT_NE(h.err.find("horizontal-edge"), std::string::npos) << h.err;

    const Outcome stray = call({{"tree", "fourpoint"}, write("bad.txt", "vertex a\nvertex b\nfrobnicate\n")});
    EXPECT_EQ(stray.code, 2);
    EXPECT_NE(stray.err.find("line 3"), std::string::npos) << stray.err;

    EXPECT_EQ(call({{"tree", "fourpoint"}, (dir_ / "absent.txt").string()}).code, 2);

    JobConfig unseeded{{"cone", "compute"}, fixture("four_tets")};
    unseeded.sample = 3;
    EXPECT_EQ(call(unseeded).code, 2);
}

TEST_F(CliTest, OutputFileMatchesStdout)
{
    JobConfig cfg{{"surface", "validate"}, fixture("lshape_h2")};
    const Outcome direct = call(cfg);
    cfg.output = (dir_ / "report.txt").string();
    const Outcome filed = call(cfg);
    EXPECT_EQ(filed.code, 0);
    EXPECT_TRUE(filed.out.empty());
    std::ifstream in(cfg.output);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), direct.out);
}

TEST_F(CliTest, ReportsAreDeterministic)
{
    JobConfig cfg{{"cone", "compute"}, fixture("four_tets")};
    cfg.sample = 7;
    cfg.seed = 11;
    const Outcome a = call(cfg), b = call(cfg);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(fields(a.out).at("choices"), "sample 7 seed 11");

    JobConfig sym{{"surface", "symplectic-check"}, fixture("lshape_h2")};
    EXPECT_EQ(call(sym).out, call(sym).out);
}

TEST_F(CliTest, SymplecticCheckWithBundledTangents)
{
    JobConfig cfg{{"surface", "symplectic-check"}, fixture("lshape_h2")};
    cfg.tangents = fixture("lshape_h2_tangents");
    const Outcome o = call(cfg);
    ASSERT_EQ(o.code, 0) << o.err;
    const auto f = fields(o.out);
    EXPECT_EQ(f.at("all-equal"), "true");
    EXPECT_EQ(f.at("tangents"), "2");

    // the last pair is (shear, shear); the cross pair appears earlier
    std::istringstream in(o.out);
    std::string line;
    std::vector<std::string> th, hom, hes;
    while (std::getline(in, line)) {
        if (line.rfind("omega-thurston: ", 0) == 0)
            th.push_back(line.substr(16));
        if (line.rfind("omega-homological: ", 0) == 0)
            hom.push_back(line.substr(19));
        if (line.rfind("omega-hessian: ", 0) == 0)
            hes.push_back(line.substr(15));
    }
    ASSERT_FALSE(th.empty());
    EXPECT_EQ(th, hom);
    EXPECT_EQ(th, hes);

    const FlatSurface l = lshape_h2();
    const Cx rot = find_rotation(l);
    const FlatSurface s = rotate(l, rot);
    const auto t = lshape_tangents();
    EXPECT_NE(std::find(th.begin(), th.end(), to_string(omega_thurston(s, times(rot, t[0].tangent),
                                                                      times(rot, t[1].tangent)))),
              th.end());
}

TEST_F(CliTest, SymplecticCheckNeedsDelaunayInputForTangents)
{
    FlatSurface sheared = lshape_h2();
    sheared.shear(Rat(7, 2));
    JobConfig cfg{{"surface", "symplectic-check"}, write("sheared.txt", serialize(sheared))};
    EXPECT_EQ(call(cfg).code, 0);
    cfg.tangents = fixture("lshape_h2_tangents");
    const Outcome o = call(cfg);
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("not-delaunay"), std::string::npos) << o.err;
}

TEST_F(CliTest, HeightsMatchLibrary)
{
    JobConfig cfg{{"surface", "heights"}, fixture("square_torus")};
    cfg.rotate = Cx(3, 1);
    const Outcome o = call(cfg);
    ASSERT_EQ(o.code, 0) << o.err;
    const FlatSurface s = rotate(square_torus(), Cx(3, 1));
    const SurfaceTriangulation c = s.combinatorics();
    const RatVec h = heights(s);
    std::string expected;
    for (std::size_t e = 0; e < c.num_edges(); ++e)
        expected += "height " + s.half_edge_name(c.edge_rep(e)) + " " + to_string(h[e]) + "\n";
    EXPECT_NE(o.out.find(expected), std::string::npos) << o.out;
    EXPECT_EQ(fields(o.out).at("rotation"), "3+1i");
}

TEST_F(CliTest, SurfaceReportsMatchLibrary)
{
    const Outcome v = call({{"surface", "validate"}, fixture("lshape_h2")});
    const auto f = fields(v.out);
    EXPECT_EQ(f.at("symbol"), to_string(validate(lshape_h2()).symbol));
    EXPECT_EQ(f.at("genus"), "2");
    EXPECT_EQ(f.at("area"), "3");

    FlatSurface sheared = lshape_h2();
    sheared.shear(Rat(7, 2));
    const Outcome d = call({{"surface", "delaunay"}, write("sheared.txt", serialize(sheared))});
    ASSERT_EQ(d.code, 0);
    const DelaunayResult r = delaunay(sheared);
    EXPECT_EQ(fields(d.out).at("flips"), std::to_string(r.flips));
    EXPECT_NE(d.out.find("surface:\n" + serialize(r.surface)), std::string::npos);

    const Outcome t = call({{"surface", "track"}, fixture("lshape_h2")});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(fields(t.out).at("switch-check"), "true");
    EXPECT_EQ(fields(t.out).at("orientable"), "true");
}

TEST_F(CliTest, TreeFourPointMatchesLibrary)
{
    const Outcome o = call({{"tree", "fourpoint"}, fixture("small_tree")});
    ASSERT_EQ(o.code, 0);
    const auto f = fields(o.out);
    EXPECT_EQ(f.at("vertices"), "5");
    EXPECT_EQ(f.at("rank"), "2");
    EXPECT_EQ(f.at("zero-hyperbolic"), is_zero_hyperbolic(small_tree().distance_matrix()) ? "true" : "false");
    EXPECT_EQ(f.at("four-point"), f.at("quadruples") + "/" + f.at("quadruples"));
}

TEST_F(CliTest, ConeIsotropyMatchesLibrary)
{
    const Outcome o = call({{"cone", "isotropy"}, fixture("four_tets")});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto f = fields(o.out);
    const ManifoldInput mi = four_tets();
    const PLCone pc = cone(mi.manifold, mi.track);
    EXPECT_EQ(f.at("checked"), "81");
    EXPECT_EQ(f.at("isotropic"), "81");
    EXPECT_EQ(f.at("components"), std::to_string(pc.components.size()));
    EXPECT_EQ(f.at("weight-space-dim"), std::to_string(pc.weight_space_dim));
    EXPECT_EQ(f.at("half-dim-bound"), "true");
}

TEST_F(CliTest, ConeComputeMatchesLibrary)
{
    const Outcome o = call({{"cone", "compute"}, fixture("four_tets")});
    ASSERT_EQ(o.code, 0) << o.err;
    const ManifoldInput mi = four_tets();
    const PLCone pc = cone(mi.manifold, mi.track);
    const auto f = fields(o.out);
    EXPECT_EQ(f.at("components"), std::to_string(pc.components.size()));
    EXPECT_EQ(f.at("coverage"), "1");
    std::size_t spans = 0;
    for (const auto& c : pc.components)
        spans += c.span.size();
    std::size_t span_lines = 0;
    for (std::size_t p = o.out.find("span: "); p != std::string::npos; p = o.out.find("span: ", p + 1))
        ++span_lines;
    EXPECT_EQ(span_lines, spans);
}

TEST_F(CliTest, ConeMemberDiagonalOnProduct)
{
    const ProductFixture pf = g2_product();
    std::mt19937_64 rng(51);
    const RatVec w = testsupport::random_carried_weight(pf.track, rng, 2);
    const RatVec wb = testsupport::diagonal_weights(pf, w);
    ManifoldInput mi{pf.product.manifold, pf.boundary_track, {}};
    const Triangulation3& m = mi.manifold;
    for (std::size_t e = 0; e < wb.size(); ++e)
        mi.weights.push_back({m.edge_label(m.boundary_edge_class(e)), wb[e]});
    const Outcome o = call({{"cone", "member"}, write("diag.txt", serialize(mi))});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(fields(o.out).at("member"), "true");
    EXPECT_NE(o.out.find("witness:\n"), std::string::npos);

    const MemberResult r = member(m, pf.boundary_track, wb);
    EXPECT_EQ(fields(o.out).at("nodes"), std::to_string(r.nodes));
}
