#include "isocone/cli.hpp"
#include "isocone/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Isotropic boundary cones and flat-surface symplectic checks"};
    app.require_subcommand(1);

    std::string input, output, tangents, choices = "all", rotate, fixture;
    std::optional<std::uint64_t> seed;
    int depth = 5;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Input file");
        sub->add_option("--output", output, "Write the report here instead of standard output");
    };

    struct Leaf {
        CLI::App* app;
        std::vector<std::string> command;
    };
    std::vector<Leaf> leaves;

    CLI::App* cone = app.add_subcommand("cone", "Boundary cone of a triangulated 3-manifold");
    cone->require_subcommand(1);
    for (const auto& [name, help] : {std::pair{"compute", "Enumerate cone components over choice vectors"},
                                     {"member", "Decide whether the given boundary weights lie in the cone"},
                                     {"isotropy", "Check every choice subspace for isotropy"}}) {
        CLI::App* sub = cone->add_subcommand(name, help);
        add_common(sub);
        sub->add_option("--choices", choices, "all | sample:N");
        sub->add_option("--seed", seed, "Seed for sampled choice vectors");
        leaves.push_back({sub, {"cone", name}});
    }

    CLI::App* surface = app.add_subcommand("surface", "Flat surfaces");
    surface->require_subcommand(1);
    for (const auto& [name, help] : {std::pair{"validate", "Check the flat structure and report its stratum"},
                                     {"delaunay", "Flip to a Delaunay triangulation"},
                                     {"heights", "Edge heights after rotation"},
                                     {"track", "Dual train track of the horizontal foliation"},
                                     {"symplectic-check", "Compare the three symplectic pairings on tangents"}}) {
        CLI::App* sub = surface->add_subcommand(name, help);
        add_common(sub);
        sub->add_option("--rotate", rotate, "Rotation multiplier a+bi");
        if (std::string(name) == "symplectic-check") {
            sub->add_option("--depth", depth, "Quadrature subdivision depth");
            sub->add_option("--tangents", tangents, "Tangent file");
        }
        leaves.push_back({sub, {"surface", name}});
    }

    CLI::App* tree = app.add_subcommand("tree", "Lexicographic metric trees");
    tree->require_subcommand(1);
    CLI::App* fourpoint = tree->add_subcommand("fourpoint", "Four-point condition over all quadruples");
    add_common(fourpoint);
    leaves.push_back({fourpoint, {"tree", "fourpoint"}});

    CLI::App* fixtures = app.add_subcommand("fixtures", "Print a bundled fixture");
    fixtures->add_option("name", fixture, "Fixture name")->required();
    fixtures->add_option("--output", output, "Write the fixture here instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    isocone::JobConfig cfg;
    for (const Leaf& l : leaves)
        if (l.app->parsed())
            cfg.command = l.command;
    if (fixtures->parsed())
        cfg.command = {"fixtures", fixture};
    cfg.input = input;
    cfg.output = output;
    cfg.tangents = tangents;
    cfg.depth = depth;
    cfg.seed = seed;
    try {
        cfg.sample = isocone::parse_choices(choices);
        if (!rotate.empty())
            cfg.rotate = isocone::parse_gaussian(rotate);
    } catch (const isocone::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    return isocone::run(cfg, std::cout, std::cerr);
}
