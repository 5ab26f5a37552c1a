#include "isocone/cli.hpp"

#include "isocone/error.hpp"
#include "isocone/fixtures.hpp"
#include "isocone/textio.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace isocone {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path)
{
    if (path.empty())
        throw IoError("--input is required for this command");
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return in;
}

template <class T>
T read(const std::string& path, Parsed<T> (*parse)(std::istream&), std::ostream& out)
{
    std::ifstream in = open_input(path);
    Parsed<T> p = parse(in);
    for (const auto& n : p.notes)
        out << "note: " << n << "\n";
    return std::move(p.value);
}

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + v[i];
    return s;
}

std::string row_text(const RatVec& r)
{
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i)
        s += (i ? " " : "") + to_string(r[i]);
    return s;
}

std::string gaussian_text(const Cx& z)
{
    return to_string(z.re) + (z.im < 0 ? "-" : "+") + to_string(Rat(z.im < 0 ? Rat(-z.im) : z.im)) + "i";
}

const char* yes(bool b) { return b ? "true" : "false"; }

std::string choice_text(const ChoiceVector& c)
{
    std::string s;
    for (int x : c)
        s += std::to_string(x);
    return s;
}

std::string choices_mode(const JobConfig& cfg)
{
    return cfg.sample ? "sample " + std::to_string(*cfg.sample) + " seed " + std::to_string(*cfg.seed) : "all";
}

ConeOptions cone_options(const JobConfig& cfg)
{
    ConeOptions o;
    o.sample = cfg.sample;
    o.seed = cfg.seed.value_or(0);
    return o;
}

void cone_compute(const JobConfig& cfg, std::ostream& out)
{
    const ManifoldInput mi = read(cfg.input, parse_manifold, out);
    const PLCone pc = cone(mi.manifold, mi.track, cone_options(cfg));
    const BoundaryTrackData d = boundary_train_track(mi.manifold, mi.track);
    out << "tetrahedra: " << mi.manifold.num_tets() << "\n";
    out << "choices: " << choices_mode(cfg) << "\n";
    out << "choices-examined: " << pc.choices_examined << "\n";
    out << "coverage: " << to_string(pc.coverage) << "\n";
    out << "weight-space-dim: " << pc.weight_space_dim << "\n";
    out << "edges: " << join(d.track.branches()) << "\n";
    out << "components: " << pc.components.size() << "\n";
    for (std::size_t k = 0; k < pc.components.size(); ++k) {
        const ConeComponent& c = pc.components[k];
        out << "component " << k << "\n";
        out << "dim: " << c.span.size() << "\n";
        for (const RatVec& r : c.span)
            out << "span: " << row_text(r) << "\n";
        std::vector<std::string> active;
        for (std::size_t b : c.active)
            active.push_back(d.track.branches()[b]);
        out << "active: " << join(active) << "\n";
    }
}

void cone_member(const JobConfig& cfg, std::ostream& out)
{
    const ManifoldInput mi = read(cfg.input, parse_manifold, out);
    const RatVec w = boundary_weights(mi.manifold, mi.weights);
    const MemberResult r = member(mi.manifold, mi.track, w);
    out << "member: " << yes(r.member) << "\n";
    if (!r.member) {
        out << "reason: " << r.reason << "\n";
        return;
    }
    out << "choices: " << choice_text(r.choices) << "\n";
    out << "nodes: " << r.nodes << "\n";
    out << "witness:\n";
    for (std::size_t e = 0; e < r.witness.size(); ++e)
        out << "weight " << mi.manifold.edge_label(e) << " " << to_string(r.witness[e]) << "\n";
}

void cone_isotropy(const JobConfig& cfg, std::ostream& out)
{
    const ManifoldInput mi = read(cfg.input, parse_manifold, out);
    const Triangulation3& m = mi.manifold;
    const std::size_t T = m.num_tets();
    std::vector<ChoiceVector> choices;
    if (cfg.sample) {
        std::mt19937_64 rng(*cfg.seed);
        for (std::size_t i = 0; i < *cfg.sample; ++i) {
            ChoiceVector c(T);
            for (auto& x : c)
                x = static_cast<int>(rng() % 3) + 1;
            choices.push_back(std::move(c));
        }
    } else {
        if (T > 10)
            throw DomainError("enumeration-size",
                              std::to_string(T) + " tetrahedra give too many choice vectors; use --choices sample:N");
        ChoiceVector c(T, 1);
        while (true) {
            choices.push_back(c);
            std::size_t i = 0;
            while (i < T && c[i] == 3)
                c[i++] = 1;
            if (i == T)
                break;
            ++c[i];
        }
    }
    std::size_t isotropic_count = 0;
    std::vector<std::string> failures;
    for (const ChoiceVector& c : choices) {
        if (isotropy_check(m, c))
            ++isotropic_count;
        else
            failures.push_back(choice_text(c));
    }
    out << "choices: " << choices_mode(cfg) << "\n";
    out << "checked: " << choices.size() << "\n";
    out << "isotropic: " << isotropic_count << "\n";
    for (const auto& f : failures)
        out << "not-isotropic: " << f << "\n";

    const PLCone pc = cone(m, mi.track, cone_options(cfg));
    const BoundaryTrackData d = boundary_train_track(m, mi.track);
    std::size_t max_dim = 0, iso = 0;
    for (const ConeComponent& c : pc.components) {
        max_dim = std::max(max_dim, c.span.size());
        iso += component_isotropic(d, c);
    }
    out << "weight-space-dim: " << pc.weight_space_dim << "\n";
    out << "components: " << pc.components.size() << "\n";
    out << "components-isotropic: " << iso << "\n";
    out << "max-component-dim: " << max_dim << "\n";
    out << "half-dim-bound: " << yes(2 * max_dim <= pc.weight_space_dim) << "\n";
}

void surface_validate(const JobConfig& cfg, std::ostream& out)
{
    const FlatSurface s = read(cfg.input, parse_flat, out);
    const FlatInfo info = validate(s);
    out << "kind: " << (s.kind == FlatKind::Translation ? "translation" : "half-translation") << "\n";
    out << "triangles: " << s.num_triangles() << "\n";
    out << "symbol: " << to_string(info.symbol) << "\n";
    out << "genus: " << info.genus << "\n";
    std::string angles;
    for (std::size_t i = 0; i < info.cone_angles.size(); ++i)
        angles += (i ? " " : "") + std::to_string(info.cone_angles[i]);
    out << "cone-angles-pi: " << angles << "\n";
    out << "marked-points: " << info.marked_points << "\n";
    out << "area: " << to_string(total_area(s)) << "\n";
    out << "delaunay: " << yes(is_delaunay(s)) << "\n";
}

void surface_delaunay(const JobConfig& cfg, std::ostream& out)
{
    const FlatSurface s = read(cfg.input, parse_flat, out);
    validate(s);
    const DelaunayResult r = delaunay(s);
    const FlatInfo info = validate(r.surface);
    out << "flips: " << r.flips << "\n";
    out << "cocircular: " << r.cocircular << "\n";
    out << "area: " << to_string(total_area(r.surface)) << "\n";
    out << "symbol: " << to_string(info.symbol) << "\n";
    out << "surface:\n" << serialize(r.surface);
}

void surface_heights(const JobConfig& cfg, std::ostream& out)
{
    FlatSurface s = read(cfg.input, parse_flat, out);
    validate(s);
    if (cfg.rotate) {
        s = rotate(s, *cfg.rotate);
        out << "rotation: " << gaussian_text(*cfg.rotate) << "\n";
    }
    const RatVec h = heights(s);
    const SurfaceTriangulation c = s.combinatorics();
    for (std::size_t e = 0; e < h.size(); ++e)
        out << "height " << s.half_edge_name(c.edge_rep(e)) << " " << to_string(h[e]) << "\n";
}

struct Prepared {
    FlatSurface surface;
    std::size_t flips = 0;
    Cx rotation;
};

// Delaunay, then the given or searched rotation.
Prepared prepare(const JobConfig& cfg, const FlatSurface& input, std::ostream& out)
{
    validate(input);
    const DelaunayResult r = delaunay(input);
    const Cx c = cfg.rotate ? *cfg.rotate : find_rotation(r.surface);
    out << "flips: " << r.flips << "\n";
    out << "rotation: " << gaussian_text(c) << "\n";
    return {rotate(r.surface, c), r.flips, c};
}

void surface_track(const JobConfig& cfg, std::ostream& out)
{
    const FlatSurface s = prepare(cfg, read(cfg.input, parse_flat, out), out).surface;
    const TrainTrack t = dual_track(s);
    const RatVec h = heights(s);
    NamedWeights w;
    for (std::size_t b = 0; b < t.num_branches(); ++b)
        w.emplace_back(t.branches()[b], h[b]);
    out << "switch-check: " << yes(switch_check(t, h)) << "\n";
    out << "orientable: " << yes(track_orientation(t).has_value()) << "\n";
    out << "track:\n" << serialize(t, w);
}

void surface_symplectic_check(const JobConfig& cfg, std::ostream& out)
{
    const FlatSurface input = read(cfg.input, parse_flat, out);
    std::vector<NamedTangent> tangents;
    if (!cfg.tangents.empty()) {
        std::ifstream in = open_input(cfg.tangents);
        Parsed<std::vector<NamedTangent>> p = parse_tangents(in, input);
        for (const auto& n : p.notes)
            out << "note: " << n << "\n";
        tangents = std::move(p.value);
    }
    const Prepared prep = prepare(cfg, input, out);
    const FlatSurface& s = prep.surface;
    if (tangents.empty()) {
        const PeriodTangent e = scaling_tangent(s);
        tangents = {{"scale", e}, {"i-scale", times(Cx(0, 1), e)}};
    } else {
        // Tangents are given in the edges of the input, which flips would replace.
        if (prep.flips > 0)
            throw DomainError("not-delaunay", "tangents need a Delaunay input; run 'surface delaunay' first");
        for (auto& t : tangents)
            t.tangent = times(prep.rotation, t.tangent);
    }
    for (const auto& t : tangents)
        if (!is_valid_tangent(s, t.tangent))
            throw DomainError("invalid-tangent", "tangent " + t.name + " does not preserve triangle closure");

    const bool translation = s.kind == FlatKind::Translation;
    out << "tangents: " << tangents.size() << "\n";
    out << "depth: " << cfg.depth << "\n";
    bool all_equal = true;
    for (std::size_t i = 0; i < tangents.size(); ++i)
        for (std::size_t j = i + 1; j < tangents.size(); ++j) {
            const PeriodTangent& a = tangents[i].tangent;
            const PeriodTangent& b = tangents[j].tangent;
            const Rat th = omega_thurston(s, a, b);
            const Rat hom = translation ? omega_homological(s, a, b) : omega_homological_cover(s, a, b);
            const Rat hes = omega_hessian(s, a, b);
            const std::complex<double> num = kahler_pairing_numeric(s, a, b, cfg.depth);
            const bool eq = th == hom && hom == hes;
            all_equal = all_equal && eq;
            out << "pair " << tangents[i].name << " " << tangents[j].name << "\n";
            out << "omega-thurston: " << to_string(th) << "\n";
            out << "omega-homological: " << to_string(hom) << "\n";
            out << "omega-hessian: " << to_string(hes) << "\n";
            out << "equal: " << yes(eq) << "\n";
            std::ostringstream q;
            q << std::setprecision(12) << num.real() << " " << num.imag();
            out << "quadrature: " << q.str() << "\n";
        }
    out << "all-equal: " << yes(all_equal) << "\n";
}

void tree_fourpoint(const JobConfig& cfg, std::ostream& out)
{
    const MetricTree t = read(cfg.input, parse_tree, out);
    const DistanceMatrix d = t.distance_matrix();
    const std::size_t n = d.size();
    std::size_t quads = 0, pass = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t e = c + 1; e < n; ++e) {
                    const std::size_t idx[4] = {a, b, c, e};
                    DistanceMatrix sub(4, std::vector<LexVec>(4));
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            sub[i][j] = d[idx[i]][idx[j]];
                    ++quads;
                    pass += four_point_check(sub);
                }
    out << "vertices: " << n << "\n";
    out << "rank: " << t.rank() << "\n";
    out << "quadruples: " << quads << "\n";
    out << "four-point: " << pass << "/" << quads << "\n";
    out << "zero-hyperbolic: " << yes(is_zero_hyperbolic(d)) << "\n";
}

void dispatch(const JobConfig& cfg, std::ostream& out)
{
    const auto& c = cfg.command;
    auto is = [&](const char* a, const char* b) { return c.size() == 2 && c[0] == a && c[1] == b; };
    if (c.size() == 2 && c[0] == "fixtures") {
        const auto names = fixture_names();
        if (std::find(names.begin(), names.end(), c[1]) == names.end())
            throw ParseError(0, "unknown fixture '" + c[1] + "'; available: " + join(names));
        out << fixture_text(c[1]);
    }
    else if (is("cone", "compute"))
        cone_compute(cfg, out);
    else if (is("cone", "member"))
        cone_member(cfg, out);
    else if (is("cone", "isotropy"))
        cone_isotropy(cfg, out);
    else if (is("surface", "validate"))
        surface_validate(cfg, out);
    else if (is("surface", "delaunay"))
        surface_delaunay(cfg, out);
    else if (is("surface", "heights"))
        surface_heights(cfg, out);
    else if (is("surface", "track"))
        surface_track(cfg, out);
    else if (is("surface", "symplectic-check"))
        surface_symplectic_check(cfg, out);
    else if (is("tree", "fourpoint"))
        tree_fourpoint(cfg, out);
    else
        throw ParseError(0, "unknown command '" + join(c) + "'");
}

} // namespace

std::optional<std::size_t> parse_choices(const std::string& text)
{
    if (text == "all")
        return std::nullopt;
    const std::string prefix = "sample:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string n = text.substr(prefix.size());
        if (!n.empty() && n.size() < 10 && n.find_first_not_of("0123456789") == std::string::npos) {
            const std::size_t v = std::stoul(n);
            if (v >= 1)
                return v;
        }
    }
    throw ParseError(0, "--choices must be 'all' or 'sample:N' with N >= 1, got '" + text + "'");
}

Cx parse_gaussian(const std::string& text)
{
    if (text.empty())
        throw ParseError(0, "empty complex number");
    if (text.back() != 'i')
        return Cx(parse_rat(text));
    const std::string body = text.substr(0, text.size() - 1);
    const std::size_t k = body.find_last_of("+-");
    const std::string re = k == std::string::npos || k == 0 ? "" : body.substr(0, k);
    std::string im = k == std::string::npos || k == 0 ? body : body.substr(k);
    if (im.empty() || im == "+")
        im = "1";
    else if (im == "-")
        im = "-1";
    else if (im[0] == '+')
        im.erase(0, 1);
    return Cx(re.empty() ? Rat(0) : parse_rat(re), parse_rat(im));
}

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream report;
    try {
        if (cfg.sample && !cfg.seed)
            throw ParseError(0, "--seed is required with --choices sample:N");
        if (cfg.depth < 0)
            throw ParseError(0, "--depth must be nonnegative");
        report << "command: " << join(cfg.command) << "\n";
        dispatch(cfg, report);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return 2;
    }
    const std::string text = cfg.command.size() == 2 && cfg.command[0] == "fixtures"
                                 ? report.str().substr(report.str().find('\n') + 1)
                                 : report.str();
    if (cfg.output.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.output);
        if (!(f << text)) {
            err << "io error: cannot write '" << cfg.output << "'\n";
            return 2;
        }
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    err << "elapsed: " << std::fixed << std::setprecision(3) << dt.count() << " s\n";
    return 0;
}

} // namespace isocone
