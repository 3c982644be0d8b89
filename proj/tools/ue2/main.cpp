#include "config.hpp"

#include "ue2/adams_e2.hpp"
#include "ue2/aq_der.hpp"
#include "ue2/chart.hpp"
#include "ue2/gh_e2.hpp"
#include "ue2/spaces.hpp"
#include "ue2/steenrod.hpp"
#include "ue2/unstable_alg.hpp"
#include "ue2/unstable_mod.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ue2;
using ue2::cli::RunConfig;

namespace {

enum Exit { kPass = 0, kFail = 1, kError = 2 };

std::vector<int> parse_degrees(const std::string& text)
{
    std::vector<int> r;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        try {
            size_t used = 0;
            r.push_back(std::stoi(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument(fmt::format("bad degree '{}'", tok));
        }
    }
    return r;
}

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

void emit(const RunConfig& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f)
        throw std::runtime_error(fmt::format("cannot write {}", c.out));
    f << text;
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error(fmt::format("cannot read {}", path));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_adem(const RunConfig& c, const std::string& word)
{
    OpElement x = parse_op(word, c.p);
    emit(c, format_op(adem_rewrite(x)) + "\n");
    return kPass;
}

int cmd_basis(const RunConfig& c, const std::string& gens_text)
{
    std::vector<Generator> gens;
    int i = 0;
    for (int d : parse_degrees(gens_text)) {
        if (d < 1)
            throw std::invalid_argument("generators must have positive degree");
        gens.push_back(Generator{fmt::format("x{}", i++), d});
    }
    std::string s;
    for (int d = 0; d <= c.D; ++d) {
        auto b = free_a_basis(c.p, gens, d);
        s += fmt::format("{}:", d);
        for (auto& e : b)
            s += " " + format_free_elem(c.p, FreeElem{{e, 1}}, gens);
        s += "\n";
    }
    emit(c, s);
    return kPass;
}

int cmd_kn_dims(const RunConfig& c, const std::string& space)
{
    SpaceModel X = builtin_space(space, c.p, c.D);
    if (!X.free_generators)
        throw std::invalid_argument(fmt::format("{} does not have free cohomology", space));
    emit(c, join(hilbert_free(c.p, *X.free_generators, c.D)) + "\n");
    return kPass;
}

int cmd_exactness(const RunConfig& c, const std::string& gens_text)
{
    std::vector<Generator> gens;
    int i = 0;
    for (int d : parse_degrees(gens_text))
        gens.push_back(Generator{fmt::format("x{}", i++), d});
    ExactnessReport r = exactness_report(c.p, gens, FreeBWindow{c.D, c.window_L, c.window_K});
    emit(c, r.to_text());
    if (!r.injective_all || !r.composite_zero_all)
        return kFail;
    return r.saturated_all && r.saturated_equal_all ? kPass : kError;
}

int cmd_descent(const RunConfig& c, const std::string& v_text, const std::string& m_text)
{
    GradedVS V = graded_vs(c.p, parse_degrees(v_text));
    GradedVS M = graded_vs(c.p, parse_degrees(m_text));
    DescentReport r = descent_verify(V, M, 1, c.tower_max);
    emit(c, r.to_text());
    if (r.inconclusive)
        return kError;
    return r.ok ? kPass : kFail;
}

int cmd_adams_chart(const RunConfig& c, const std::string& x, const std::string& y)
{
    SpaceModel X = builtin_space(x, c.p, c.D), Y = builtin_space(y, c.p, c.D);
    emit(c, chart_emit(adams_chart(X, Y, c.s_max, c.t_max, c.D), parse_chart_format(c.format)));
    return kPass;
}

int cmd_gh_chart(const RunConfig& c, const std::string& x, const std::string& y)
{
    SpaceModel X = builtin_space(x, c.p, c.D), Y = builtin_space(y, c.p, c.D);
    GhRun r = gh_run(X, Y, c.s_max, c.t_max, c.D, c.tower_max);
    std::cerr << r.to_text();
    SaturationReport sat = d1_saturation_report(X, Y, c.s_max, c.t_max, c.D, 1, c.tower_max);
    std::cerr << sat.to_text();
    emit(c, chart_emit(r.chart, parse_chart_format(c.format)));
    if (!r.ok())
        return kFail;
    if (!sat.ok)
        return sat.inconclusive ? kError : kFail;
    return kPass;
}

int cmd_compare(const RunConfig& c, const std::string& a, const std::string& b)
{
    Chart ca = chart_from_json(read_file(a)), cb = chart_from_json(read_file(b));
    CompareReport r = compare_charts(ca, cb);
    emit(c, c.format == "json" ? r.to_json() : r.to_text());
    return r.ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Unstable Adams E2 charts over F_p, directly and by descent"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    ue2::cli::FlagValues fv;
    int p = 0, D = 0, smax = 0, tmax = 0, L = 0, K = 0, tower = 0;
    std::string format, out;
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    auto* o_p = app.add_option("--p", p, "prime (2, 3, 5, 7); default 2");
    auto* o_D = app.add_option("--D", D, "truncation degree; default 10");
    auto* o_s = app.add_option("--smax", smax, "largest s in the chart; default 2");
    auto* o_t = app.add_option("--tmax", tmax, "largest t in the chart; default 6");
    auto* o_L = app.add_option("--window-L", L, "B-window word length; default 8");
    auto* o_K = app.add_option("--window-K", K, "B-window index bound; default 8");
    auto* o_tw = app.add_option("--tower-max", tower, "highest tower level; default 3");
    auto* o_f = app.add_option("--format", format, "json, svg or ascii; default json");
    auto* o_o = app.add_option("--out", out, "output file; default stdout");

    std::string a1, a2;
    auto* adem = app.add_subcommand("adem", "admissible normal form of a word, e.g. A:Sq[2,2]");
    adem->add_option("word", a1)->required();
    auto* basis = app.add_subcommand("basis", "admissible basis of the free unstable module, degrees <= D");
    basis->add_option("degrees", a1, "generator degrees, comma separated")->required();
    auto* kn = app.add_subcommand("kn-dims", "dimensions of the cohomology of K(F_p,n) through D");
    kn->add_option("space", a1, "e.g. K2 or K(F_p,2)")->required();
    auto* ex = app.add_subcommand("exactness", "windowed exact sequence for a free unstable module");
    ex->add_option("degrees", a1, "generator degrees, comma separated")->required();
    auto* de = app.add_subcommand("descent", "descent check for Hom(V, M) across the tower");
    de->add_option("V", a1, "degrees of V, comma separated")->required();
    de->add_option("M", a2, "degrees of M, comma separated")->required();
    auto* ac = app.add_subcommand("adams-chart", "unstable Adams E2 chart for maps X -> Y");
    ac->add_option("X", a1)->required();
    ac->add_option("Y", a2)->required();
    auto* gc = app.add_subcommand("gh-chart", "E2 chart through levelwise descent along the field tower");
    gc->add_option("X", a1)->required();
    gc->add_option("Y", a2)->required();
    auto* cmp = app.add_subcommand("compare", "compare two JSON chart files");
    cmp->add_option("a", a1)->required();
    cmp->add_option("b", a2)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kError;
    }

    auto set = [](CLI::Option* o, auto v, auto& dst) {
        if (o->count() > 0)
            dst = v;
    };
    set(o_p, p, fv.p);
    set(o_D, D, fv.D);
    set(o_s, smax, fv.s_max);
    set(o_t, tmax, fv.t_max);
    set(o_L, L, fv.window_L);
    set(o_K, K, fv.window_K);
    set(o_tw, tower, fv.tower_max);
    set(o_f, format, fv.format);
    set(o_o, out, fv.out);

    std::string where = "config";
    try {
        RunConfig c = ue2::cli::resolve_config(config_path, fv);
        where = app.get_subcommands().front()->get_name();
        if (adem->parsed())
            return cmd_adem(c, a1);
        if (basis->parsed())
            return cmd_basis(c, a1);
        if (kn->parsed())
            return cmd_kn_dims(c, a1);
        if (ex->parsed())
            return cmd_exactness(c, a1);
        if (de->parsed())
            return cmd_descent(c, a1, a2);
        if (ac->parsed())
            return cmd_adams_chart(c, a1, a2);
        if (gc->parsed())
            return cmd_gh_chart(c, a1, a2);
        if (cmp->parsed())
            return cmd_compare(c, a1, a2);
    } catch (const std::exception& e) {
        std::cerr << "error: " << where << ": " << e.what() << "\n";
        return kError;
    }
    return kError;
}
