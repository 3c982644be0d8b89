// One line per acceptance criterion; exits non-zero if any fails.

#include "ue2/adams_e2.hpp"
#include "ue2/aq_der.hpp"
#include "ue2/gh_e2.hpp"
#include "ue2/resolution.hpp"
#include "ue2/spaces.hpp"
#include "ue2/steenrod.hpp"
#include "ue2/unstable_alg.hpp"
#include "ue2/unstable_mod.hpp"

#include "oracles.hpp"

#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ue2;

namespace {

struct Outcome
{
    bool pass = true;
    std::string detail;
    // deterministic record of everything computed, compared across runs
    std::string artifact;
    std::vector<std::pair<std::string, std::string>> charts;  // file name, json

    void fail(const std::string& why)
    {
        if (pass)
            detail = why;
        pass = false;
    }
};

oracle::Poly to_oracle(const F2Poly& q)
{
    oracle::Poly r;
    for (auto& m : q)
        r[m] = 1;
    return r;
}

Outcome criterion1()
{
    Outcome o;
    std::vector<Word> words;
    for (int a = 0; a <= 8; ++a) {
        words.push_back(sq_word({a}));
        for (int b = 0; b <= 8; ++b) {
            words.push_back(Word{Letter{a, 0}, Letter{b, 0}});
            for (int c = 0; c <= 8; ++c)
                words.push_back(Word{Letter{a, 0}, Letter{b, 0}, Letter{c, 0}});
        }
    }
    long long checks = 0;
    for (auto& w : words) {
        OpElement x = OpElement::word(2, Flavor::A, w);
        OpElement r = adem_rewrite(x);
        for (auto& [rw, c] : r.terms())
            if (!is_admissible(2, rw))
                o.fail("non-admissible output for " + format_op(x));
        const int wd = word_degree(2, w);
        std::vector<int> idx;
        for (auto l : w)
            idx.push_back(l.s);
        for (int a = 0; a <= 16; ++a)
            for (int b = 0; a + b <= 16; ++b) {
                if (a + b == 0 || a + b + wd > 16)
                    continue;
                F2Poly q{{a, b}};
                auto lhs = act_polynomial(r, q, 16);
                auto rhs = act_polynomial(x, q, 16);
                if (lhs != rhs)
                    o.fail(fmt::format("{} on x^{}y^{}", format_op(x), a, b));
                if (to_oracle(rhs) != oracle::sq_word(idx, to_oracle(q)))
                    o.fail(fmt::format("Cartan oracle disagrees for {} on x^{}y^{}", format_op(x), a, b));
                ++checks;
            }
        o.artifact += format_op(r) + "\n";
    }
    if (o.pass)
        o.detail = fmt::format("{} words, {} polynomial checks", words.size(), checks);
    return o;
}

Outcome criterion2()
{
    Outcome o;
    for (int n = 1; n <= 3; ++n)
        for (int d = 0; d <= 12; ++d) {
            const int got = int(free_a_basis(2, {Generator{"i", n}}, d).size());
            const int want = oracle::free_module_dim(2, n, d);
            o.artifact += fmt::format("F n={} d={} {}\n", n, d, got);
            if (got != want)
                o.fail(fmt::format("free module n={} d={}: {} vs {}", n, d, got, want));
        }
    for (int n = 1; n <= 2; ++n) {
        auto h = hilbert_free(2, {n}, 12);
        auto want = oracle::free_algebra_dims(n, 12);
        for (int d = 0; d <= 12; ++d) {
            o.artifact += fmt::format("H n={} d={} {}\n", n, d, h[d]);
            if (h[d] != want[d])
                o.fail(fmt::format("hilbert n={} d={}: {} vs {}", n, d, h[d], want[d]));
        }
    }
    if (o.pass)
        o.detail = "free module n=1,2,3 and free algebra n=1,2 through degree 12";
    return o;
}

Outcome criterion3()
{
    Outcome o;
    for (int n = 1; n <= 2; ++n) {
        ExactnessReport r = exactness_report(2, {Generator{"i", n}}, FreeBWindow{8, 8, 8});
        o.artifact += r.to_text();
        if (!r.injective_all)
            o.fail(fmt::format("n={}: 1 - P0 not injective", n));
        if (!r.composite_zero_all)
            o.fail(fmt::format("n={}: q(1 - P0) != 0", n));
        if (!r.saturated_all || !r.saturated_equal_all)
            o.fail(fmt::format("n={}: cokernel not saturated or not equal to F0", n));
        for (auto& row : r.rows)
            if (row.coker_dim != oracle::free_module_dim(2, n, row.degree))
                o.fail(fmt::format("n={} degree {}: cokernel {} vs oracle {}", n, row.degree, row.coker_dim,
                                   oracle::free_module_dim(2, n, row.degree)));
    }
    if (o.pass)
        o.detail = "n=1,2, degrees <= 8, window L=8 K=8";
    return o;
}

Outcome criterion4()
{
    Outcome o;
    std::mt19937_64 rng(20240611);
    int max_witness = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> nv(1, 5);
        const int a = nv(rng);
        std::uniform_int_distribution<int> nm(0, 6 - a);
        const int b = nm(rng);
        auto vd = oracle::random_degrees(rng, a, 4);
        auto md = oracle::random_degrees(rng, b, 4);
        int hom = 0;
        for (int x : vd)
            for (int y : md)
                hom += x == y;
        DescentReport r = descent_verify(graded_vs(2, vd), graded_vs(2, md), 1, 2);
        o.artifact += r.to_text();
        if (r.d0_by_level.empty() || r.d0_by_level[0] != hom || r.der_dim != hom)
            o.fail(fmt::format("trial {}: D0 {} vs Der {}", trial, r.d0_by_level.empty() ? -1 : r.d0_by_level[0], hom));
        if (hom > 0 && !r.inverse_pair_ok)
            o.fail(fmt::format("trial {}: comparison maps not inverse", trial));
        for (auto& w : r.witnesses) {
            if (w.solved_at == 0 || w.solved_at > 2)
                o.fail(fmt::format("trial {}: D1 representative without a level-2 witness", trial));
            max_witness = std::max(max_witness, w.solved_at);
        }
        if (!r.ok)
            o.fail(fmt::format("trial {}: {}", trial, r.problems.empty() ? "not ok" : r.problems.front()));
    }
    if (o.pass)
        o.detail = fmt::format("100 random pairs, witnesses by level {}", max_witness);
    return o;
}

Outcome criterion5()
{
    Outcome o;
    for (int n = 1; n <= 2; ++n) {
        BarReport r = bar_homology_check(2, n, 5, 3, 8, 3);
        o.artifact += r.to_text();
        auto want = oracle::free_algebra_dims(n, 5);
        for (int d = 0; d <= 5; ++d)
            if (r.homology[0][d] != want[d])
                o.fail(fmt::format("n={} H0 degree {}: {} vs {}", n, d, r.homology[0][d], want[d]));
        if (!r.concentrated)
            o.fail(fmt::format("n={}: homology outside simplicial degree 0", n));
        if (!r.saturated)
            o.fail(fmt::format("n={}: window not saturated", n));
    }
    if (o.pass)
        o.detail = "n=1,2, degrees <= 5, s <= 3, L=3";
    return o;
}

Outcome criterion6()
{
    Outcome o;
    int complexes = 0;
    for (const char* name : {"S2", "S3", "K1", "K2", "S1xS1", "S1xS2"}) {
        SpaceModel X = builtin_space(name, 2, 8);
        CotripleResolution R(X.cohomology, 3, 8);
        auto v = R.check_simplicial(8);
        o.artifact += fmt::format("{} simplicial {}\n", name, v.ok);
        if (!v.ok)
            o.fail(fmt::format("{}: {}", name, v.problems.front()));
        for (int t = 1; t <= 4; ++t) {
            FTModule M = suspension_target(builtin_space("point", 2, 8), t);
            for (bool normalized : {true, false}) {
                try {
                    CochainComplex C = cosimplicial_der_complex(R, M, 3, normalized);
                    o.artifact += fmt::format("{} t={} {}:", name, t, normalized);
                    for (int h : C.cohomology())
                        o.artifact += fmt::format(" {}", h);
                    o.artifact += "\n";
                    ++complexes;
                } catch (const CochainError& e) {
                    o.fail(fmt::format("{} t={}: {}", name, t, e.what()));
                }
            }
        }
    }
    if (o.pass)
        o.detail = fmt::format("6 resolutions with s_max=3, D=8; {} cochain complexes with d^2 = 0", complexes);
    return o;
}

Outcome criterion7()
{
    Outcome o;
    for (int n = 1; n <= 2; ++n) {
        FreeAlgebra g(2, {n}, 8);
        CotripleResolution R(g.to_ft({"i"}), 3, 8);
        auto v = R.check_extra_degeneracy(g, 8);
        if (!v.ok)
            o.fail(fmt::format("K{}: {}", n, v.problems.front()));
        for (const char* y : {"point", "S1", "S2", "S1xS1"}) {
            SpaceModel X = eilenberg_maclane(2, n, 10), Y = builtin_space(y, 2, 10);
            Chart c = adams_chart(X, Y, 3, 6, 10);
            const std::string json = chart_emit(c, ChartFormat::Json);
            o.artifact += json;
            o.charts.push_back({fmt::format("adams_K{}_{}.json", n, y), json});
            for (auto& e : c.entries)
                if (e.s > 0 && e.dim != 0)
                    o.fail(fmt::format("K{} -> {}: E2^({},{}) = {}", n, y, e.s, e.t, e.dim));
        }
    }
    if (o.pass)
        o.detail = "K(F_2,1), K(F_2,2) into point, S1, S2, S1xS1; s <= 3, t <= 6";
    return o;
}

Outcome criterion8()
{
    Outcome o;
    for (auto [x, y] : {std::pair{"S2", "S1"}, {"S2", "point"}, {"K2", "S1"}}) {
        SpaceModel X = builtin_space(x, 2, 10), Y = builtin_space(y, 2, 10);
        Chart a = adams_chart(X, Y, 2, 6, 10);
        GhRun g = gh_run(X, Y, 2, 6, 10, 3);
        CompareReport cmp = compare_charts(a, g.chart);
        SaturationReport sat = d1_saturation_report(X, Y, 2, 6, 10, 1, 3);
        const std::string ja = chart_emit(a, ChartFormat::Json), jg = chart_emit(g.chart, ChartFormat::Json);
        o.artifact += ja + jg + cmp.to_json() + g.to_text() + sat.to_text();
        o.charts.push_back({fmt::format("compare_adams_{}_{}.json", x, y), ja});
        o.charts.push_back({fmt::format("compare_gh_{}_{}.json", x, y), jg});
        if (!cmp.ok)
            o.fail(fmt::format("{} -> {}: {}", x, y, cmp.to_text()));
        if (!g.ok())
            o.fail(fmt::format("{} -> {}: {}", x, y, g.problems.empty() ? "gh self-check" : g.problems.front()));
        if (!sat.ok)
            o.fail(fmt::format("{} -> {}: D1 saturation {}", x, y, sat.inconclusive ? "inconclusive" : "failed"));
    }
    if (o.pass)
        o.detail = "(S2,S1), (S2,point), (K2,S1): equal charts, explicit cochain comparison, witnesses by level 3";
    return o;
}

using Criterion = std::function<Outcome()>;

}  // namespace

int main(int argc, char** argv)
{
    const std::filesystem::path out_dir = argc > 1 ? argv[1] : "acceptance_charts";
    std::filesystem::create_directories(out_dir);
    std::vector<Criterion> criteria{criterion1, criterion2, criterion3, criterion4,
                                    criterion5, criterion6, criterion7, criterion8};
    std::vector<Outcome> first;
    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& [name, body] : o.charts)
            std::ofstream(out_dir / name, std::ios::binary) << body;
        std::cout << fmt::format("criterion {}: {}  {} ({:.1f} s)", i + 1, o.pass ? "PASS" : "FAIL", o.detail, secs)
                  << std::endl;
        all = all && o.pass;
        first.push_back(std::move(o));
    }

    // Determinism: everything again, compared byte for byte, charts also against the files.
    Outcome det;
    auto t0 = std::chrono::steady_clock::now();
    int files = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome again;
        try {
            again = criteria[i]();
        } catch (const std::exception& e) {
            det.fail(fmt::format("criterion {} threw on the second run: {}", i + 1, e.what()));
            continue;
        }
        if (again.artifact != first[i].artifact)
            det.fail(fmt::format("criterion {} output differs between runs", i + 1));
        if (again.charts != first[i].charts)
            det.fail(fmt::format("criterion {} charts differ between runs", i + 1));
        for (auto& [name, body] : again.charts) {
            std::ifstream f(out_dir / name, std::ios::binary);
            std::stringstream ss;
            ss << f.rdbuf();
            if (ss.str() != body)
                det.fail(fmt::format("{} on disk differs from the rerun", name));
            ++files;
        }
    }
    if (det.pass)
        det.detail = fmt::format("criteria 1-8 rerun byte-identical, {} chart files", files);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << fmt::format("criterion 9: {}  {} ({:.1f} s)", det.pass ? "PASS" : "FAIL", det.detail, secs) << std::endl;
    all = all && det.pass;
    return all ? 0 : 1;
}
