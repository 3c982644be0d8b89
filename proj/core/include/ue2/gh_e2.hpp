#pragma once

#include "ue2/adams_e2.hpp"
#include "ue2/fp_tower.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ue2 {

// The resolution base-changed to a tower level: same generators, scalars in
// F_{p^{k!}}, and P^0 acting Frobenius-semilinearly on the F_p monomial basis.
class WResolution
{
public:
    WResolution(const CotripleResolution& R, int level);

    int p() const { return R_->p(); }
    int level() const { return level_; }
    const CotripleResolution& underlying() const { return *R_; }
    int dim(int s, int d) const { return R_->level(s).dim(d); }
    TowerMatrix face_matrix(int s, int i, int d) const;
    SemilinearMap p0(int s, int d) const;

    // P^0(λv) = λ^p P^0(v) on random vectors, and faces commute with P^0.
    ValidationReport check_semilinear(int max_degree, uint64_t seed = 1) const;

private:
    const CotripleResolution* R_;
    int level_;
};

// The two-term descent complex taken levelwise: D^0 of Hom(base of R_s, M) ⊗ F_{p^{k!}}
// under 1 - P^0, with the coface differential restricted to it.
struct DescendedComplex
{
    int level = 1;
    std::vector<FpMatrix> kernels;   // columns: F_p-basis of D^0 at each s
    std::vector<FpMatrix> delta;     // differential in kernel coordinates
    // Explicit comparison with the F_p complex: C_s (Der -> D^0) and Psi_s back.
    std::vector<FpMatrix> phi;
    std::vector<FpMatrix> psi;
    std::vector<std::string> problems;
};

// levelwise[s], when given, is the descent of Hom(base of R_s, M) at this level;
// otherwise the kernel of 1 - P^0 is formed directly.
DescendedComplex descend_complex(const CochainComplex& fp, int level,
                                 const std::vector<DescentResult>* levelwise = nullptr);

struct GhRun
{
    Chart chart;
    int tower_max = 1;
    // dims[k-1][s][t-1]
    std::vector<std::vector<std::vector<int>>> dims_by_level;
    bool base_change_ok = true;    // level 1 differentials equal the F_p ones
    bool comparison_ok = true;     // explicit inverse cochain maps at every s
    bool s0_iso_ok = true;         // the s = 0 column matches the Adams kernel through the maps
    bool level_stable = true;
    bool semilinear_ok = true;
    std::vector<std::string> problems;
    bool ok() const { return base_change_ok && comparison_ok && s0_iso_ok && level_stable && semilinear_ok; }
    std::string to_text() const;
};

GhRun gh_run(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D, int tower_max);
Chart gh_chart(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D, int tower_max);

class WindowMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct CellDiff
{
    int s = 0;
    int t = 0;
    int a = 0;
    int b = 0;
};

struct CompareReport
{
    bool ok = true;
    std::vector<CellDiff> diffs;
    bool fringe_differs = false;
    std::string to_text() const;
    std::string to_json() const;
};

CompareReport compare_charts(const Chart& a, const Chart& b);

struct SaturationCell
{
    int s = 0;
    int t = 0;
    int hom_dim = 0;      // entries of Hom(base of R_s, M_t)
    int reps = 0;         // D^1 representatives at the representative level
    int witness_level = 0;  // highest level needed, 0 if none died
    bool dead = true;
};

struct SaturationReport
{
    int p = 2;
    int rep_level = 1;
    int max_level = 1;
    bool ok = true;
    bool inconclusive = false;
    std::vector<SaturationCell> cells;
    std::vector<std::string> problems;
    std::string to_text() const;
};

SaturationReport d1_saturation_report(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D,
                                      int rep_level, int max_level);

}  // namespace ue2
