#pragma once

#include "ue2/aq_der.hpp"
#include "ue2/chart.hpp"
#include "ue2/resolution.hpp"
#include "ue2/spaces.hpp"

#include <memory>
#include <vector>

namespace ue2 {

class TruncationTooSmall : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// H*(S^t ∧ Y_+) = Σ^t of the unreduced cohomology of Y, as a module.
FTModule suspension_target(const SpaceModel& Y, int t);

// Smallest truncation the window needs: t_max + top degree of the reduced cohomology of Y.
int required_truncation(const SpaceModel& Y, int t_max);

// Everything the chart is computed from: the resolution and one cochain complex per t.
struct AdamsData
{
    std::unique_ptr<CotripleResolution> resolution;
    std::vector<FTModule> targets;          // index t (0 unused)
    std::vector<CochainComplex> complexes;  // index t - 1
};

AdamsData adams_data(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D);

// Unstable algebra maps from H*X to H*Y, counted by enumeration; -1 above the cap.
long long hom_set_cardinality(const SpaceModel& X, const SpaceModel& Y, long long cap = 1LL << 20);
FringeCell fringe_cell(const SpaceModel& X, const SpaceModel& Y, const std::string& flag);

Chart adams_chart(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D);

}  // namespace ue2
