#pragma once

#include "ue2/unstable_alg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ue2 {

// Reduced mod-p cohomology of a space as an FT unstable algebra.
struct SpaceModel
{
    std::string name;
    FTModule cohomology;
    // Finite cohomology (known top degree); false for Eilenberg-MacLane factors.
    bool finite = true;
    // When the reduced cohomology is the free unstable algebra on classes in these
    // degrees, its basis is the monomial basis of FreeAlgebra(p, free_generators, D).
    std::optional<std::vector<int>> free_generators;

    int p() const { return cohomology.p(); }
    int truncation() const { return cohomology.truncation(); }
};

class UnknownSpace : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

SpaceModel sphere(int p, int n, int D);
SpaceModel eilenberg_maclane(int p, int n, int D);
SpaceModel point(int p, int D);
SpaceModel product(const SpaceModel& X, const SpaceModel& Y);

// Names: "point", "S<n>" or "sphere(<n>)", "K<n>" or "K(F_<p>,<n>)", and products
// of two of these joined by "x" (e.g. "S1xS1", "S2 x K(F_2,1)").
SpaceModel builtin_space(const std::string& name, int p, int D);

}  // namespace ue2
