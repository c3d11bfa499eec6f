#pragma once

#include "torusmd/bundle.hpp"
#include "torusmd/characters.hpp"
#include "torusmd/loops.hpp"
#include "torusmd/pointed.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torusmd {

/// Both constructions for one bundle, indexed by the shared canonical order.
/// A degenerate bundle (N = 1) carries only the invariants and a warning.
struct Analysis {
    explicit Analysis(const Monodromy& m) : bundle(m) {}

    Monodromy bundle;
    BundleInvariants inv;
    int epsilon = 1;

    LabelSet labels;
    std::vector<LoopOperator> loops;      // one per class
    std::vector<std::int64_t> q_values;   // qtilde of each class's lift
    std::vector<Rational> chern_simons;   // closed form, in [0, 1)
    std::vector<Rational> torsions;
    TwistData twists;                     // theta^l, d, D^2
    SquareMatrix<CycloNum> s_loops;       // S^l at the configured epsilon

    std::optional<QuadGroup> group;
    EquivariantData equiv;                // S^e, T^e, fusion

    std::vector<std::string> warnings;

    bool degenerate() const noexcept { return inv.degenerate(); }
    std::size_t rank() const noexcept { return labels.size(); }
};

/// Runs the character side and the equivariant side. Throws Error(InvalidInput)
/// if epsilon is not +-1; never throws DegenerateBundle.
Analysis analyze(const Monodromy& m, int epsilon = 1);

} // namespace torusmd
