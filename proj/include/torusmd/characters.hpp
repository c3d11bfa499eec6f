#pragma once

#include "torusmd/bundle.hpp"
#include "torusmd/cyclotomic.hpp"
#include "torusmd/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torusmd {

/// Element (k, l) of Z_N x Z_N, stored with both coordinates in [0, N).
struct Element {
    std::int64_t k = 0;
    std::int64_t l = 0;

    friend auto operator<=>(const Element&, const Element&) = default;
};

Element add(const Element& x, const Element& y, std::int64_t n);
Element negate(const Element& x, std::int64_t n);
inline bool is_two_torsion(const Element& x, std::int64_t n) { return (2 * x.k) % n == 0 && (2 * x.l) % n == 0; }
/// Lexicographically smaller of x and -x.
Element canonical_pair_representative(const Element& x, std::int64_t n);

/// Integer lift (mu, nu) of a character.
struct Lift {
    std::int64_t mu = 0;
    std::int64_t nu = 0;

    friend auto operator<=>(const Lift&, const Lift&) = default;
};

enum class CharKind { Irreducible, ReduciblePlus, ReducibleMinus };

std::string_view to_string(CharKind kind) noexcept;

struct SignPair {
    int x = 0; // epsilon_x
    int y = 0; // epsilon_y

    friend bool operator==(const SignPair&, const SignPair&) = default;
};

/// A non-Abelian SL(2,C) character of the bundle.
struct CharClass {
    Element kl;
    Lift munu;
    CharKind kind = CharKind::Irreducible;
    std::optional<SignPair> eps; // present iff reducible

    bool reducible() const noexcept { return kind != CharKind::Irreducible; }
    /// "X+[k,l]", "X-[k,l]" or "Y[k,l]" in (k, l) coordinates.
    std::string label() const;
};

/// All non-Abelian characters, unit X+(0,0) first, then the remaining
/// reducible classes by ((k,l), sign), then irreducible classes by (k,l).
struct LabelSet {
    std::vector<CharClass> classes;

    const CharClass& unit() const { return classes.front(); }
    std::size_t size() const noexcept { return classes.size(); }
    std::size_t invertible_count() const;
    std::size_t two_dim_count() const;
};

/// Lift solving (a+1)k + cl = mu N, bk + (d+1)l = nu N exactly.
Lift lift_of(const Monodromy& m, const Element& kl);

/// The solution group G as the image of f, enumerated through the Smith form
/// of g. Sorted; has exactly N elements.
std::vector<Element> solution_group(const Monodromy& m);

/// Every (k, l) in [0,N)^2 satisfying both congruences, by exhaustive search.
std::vector<Element> brute_force_solutions(const Monodromy& m);

/// Whether the parity quadruple permits the reducible sign pair.
bool parity_permits(const ParityQuad& parity, const SignPair& eps);

/// Requires N >= 2 (Error(DegenerateBundle) otherwise). Throws
/// Error(InternalInconsistency) if a reducible sign pair contradicts the
/// parity table.
LabelSet solve_characters(const Monodromy& m);

/// c nu^2 + (a-d) mu nu - b mu^2 mod N, as written, without orientation.
std::int64_t qhat(const Monodromy& m, const Lift& munu);

/// The quadratic form on G: sign(a+d+2) * qhat mod N, in [0, N). The sign
/// makes -qtilde/N the Chern-Simons invariant for either sign of the trace.
std::int64_t qtilde(const Monodromy& m, const Lift& munu);

/// qtilde(g1 + g2) - qtilde(g1) - qtilde(g2) mod N.
std::int64_t bilinear_lambda(const Monodromy& m, const Lift& g1, const Lift& g2);

/// Chern-Simons invariant mod 1 from the closed form (irreducible:
/// (k nu - l mu)/N; reducible: ((a+d+2) ex ey + b ex + c ey)/4).
Rational chern_simons(const Monodromy& m, const CharClass& x);

/// -qtilde(mu, nu)/N mod 1; must agree with chern_simons.
Rational chern_simons_from_form(const Monodromy& m, const CharClass& x);

/// Adjoint torsion: N/4 for irreducible, N for reducible classes.
Rational torsion(const Monodromy& m, const CharClass& x);

struct TwistData {
    std::vector<CycloNum> theta; // exp(-2 pi i (CS - CS_0)), all in one field
    std::vector<Rational> dims;
    Rational global_dim_sq; // D^2 = 2 Tor(chi_0)
};

TwistData twist_and_dims(const Monodromy& m, const LabelSet& labels);

} // namespace torusmd
