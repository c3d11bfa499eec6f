#include "torusmd/characters.hpp"

#include "torusmd/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace torusmd {

namespace {

using i128 = __int128;

std::int64_t mod_n(i128 x, std::int64_t n) {
    i128 r = x % n;
    if (r < 0) r += n;
    return std::int64_t(r);
}

int field_order(std::int64_t n) {
    if (n > std::numeric_limits<int>::max())
        throw Error(ErrorCode::Overflow, "cyclotomic order " + std::to_string(n) + " is too large");
    return int(n);
}

} // namespace

Element add(const Element& x, const Element& y, std::int64_t n) {
    return {mod_n(i128(x.k) + y.k, n), mod_n(i128(x.l) + y.l, n)};
}

Element negate(const Element& x, std::int64_t n) { return {mod_n(-i128(x.k), n), mod_n(-i128(x.l), n)}; }

Element canonical_pair_representative(const Element& x, std::int64_t n) { return std::min(x, negate(x, n)); }

std::string_view to_string(CharKind kind) noexcept {
    switch (kind) {
    case CharKind::Irreducible: return "irreducible";
    case CharKind::ReduciblePlus: return "reducible+";
    case CharKind::ReducibleMinus: return "reducible-";
    }
    return "unknown";
}

std::string CharClass::label() const {
    std::string head = kind == CharKind::Irreducible ? "Y" : (kind == CharKind::ReduciblePlus ? "X+" : "X-");
    return head + "[" + std::to_string(kl.k) + "," + std::to_string(kl.l) + "]";
}

std::size_t LabelSet::invertible_count() const {
    return std::size_t(std::count_if(classes.begin(), classes.end(), [](const CharClass& c) { return c.reducible(); }));
}

std::size_t LabelSet::two_dim_count() const { return classes.size() - invertible_count(); }

Lift lift_of(const Monodromy& m, const Element& kl) {
    const std::int64_t n = m.order();
    const i128 top = i128(m.a() + 1) * kl.k + i128(m.c()) * kl.l;
    const i128 bottom = i128(m.b()) * kl.k + i128(m.d() + 1) * kl.l;
    if (top % n != 0 || bottom % n != 0)
        throw Error(ErrorCode::InternalInconsistency, "(k,l) is not a solution of the character equations");
    return {std::int64_t(top / n), std::int64_t(bottom / n)};
}

std::vector<Element> solution_group(const Monodromy& m) {
    const std::int64_t n = m.order();
    const SmithForm snf = smith_normal_form(m.relation_matrix());
    const IntMatrix2 u_inv = snf.left.unimodular_inverse();
    const IntMatrix2 f = m.solution_map();

    // Z^2 / Im(g) is Z_d1 x Z_d2 through x -> U x, so U^-1 (i, j) runs over coset representatives.
    std::vector<Element> out;
    out.reserve(std::size_t(n));
    for (std::int64_t i = 0; i < snf.d1; ++i) {
        for (std::int64_t j = 0; j < snf.d2; ++j) {
            const i128 mu = i128(u_inv.a) * i + i128(u_inv.b) * j;
            const i128 nu = i128(u_inv.c) * i + i128(u_inv.d) * j;
            const std::int64_t mu_r = mod_n(mu, n), nu_r = mod_n(nu, n);
            out.push_back({mod_n(i128(f.a) * mu_r + i128(f.b) * nu_r, n),
                           mod_n(i128(f.c) * mu_r + i128(f.d) * nu_r, n)});
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end() || std::int64_t(out.size()) != n)
        throw Error(ErrorCode::InternalInconsistency, "image of f does not have N distinct elements");
    return out;
}

std::vector<Element> brute_force_solutions(const Monodromy& m) {
    const std::int64_t n = m.order();
    std::vector<Element> out;
    for (std::int64_t k = 0; k < n; ++k)
        for (std::int64_t l = 0; l < n; ++l)
            if (mod_n(i128(m.a() + 1) * k + i128(m.c()) * l, n) == 0 &&
                mod_n(i128(m.b()) * k + i128(m.d() + 1) * l, n) == 0)
                out.push_back({k, l});
    return out;
}

bool parity_permits(const ParityQuad& p, const SignPair& eps) {
    constexpr auto E = Parity::Even;
    constexpr auto O = Parity::Odd;
    const ParityQuad all_odd_diag_even_off{O, O, E, E};
    if (eps.x == 0 && eps.y == 0) return true;
    if (p == all_odd_diag_even_off) return true;
    if (eps.x == 1 && eps.y == 1) return p == ParityQuad{E, E, O, O};
    if (eps.x == 0 && eps.y == 1) return p == ParityQuad{O, O, O, E};
    return p == ParityQuad{O, O, E, O};
}

LabelSet solve_characters(const Monodromy& m) {
    const BundleInvariants inv = invariants(m);
    const std::int64_t n = inv.order;

    LabelSet out;
    std::vector<CharClass> irreducible;
    for (const Element& g : solution_group(m)) {
        if (is_two_torsion(g, n)) {
            const SignPair eps{int(2 * g.k / n), int(2 * g.l / n)};
            if (!parity_permits(inv.parity, eps))
                throw Error(ErrorCode::InternalInconsistency,
                            "reducible sign pair (" + std::to_string(eps.x) + "," + std::to_string(eps.y) +
                                ") is not allowed for parity " + inv.parity.to_string());
            const Lift lift = lift_of(m, g);
            out.classes.push_back({g, lift, CharKind::ReduciblePlus, eps});
            out.classes.push_back({g, lift, CharKind::ReducibleMinus, eps});
        } else if (g == canonical_pair_representative(g, n)) {
            irreducible.push_back({g, lift_of(m, g), CharKind::Irreducible, std::nullopt});
        }
    }
    // solution_group is sorted, so both runs are already in canonical order.
    out.classes.insert(out.classes.end(), irreducible.begin(), irreducible.end());
    return out;
}

std::int64_t qhat(const Monodromy& m, const Lift& munu) {
    const std::int64_t n = m.order();
    const i128 mu = mod_n(munu.mu, n), nu = mod_n(munu.nu, n);
    const i128 c = mod_n(m.c(), n), amd = mod_n(i128(m.a()) - m.d(), n), b = mod_n(m.b(), n);
    const i128 value = mod_n(c * nu % n * nu, n) + mod_n(amd * mu % n * nu, n) - mod_n(b * mu % n * mu, n);
    return mod_n(value, n);
}

std::int64_t qtilde(const Monodromy& m, const Lift& munu) {
    const std::int64_t raw = qhat(m, munu);
    return m.orientation() > 0 ? raw : mod_n(-i128(raw), m.order());
}

std::int64_t bilinear_lambda(const Monodromy& m, const Lift& g1, const Lift& g2) {
    const Lift sum{g1.mu + g2.mu, g1.nu + g2.nu};
    return mod_n(i128(qtilde(m, sum)) - qtilde(m, g1) - qtilde(m, g2), m.order());
}

Rational chern_simons(const Monodromy& m, const CharClass& x) {
    if (!x.reducible()) {
        const std::int64_t n = m.order();
        const i128 value = i128(x.kl.k) * x.munu.nu - i128(x.kl.l) * x.munu.mu;
        return Rational(mod_n(value, n), n);
    }
    const SignPair eps = *x.eps;
    const i128 value = i128(m.a() + m.d() + 2) * eps.x * eps.y + i128(m.b()) * eps.x + i128(m.c()) * eps.y;
    return Rational(mod_n(value, 4), 4);
}

Rational chern_simons_from_form(const Monodromy& m, const CharClass& x) {
    const std::int64_t n = m.order();
    return Rational(mod_n(-i128(qtilde(m, x.munu)), n), n);
}

Rational torsion(const Monodromy& m, const CharClass& x) {
    return x.reducible() ? Rational(m.order()) : Rational(m.order(), 4);
}

TwistData twist_and_dims(const Monodromy& m, const LabelSet& labels) {
    TwistData out;
    const std::int64_t n = m.order();
    const Rational cs0 = chern_simons(m, labels.unit());

    std::vector<Rational> deltas;
    std::int64_t common = n;
    for (const CharClass& x : labels.classes) {
        Rational delta = (chern_simons(m, x) - cs0).mod1();
        const BigInt den = delta.denominator();
        if (!delta.is_small()) throw Error(ErrorCode::Overflow, "twist denominator out of range");
        common = std::lcm(common, den.convert_to<std::int64_t>());
        deltas.push_back(std::move(delta));
    }
    const int order = field_order(common);
    for (const Rational& delta : deltas) {
        const std::int64_t p = delta.numerator().convert_to<std::int64_t>();
        const std::int64_t q = delta.denominator().convert_to<std::int64_t>();
        out.theta.push_back(root_of_unity(order, -p * (common / q)));
    }

    out.global_dim_sq = Rational(2) * torsion(m, labels.unit());
    for (const CharClass& x : labels.classes) {
        auto d = (out.global_dim_sq / (Rational(2) * torsion(m, x))).sqrt();
        if (!d) throw Error(ErrorCode::InternalInconsistency, "quantum dimension is not rational");
        out.dims.push_back(*d);
    }
    return out;
}

} // namespace torusmd
