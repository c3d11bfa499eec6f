#pragma once

#include "torusmd/characters.hpp"
#include "torusmd/cyclotomic.hpp"
#include "torusmd/matrix.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace torusmd {

/// Finite Abelian group G inside Z_N x Z_N with the quadratic form
/// q(g) = exp(2 pi i qtilde(g) / N).
class QuadGroup {
  public:
    QuadGroup(Monodromy bundle, std::vector<Element> elements);

    const Monodromy& bundle() const noexcept { return bundle_; }
    std::int64_t order() const noexcept { return order_; }
    std::pair<std::int64_t, std::int64_t> shape() const noexcept { return shape_; }
    std::span<const Element> elements() const noexcept { return elements_; }

    bool contains(const Element& g) const;
    Element add(const Element& g, const Element& h) const { return torusmd::add(g, h, order_); }
    Element negate(const Element& g) const { return torusmd::negate(g, order_); }
    bool two_torsion(const Element& g) const { return is_two_torsion(g, order_); }

    /// qtilde(g) in [0, N).
    std::int64_t q(const Element& g) const;
    /// lambda(g, h) = qtilde(g+h) - qtilde(g) - qtilde(h) mod N.
    std::int64_t lambda(const Element& g, const Element& h) const;

  private:
    std::size_t index_of(const Element& g) const;

    Monodromy bundle_;
    std::int64_t order_;
    std::pair<std::int64_t, std::int64_t> shape_;
    std::vector<Element> elements_;
    std::vector<std::int64_t> q_values_;
    std::unordered_map<std::int64_t, std::size_t> index_;
};

/// Requires N >= 2; throws Error(DegenerateBundle) otherwise.
QuadGroup build_quad_group(const Monodromy& m);

/// Simple object of C(G,q)^Z2: X_b^+ / X_b^- for 2b = 0, or Y_{a,-a} for 2a != 0
/// (stored with the lexicographically smaller representative).
struct SimpleObject {
    enum class Type { Invertible, TwoDim };

    Type type = Type::Invertible;
    Element element;
    int sign = 1; // +1 / -1 for invertibles, 0 for two-dimensional objects

    bool invertible() const noexcept { return type == Type::Invertible; }
    int dimension() const noexcept { return invertible() ? 1 : 2; }
    std::string label() const;

    friend bool operator==(const SimpleObject&, const SimpleObject&) = default;
};

/// Invertibles by (element, + before -), then two-dimensional objects by element.
std::vector<SimpleObject> simple_objects(const QuadGroup& group);

/// Decomposition of X (x) Y as (object, multiplicity) pairs in canonical order.
/// Y_a (x) Y_a' uses the orbit rule on {+-a +- a'}: each {s,-s} orbit with
/// 2s != 0 gives Y_s, each s with 2s = 0 gives X_s^+ + X_s^-.
std::vector<std::pair<SimpleObject, int>> fusion(const QuadGroup& group, const SimpleObject& x,
                                                 const SimpleObject& y);

/// True when Y_a (x) Y_a' produces X_s^+- with s != 0, the case that the
/// two-case product rule leaves undefined.
bool fusion_edge_case(const QuadGroup& group, const SimpleObject& x, const SimpleObject& y);

/// Sparse N_{ij}^k over an indexed object list.
class FusionTensor {
  public:
    struct Term {
        std::size_t object;
        int multiplicity;

        friend bool operator==(const Term&, const Term&) = default;
    };

    FusionTensor() = default;
    explicit FusionTensor(std::size_t rank) : rank_(rank), products_(rank * rank) {}

    std::size_t rank() const noexcept { return rank_; }
    std::span<const Term> products(std::size_t i, std::size_t j) const { return products_[i * rank_ + j]; }
    std::vector<Term>& products(std::size_t i, std::size_t j) { return products_[i * rank_ + j]; }
    int coefficient(std::size_t i, std::size_t j, std::size_t k) const;

  private:
    std::size_t rank_ = 0;
    std::vector<std::vector<Term>> products_;
};

struct EquivariantData {
    std::vector<SimpleObject> objects;
    SquareMatrix<CycloNum> s;
    std::vector<CycloNum> t;
    FusionTensor fusion;
    std::vector<Rational> dims;
    /// Pairs (i, j) whose product hit the orbit-rule edge case.
    std::vector<std::pair<std::size_t, std::size_t>> edge_case_pairs;
};

EquivariantData modular_data_equiv(const QuadGroup& group);

} // namespace torusmd
