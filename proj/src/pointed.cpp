#include "torusmd/pointed.hpp"

#include "torusmd/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace torusmd {

namespace {

// Invertibles (by element, + before -) precede two-dimensional objects (by element).
auto order_key(const SimpleObject& x) { return std::make_tuple(x.invertible() ? 0 : 1, x.element, -x.sign); }

bool object_less(const SimpleObject& x, const SimpleObject& y) { return order_key(x) < order_key(y); }

std::int64_t mod_n(std::int64_t x, std::int64_t n) {
    std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

} // namespace

QuadGroup::QuadGroup(Monodromy bundle, std::vector<Element> elements)
    : bundle_(bundle), order_(bundle.order()), elements_(std::move(elements)) {
    const BundleInvariants inv = invariants(bundle_);
    shape_ = inv.group_shape;
    std::sort(elements_.begin(), elements_.end());
    q_values_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        index_.emplace(elements_[i].k * order_ + elements_[i].l, i);
        q_values_.push_back(qtilde(bundle_, lift_of(bundle_, elements_[i])));
    }
    if (std::int64_t(elements_.size()) != order_ || index_.size() != elements_.size())
        throw Error(ErrorCode::InternalInconsistency, "solution group does not have N distinct elements");

    const auto two_torsion_count = std::count_if(elements_.begin(), elements_.end(),
                                                 [this](const Element& g) { return two_torsion(g); });
    const std::int64_t expected = std::gcd(std::int64_t(2), shape_.first) * std::gcd(std::int64_t(2), shape_.second);
    if (two_torsion_count != expected)
        throw Error(ErrorCode::InternalInconsistency, "2-torsion of G does not match Z_r x Z_(N/r)");
}

bool QuadGroup::contains(const Element& g) const { return index_.count(g.k * order_ + g.l) != 0; }

std::size_t QuadGroup::index_of(const Element& g) const {
    auto it = index_.find(g.k * order_ + g.l);
    if (it == index_.end()) throw Error(ErrorCode::InternalInconsistency, "element is not in G");
    return it->second;
}

std::int64_t QuadGroup::q(const Element& g) const { return q_values_[index_of(g)]; }

std::int64_t QuadGroup::lambda(const Element& g, const Element& h) const {
    return mod_n(q(add(g, h)) - q(g) - q(h), order_);
}

QuadGroup build_quad_group(const Monodromy& m) {
    invariants(m);
    return QuadGroup(m, solution_group(m));
}

std::string SimpleObject::label() const {
    std::string head = invertible() ? (sign > 0 ? "X+" : "X-") : "Y";
    return head + "[" + std::to_string(element.k) + "," + std::to_string(element.l) + "]";
}

std::vector<SimpleObject> simple_objects(const QuadGroup& group) {
    std::vector<SimpleObject> out;
    for (const Element& g : group.elements()) {
        if (group.two_torsion(g)) {
            out.push_back({SimpleObject::Type::Invertible, g, 1});
            out.push_back({SimpleObject::Type::Invertible, g, -1});
        } else if (g == canonical_pair_representative(g, group.order())) {
            out.push_back({SimpleObject::Type::TwoDim, g, 0});
        }
    }
    std::sort(out.begin(), out.end(), object_less);
    return out;
}

std::vector<std::pair<SimpleObject, int>> fusion(const QuadGroup& group, const SimpleObject& x,
                                                 const SimpleObject& y) {
    using Type = SimpleObject::Type;
    const std::int64_t n = group.order();
    std::vector<std::pair<SimpleObject, int>> out;

    if (x.invertible() && y.invertible()) {
        out.push_back({{Type::Invertible, group.add(x.element, y.element), x.sign * y.sign}, 1});
        return out;
    }
    if (x.invertible() || y.invertible()) {
        const SimpleObject& inv = x.invertible() ? x : y;
        const SimpleObject& two = x.invertible() ? y : x;
        const Element s = group.add(inv.element, two.element);
        out.push_back({{Type::TwoDim, canonical_pair_representative(s, n), 0}, 1});
        return out;
    }

    const Element a = x.element, b = y.element;
    std::map<Element, int> image;
    for (const Element& e : {group.add(a, b), group.add(a, group.negate(b)), group.add(group.negate(a), b),
                             group.negate(group.add(a, b))})
        ++image[e];
    for (const auto& [e, mult] : image) {
        if (group.two_torsion(e)) {
            out.push_back({{Type::Invertible, e, 1}, mult / 2});
            out.push_back({{Type::Invertible, e, -1}, mult / 2});
        } else if (e == canonical_pair_representative(e, n)) {
            out.push_back({{Type::TwoDim, e, 0}, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return object_less(p.first, q.first); });
    return out;
}

bool fusion_edge_case(const QuadGroup& group, const SimpleObject& x, const SimpleObject& y) {
    if (x.invertible() || y.invertible()) return false;
    for (const auto& [obj, mult] : fusion(group, x, y))
        if (obj.invertible() && obj.element != Element{}) return true;
    return false;
}

int FusionTensor::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    for (const Term& t : products(i, j))
        if (t.object == k) return t.multiplicity;
    return 0;
}

EquivariantData modular_data_equiv(const QuadGroup& group) {
    EquivariantData out;
    out.objects = simple_objects(group);
    const std::size_t rank = out.objects.size();
    const int order = int(group.order());

    std::map<std::tuple<int, Element, int>, std::size_t> index;
    for (std::size_t i = 0; i < rank; ++i) index.emplace(order_key(out.objects[i]), i);

    for (const SimpleObject& x : out.objects) {
        out.t.push_back(root_of_unity(order, group.q(x.element)));
        out.dims.emplace_back(x.dimension());
    }

    out.s = SquareMatrix<CycloNum>(rank, CycloNum::zero(order));
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            const SimpleObject& x = out.objects[i];
            const SimpleObject& y = out.objects[j];
            const std::int64_t lam = group.lambda(x.element, y.element);
            if (x.invertible() && y.invertible())
                out.s(i, j) = root_of_unity(order, lam);
            else if (x.invertible() || y.invertible())
                out.s(i, j) = Rational(2) * root_of_unity(order, lam);
            else
                out.s(i, j) = Rational(2) * (root_of_unity(order, lam) + root_of_unity(order, -lam));
        }
    }

    out.fusion = FusionTensor(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            auto& terms = out.fusion.products(i, j);
            for (const auto& [obj, mult] : fusion(group, out.objects[i], out.objects[j])) {
                if (mult == 0) continue;
                auto it = index.find(order_key(obj));
                if (it == index.end()) throw Error(ErrorCode::InternalInconsistency, "fusion left the object list");
                terms.push_back({it->second, mult});
            }
            if (fusion_edge_case(group, out.objects[i], out.objects[j])) out.edge_case_pairs.emplace_back(i, j);
        }
    }
    return out;
}

} // namespace torusmd
