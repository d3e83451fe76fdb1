#pragma once

#include "chain.hpp"
#include "complex.hpp"

#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct NotManifold : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotOrientable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** One boundary component with its induced orientation. */
struct BoundaryComponent {
    Complex complex;
    Chain induced_cycle;  // coefficients are all +-1
};

/**
 * A complex that passed combinatorial manifold checking, together with a
 * coherent orientation (per-facet signs), its boundary decomposition and
 * connectivity data. Disconnected inputs are allowed; each component is
 * oriented independently, root facet positive.
 */
class ManifoldComplex {
public:
    ManifoldComplex(Complex complex, std::vector<int> orientation,
                    std::vector<BoundaryComponent> boundary, bool connected)
        : complex_(std::move(complex)),
          orientation_(std::move(orientation)),
          boundary_(std::move(boundary)),
          connected_(connected) {}

    const Complex& complex() const { return complex_; }
    const std::vector<int>& orientation() const { return orientation_; }
    const std::vector<BoundaryComponent>& boundary_components() const {
        return boundary_;
    }
    bool is_closed() const { return boundary_.empty(); }
    bool is_connected() const { return connected_; }
    int dim() const { return complex_.dim(); }

private:
    Complex complex_;
    std::vector<int> orientation_;
    std::vector<BoundaryComponent> boundary_;
    bool connected_;
};

namespace detail {

struct RidgeIncidence {
    int facet;
    int sign;  // coefficient of the ascending ridge in d(ascending facet)
};

/** Ridge (ascending tuple) -> incidences. Throws if a ridge has > 2. */
inline std::map<VertexTuple, std::vector<RidgeIncidence>> ridge_table(
    const Complex& complex) {
    std::map<VertexTuple, std::vector<RidgeIncidence>> table;
    if (complex.dim() == 0) return table;
    const auto& facets = complex.facets();
    for (std::size_t f = 0; f < facets.size(); ++f) {
        auto [sorted, parity] = canonical(facets[f]);
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            int sign = parity * ((i % 2 == 0) ? 1 : -1);
            auto& slot = table[face_of(sorted, i)];
            slot.push_back({static_cast<int>(f), sign});
            if (slot.size() > 2) {
                std::string ridge;
                for (int v : face_of(sorted, i)) ridge += std::to_string(v) + " ";
                throw NotManifold(complex.name() + ": ridge ( " + ridge +
                                  ") lies in more than two facets");
            }
        }
    }
    return table;
}

}  // namespace detail

/**
 * Checks the pseudo-manifold conditions (every ridge in at most two facets)
 * and propagates a coherent orientation across facet adjacency. Throws
 * NotManifold / NotOrientable with the offending ridge or facet named.
 */
inline ManifoldComplex manifold_check(const Complex& complex) {
    const auto& facets = complex.facets();
    const int n = static_cast<int>(facets.size());
    auto ridges = detail::ridge_table(complex);

    std::vector<int> orientation(n, 0);
    int components = 0;
    for (int root = 0; root < n; ++root) {
        if (orientation[root] != 0) continue;
        ++components;
        orientation[root] = 1;
        std::queue<int> todo;
        todo.push(root);
        while (!todo.empty()) {
            int f = todo.front();
            todo.pop();
            if (complex.dim() == 0) continue;
            auto [sorted, parity] = canonical(facets[f]);
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                const auto& slot = ridges.at(face_of(sorted, i));
                if (slot.size() != 2) continue;
                const auto& a = slot[0];
                const auto& b = slot[1];
                const auto& self = (a.facet == f) ? a : b;
                const auto& other = (a.facet == f) ? b : a;
                if (other.facet == f) continue;  // same facet twice: impossible
                int want = -orientation[f] * self.sign * other.sign;
                if (orientation[other.facet] == 0) {
                    orientation[other.facet] = want;
                    todo.push(other.facet);
                } else if (orientation[other.facet] != want) {
                    throw NotOrientable(complex.name() +
                                        ": orientation propagation fails at facet " +
                                        std::to_string(other.facet));
                }
            }
        }
    }

    // Induced boundary cycle: the boundary of the coherent facet sum.
    Chain fundamental(complex.dim());
    for (int f = 0; f < n; ++f)
        fundamental.add(facets[f], Rational(orientation[f]));
    Chain full_boundary =
        complex.dim() > 0 ? boundary(complex, fundamental) : Chain(0);

    // Boundary ridges: incidence count one.
    std::vector<VertexTuple> boundary_ridges;
    for (const auto& [ridge, slot] : ridges)
        if (slot.size() == 1) boundary_ridges.push_back(ridge);

    // Group boundary ridges into components along shared (dim-2)-faces.
    std::vector<BoundaryComponent> boundary_list;
    if (!boundary_ridges.empty()) {
        const int rcount = static_cast<int>(boundary_ridges.size());
        std::map<VertexTuple, std::vector<int>> subface_of;
        if (complex.dim() >= 2) {
            for (int r = 0; r < rcount; ++r)
                for (std::size_t i = 0; i < boundary_ridges[r].size(); ++i)
                    subface_of[face_of(boundary_ridges[r], i)].push_back(r);
        }
        std::vector<int> group(rcount, -1);
        int groups = 0;
        for (int r = 0; r < rcount; ++r) {
            if (group[r] >= 0) continue;
            int id = groups++;
            std::queue<int> todo;
            todo.push(r);
            group[r] = id;
            while (!todo.empty()) {
                int cur = todo.front();
                todo.pop();
                for (std::size_t i = 0; i < boundary_ridges[cur].size(); ++i) {
                    auto it = subface_of.find(face_of(boundary_ridges[cur], i));
                    if (it == subface_of.end()) continue;
                    for (int nb : it->second)
                        if (group[nb] < 0) {
                            group[nb] = id;
                            todo.push(nb);
                        }
                }
            }
        }
        for (int id = 0; id < groups; ++id) {
            std::vector<VertexTuple> comp_facets;
            Chain induced(complex.dim() - 1);
            for (int r = 0; r < rcount; ++r) {
                if (group[r] != id) continue;
                Rational coeff = full_boundary.coefficient(boundary_ridges[r]);
                VertexTuple tuple = boundary_ridges[r];
                if (coeff < 0 && tuple.size() >= 2) std::swap(tuple[0], tuple[1]);
                comp_facets.push_back(tuple);
                induced.add(boundary_ridges[r], coeff);
            }
            Complex comp(complex.name() + ".bd" + std::to_string(id),
                         complex.dim() - 1, complex.vertex_count(),
                         std::move(comp_facets));
            boundary_list.push_back({std::move(comp), std::move(induced)});
        }
    }

    return ManifoldComplex(complex, std::move(orientation),
                           std::move(boundary_list), components <= 1);
}

/**
 * Coherent facet sum: a cycle for closed manifolds, a relative cycle
 * otherwise. Its l1 norm equals the facet count.
 */
inline Chain fundamental_cycle(const ManifoldComplex& manifold) {
    Chain cycle(manifold.dim());
    const auto& facets = manifold.complex().facets();
    for (std::size_t f = 0; f < facets.size(); ++f)
        cycle.add(facets[f], Rational(manifold.orientation()[f]));
    return cycle;
}

}  // namespace svlab
