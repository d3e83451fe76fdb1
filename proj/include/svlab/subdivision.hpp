#pragma once

#include "chain.hpp"
#include "complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace svlab {

/**
 * Chain map of a barycentric subdivision. Barycenters of original vertices
 * are the vertices themselves; higher simplices get fresh indices.
 */
class SubdivisionMap {
public:
    explicit SubdivisionMap(std::map<VertexTuple, int> barycenter)
        : barycenter_(std::move(barycenter)) {}

    int barycenter_of(const VertexTuple& ascending) const {
        auto it = barycenter_.find(ascending);
        if (it == barycenter_.end())
            throw ChainError("no barycenter for that simplex");
        return it->second;
    }

    /** Subdivides each term: sum over flags of the simplex, signed by the
     *  ordering permutation. A k-simplex maps to (k+1)! terms. */
    Chain operator()(const Chain& chain) const {
        Chain result(chain.degree());
        const int k = chain.degree();
        std::vector<int> order(k + 1);
        for (const auto& [tuple, coeff] : chain.terms()) {
            std::iota(order.begin(), order.end(), 0);
            do {
                VertexTuple flag_tuple(k + 1);
                VertexTuple partial;
                int sign = permutation_parity(order);
                for (int i = 0; i <= k; ++i) {
                    partial.push_back(tuple[order[i]]);
                    VertexTuple sorted = partial;
                    std::sort(sorted.begin(), sorted.end());
                    flag_tuple[i] = barycenter_of(sorted);
                }
                result.add(flag_tuple, sign > 0 ? coeff : Rational(-coeff));
            } while (std::next_permutation(order.begin(), order.end()));
        }
        return result;
    }

private:
    static int permutation_parity(const std::vector<int>& perm) {
        int sign = 1;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
        return sign;
    }

    std::map<VertexTuple, int> barycenter_;
};

struct SubdivisionResult {
    Complex complex;
    SubdivisionMap chain_map;
};

/**
 * Barycentric subdivision. Every facet is replaced by (dim+1)! flags.
 * The returned chain map commutes with the boundary operator.
 */
inline SubdivisionResult barycentric_subdivide(const Complex& complex) {
    std::map<VertexTuple, int> barycenter;
    int next = complex.vertex_count();
    for (int k = 0; k <= complex.dim(); ++k)
        for (const auto& simplex : complex.simplices(k)) {
            if (k == 0)
                barycenter.emplace(simplex, simplex[0]);
            else
                barycenter.emplace(simplex, next++);
        }

    SubdivisionMap map(barycenter);
    std::vector<VertexTuple> new_facets;
    for (const auto& facet : complex.facets()) {
        Chain single(complex.dim());
        single.add(facet, Rational(1));
        Chain image = map(single);
        for (const auto& [tuple, coeff] : image.terms()) {
            VertexTuple oriented = tuple;
            if (coeff < 0 && oriented.size() >= 2)
                std::swap(oriented[0], oriented[1]);
            new_facets.push_back(oriented);
        }
    }
    Complex subdivided(complex.name() + ".sd", complex.dim(), next,
                       std::move(new_facets));
    return {std::move(subdivided), std::move(map)};
}

/**
 * Stellar subdivision at one simplex (given as an ascending tuple): a fresh
 * vertex is placed at its barycenter, and every facet containing the simplex
 * is replaced by one copy per simplex vertex, with that vertex swapped for
 * the center. The simplex itself disappears from the complex; all simplices
 * not containing it survive unchanged.
 */
inline Complex stellar_subdivide(const Complex& complex,
                                 const VertexTuple& simplex) {
    if (!is_ascending(simplex) || !complex.contains(simplex))
        throw InvalidComplex(complex.name() +
                             ": stellar subdivision needs an ascending "
                             "simplex of the complex");
    int center = complex.vertex_count();
    std::vector<VertexTuple> facets;
    for (const auto& tuple : complex.facets()) {
        std::vector<std::size_t> positions;
        for (int v : simplex) {
            auto it = std::find(tuple.begin(), tuple.end(), v);
            if (it != tuple.end())
                positions.push_back(
                    static_cast<std::size_t>(it - tuple.begin()));
        }
        if (positions.size() != simplex.size()) {
            facets.push_back(tuple);
            continue;
        }
        for (auto pos : positions) {
            VertexTuple replaced = tuple;
            replaced[pos] = center;
            facets.push_back(std::move(replaced));
        }
    }
    return Complex(complex.name() + ".st", complex.dim(), center + 1,
                   std::move(facets));
}

/**
 * Star subdivision of selected facets: each one is replaced by dim+1 facets
 * through a fresh barycenter vertex. Faces of untouched facets, and in
 * particular any boundary subcomplex, are preserved.
 */
inline Complex star_subdivide_facets(const Complex& complex,
                                     const std::vector<std::size_t>& which) {
    std::vector<bool> starred(complex.facet_count(), false);
    for (auto f : which) {
        if (f >= complex.facet_count())
            throw InvalidComplex(complex.name() + ": facet index out of range");
        starred[f] = true;
    }
    std::vector<VertexTuple> facets;
    int next = complex.vertex_count();
    for (std::size_t f = 0; f < complex.facet_count(); ++f) {
        const auto& tuple = complex.facets()[f];
        if (!starred[f]) {
            facets.push_back(tuple);
            continue;
        }
        int center = next++;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            VertexTuple replaced = tuple;
            replaced[i] = center;
            facets.push_back(std::move(replaced));
        }
    }
    return Complex(complex.name() + ".star", complex.dim(), next,
                   std::move(facets));
}

}  // namespace svlab
