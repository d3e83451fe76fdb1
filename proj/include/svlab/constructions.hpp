#pragma once

#include "chain.hpp"
#include "complex.hpp"
#include "datasets.hpp"
#include "manifold.hpp"
#include "subdivision.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct GlueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Which boundary components to identify, and the vertex bijection
 *  (left component coordinates -> right component coordinates). */
struct GlueingSpec {
    int left_component = 0;
    int right_component = 0;
    std::map<int, int> vertex_map;
};

namespace detail {

inline std::set<int> component_support(const BoundaryComponent& component) {
    auto vec = component.complex.support();
    return {vec.begin(), vec.end()};
}

/** Pushes a chain through a vertex relabelling. */
inline Chain relabel_chain(const Chain& chain,
                           const std::function<int(int)>& map) {
    Chain result(chain.degree());
    for (const auto& [tuple, coeff] : chain.terms()) {
        VertexTuple image(tuple.size());
        for (std::size_t i = 0; i < tuple.size(); ++i) image[i] = map(tuple[i]);
        result.add(std::move(image), coeff);
    }
    return result;
}

inline void check_simplicial_iso(const BoundaryComponent& left,
                                 const BoundaryComponent& right,
                                 const std::map<int, int>& phi) {
    auto lsup = component_support(left);
    auto rsup = component_support(right);
    if (phi.size() != lsup.size())
        throw GlueError("vertex bijection does not cover the left component");
    std::set<int> image;
    for (const auto& [u, v] : phi) {
        if (!lsup.count(u))
            throw GlueError("bijection key " + std::to_string(u) +
                            " is not a vertex of the left component");
        if (!rsup.count(v))
            throw GlueError("bijection value " + std::to_string(v) +
                            " is not a vertex of the right component");
        if (!image.insert(v).second)
            throw GlueError("vertex bijection is not injective");
    }
    if (image.size() != rsup.size())
        throw GlueError("vertex bijection does not cover the right component");

    std::set<VertexTuple> right_facets;
    for (const auto& facet : right.complex.facets())
        right_facets.insert(canonical(facet).first);
    for (const auto& facet : left.complex.facets()) {
        VertexTuple image_facet;
        for (int v : facet) image_facet.push_back(phi.at(v));
        std::sort(image_facet.begin(), image_facet.end());
        if (!right_facets.count(image_facet))
            throw GlueError("bijection is not simplicial: a left facet does "
                            "not map onto a right facet");
    }
}

inline void check_orientation_reversing(const BoundaryComponent& left,
                                        const BoundaryComponent& right,
                                        const std::map<int, int>& phi) {
    Chain pushed = relabel_chain(left.induced_cycle,
                                 [&phi](int v) { return phi.at(v); });
    Chain sum = pushed + right.induced_cycle;
    if (!sum.is_zero())
        throw GlueError("bijection is not orientation-reversing");
}

/** Every simplex of the complex (all dimensions), as ascending tuples. */
inline std::set<VertexTuple> closure_simplices(const Complex& complex) {
    std::set<VertexTuple> result;
    for (int k = 0; k <= complex.dim(); ++k)
        for (const auto& simplex : complex.simplices(k))
            result.insert(simplex);
    return result;
}

/**
 * Makes the glued subcomplex full: any simplex spanned by `support` vertices
 * that is not itself a simplex of the glued subcomplex would collide with its
 * partner under the identification, so it is stellar subdivided away. New
 * simplices always contain a fresh center outside `support`, so this
 * terminates.
 */
inline Complex make_full(Complex complex, const std::set<int>& support,
                         const std::set<VertexTuple>& glued) {
    for (bool dirty = true; dirty;) {
        dirty = false;
        for (int k = 1; k <= complex.dim() && !dirty; ++k)
            for (const auto& simplex : complex.simplices(k)) {
                bool spanned = true;
                for (int v : simplex)
                    if (!support.count(v)) {
                        spanned = false;
                        break;
                    }
                if (spanned && !glued.count(simplex)) {
                    complex = stellar_subdivide(complex, simplex);
                    dirty = true;
                    break;
                }
            }
    }
    return complex;
}

}  // namespace detail

/**
 * Glues two manifolds along one boundary component each, via an
 * orientation-reversing simplicial bijection. Each side is first stellar
 * subdivided until the glued component is a full subcomplex, so the quotient
 * stays a genuine simplicial complex. Checks
 * chi(Z) = chi(L) + chi(R) - chi(glued).
 */
inline ManifoldComplex glue(const ManifoldComplex& left,
                            const ManifoldComplex& right,
                            const GlueingSpec& spec) {
    const bool self = (&left == &right);
    if (spec.left_component < 0 ||
        spec.left_component >=
            static_cast<int>(left.boundary_components().size()))
        throw GlueError("left boundary component index out of range");
    if (spec.right_component < 0 ||
        spec.right_component >=
            static_cast<int>(right.boundary_components().size()))
        throw GlueError("right boundary component index out of range");
    if (self && spec.left_component == spec.right_component)
        throw GlueError("cannot glue a boundary component to itself");

    const auto& lcomp = left.boundary_components()[spec.left_component];
    const auto& rcomp = right.boundary_components()[spec.right_component];
    detail::check_simplicial_iso(lcomp, rcomp, spec.vertex_map);
    detail::check_orientation_reversing(lcomp, rcomp, spec.vertex_map);

    auto lsup = detail::component_support(lcomp);
    auto rsup = detail::component_support(rcomp);

    const long long chi_left = left.complex().euler_characteristic();
    const long long chi_right = right.complex().euler_characteristic();
    const long long chi_glued = lcomp.complex.euler_characteristic();

    if (self) {
        std::set<int> overlap;
        for (int v : lsup)
            if (rsup.count(v)) overlap.insert(v);
        if (!overlap.empty())
            throw GlueError("self-glueing components share vertices; the "
                            "identification would cascade");
        // Identify v with phi^-1(v): rewrite right-component vertices.
        std::map<int, int> to_left;
        for (const auto& [u, v] : spec.vertex_map) to_left[v] = u;
        auto relabel = [&to_left](int v) {
            auto it = to_left.find(v);
            return it == to_left.end() ? v : it->second;
        };

        // Subdivide until the identification is injective on simplices:
        // first no edge may have both endpoints identified, then no two
        // distinct simplices may share an image, except a glued-component
        // simplex landing on its partner.
        std::set<VertexTuple> lglued = detail::closure_simplices(lcomp.complex);
        std::set<VertexTuple> rglued = detail::closure_simplices(rcomp.complex);
        Complex prep = left.complex();
        for (bool dirty = true; dirty;) {
            dirty = false;
            for (const auto& edge : prep.simplices(1))
                if (relabel(edge[0]) == relabel(edge[1])) {
                    prep = stellar_subdivide(prep, edge);
                    dirty = true;
                    break;
                }
            if (dirty) continue;
            for (int k = 1; k <= prep.dim() && !dirty; ++k) {
                std::map<VertexTuple, VertexTuple> image_of;
                for (const auto& simplex : prep.simplices(k)) {
                    VertexTuple image(simplex.size());
                    for (std::size_t i = 0; i < simplex.size(); ++i)
                        image[i] = relabel(simplex[i]);
                    std::sort(image.begin(), image.end());
                    auto [it, fresh] = image_of.emplace(image, simplex);
                    if (fresh) continue;
                    const VertexTuple& other = it->second;
                    const VertexTuple* victim = nullptr;
                    if (!lglued.count(simplex) && !rglued.count(simplex))
                        victim = &simplex;
                    else if (!lglued.count(other) && !rglued.count(other))
                        victim = &other;
                    if (!victim) continue;  // the intended identification
                    prep = stellar_subdivide(prep, *victim);
                    dirty = true;
                    break;
                }
            }
        }

        std::vector<VertexTuple> facets;
        for (const auto& facet : prep.facets()) {
            VertexTuple tuple = facet;
            for (auto& v : tuple) v = relabel(v);
            facets.push_back(std::move(tuple));
        }
        // Compact vertex indices.
        std::set<int> used;
        for (const auto& f : facets) used.insert(f.begin(), f.end());
        std::map<int, int> compact;
        int next = 0;
        for (int v : used) compact[v] = next++;
        for (auto& f : facets)
            for (auto& v : f) v = compact[v];
        ManifoldComplex result = [&] {
            try {
                Complex glued(left.complex().name() + ".selfglue",
                              left.complex().dim(), next, std::move(facets));
                return manifold_check(glued);
            } catch (const InvalidComplex& e) {
                throw GlueError(std::string("self-glueing produced an invalid "
                                            "complex: ") +
                                e.what());
            } catch (const NotManifold& e) {
                throw GlueError(
                    std::string("self-glueing produced a non-manifold "
                                "quotient: ") +
                    e.what());
            } catch (const NotOrientable& e) {
                throw GlueError(
                    std::string("self-glueing broke orientability: ") +
                    e.what());
            }
        }();
        if (result.complex().euler_characteristic() !=
            prep.euler_characteristic() - chi_glued)
            throw GlueError("euler characteristic bookkeeping failed");
        return result;
    }

    // Make each glued component a full subcomplex of its side. Subdivision
    // never touches the component itself, and the final manifold check
    // re-derives a coherent orientation of the quotient from scratch, so
    // the orientation condition needs checking only on the inputs above.
    Complex lprep = detail::make_full(left.complex(), lsup,
                                      detail::closure_simplices(lcomp.complex));
    Complex rprep = detail::make_full(right.complex(), rsup,
                                      detail::closure_simplices(rcomp.complex));
    ManifoldComplex lm = manifold_check(lprep);
    ManifoldComplex rm = manifold_check(rprep);

    // Right vertex relabelling: glued vertices land on phi^-1, the rest
    // get fresh indices after the left complex.
    std::map<int, int> to_left;
    for (const auto& [u, v] : spec.vertex_map) to_left[v] = u;
    std::map<int, int> rmap;
    int next = lm.complex().vertex_count();
    for (int v = 0; v < rm.complex().vertex_count(); ++v) {
        auto it = to_left.find(v);
        if (it != to_left.end())
            rmap[v] = it->second;
        else
            rmap[v] = next++;
    }

    std::vector<VertexTuple> facets = lm.complex().facets();
    for (const auto& facet : rm.complex().facets()) {
        VertexTuple tuple(facet.size());
        for (std::size_t i = 0; i < facet.size(); ++i) tuple[i] = rmap[facet[i]];
        facets.push_back(std::move(tuple));
    }
    std::set<int> used;
    for (const auto& f : facets) used.insert(f.begin(), f.end());
    std::map<int, int> compact;
    int cid = 0;
    for (int v : used) compact[v] = cid++;
    for (auto& f : facets)
        for (auto& v : f) v = compact[v];

    Complex glued(left.complex().name() + "+" + right.complex().name(),
                  left.complex().dim(), cid, std::move(facets));
    ManifoldComplex result = manifold_check(glued);
    if (result.complex().euler_characteristic() !=
        chi_left + chi_right - chi_glued)
        throw GlueError("euler characteristic bookkeeping failed");
    return result;
}

/** Result of doubling: the closed double and the reflection chain map
 *  c -> c - cbar on chains of the prepared copy. The two halves have
 *  disjoint top-dimensional supports, so l1(c - cbar) = 2 l1(c). */
struct DoubleResult {
    ManifoldComplex doubled;
    Complex prepared;  // the input, subdivided until the boundary is full
    std::function<Chain(const Chain&)> reflect;
};

/**
 * The double D(M): M glued to an orientation-reversed copy along every
 * boundary component via the identity.
 */
inline DoubleResult double_manifold(const ManifoldComplex& manifold) {
    if (manifold.is_closed())
        throw GlueError(manifold.complex().name() +
                        " is closed; doubling needs a boundary");
    std::set<int> boundary_support;
    std::set<VertexTuple> boundary_simplices;
    for (const auto& component : manifold.boundary_components()) {
        for (int v : detail::component_support(component))
            boundary_support.insert(v);
        for (const auto& simplex : detail::closure_simplices(component.complex))
            boundary_simplices.insert(simplex);
    }

    Complex prepared = detail::make_full(manifold.complex(), boundary_support,
                                         boundary_simplices);

    const int vcount = prepared.vertex_count();
    std::map<int, int> mirror;
    int next = vcount;
    for (int v = 0; v < vcount; ++v) {
        if (boundary_support.count(v))
            mirror[v] = v;
        else
            mirror[v] = next++;
    }
    std::vector<VertexTuple> facets = prepared.facets();
    for (const auto& facet : prepared.facets()) {
        VertexTuple tuple(facet.size());
        for (std::size_t i = 0; i < facet.size(); ++i) tuple[i] = mirror[facet[i]];
        facets.push_back(std::move(tuple));
    }

    Complex doubled("D(" + manifold.complex().name() + ")", prepared.dim(),
                    next, std::move(facets));
    ManifoldComplex checked = manifold_check(doubled);
    if (!checked.is_closed())
        throw GlueError("double is not closed");
    long long chi_m = prepared.euler_characteristic();
    long long chi_b = 0;
    for (const auto& component : manifold.boundary_components())
        chi_b += component.complex.euler_characteristic();
    if (checked.complex().euler_characteristic() != 2 * chi_m - chi_b)
        throw GlueError("euler characteristic bookkeeping failed");

    auto reflect = [mirror](const Chain& chain) {
        Chain mirrored = detail::relabel_chain(
            chain, [&mirror](int v) { return mirror.at(v); });
        mirrored *= Rational(-1);
        return chain + mirrored;
    };
    return {std::move(checked), std::move(prepared), std::move(reflect)};
}

/**
 * Connected sum: removes one facet from each closed oriented manifold and
 * glues the exposed boundary spheres by the identity arrangement with one
 * transposition (falling back to the plain identity if that is the
 * orientation-reversing one). Dimension must be at least 2.
 */
inline ManifoldComplex connected_sum(const ManifoldComplex& left,
                                     const ManifoldComplex& right,
                                     std::size_t left_facet,
                                     std::size_t right_facet) {
    if (&left == &right)
        throw GlueError("connected sum needs two distinct manifold objects");
    if (!left.is_closed() || !right.is_closed())
        throw GlueError("connected sum needs closed manifolds");
    if (left.dim() != right.dim())
        throw GlueError("connected sum needs equal dimensions");
    if (left.dim() < 2)
        throw GlueError("connected sum implemented for dimension >= 2");
    if (left_facet >= left.complex().facet_count() ||
        right_facet >= right.complex().facet_count())
        throw GlueError("facet index out of range");

    auto puncture = [](const ManifoldComplex& m, std::size_t f,
                       const std::string& tag) {
        std::vector<VertexTuple> facets = m.complex().facets();
        VertexTuple removed = facets[f];
        facets.erase(facets.begin() + static_cast<long>(f));
        Complex punctured(m.complex().name() + tag, m.dim(),
                          m.complex().vertex_count(), std::move(facets));
        return std::make_pair(manifold_check(punctured), removed);
    };
    auto [lpunct, lremoved] = puncture(left, left_facet, ".punctL");
    auto [rpunct, rremoved] = puncture(right, right_facet, ".punctR");
    if (lpunct.boundary_components().size() != 1 ||
        rpunct.boundary_components().size() != 1)
        throw GlueError("facet removal did not expose a single sphere");

    GlueingSpec spec;
    spec.left_component = 0;
    spec.right_component = 0;
    auto build_map = [&](bool transpose) {
        std::map<int, int> phi;
        VertexTuple target = rremoved;
        if (transpose) std::swap(target[0], target[1]);
        for (std::size_t i = 0; i < lremoved.size(); ++i)
            phi[lremoved[i]] = target[i];
        return phi;
    };
    for (bool transpose : {true, false}) {
        spec.vertex_map = build_map(transpose);
        try {
            ManifoldComplex result = glue(lpunct, rpunct, spec);
            return result;
        } catch (const GlueError&) {
            continue;
        }
    }
    throw GlueError("no orientation-reversing identification of the removed "
                    "facet boundaries was found");
}

inline ManifoldComplex connected_sum(const ManifoldComplex& left,
                                     const ManifoldComplex& right) {
    return connected_sum(left, right, left.complex().facet_count() - 1,
                         right.complex().facet_count() - 1);
}

/** Product triangulation result: the complex, the vertex grid index and
 *  the shuffle chain map (Eilenberg-Zilber staircases). */
struct ProductResult {
    Complex complex;
    int right_vertices;
    std::function<Chain(const Chain&, const Chain&)> shuffle_map;
};

/**
 * Staircase product triangulation: facets are monotone lattice paths
 * through each facet pair, C(p+q, p) per pair. The shuffle chain map sends
 * a pair of cycles to a cycle; on fundamental cycles it realizes the
 * product orientation.
 */
inline ProductResult product(const Complex& left, const Complex& right) {
    const int vr = right.vertex_count();
    auto grid = [vr](int u, int v) { return u * vr + v; };

    auto shuffle_terms = [grid](const VertexTuple& a, const VertexTuple& b) {
        // Monotone paths from (0,0) to (p,q); sign = parity of the shuffle.
        const int p = static_cast<int>(a.size()) - 1;
        const int q = static_cast<int>(b.size()) - 1;
        std::vector<std::pair<VertexTuple, int>> out;
        std::vector<int> moves;  // 0 = advance left, 1 = advance right
        std::function<void(int, int)> walk = [&](int i, int j) {
            if (i == p && j == q) {
                VertexTuple tuple;
                tuple.reserve(p + q + 1);
                int x = 0, y = 0;
                tuple.push_back(grid(a[0], b[0]));
                int inversions = 0;
                int rights_seen = 0;
                for (int m : moves) {
                    if (m == 0) {
                        ++x;
                        inversions += rights_seen;
                    } else {
                        ++y;
                        ++rights_seen;
                    }
                    tuple.push_back(grid(a[x], b[y]));
                }
                out.emplace_back(std::move(tuple),
                                 inversions % 2 == 0 ? 1 : -1);
                return;
            }
            if (i < p) {
                moves.push_back(0);
                walk(i + 1, j);
                moves.pop_back();
            }
            if (j < q) {
                moves.push_back(1);
                walk(i, j + 1);
                moves.pop_back();
            }
        };
        walk(0, 0);
        return out;
    };

    std::vector<VertexTuple> facets;
    for (const auto& fa : left.facets()) {
        auto [sa, siga] = canonical(fa);
        for (const auto& fb : right.facets()) {
            auto [sb, sigb] = canonical(fb);
            for (auto& [tuple, sign] : shuffle_terms(sa, sb)) {
                VertexTuple oriented = tuple;
                if (siga * sigb * sign < 0 && oriented.size() >= 2)
                    std::swap(oriented[0], oriented[1]);
                facets.push_back(std::move(oriented));
            }
        }
    }
    Complex prod(left.name() + "x" + right.name(), left.dim() + right.dim(),
                 left.vertex_count() * vr, std::move(facets));

    auto shuffle_map = [grid, shuffle_terms](const Chain& ca, const Chain& cb) {
        Chain result(ca.degree() + cb.degree());
        for (const auto& [ta, coeff_a] : ca.terms())
            for (const auto& [tb, coeff_b] : cb.terms())
                for (auto& [tuple, sign] : shuffle_terms(ta, tb))
                    result.add(tuple, Rational(sign) * coeff_a * coeff_b);
        return result;
    };
    return {std::move(prod), vr, std::move(shuffle_map)};
}

/** Cyclic cover result: the covering manifold and the projection chain map. */
struct CoverResult {
    ManifoldComplex cover;
    std::function<Chain(const Chain&)> project;
    int degree;
};

/**
 * Degree-d cyclic cover from a Z/d edge cocycle. A facet (v0..vn) lifts at
 * sheet k to ((v0,k), (vi, k + z(v0,vi))); the cocycle condition on
 * 2-simplices makes shared faces lift coherently. Checks that chi scales
 * by d and that each lifted facet projects bijectively onto its base facet.
 */
inline CoverResult cyclic_cover(const Complex& base, const CoverSpec& spec) {
    const int d = spec.degree;
    if (d < 1) throw CoverError("cover degree must be at least 1");

    // Every edge must carry a value (possibly zero) and the cocycle
    // condition must hold mod d on every 2-simplex.
    for (const auto& [key, value] : spec.edge_values) {
        VertexTuple edge{key.first, key.second};
        if (key.first >= key.second)
            throw CoverError("cocycle keys must be ascending edges");
        if (!base.contains(edge))
            throw CoverError("cocycle names a non-edge of " + base.name());
    }
    if (base.dim() >= 2)
        for (const auto& tri : base.simplices(2)) {
            long long lhs = spec.value(tri[0], tri[1]) +
                            spec.value(tri[1], tri[2]) -
                            spec.value(tri[0], tri[2]);
            if (((lhs % d) + d) % d != 0)
                throw CoverError("cocycle condition fails on a 2-simplex of " +
                                 base.name());
        }

    auto sheet = [d](long long k) { return static_cast<int>(((k % d) + d) % d); };
    auto lift_id = [d](int v, int k) { return v * d + k; };

    std::vector<VertexTuple> facets;
    for (const auto& facet : base.facets()) {
        for (int k = 0; k < d; ++k) {
            VertexTuple tuple(facet.size());
            for (std::size_t i = 0; i < facet.size(); ++i) {
                long long shift =
                    (i == 0) ? 0 : spec.value(facet[0], facet[i]);
                tuple[i] = lift_id(facet[i], sheet(k + shift));
            }
            facets.push_back(std::move(tuple));
        }
    }
    Complex total(base.name() + ".cover" + std::to_string(d), base.dim(),
                  base.vertex_count() * d, std::move(facets));

    if (total.euler_characteristic() != d * base.euler_characteristic())
        throw CoverError("cover euler characteristic is not degree * base");
    for (const auto& lifted : total.facets()) {
        std::set<int> image;
        for (int v : lifted) image.insert(v / d);
        if (image.size() != lifted.size())
            throw CoverError("projection is not injective on a lifted facet");
    }

    ManifoldComplex checked = manifold_check(total);
    auto project = [d](const Chain& chain) {
        Chain result(chain.degree());
        for (const auto& [tuple, coeff] : chain.terms()) {
            VertexTuple image(tuple.size());
            for (std::size_t i = 0; i < tuple.size(); ++i)
                image[i] = tuple[i] / d;
            result.add(std::move(image), coeff);
        }
        return result;
    };
    return {std::move(checked), std::move(project), d};
}

}  // namespace svlab
