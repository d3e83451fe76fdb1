#pragma once

#include "complex.hpp"
#include "rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct UnknownDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Z/d edge cocycle: integer values on ascending edges, antisymmetric by
 *  convention, cocycle condition checked mod d on every 2-simplex. */
struct CoverSpec {
    int degree = 1;
    std::map<std::pair<int, int>, long long> edge_values;  // ascending pairs

    long long value(int u, int v) const {
        if (u == v) throw std::runtime_error("cocycle on degenerate edge");
        bool flip = u > v;
        auto key = flip ? std::make_pair(v, u) : std::make_pair(u, v);
        auto it = edge_values.find(key);
        long long raw = (it == edge_values.end()) ? 0 : it->second;
        return flip ? -raw : raw;
    }
};

/** The standard n-simplex. */
inline Complex delta(int n) {
    VertexTuple all(n + 1);
    for (int i = 0; i <= n; ++i) all[i] = i;
    return Complex("Delta[" + std::to_string(n) + "]", n, n + 1, {all});
}

/** Boundary of the (n+1)-simplex, facets oriented coherently. */
inline Complex sphere(int n) {
    std::vector<VertexTuple> facets;
    for (int drop = 0; drop <= n + 1; ++drop) {
        VertexTuple facet;
        for (int v = 0; v <= n + 1; ++v)
            if (v != drop) facet.push_back(v);
        if (drop % 2 == 1 && facet.size() >= 2) std::swap(facet[0], facet[1]);
        facets.push_back(std::move(facet));
    }
    return Complex("Sphere[" + std::to_string(n) + "]", n, n + 2,
                   std::move(facets));
}

/** Three-edge circle (same complex as Sphere[1], kept as its own name). */
inline Complex circle3() {
    return Complex("Circle3", 1, 3, {{1, 2}, {2, 0}, {0, 1}});
}

inline Complex interval() { return Complex("Interval", 1, 2, {{0, 1}}); }

namespace detail {

inline std::vector<VertexTuple> torus7_facets() {
    std::vector<VertexTuple> facets;
    for (int i = 0; i < 7; ++i)
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
    for (int i = 0; i < 7; ++i)
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    return facets;
}

}  // namespace detail

/** Moebius-Csaszar torus: 7 vertices, 21 edges, 14 triangles. */
inline Complex torus7() {
    return Complex("Torus7", 2, 7, detail::torus7_facets());
}

/** Torus7 with its last facet removed; boundary is one 3-edge circle. */
inline Complex punctured_torus() {
    auto facets = detail::torus7_facets();
    facets.pop_back();
    return Complex("PuncturedTorus", 2, 7, std::move(facets));
}

/** Triangulated annulus, boundary circles {0,1,2} and {3,4,5}. */
inline Complex annulus() {
    return Complex("Annulus", 2, 6,
                   {{0, 1, 3}, {1, 4, 3}, {1, 2, 4}, {2, 5, 4}, {2, 0, 5},
                    {0, 3, 5}});
}

/** Moebius band on a 5-cycle; boundary is one 5-edge circle. */
inline Complex mobius() {
    return Complex("Mobius", 2, 5,
                   {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}});
}

/** Minimal projective plane: 6 vertices, 15 edges, 10 triangles. */
inline Complex rp2_6() {
    return Complex("RP2-6", 2, 6,
                   {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                    {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}});
}

/** Meridian cocycle of Torus7: value 1 on cyclic steps of size 1 and 3,
 *  0 on steps of size 2. Winding-one loops exist, so all cyclic covers
 *  are connected. */
inline CoverSpec torus7_meridian(int degree) {
    CoverSpec spec;
    spec.degree = degree;
    const long long x[4] = {0, 1, 0, 1};
    for (int u = 0; u < 7; ++u)
        for (int d = 1; d <= 3; ++d) {
            int v = (u + d) % 7;
            long long val = x[d];
            if (u < v)
                spec.edge_values[{u, v}] = val;
            else
                spec.edge_values[{v, u}] = -val;
        }
    return spec;
}

/** Boundary-winding cocycle of the annulus: both circles wind once. */
inline CoverSpec annulus_winding(int degree) {
    CoverSpec spec;
    spec.degree = degree;
    spec.edge_values[{0, 2}] = -1;
    spec.edge_values[{3, 5}] = -1;
    spec.edge_values[{0, 5}] = -1;
    return spec;
}

/** Looks up a dataset by name; Delta[n] and Sphere[n] take a bracket index. */
inline Complex dataset(const std::string& name) {
    auto bracket = name.find('[');
    if (bracket != std::string::npos && name.back() == ']') {
        std::string base = name.substr(0, bracket);
        std::string index = name.substr(bracket + 1, name.size() - bracket - 2);
        int n;
        try {
            n = std::stoi(index);
        } catch (const std::exception&) {
            throw UnknownDataset("bad dataset index in " + name);
        }
        if (n < 0) throw UnknownDataset("negative dataset index in " + name);
        if (base == "Delta") return delta(n);
        if (base == "Sphere") return sphere(n);
        throw UnknownDataset("unknown dataset " + name);
    }
    if (name == "Torus7") return torus7();
    if (name == "PuncturedTorus") return punctured_torus();
    if (name == "Annulus") return annulus();
    if (name == "Mobius") return mobius();
    if (name == "RP2-6") return rp2_6();
    if (name == "Interval") return interval();
    if (name == "Circle3") return circle3();
    throw UnknownDataset("unknown dataset " + name);
}

/** Named cocycles shipped with the datasets. */
inline CoverSpec named_cocycle(const std::string& base_complex,
                               const std::string& cocycle, int degree) {
    if (degree < 1)
        throw std::runtime_error("cover degree must be at least 1");
    if (cocycle == "meridian" && base_complex == "Torus7")
        return torus7_meridian(degree);
    if (cocycle == "winding" && base_complex == "Annulus")
        return annulus_winding(degree);
    if (cocycle == "zero") {
        CoverSpec spec;
        spec.degree = degree;
        return spec;
    }
    throw UnknownDataset("no cocycle '" + cocycle + "' for " + base_complex);
}

}  // namespace svlab
