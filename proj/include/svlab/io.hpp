#pragma once

#include "chain.hpp"
#include "complex.hpp"
#include "rational.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace svlab {

using Json = nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Triangulation document: {"name","dim","vertices","facets"}. */
inline Complex complex_from_json(const Json& doc) {
    try {
        std::string name = doc.at("name").get<std::string>();
        int dim = doc.at("dim").get<int>();
        int vertices = doc.at("vertices").get<int>();
        std::vector<VertexTuple> facets;
        for (const auto& row : doc.at("facets"))
            facets.push_back(row.get<VertexTuple>());
        return Complex(std::move(name), dim, vertices, std::move(facets));
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed triangulation document: ") + e.what());
    }
}

inline Json complex_to_json(const Complex& complex) {
    Json doc;
    doc["name"] = complex.name();
    doc["dim"] = complex.dim();
    doc["vertices"] = complex.vertex_count();
    doc["facets"] = complex.facets();
    return doc;
}

inline Complex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const Json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return complex_from_json(doc);
}

/** Chain document: {"degree":k,"terms":[{"simplex":[...],"coeff":"p/q"}]}. */
inline Json chain_to_json(const Chain& chain) {
    Json terms = Json::array();
    for (const auto& [tuple, coeff] : chain.terms()) {
        Json term;
        term["simplex"] = tuple;
        term["coeff"] = to_string(coeff);
        terms.push_back(std::move(term));
    }
    Json doc;
    doc["degree"] = chain.degree();
    doc["terms"] = std::move(terms);
    return doc;
}

inline Chain chain_from_json(const Json& doc) {
    try {
        Chain chain(doc.at("degree").get<int>());
        for (const auto& term : doc.at("terms"))
            chain.add(term.at("simplex").get<VertexTuple>(),
                      parse_rational(term.at("coeff").get<std::string>()));
        return chain;
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed chain document: ") + e.what());
    }
}

}  // namespace svlab
