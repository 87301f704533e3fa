#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "freemagma/assoc.hpp"
#include "freemagma/constants.hpp"
#include "freemagma/series.hpp"
#include "freemagma/hopf.hpp"
#include "freemagma/poly.hpp"

namespace freemagma {

using Json = nlohmann::ordered_json;

// {"degree": n, "terms": [{"monomial": "...", "coeff": "p/q"}], "primitive": b?}
// Terms iterate in the canonical monomial order, so output is deterministic.
inline Json poly_to_json(const Poly& f, std::optional<bool> primitive = std::nullopt) {
    Json terms = Json::array();
    for (const auto& [b, c] : f.terms())
        terms.push_back(Json{{"monomial", to_string(b)}, {"coeff", to_string(c)}});
    Json out{{"degree", f.degree() < 0 ? 0 : f.degree()}, {"terms", std::move(terms)}};
    if (primitive.has_value()) out["primitive"] = *primitive;
    return out;
}

inline Json tensor_to_json(const TensorPoly& t) {
    Json terms = Json::array();
    for (const auto& [k, c] : t.terms())
        terms.push_back(Json{{"left", to_string(k.first)},
                             {"right", to_string(k.second)},
                             {"coeff", to_string(c)}});
    return Json{{"terms", std::move(terms)}};
}

inline Json coeff_table_to_json(const CoeffTable& table, int cap) {
    Json terms = Json::array();
    for (const auto& [t, c] : table)
        if (t.degree() <= cap)
            terms.push_back(Json{{"monomial", to_string(t)}, {"coeff", to_string(c)}});
    return Json{{"degree", cap}, {"terms", std::move(terms)}};
}

inline Json generator_to_json(const Generator& g) {
    Json j = poly_to_json(g.value, g.primitive);
    return Json{{"name", g.name},
                {"degree", g.degree},
                {"leading", to_string(g.leading)},
                {"terms", j["terms"]},
                {"primitive", g.primitive}};
}

inline std::string word_to_string(const Word& w) {
    std::string out;
    for (Variable v : w) out += variable_name(v);
    return out;
}

}  // namespace freemagma
