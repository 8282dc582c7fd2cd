#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "germ/ainfty.hpp"

namespace germ {

using Json = nlohmann::ordered_json;

struct LoadedAlgebra {
    AInftyAlgebra algebra;
    std::vector<std::string> warnings;
};

// Algebra file schema:
// { "basis": [{"name": n, "parity": 0|1}...],
//   "unit": name | null,
//   "products": [{"arity": k, "inputs": [names], "output": name, "coeff": "p/q"}...],
//   "contraction": bool (optional) }
inline LoadedAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array())
        throw SchemaError("algebra file: missing basis array");
    std::vector<std::pair<std::string, int>> basis;
    for (const auto& b : j["basis"]) {
        if (!b.contains("name") || !b.contains("parity"))
            throw SchemaError("algebra file: basis entries need name and parity");
        int par = b["parity"].get<int>();
        if (par != 0 && par != 1) throw SchemaError("algebra file: parity must be 0 or 1");
        basis.emplace_back(b["name"].get<std::string>(), par);
    }
    LoadedAlgebra out;
    out.algebra.space = std::make_shared<SuperSpace>(std::move(basis));
    const SuperSpacePtr& sp = out.algebra.space;

    if (j.contains("unit") && !j["unit"].is_null())
        out.algebra.unit = static_cast<int>(sp->index(j["unit"].get<std::string>()));

    if (j.contains("products")) {
        if (!j["products"].is_array()) throw SchemaError("algebra file: products must be an array");
        for (const auto& e : j["products"]) {
            if (!e.contains("arity") || !e.contains("inputs") || !e.contains("output") ||
                !e.contains("coeff"))
                throw SchemaError("algebra file: product entries need arity/inputs/output/coeff");
            int k = e["arity"].get<int>();
            if (k < 1) throw SchemaError("algebra file: product arity must be >= 1");
            BasisTuple in;
            for (const auto& name : e["inputs"])
                in.push_back(static_cast<int>(sp->index(name.get<std::string>())));
            if (static_cast<int>(in.size()) != k)
                throw SchemaError("algebra file: inputs length disagrees with arity");
            int outIdx = static_cast<int>(sp->index(e["output"].get<std::string>()));
            Rational c;
            try {
                c = parse_rational(e["coeff"].get<std::string>());
            } catch (const ParseError& pe) {
                throw SchemaError(std::string("algebra file: bad coefficient: ") + pe.what());
            }
            auto it = out.algebra.products.find(k);
            if (it == out.algebra.products.end())
                it = out.algebra.products.emplace(k, SuperMap(sp, sp, k, k & 1)).first;
            it->second.add_entry(in, outIdx, c);
        }
    }
    out.algebra.validate_unit();

    if (j.value("contraction", false)) {
        for (const auto& [k, mk] : out.algebra.products)
            if ((k & 1) && !mk.is_zero())
                out.warnings.push_back(
                    "contraction-algebra file declares an odd-arity product m_" +
                    std::to_string(k));
    }
    return out;
}

inline Json algebra_to_json(const AInftyAlgebra& A) {
    Json j;
    j["basis"] = Json::array();
    for (std::size_t i = 0; i < A.space->dim(); ++i)
        j["basis"].push_back({{"name", A.space->name(i)}, {"parity", A.space->parity(i)}});
    j["unit"] = A.unit ? Json(A.space->name(*A.unit)) : Json(nullptr);
    j["products"] = Json::array();
    for (const auto& [k, mk] : A.products) {
        for (const auto& [in, out] : mk.entries()) {
            for (const auto& [o, c] : out) {
                Json e;
                e["arity"] = k;
                e["inputs"] = Json::array();
                for (int i : in) e["inputs"].push_back(A.space->name(i));
                e["output"] = A.space->name(static_cast<int>(o));
                e["coeff"] = to_string(c);
                j["products"].push_back(std::move(e));
            }
        }
    }
    return j;
}

inline LoadedAlgebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open algebra file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("algebra file '" + path + "': " + e.what());
    }
    return algebra_from_json(j);
}

inline void save_algebra(const AInftyAlgebra& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write algebra file '" + path + "'");
    out << algebra_to_json(A).dump(2) << "\n";
}

}  // namespace germ
