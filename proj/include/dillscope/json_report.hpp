#pragma once

#include <json.hpp>

#include "dillscope/analysis.hpp"

namespace dillscope {

using ordered_json = nlohmann::ordered_json;

inline ordered_json rational_json(const Rational& r) {
    // exact string plus a convenience double
    ordered_json j;
    j["value"] = r.value();
    j["exact"] = r.str();
    return j;
}

inline std::string letters_to_glyphs(const std::vector<Letter>& letters, const Alphabet& alpha) {
    std::string s;
    for (Letter a : letters) s.push_back(alpha.glyph(a));
    return s;
}

inline ordered_json classification_to_json(const ClassificationReport& r) {
    const Alphabet alpha(r.alphabet_glyphs.size(), r.alphabet_glyphs);
    ordered_json j;
    j["rule"] = {{"name", r.rule_name},
                 {"alphabet", r.alphabet_glyphs},
                 {"diameter", r.diameter},
                 {"lower_norm", r.lower_norm},
                 {"upper_norm", r.upper_norm}};

    ordered_json preds;
    preds["uniform"] = r.predicates.uniform;
    preds["ca"] = r.predicates.ca;
    preds["substitution"] = r.predicates.substitution;
    preds["irreducible"] =
        r.predicates.irreducible ? ordered_json(*r.predicates.irreducible) : ordered_json(nullptr);
    preds["primitive"] =
        r.predicates.primitive ? ordered_json(*r.predicates.primitive) : ordered_json(nullptr);
    preds["toeplitz"] =
        r.predicates.toeplitz ? ordered_json(*r.predicates.toeplitz) : ordered_json(nullptr);
    j["predicates"] = preds;

    ordered_json besi;
    besi["status"] = to_string(r.besicovitch.status);
    besi["lipschitz"] = r.besicovitch.lipschitz ? ordered_json(r.besicovitch.lipschitz->value())
                                                : ordered_json(nullptr);
    besi["lipschitz_exact"] = r.besicovitch.lipschitz
                                  ? ordered_json(r.besicovitch.lipschitz->str())
                                  : ordered_json(nullptr);
    besi["regime"] = to_string(r.besicovitch.regime);
    besi["maxd"] = r.besicovitch.maxd ? ordered_json(*r.besicovitch.maxd) : ordered_json(nullptr);
    besi["mind"] = r.besicovitch.mind ? ordered_json(*r.besicovitch.mind) : ordered_json(nullptr);
    if (r.besicovitch.witness) {
        const auto& w = *r.besicovitch.witness;
        besi["witness"] = {{"x", w.x.str()},
                           {"y", w.y.str()},
                           {"input_distance", "0"},
                           {"image_distance", w.image_distance.str()},
                           {"image_distance_value", w.image_distance.value()}};
    } else {
        besi["witness"] = nullptr;
    }
    j["besicovitch"] = besi;

    ordered_json feld;
    feld["lipschitz"] = r.feldman.lipschitz.value();
    feld["lipschitz_exact"] = r.feldman.lipschitz.str();
    feld["equicontinuous"] = r.feldman.equicontinuous ? ordered_json(*r.feldman.equicontinuous)
                                                      : ordered_json(nullptr);
    feld["equicontinuous_points"] =
        r.feldman.equicontinuous_points
            ? ordered_json(letters_to_glyphs(*r.feldman.equicontinuous_points, alpha))
            : ordered_json(nullptr);
    j["feldman"] = feld;

    if (r.component_decomposition) {
        ordered_json comps = ordered_json::array();
        for (const auto& c : r.component_decomposition->components) {
            comps.push_back({{"letters", letters_to_glyphs(c.letters, alpha)},
                             {"rho_low", c.rho_low},
                             {"rho_high", c.rho_high},
                             {"exact", c.exact},
                             {"converged", c.converged},
                             {"terminal", c.terminal},
                             {"maximum", c.maximum}});
        }
        j["components"] = comps;
        j["maxal"] = letters_to_glyphs(r.component_decomposition->maxal, alpha);
    } else {
        j["components"] = nullptr;
        j["maxal"] = nullptr;
    }
    return j;
}

}  // namespace dillscope
