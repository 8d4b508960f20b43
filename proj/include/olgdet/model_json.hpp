#pragma once

#include <optional>

#include "json.hpp"

#include "olgdet/cdces.hpp"
#include "olgdet/model.hpp"
#include "olgdet/steady.hpp"

namespace olgdet::io {

using nlohmann::json;

/// Parses the model schema
///   {"beta": .., "production": {"variant": "ces"|"local_quadratic", ...},
///    "utility": {"u": {"family": "log"|"crra", "gamma": .., "scale": ..}, "v": {...}}}
/// "utility" may be omitted or given as the string "cobb_douglas", meaning
/// u = (1-beta) log and v = log. Throws DomainError naming the offending field.
ModelParams model_from_json(const json& j);

json model_to_json(const ModelParams& model);
json utility_to_json(const Utility& u);
Utility utility_from_json(const json& j, const char* which);

/// theta when the model is CES production with Cobb-Douglas utility, else nullopt.
std::optional<cdces::Theta> theta_of(const ModelParams& model);

json steady_state_record(const SteadyState& ss);
json certificate_to_json(const SaddleCertificate& c);

}  // namespace olgdet::io
