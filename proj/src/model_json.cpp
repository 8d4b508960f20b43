#include "olgdet/model_json.hpp"

#include <cmath>
#include <string>

#include "olgdet/errors.hpp"

namespace olgdet::io {

namespace {

double number(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(where + ": missing field \"" + key + "\"");
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw DomainError(where + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

Production production_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("production must be an object");
  const std::string variant = j.value("variant", std::string("ces"));
  if (variant == "ces") {
    return Production(CesParams{number(j, "A", "production"), number(j, "alpha", "production"),
                                number(j, "rho", "production"), number(j, "delta", "production")});
  }
  if (variant == "local_quadratic") {
    return Production(LocalQuadraticParams{
        number(j, "w", "production"), number(j, "R", "production"),
        number_or(j, "c", 0.0, "production"), number(j, "kstar", "production"),
        number_or(j, "epsilon", 0.0, "production")});
  }
  throw DomainError("production: unknown variant \"" + variant + "\"");
}

}  // namespace

Utility utility_from_json(const json& j, const char* which) {
  const std::string where = std::string("utility.") + which;
  if (!j.is_object()) throw DomainError(where + " must be an object");
  const std::string family = j.value("family", std::string());
  const double scale = number_or(j, "scale", 1.0, where);
  if (family == "log") return Utility::log(scale);
  if (family == "crra") return Utility::crra(number(j, "gamma", where), scale);
  throw DomainError(where + ": unknown family \"" + family + "\" (expected log or crra)");
}

ModelParams model_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("model config must be a JSON object");
  const double beta = number(j, "beta", "model");
  if (!j.contains("production")) throw DomainError("model: missing field \"production\"");
  Production prod = production_from_json(j.at("production"));

  if (!j.contains("utility") || (j.at("utility").is_string() && j.at("utility") == "cobb_douglas")) {
    return cobb_douglas_model(std::move(prod), beta);
  }
  const json& uj = j.at("utility");
  if (!uj.is_object() || !uj.contains("u") || !uj.contains("v")) {
    throw DomainError("utility must be \"cobb_douglas\" or an object with \"u\" and \"v\"");
  }
  return ModelParams(std::move(prod), utility_from_json(uj.at("u"), "u"),
                     utility_from_json(uj.at("v"), "v"), beta);
}

json utility_to_json(const Utility& u) {
  switch (u.family()) {
    case UtilityFamily::Log:
      return {{"family", "log"}, {"scale", u.scale()}};
    case UtilityFamily::Crra:
      return {{"family", "crra"}, {"gamma", u.gamma()}, {"scale", u.scale()}};
    case UtilityFamily::Custom:
      return {{"family", "custom"}, {"name", u.name()}};
  }
  return {};
}

json model_to_json(const ModelParams& model) {
  json prod;
  if (model.production.is_ces()) {
    const CesParams& p = model.production.ces();
    prod = {{"variant", "ces"}, {"A", p.A}, {"alpha", p.alpha}, {"rho", p.rho}, {"delta", p.delta}};
  } else {
    const LocalQuadraticParams& p = model.production.local_quadratic();
    prod = {{"variant", "local_quadratic"}, {"w", p.w},         {"R", p.R},
            {"c", p.c},                     {"kstar", p.kstar}, {"epsilon", p.epsilon}};
  }
  return {{"beta", model.beta},
          {"production", prod},
          {"utility", {{"u", utility_to_json(model.u)}, {"v", utility_to_json(model.v)}}}};
}

std::optional<cdces::Theta> theta_of(const ModelParams& model) {
  if (!model.production.is_ces() || !model.has_cobb_douglas_utility()) return std::nullopt;
  if (!(model.beta < 1.0)) return std::nullopt;
  const CesParams& p = model.production.ces();
  return cdces::Theta{model.beta, p.A, p.alpha, p.rho, p.delta};
}

json certificate_to_json(const SaddleCertificate& c) {
  return {{"trace", c.trace},
          {"det", c.det},
          {"p_at_one", c.p_at_one},
          {"one_minus_sR_c", c.one_minus_sR_c},
          {"fdoubleprime", c.fdoubleprime},
          {"gamma_v", c.gamma_v},
          {"d_positive", c.d_positive},
          {"p1_negative", c.p1_negative},
          {"hypothesis_1_minus_sRc_positive", c.hypothesis_1_minus_sRc_positive},
          {"gamma_v_at_most_one", c.gamma_v_at_most_one},
          {"certified", c.certified}};
}

json steady_state_record(const SteadyState& ss) {
  json rec = {{"kind", std::string(to_string(ss.kind))},
              {"k", ss.state.k},
              {"P", ss.state.P},
              {"lambda1", ss.lambda1},
              {"lambda2", ss.lambda2},
              {"class", std::string(to_string(ss.classification.kind))}};
  if (!ss.jacobian) rec["note"] = "singular D_eta Phi; not classified";
  if (ss.certificate) rec["certificate"] = certificate_to_json(*ss.certificate);
  return rec;
}

}  // namespace olgdet::io
