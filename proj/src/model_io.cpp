#include "bcsvm/model_io.hpp"

#include <fstream>

#include "bcsvm/error.hpp"

namespace bcsvm {

namespace {
constexpr const char* kFormat = "bcsvm-model";
constexpr int kVersion = 1;
}  // namespace

nlohmann::json kernel_to_json(const KernelSpec& spec) {
  return {{"kind", to_string(spec.kind)}, {"gamma", spec.gamma}, {"degree", spec.degree}, {"coef0", spec.coef0}};
}

KernelSpec kernel_from_json(const nlohmann::json& doc) {
  KernelSpec spec;
  spec.kind = kernel_kind_from_string(doc.at("kind").get<std::string>());
  spec.gamma = doc.at("gamma").get<double>();
  spec.degree = doc.at("degree").get<int>();
  spec.coef0 = doc.at("coef0").get<double>();
  return spec;
}

nlohmann::json model_to_json(const SvmModel& model) {
  nlohmann::json svs = nlohmann::json::array();
  const auto vectors = model.support_vectors();
  const auto coef = model.coefficients();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    nlohmann::json features = nlohmann::json::array();
    for (const auto& e : vectors[i].features.entries()) {
      features.push_back({e.index, e.value});
    }
    svs.push_back({{"id", vectors[i].id},
                   {"label", to_int(vectors[i].label)},
                   {"coef", coef[i]},
                   {"features", std::move(features)}});
  }
  return {{"format", kFormat},       {"version", kVersion},        {"kernel", kernel_to_json(model.kernel())},
          {"C", model.cost()},       {"bias", model.bias()},       {"sv_count", model.sv_count()},
          {"support_vectors", std::move(svs)}};
}

SvmModel model_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat) {
      throw ParseError(0, "not a bcsvm model document");
    }
    if (doc.at("version").get<int>() != kVersion) {
      throw ParseError(0, "unsupported model version " + doc.at("version").dump());
    }
    std::vector<Sample> svs;
    std::vector<double> coef;
    for (const auto& sv : doc.at("support_vectors")) {
      std::vector<FeatureEntry> entries;
      for (const auto& f : sv.at("features")) {
        entries.push_back({f.at(0).get<std::uint32_t>(), f.at(1).get<double>()});
      }
      const int label = sv.at("label").get<int>();
      if (label != 1 && label != -1) {
        throw ParseError(0, "support vector label must be +1 or -1");
      }
      svs.push_back({SparseVector(std::move(entries)), label == 1 ? Label::positive : Label::negative,
                     sv.at("id").get<std::size_t>()});
      coef.push_back(sv.at("coef").get<double>());
    }
    return SvmModel(std::move(svs), std::move(coef), doc.at("bias").get<double>(), kernel_from_json(doc.at("kernel")),
                    doc.at("C").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed model document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("malformed model document: ") + e.what());
  }
}

void save_model(const std::string& path, const SvmModel& model) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write '" + path + "'");
  }
  out << model_to_json(model).dump(1) << '\n';
}

SvmModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "'" + path + "' is not JSON: " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace bcsvm
