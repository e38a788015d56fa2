#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bcsvm/solver.hpp"

namespace bcsvm {

/// JSON document holding the kernel spec, C, bias and every support vector
/// (id, label, signed coefficient, sparse features). Doubles round-trip exactly.
[[nodiscard]] nlohmann::json model_to_json(const SvmModel& model);
/// Throws ParseError on a malformed document.
[[nodiscard]] SvmModel model_from_json(const nlohmann::json& doc);

[[nodiscard]] nlohmann::json kernel_to_json(const KernelSpec& spec);
[[nodiscard]] KernelSpec kernel_from_json(const nlohmann::json& doc);

void save_model(const std::string& path, const SvmModel& model);
[[nodiscard]] SvmModel load_model(const std::string& path);

}  // namespace bcsvm
