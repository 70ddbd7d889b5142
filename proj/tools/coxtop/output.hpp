#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxtop/class_function.hpp"

namespace coxtop::cli {

enum class Format { Table, Json, Csv };

/// Column labels: signed cycle types for B and D (split classes get +/-),
/// otherwise C1, C2, ... in class order.
std::vector<std::string> class_labels(const GroupPtr& g);

/// Left-aligned columns separated by two spaces.
std::string grid(const std::vector<std::vector<std::string>>& rows);
std::string csv(const std::vector<std::vector<std::string>>& rows);

std::string display(const Cyclo& c);
nlohmann::json class_function_json(const ClassFunction& f, const std::string& name);
std::string render_class_functions(const std::vector<std::pair<std::string, ClassFunction>>& rows, Format fmt);

}  // namespace coxtop::cli
