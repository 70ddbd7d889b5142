#pragma once

#include <string>
#include <utility>
#include <vector>

namespace coxtop::detail {

/// (file name, contents) of every shipped table, generated at configure time.
const std::vector<std::pair<std::string, std::string>>& embedded_tables();
/// Contents of data/tables/CHECKSUMS.
const std::string& embedded_checksums();

}  // namespace coxtop::detail
