#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gcdlab/dilated.hpp"
#include "gcdlab/gcdcore.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab::io {

using Json = nlohmann::ordered_json;

/// Comma- or whitespace-separated lists, e.g. "1,2,3,6".
std::vector<std::uint64_t> parse_integers(std::string_view text);
std::vector<double> parse_reals(std::string_view text);

/// One positive integer per line; blank lines and '#' comments are skipped.
IntegerSequence load_sequence(const std::filesystem::path& path);
/// One decimal in (0,1) per line, nonincreasing.
WeightSequence load_weights(const std::filesystem::path& path);
/// Two whitespace-separated columns per line: n_k c_k.
DilatedSystem load_system(const std::filesystem::path& path);

/// {"1": 2, "2": 1} for 2^2 * 3.
Json to_json(const MultiIndex& beta);
MultiIndex multi_index_from_json(const Json& j);
Json to_json(const IndexSet& B);
IndexSet index_set_from_json(const Json& j);

}  // namespace gcdlab::io
