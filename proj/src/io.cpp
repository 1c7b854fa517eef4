#include "gcdlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gcdlab::io {

namespace {

std::vector<std::string> tokens(std::string_view text) {
  std::string normalized(text);
  for (char& ch : normalized) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream is(normalized);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::string> data_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

std::uint64_t to_integer(const std::string& tok) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::invalid_argument("not a nonnegative integer: '" + tok + "'");
  }
  return v;
}

double to_real(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
  return v;
}

}  // namespace

std::vector<std::uint64_t> parse_integers(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto& tok : tokens(text)) out.push_back(to_integer(tok));
  return out;
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  for (const auto& tok : tokens(text)) out.push_back(to_real(tok));
  return out;
}

IntegerSequence load_sequence(const std::filesystem::path& path) {
  std::vector<std::uint64_t> values;
  for (const auto& line : data_lines(path)) {
    auto row = tokens(line);
    if (row.size() != 1) throw std::invalid_argument(path.string() + ": expected one integer per line");
    values.push_back(to_integer(row[0]));
  }
  return IntegerSequence(std::move(values));
}

WeightSequence load_weights(const std::filesystem::path& path) {
  std::vector<double> values;
  for (const auto& line : data_lines(path)) {
    auto row = tokens(line);
    if (row.size() != 1) throw std::invalid_argument(path.string() + ": expected one decimal per line");
    values.push_back(to_real(row[0]));
  }
  return WeightSequence::explicit_list(std::move(values));
}

DilatedSystem load_system(const std::filesystem::path& path) {
  std::vector<std::uint64_t> n;
  std::vector<double> c;
  for (const auto& line : data_lines(path)) {
    auto row = tokens(line);
    if (row.size() != 2) throw std::invalid_argument(path.string() + ": expected two columns 'n_k c_k'");
    n.push_back(to_integer(row[0]));
    c.push_back(to_real(row[1]));
  }
  return DilatedSystem(IntegerSequence(std::move(n)), std::move(c));
}

Json to_json(const MultiIndex& beta) {
  Json j = Json::object();
  for (const auto& [pos, exp] : beta.entries()) j[std::to_string(pos)] = exp;
  return j;
}

MultiIndex multi_index_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("multi-index must be a JSON object {position: exponent}");
  std::vector<MultiIndex::Entry> entries;
  for (const auto& [key, value] : j.items()) {
    const auto pos = to_integer(key);
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
      throw std::invalid_argument("exponent for position " + key + " must be a nonnegative integer");
    }
    entries.emplace_back(static_cast<MultiIndex::Position>(pos), value.get<MultiIndex::Exponent>());
  }
  return MultiIndex(std::move(entries));
}

Json to_json(const IndexSet& B) {
  Json j = Json::array();
  for (const auto& beta : B) j.push_back(to_json(beta));
  return j;
}

IndexSet index_set_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("index set must be a JSON array of objects");
  std::vector<MultiIndex> members;
  for (const auto& item : j) members.push_back(multi_index_from_json(item));
  return IndexSet(std::move(members));
}

}  // namespace gcdlab::io
