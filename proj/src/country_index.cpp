#include "cbal/country_index.hpp"

#include <algorithm>
#include <cctype>

#include "cbal/errors.hpp"

namespace cbal {

std::string CountryIndex::normalize(const std::string& raw) {
  if (raw.size() != 3)
    raise(errc::malformed_csv,
          "country code must be three letters: '" + raw + "'");
  std::string code = raw;
  for (char& c : code) {
    if (!std::isalpha(static_cast<unsigned char>(c)))
      raise(errc::malformed_csv,
            "country code must be three letters: '" + raw + "'");
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return code;
}

CountryIndex::CountryIndex(std::vector<std::string> codes)
    : codes_(std::move(codes)) {
  positions_.reserve(codes_.size());
  for (std::size_t k = 0; k < codes_.size(); ++k) {
    auto [it, fresh] = positions_.emplace(codes_[k], static_cast<int>(k));
    (void)it;
    if (!fresh)
      raise(errc::bad_argument, "duplicate country code: " + codes_[k]);
  }
}

CountryIndex CountryIndex::sorted(std::vector<std::string> codes) {
  for (auto& c : codes) c = normalize(c);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return CountryIndex(std::move(codes));
}

CountryIndex CountryIndex::ordered(std::vector<std::string> codes) {
  for (auto& c : codes) c = normalize(c);
  return CountryIndex(std::move(codes));
}

bool CountryIndex::contains(const std::string& code) const {
  return positions_.count(code) > 0;
}

int CountryIndex::position(const std::string& code) const {
  auto it = positions_.find(code);
  if (it == positions_.end())
    raise(errc::unknown_country, "unknown country code: " + code);
  return it->second;
}

}  // namespace cbal
