#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace cbal {

/// Immutable mapping between ISO-3 country codes and matrix positions.
/// Codes are unique, uppercase, three letters A-Z. The default layout is
/// code-ascending so every run produces the same ordering.
class CountryIndex {
public:
  CountryIndex() = default;

  /// Builds a code-ascending index; duplicates are rejected.
  static CountryIndex sorted(std::vector<std::string> codes);

  /// Builds an index preserving the given order (explicit layouts).
  static CountryIndex ordered(std::vector<std::string> codes);

  /// Uppercases and validates a single code (3 letters A-Z).
  static std::string normalize(const std::string& raw);

  int size() const { return static_cast<int>(codes_.size()); }
  bool contains(const std::string& code) const;

  /// Position of a code; raises unknown_country if absent.
  int position(const std::string& code) const;

  const std::string& code(int position) const { return codes_.at(position); }
  const std::vector<std::string>& codes() const { return codes_; }

  bool operator==(const CountryIndex& other) const {
    return codes_ == other.codes_;
  }

private:
  explicit CountryIndex(std::vector<std::string> codes);

  std::vector<std::string> codes_;
  std::unordered_map<std::string, int> positions_;
};

}  // namespace cbal
