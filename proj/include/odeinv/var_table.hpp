#ifndef ODEINV_VAR_TABLE_HPP
#define ODEINV_VAR_TABLE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace odeinv {

using VarId = std::size_t;

/// Bijection between variable names and dense indices 0..size()-1.
/// Tables only ever grow at the end, so indices stay valid for
/// polynomials built against an earlier, shorter table.
class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(const std::vector<std::string>& names);

  /// Appends a new variable; throws NameCollisionError if it exists.
  VarId add(const std::string& name);
  /// Returns the index of `name`, adding it if absent.
  VarId intern(const std::string& name);

  std::optional<VarId> find(std::string_view name) const;
  VarId at(std::string_view name) const;
  const std::string& name(VarId id) const { return names_.at(id); }
  bool contains(std::string_view name) const { return find(name).has_value(); }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  /// `prefix<k>` for the smallest k >= `start` that is not taken.
  std::string fresh_name(const std::string& prefix, std::size_t start = 0) const;

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
};

}  // namespace odeinv

#endif  // ODEINV_VAR_TABLE_HPP
