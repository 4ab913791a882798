#include "odeinv/var_table.hpp"

#include "odeinv/errors.hpp"

namespace odeinv {

VarTable::VarTable(const std::vector<std::string>& names) {
  for (const auto& n : names) add(n);
}

VarId VarTable::add(const std::string& name) {
  if (index_.count(name)) throw NameCollisionError("variable '" + name + "' already declared");
  VarId id = names_.size();
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

VarId VarTable::intern(const std::string& name) {
  if (auto id = find(name)) return *id;
  return add(name);
}

std::optional<VarId> VarTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId VarTable::at(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error("undeclared variable '" + std::string(name) + "'");
}

std::string VarTable::fresh_name(const std::string& prefix, std::size_t start) const {
  for (std::size_t k = start;; ++k) {
    std::string candidate = prefix + std::to_string(k);
    if (!contains(candidate)) return candidate;
  }
}

}  // namespace odeinv
