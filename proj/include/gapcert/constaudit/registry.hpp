#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapcert/constaudit/const_expr.hpp"

namespace gapcert {

struct NamedConstant {
  std::string id;
  std::string location;
  std::string expression;
  ConstExprPtr expr;
};

/// Every named constant, in manifest order.
const std::vector<NamedConstant>& constant_registry();

/// Throws DomainError for an unknown id.
const NamedConstant& find_constant(std::string_view id);

struct ConstantValue {
  std::string id;
  std::optional<PrimeMap> normal_form;
  std::optional<Rational> exact;
  Magnitude enclosure;
};

ConstantValue eval_constant(std::string_view id, Precision prec = {});

struct ManifestEntry {
  std::string id;
  std::string location;
  std::string expression;
};

/// "id | location | expression" per line; '#' starts a comment line.
std::vector<ManifestEntry> read_manifest(const std::string& path);
std::vector<ManifestEntry> parse_manifest(std::string_view text);
std::string default_manifest_path();

}  // namespace gapcert
