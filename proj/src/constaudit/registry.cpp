#include "gapcert/constaudit/registry.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gapcert/errors.hpp"

namespace gapcert {

namespace {

struct Row {
  const char* id;
  const char* location;
  const char* expression;
};

constexpr Row kRows[] = {
    {"nonexc-complement-bound", "complement bound for non-exceptional Fano threefolds",
     "192*42!*84^(128*42^5)"},
    {"I0", "klt bound for exceptional and klt Calabi-Yau threefolds", "2*84^(256*42^5+338)"},
    {"I1", "Cartier index bound for surfaces with standard coefficients", "42*84^(128*42^5+168)"},
    {"surface-vol-floor", "volume lower bound for lc surfaces with standard coefficients",
     "1/(42*84^(128*42^5+168))"},
    {"V0", "anti-canonical volume bound for exceptional threefolds", "3200*84^(1024*42^5+1352)"},
    {"threefold-vol-floor",
     "volume lower bound for ample lc threefold pairs with reduced boundary",
     "1/84^(384*42^5+507)"},
    {"I(2,1)", "index of klt surface pairs with standard coefficients", "66"},
    {"N(2,1)-bound", "complement bound for surface pairs with standard coefficients",
     "96*42!*84^(128*42^5)"},
    {"lcm-bound-fibration", "lcm bound over elliptic fibrations to a curve", "36*42!"},
    {"lcm-bound-doubled", "doubled lcm bound over fibrations to a curve", "72*42!"},
    {"nonplt-index-bound", "index bound for non-plt Kodaira dimension zero case", "6*7920!"},
    {"surface-cartier-bound", "Cartier index bound for 1/42-lc surfaces", "84^(128*42^5)"},
    {"exc-surface-index", "index bound for exceptional surfaces of Iitaka dimension two",
     "42!*84^(128*42^5)"},
    {"complement-set-1", "complement indices of non-exceptional surfaces", "1"},
    {"complement-set-2", "complement indices of non-exceptional surfaces", "2"},
    {"complement-set-3", "complement indices of non-exceptional surfaces", "3"},
    {"complement-set-4", "complement indices of non-exceptional surfaces", "4"},
    {"complement-set-6", "complement indices of non-exceptional surfaces", "6"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const std::vector<NamedConstant>& constant_registry() {
  static const std::vector<NamedConstant> registry = [] {
    std::vector<NamedConstant> out;
    for (const Row& r : kRows) {
      out.push_back({r.id, r.location, r.expression, parse_const_expr(r.expression)});
    }
    return out;
  }();
  return registry;
}

const NamedConstant& find_constant(std::string_view id) {
  for (const auto& c : constant_registry()) {
    if (c.id == id) return c;
  }
  throw DomainError("unknown constant id: " + std::string(id));
}

ConstantValue eval_constant(std::string_view id, Precision prec) {
  const NamedConstant& c = find_constant(id);
  ConstantValue v;
  v.id = c.id;
  v.normal_form = prime_map(*c.expr);
  v.exact = exact_value(*c.expr, 1 << 16);
  v.enclosure = magnitude_of(*c.expr, prec);
  return v;
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto a = t.find('|');
    const auto b = a == std::string::npos ? a : t.find('|', a + 1);
    if (b == std::string::npos) {
      throw std::invalid_argument("manifest line " + std::to_string(lineno) +
                                  ": expected 'id | location | expression'");
    }
    out.push_back({trim(std::string_view(t).substr(0, a)),
                   trim(std::string_view(t).substr(a + 1, b - a - 1)),
                   trim(std::string_view(t).substr(b + 1))});
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string default_manifest_path() { return GAPCERT_MANIFEST_PATH; }

}  // namespace gapcert
