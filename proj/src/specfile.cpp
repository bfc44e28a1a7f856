#include "hetdss/specfile.hpp"

#include <json.hpp>

#include <fstream>
#include <climits>
#include <set>
#include <sstream>
#include <tuple>

namespace hetdss {
namespace {

using json = nlohmann::json;

std::string join(const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& line : lines) {
    if (!text.empty()) text += "\n  ";
    text += line;
  }
  return text;
}

// Collects field-level problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  std::optional<Rational> number(const json& value, const std::string& path) {
    try {
      if (value.is_number_unsigned()) return Rational(value.get<unsigned long long>());
      if (value.is_number_integer()) return Rational(value.get<long long>());
      if (value.is_number_float()) return rational_from_decimal_double(value.get<double>());
      if (value.is_string()) return parse_rational(value.get<std::string>());
    } catch (const std::exception& e) {
      errors.push_back(path + ": " + e.what());
      return std::nullopt;
    }
    errors.push_back(path + ": expected a number or \"p/q\" string, got " + std::string(value.type_name()));
    return std::nullopt;
  }

  std::optional<std::size_t> index(const json& value, const std::string& path, std::size_t bound,
                                   const char* what) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
      errors.push_back(path + ": expected a nonnegative integer " + what);
      return std::nullopt;
    }
    const auto i = value.get<unsigned long long>();
    if (i >= bound) {
      errors.push_back(path + ": " + what + " " + std::to_string(i) + " out of range (" + std::to_string(bound) +
                       " available)");
      return std::nullopt;
    }
    return static_cast<std::size_t>(i);
  }

  bool array(const json& value, const std::string& path) {
    if (value.is_array()) return true;
    errors.push_back(path + ": expected an array, got " + std::string(value.type_name()));
    return false;
  }

  std::vector<Rational> numbers(const json& value, const std::string& path) {
    std::vector<Rational> out;
    if (!array(value, path)) return out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      out.push_back(number(value[i], path + "[" + std::to_string(i) + "]").value_or(0));
    }
    return out;
  }

  NodeSet nodes(const json& value, const std::string& path, std::size_t n) {
    NodeSet out;
    if (!array(value, path)) return out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (auto v = index(value[i], path + "[" + std::to_string(i) + "]", n, "node")) out.push_back(*v);
    }
    return out;
  }
};

const json* field(const json& doc, const char* key, Reader& reader, bool required) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) reader.errors.push_back(std::string(key) + ": missing");
    return nullptr;
  }
  return &*it;
}

nlohmann::ordered_json rational_json(const Rational& value) {
  if (is_integer(value)) {
    const auto& num = boost::multiprecision::numerator(value);
    if (num >= LLONG_MIN && num <= LLONG_MAX) return num.convert_to<long long>();
  }
  return to_string(value);
}

}  // namespace

SpecError::SpecError(std::vector<std::string> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

SpecDocument parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw SpecError({"line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what});
  }
  if (!doc.is_object()) throw SpecError({"top level: expected a JSON object"});

  Reader r;
  static const std::set<std::string> known = {"file_size",          "storage_cost",   "download_cost",
                                              "reconstruction_sets", "surviving_sets", "alphas",
                                              "betas"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) r.warnings.push_back(key + ": unknown key ignored");
  }

  DssSpec spec;
  if (const json* v = field(doc, "file_size", r, true)) spec.file_size = r.number(*v, "file_size").value_or(0);
  if (const json* v = field(doc, "storage_cost", r, true)) spec.storage_cost = r.numbers(*v, "storage_cost");
  spec.node_count = spec.storage_cost.size();
  const std::size_t n = spec.node_count;
  if (const json* v = field(doc, "download_cost", r, true)) {
    spec.download_cost = r.numbers(*v, "download_cost");
    if (v->is_array() && spec.download_cost.size() != n) {
      r.errors.push_back("download_cost: has " + std::to_string(spec.download_cost.size()) +
                         " entries, storage_cost has " + std::to_string(n));
    }
  }
  if (const json* v = field(doc, "reconstruction_sets", r, true); v && r.array(*v, "reconstruction_sets")) {
    for (std::size_t t = 0; t < v->size(); ++t) {
      spec.reconstruction_sets.push_back(r.nodes((*v)[t], "reconstruction_sets[" + std::to_string(t) + "]", n));
    }
  }
  if (const json* v = field(doc, "surviving_sets", r, true); v && r.array(*v, "surviving_sets")) {
    if (v->size() != n) {
      r.errors.push_back("surviving_sets: has " + std::to_string(v->size()) + " entries, expected one per node (" +
                         std::to_string(n) + ")");
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string path = "surviving_sets[" + std::to_string(i) + "]";
      std::vector<NodeSet> sets;
      if (r.array((*v)[i], path)) {
        for (std::size_t l = 0; l < (*v)[i].size(); ++l) {
          sets.push_back(r.nodes((*v)[i][l], path + "[" + std::to_string(l) + "]", n));
        }
      }
      spec.surviving_sets.push_back(std::move(sets));
    }
  }
  if (!r.errors.empty()) throw SpecError(r.errors);

  ValidationReport report = validate(spec);
  if (!report.ok()) throw SpecError(report.errors());
  for (auto& w : report.warnings()) r.warnings.push_back(std::move(w));

  SpecDocument out;
  out.spec = std::move(report.normalized);
  const json* alphas = field(doc, "alphas", r, false);
  const json* betas = field(doc, "betas", r, false);
  if (betas && !alphas) r.errors.push_back("betas: given without alphas");
  if (alphas) {
    Assignment a = Assignment::zero(out.spec);
    a.alpha = r.numbers(*alphas, "alphas");
    if (alphas->is_array() && a.alpha.size() != n) {
      r.errors.push_back("alphas: has " + std::to_string(a.alpha.size()) + " entries, expected " + std::to_string(n));
    }
    const BetaLayout layout(out.spec);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    if (betas && r.array(*betas, "betas")) {
      for (std::size_t e = 0; e < betas->size(); ++e) {
        const std::string path = "betas[" + std::to_string(e) + "]";
        const json& rec = (*betas)[e];
        if (!rec.is_object() || !rec.contains("node") || !rec.contains("set") || !rec.contains("helper") ||
            !rec.contains("amount")) {
          r.errors.push_back(path + ": expected {node, set, helper, amount}");
          continue;
        }
        const auto node = r.index(rec["node"], path + ".node", n, "node");
        if (!node) continue;
        const auto set = r.index(rec["set"], path + ".set", report.surviving_set_map[*node].size(), "set");
        const auto helper = r.index(rec["helper"], path + ".helper", n, "node");
        const auto amount = r.number(rec["amount"], path + ".amount");
        if (!set || !helper || !amount) continue;
        if (*amount < 0) {
          r.errors.push_back(path + ".amount: must be nonnegative");
          continue;
        }
        if (!seen.insert({*node, *set, *helper}).second) {
          r.errors.push_back(path + ": duplicate entry for node " + std::to_string(*node) + ", set " +
                             std::to_string(*set) + ", helper " + std::to_string(*helper));
          continue;
        }
        const auto mapped = report.surviving_set_map[*node][*set];
        if (!mapped) {
          r.warnings.push_back(path + ": surviving set was pruned; amount ignored");
          continue;
        }
        const auto slot = layout.find(*node, *mapped, *helper);
        if (!slot) {
          r.errors.push_back(path + ".helper: node " + std::to_string(*helper) + " is not in surviving set " +
                             std::to_string(*set) + " of node " + std::to_string(*node));
          continue;
        }
        a.beta[*slot] = *amount;
      }
    }
    for (std::size_t j = 0; j < a.alpha.size(); ++j) {
      if (a.alpha[j] < 0) r.errors.push_back("alphas[" + std::to_string(j) + "]: must be nonnegative");
    }
    out.assignment = std::move(a);
  }
  if (!r.errors.empty()) throw SpecError(r.errors);
  out.warnings = std::move(r.warnings);
  return out;
}

SpecDocument load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError({path.string() + ": cannot open"});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_spec(buffer.str());
  } catch (const SpecError& e) {
    std::vector<std::string> diagnostics;
    for (const auto& d : e.diagnostics()) diagnostics.push_back(path.string() + ": " + d);
    throw SpecError(diagnostics);
  }
}

std::string serialize_spec(const DssSpec& spec, const Assignment* assignment) {
  nlohmann::ordered_json doc;
  doc["file_size"] = rational_json(spec.file_size);
  auto numbers = [](const std::vector<Rational>& values) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& v : values) out.push_back(rational_json(v));
    return out;
  };
  doc["storage_cost"] = numbers(spec.storage_cost);
  doc["download_cost"] = numbers(spec.download_cost);
  doc["reconstruction_sets"] = spec.reconstruction_sets;
  doc["surviving_sets"] = spec.surviving_sets;
  if (assignment) {
    check_assignment_shape(spec, *assignment);
    doc["alphas"] = numbers(assignment->alpha);
    auto betas = nlohmann::ordered_json::array();
    const BetaLayout layout(spec);
    for (std::size_t s = 0; s < layout.size(); ++s) {
      if (assignment->beta[s] == 0) continue;
      const BetaSlot& slot = layout.slots()[s];
      nlohmann::ordered_json rec;
      rec["node"] = slot.node;
      rec["set"] = slot.set;
      rec["helper"] = slot.helper;
      rec["amount"] = rational_json(assignment->beta[s]);
      betas.push_back(std::move(rec));
    }
    doc["betas"] = std::move(betas);
  }
  return doc.dump(2) + "\n";
}

}  // namespace hetdss
