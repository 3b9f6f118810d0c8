#include "drlift/problems.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace drlift {

namespace {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  return hash;
}

// Pinned digests of the shipped parameter tables. A retyped or edited copy
// fails loudly instead of silently skewing every anchor value.
struct DataFile {
  const char* name;
  std::uint64_t fnv;
};

constexpr DataFile kTransport3x2{"transport_3x2.json", 0x7b69b3f3245bf827ull};
constexpr DataFile kTransport10x10{"transport_10x10.json", 0x48592beabb3e72abull};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open data file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string load_checked(const std::string& dir, const DataFile& file) {
  const std::string path = dir + "/" + file.name;
  std::string text = read_file(path);
  const std::uint64_t got = fnv1a64(text);
  if (got != file.fnv) {
    std::ostringstream msg;
    msg << "checksum mismatch for " << path << ": got 0x" << std::hex << got << ", expected 0x"
        << file.fnv;
    throw std::runtime_error(msg.str());
  }
  return text;
}

Eigen::VectorXd to_vector(const nlohmann::json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
  return v;
}

Eigen::MatrixXd to_matrix(const nlohmann::json& rows) {
  const auto nr = rows.size();
  const auto nc = rows.empty() ? 0 : rows[0].size();
  Eigen::MatrixXd m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

}  // namespace

std::string resolve_data_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("DRLIFT_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
#ifdef DRLIFT_SOURCE_DATA_DIR
  if (std::filesystem::exists(std::string(DRLIFT_SOURCE_DATA_DIR) + "/transport_3x2.json")) {
    return DRLIFT_SOURCE_DATA_DIR;
  }
#endif
  return "data";
}

TransportConfig transport_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  TransportConfig cfg;
  cfg.suppliers = doc.at("suppliers").get<int>();
  cfg.customers = doc.at("customers").get<int>();
  cfg.production_cost = to_vector(doc.at("production_cost"));
  cfg.holding_cost = to_vector(doc.at("holding_cost"));
  cfg.capacity = to_vector(doc.at("capacity"));
  cfg.transport_cost = to_matrix(doc.at("transport_cost"));
  cfg.revenue = to_vector(doc.at("revenue"));
  cfg.demand_intercept = to_vector(doc.at("demand_intercept"));
  cfg.demand_slope = to_vector(doc.at("demand_slope"));
  cfg.initial_inventory = Eigen::VectorXd::Zero(cfg.suppliers);
  if (doc.contains("initial_inventory")) {
    cfg.initial_inventory = to_vector(doc.at("initial_inventory"));
  }
  cfg.xi = Interval{doc.at("xi")[0].get<double>(), doc.at("xi")[1].get<double>()};
  if (doc.contains("expansion")) {
    const auto& exp = doc.at("expansion");
    cfg.expansion.enabled = true;
    cfg.expansion.capital = to_vector(exp.at("capital"));
    cfg.expansion.added = to_vector(exp.at("added"));
    cfg.expansion.surcharge = exp.value("surcharge", 0.5);
  }
  if (doc.contains("horizon")) cfg.horizon = doc.at("horizon").get<int>();
  if (doc.contains("salvage")) {
    const auto& s = doc.at("salvage");
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "none") {
      cfg.salvage = SalvageRule::none();
    } else if (kind == "fixed") {
      cfg.salvage = SalvageRule::fixed(s.at("value").get<double>());
    } else if (kind == "cost_fraction") {
      cfg.salvage = SalvageRule::cost_fraction(s.at("value").get<double>());
    } else {
      throw std::invalid_argument("salvage kind '" + kind + "' not recognized");
    }
  }
  cfg.validate();
  return cfg;
}

std::string transport_to_json(const TransportConfig& cfg) {
  nlohmann::json doc;
  doc["horizon"] = cfg.horizon;
  doc["suppliers"] = cfg.suppliers;
  doc["customers"] = cfg.customers;
  auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  doc["production_cost"] = vec(cfg.production_cost);
  doc["holding_cost"] = vec(cfg.holding_cost);
  doc["capacity"] = vec(cfg.capacity);
  doc["initial_inventory"] = vec(cfg.initial_inventory);
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < cfg.transport_cost.rows(); ++i) {
    rows.push_back(vec(cfg.transport_cost.row(i).transpose()));
  }
  doc["transport_cost"] = rows;
  doc["revenue"] = vec(cfg.revenue);
  doc["demand_intercept"] = vec(cfg.demand_intercept);
  doc["demand_slope"] = vec(cfg.demand_slope);
  doc["xi"] = {cfg.xi.lo, cfg.xi.hi};
  if (cfg.expansion.enabled) {
    doc["expansion"] = {{"capital", vec(cfg.expansion.capital)},
                        {"added", vec(cfg.expansion.added)},
                        {"surcharge", cfg.expansion.surcharge}};
  }
  switch (cfg.salvage.kind) {
    case SalvageRule::Kind::None:
      doc["salvage"] = {{"kind", "none"}};
      break;
    case SalvageRule::Kind::Fixed:
      doc["salvage"] = {{"kind", "fixed"}, {"value", cfg.salvage.value}};
      break;
    case SalvageRule::Kind::CostFraction:
      doc["salvage"] = {{"kind", "cost_fraction"}, {"value", cfg.salvage.value}};
      break;
  }
  return doc.dump(2);
}

TransportConfig transport_3x2(int horizon, SalvageRule salvage) {
  const std::string dir = resolve_data_dir("");
  TransportConfig cfg = transport_from_json(load_checked(dir, kTransport3x2));
  cfg.horizon = horizon;
  cfg.salvage = salvage;
  cfg.validate();
  return cfg;
}

TransportConfig transport_10x10(int horizon, SalvageRule salvage, const std::string& data_dir) {
  const std::string dir = resolve_data_dir(data_dir);
  TransportConfig cfg = transport_from_json(load_checked(dir, kTransport10x10));
  cfg.horizon = horizon;
  cfg.salvage = salvage;
  cfg.validate();
  return cfg;
}

}  // namespace drlift
