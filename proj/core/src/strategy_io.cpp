#include "drlift/uncertainty.hpp"

#include <json.hpp>

#include <sstream>

namespace drlift {

std::string strategy_to_json(const LiftingStrategy& strategy) {
  nlohmann::json stages = nlohmann::json::array();
  for (int t = 2; t <= strategy.horizon(); ++t) {
    stages.push_back({{"breakpoints", strategy.breakpoints(t)}});
  }
  return nlohmann::json{{"stages", stages}}.dump();
}

LiftingStrategy strategy_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<std::vector<double>> lists;
  for (const auto& stage : doc.at("stages")) {
    lists.push_back(stage.at("breakpoints").get<std::vector<double>>());
  }
  return LiftingStrategy(std::move(lists));
}

std::vector<int> parse_hdr_counts(const std::string& shorthand) {
  std::vector<int> counts;
  std::stringstream in(shorthand);
  std::string group;
  while (std::getline(in, group, ',')) {
    const auto caret = group.find('^');
    if (caret == std::string::npos) {
      throw std::invalid_argument("HDR group '" + group + "' is missing '^'");
    }
    int breaks = 0;
    int repeat = 0;
    try {
      breaks = std::stoi(group.substr(0, caret));
      repeat = std::stoi(group.substr(caret + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("HDR group '" + group + "' is not <count>^<stages>");
    }
    if (breaks < 0 || repeat < 0) {
      throw std::invalid_argument("HDR group '" + group + "' has negative values");
    }
    counts.insert(counts.end(), repeat, breaks);
  }
  if (counts.empty()) throw std::invalid_argument("HDR shorthand is empty");
  return counts;
}

LiftingStrategy hdr_strategy(const std::string& shorthand,
                             const std::vector<double>& base_set) {
  std::vector<double> sorted = base_set;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<double>> lists;
  for (int count : parse_hdr_counts(shorthand)) {
    if (count > static_cast<int>(sorted.size())) {
      throw std::invalid_argument("HDR resolution exceeds the base set size");
    }
    lists.emplace_back(sorted.begin(), sorted.begin() + count);
  }
  return LiftingStrategy(std::move(lists));
}

}  // namespace drlift
