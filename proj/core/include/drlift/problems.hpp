#pragma once

#include "drlift/counterpart.hpp"
#include "drlift/uncertainty.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace drlift {

/// Multistage newsvendor: orders x_t placed before the next demand arrives,
/// inventory/backlog split into s+ and s-.
struct NewsvendorConfig {
  int horizon = 4;
  double order_cost = 3.0;        // C_t
  double holding_cost = 1.5;      // H_t
  double backlog_cost = 7.0;      // B_t
  double order_limit = 8.0;       // U^x
  double initial_inventory = 4.0; // I_1
  Interval demand{0.0, 10.0};
};

AffineStageModel newsvendor_model(const NewsvendorConfig& cfg);
UncertaintySet newsvendor_uncertainty(const NewsvendorConfig& cfg);

/// End-of-horizon salvage credit per supplier.
struct SalvageRule {
  enum class Kind { None, Fixed, CostFraction };  // CostFraction: S_i = alpha (C_i + H_i)
  Kind kind = Kind::None;
  double value = 0.0;

  static SalvageRule none() { return {Kind::None, 0.0}; }
  static SalvageRule fixed(double v) { return {Kind::Fixed, v}; }
  static SalvageRule cost_fraction(double alpha) { return {Kind::CostFraction, alpha}; }
};

/// Multistage stochastic transportation setting: suppliers produce and store,
/// customers face demand affine in the stage uncertainty.
struct TransportConfig {
  int horizon = 6;
  int suppliers = 0;
  int customers = 0;
  Eigen::VectorXd production_cost;   // C_i
  Eigen::VectorXd holding_cost;      // H_i
  Eigen::VectorXd capacity;          // U_i^max
  Eigen::VectorXd initial_inventory; // I_i1
  Eigen::MatrixXd transport_cost;    // T_ij
  Eigen::VectorXd revenue;           // R_j
  Eigen::VectorXd demand_intercept;  // D_j^0
  Eigen::VectorXd demand_slope;      // D_j^1
  SalvageRule salvage;
  Interval xi{0.0, 1.0};

  struct Expansion {
    bool enabled = false;
    Eigen::VectorXd capital;   // M_i
    Eigen::VectorXd added;     // Q_i
    double surcharge = 0.5;    // epsilon on the unit production cost
  };
  Expansion expansion;

  Eigen::VectorXd salvage_values() const;
  void validate() const;
};

AffineStageModel transport_model(const TransportConfig& cfg);
UncertaintySet transport_uncertainty(const TransportConfig& cfg);

/// Three-supplier / two-customer setting; salvage varies by experiment.
TransportConfig transport_3x2(int horizon, SalvageRule salvage);

/// Ten-by-ten setting with capacity expansion, loaded from the versioned
/// data file (checksum verified).
TransportConfig transport_10x10(int horizon, SalvageRule salvage,
                                const std::string& data_dir = "");

/// JSON (de)serialization mirroring the tabulated schemas.
TransportConfig transport_from_json(const std::string& text);
std::string transport_to_json(const TransportConfig& cfg);

/// Named experiment presets.
struct Preset {
  std::string name;
  std::vector<double> base_breakpoints;  // Z_base for PLDR/HDR sourcing
  std::optional<NewsvendorConfig> newsvendor;
  std::optional<TransportConfig> transport;

  int horizon() const;
  UncertaintySet uncertainty() const;
};

Preset load_preset(const std::string& name, const std::string& data_dir = "");
std::vector<std::string> preset_names();

/// Directory search order: explicit argument, DRLIFT_DATA_DIR, the build
/// tree's data/ path.
std::string resolve_data_dir(const std::string& explicit_dir);

}  // namespace drlift
