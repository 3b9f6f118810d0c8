#include "drlift/problems.hpp"

#include <cmath>
#include <sstream>

namespace drlift {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string idx(const std::string& base, int a) {
  return base + "[" + std::to_string(a) + "]";
}
std::string idx(const std::string& base, int a, int b) {
  return base + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}
std::string idx(const std::string& base, int a, int b, int c) {
  return base + "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

}  // namespace

UncertaintySet newsvendor_uncertainty(const NewsvendorConfig& cfg) {
  return UncertaintySet::box(cfg.horizon, cfg.demand.lo, cfg.demand.hi);
}

AffineStageModel newsvendor_model(const NewsvendorConfig& cfg) {
  require(cfg.horizon >= 2, "newsvendor needs at least two stages");
  require(cfg.order_cost >= 0 && cfg.holding_cost >= 0 && cfg.backlog_cost >= 0,
          "cost coefficients must be nonnegative");
  require(cfg.order_limit > 0, "ordering limit must be positive");

  AffineStageModel model(cfg.horizon, /*maximize=*/false);
  const int T = cfg.horizon;
  std::vector<int> x(T), inv(T + 1), sp(T + 1), sm(T + 1);
  for (int t = 1; t <= T - 1; ++t) x[t] = model.add_block(idx("x", t), t);
  for (int t = 2; t <= T; ++t) {
    inv[t] = model.add_block(idx("I", t), t);
    sp[t] = model.add_block(idx("sp", t), t);
    sm[t] = model.add_block(idx("sm", t), t);
  }

  for (int t = 2; t <= T; ++t) {
    // I_t = I_{t-1} + x_{t-1} - d_t
    StageConstraint balance;
    balance.name = idx("balance", t);
    balance.sense = Sense::Eq;
    balance.terms.push_back({inv[t], 1.0});
    if (t == 2) {
      balance.offset.constant = -cfg.initial_inventory;
    } else {
      balance.terms.push_back({inv[t - 1], -1.0});
    }
    balance.terms.push_back({x[t - 1], -1.0});
    balance.offset.coefs.push_back({stage_coord(t), 1.0});
    model.add_constraint(std::move(balance));

    StageConstraint storage{idx("store", t), Sense::Ge, {{sp[t], 1.0}, {inv[t], -1.0}}, {}};
    model.add_constraint(std::move(storage));
    StageConstraint backlog{idx("backlog", t), Sense::Ge, {{sm[t], 1.0}, {inv[t], 1.0}}, {}};
    model.add_constraint(std::move(backlog));
    StageConstraint sp_pos{idx("sp_pos", t), Sense::Ge, {{sp[t], 1.0}}, {}};
    model.add_constraint(std::move(sp_pos));
    StageConstraint sm_pos{idx("sm_pos", t), Sense::Ge, {{sm[t], 1.0}}, {}};
    model.add_constraint(std::move(sm_pos));
  }
  for (int t = 1; t <= T - 1; ++t) {
    StageConstraint lo{idx("x_pos", t), Sense::Ge, {{x[t], 1.0}}, {}};
    model.add_constraint(std::move(lo));
    StageConstraint hi{idx("x_cap", t), Sense::Ge, {{x[t], -1.0}}, {}};
    hi.offset.constant = cfg.order_limit;
    model.add_constraint(std::move(hi));
  }

  for (int t = 1; t <= T - 1; ++t) model.add_objective_term(x[t], cfg.order_cost);
  for (int t = 2; t <= T; ++t) {
    model.add_objective_term(sp[t], cfg.holding_cost);
    model.add_objective_term(sm[t], cfg.backlog_cost);
  }
  return model;
}

Eigen::VectorXd TransportConfig::salvage_values() const {
  switch (salvage.kind) {
    case SalvageRule::Kind::None:
      return Eigen::VectorXd::Zero(suppliers);
    case SalvageRule::Kind::Fixed:
      return Eigen::VectorXd::Constant(suppliers, salvage.value);
    case SalvageRule::Kind::CostFraction:
      return salvage.value * (production_cost + holding_cost);
  }
  return Eigen::VectorXd::Zero(suppliers);
}

void TransportConfig::validate() const {
  require(horizon >= 2, "transport model needs at least two stages");
  require(suppliers >= 1 && customers >= 1, "need at least one supplier and customer");
  auto check_len = [&](const Eigen::VectorXd& v, int len, const char* what) {
    if (v.size() != len) {
      std::ostringstream msg;
      msg << what << " has length " << v.size() << ", expected " << len;
      throw std::invalid_argument(msg.str());
    }
  };
  check_len(production_cost, suppliers, "production_cost");
  check_len(holding_cost, suppliers, "holding_cost");
  check_len(capacity, suppliers, "capacity");
  check_len(initial_inventory, suppliers, "initial_inventory");
  check_len(revenue, customers, "revenue");
  check_len(demand_intercept, customers, "demand_intercept");
  check_len(demand_slope, customers, "demand_slope");
  require(transport_cost.rows() == suppliers && transport_cost.cols() == customers,
          "transport_cost must be suppliers x customers");
  if (expansion.enabled) {
    check_len(expansion.capital, suppliers, "expansion.capital");
    check_len(expansion.added, suppliers, "expansion.added");
  }
  require(xi.lo < xi.hi, "xi bounds need lo < hi");
  for (int j = 0; j < customers; ++j) {
    const double at_lo = demand_intercept(j) + demand_slope(j) * xi.lo;
    const double at_hi = demand_intercept(j) + demand_slope(j) * xi.hi;
    require(at_lo >= 0.0 && at_hi >= 0.0,
            "customer " + std::to_string(j + 1) + " has negative demand over the xi range");
  }
}

UncertaintySet transport_uncertainty(const TransportConfig& cfg) {
  return UncertaintySet::box(cfg.horizon, cfg.xi.lo, cfg.xi.hi);
}

AffineStageModel transport_model(const TransportConfig& cfg) {
  cfg.validate();
  const int T = cfg.horizon;
  const int nI = cfg.suppliers;
  const int nJ = cfg.customers;
  const bool exp = cfg.expansion.enabled;
  AffineStageModel model(T, /*maximize=*/true);

  // Block layout: x[i,t] production, xexp[i,t] expansion production,
  // I[i,t] inventory, y[i,j,t] shipments, ybin[i] expansion flags.
  auto x = [&](int i, int t) { return model.block(idx("x", i, t)); };
  auto xe = [&](int i, int t) { return model.block(idx("xexp", i, t)); };
  auto inv = [&](int i, int t) { return model.block(idx("I", i, t)); };
  auto y = [&](int i, int j, int t) { return model.block(idx("y", i, j, t)); };
  auto ybin = [&](int i) { return model.block(idx("ybin", i)); };

  for (int t = 1; t <= T - 1; ++t) {
    for (int i = 1; i <= nI; ++i) {
      model.add_block(idx("x", i, t), t);
      if (exp) model.add_block(idx("xexp", i, t), t);
    }
  }
  if (exp) {
    for (int i = 1; i <= nI; ++i) model.add_block(idx("ybin", i), 1, /*binary=*/true);
  }
  for (int t = 2; t <= T; ++t) {
    for (int i = 1; i <= nI; ++i) {
      model.add_block(idx("I", i, t), t);
      for (int j = 1; j <= nJ; ++j) model.add_block(idx("y", i, j, t), t);
    }
  }

  for (int t = 2; t <= T; ++t) {
    for (int i = 1; i <= nI; ++i) {
      // Shipments out of supplier i cannot exceed its inventory.
      StageConstraint supply{idx("supply", i, t), Sense::Ge, {{inv(i, t), 1.0}}, {}};
      for (int j = 1; j <= nJ; ++j) supply.terms.push_back({y(i, j, t), -1.0});
      model.add_constraint(std::move(supply));

      // I_it = I_it-1 + x_it-1 (+ xexp_it-1) - sum_j y_ijt-1
      StageConstraint balance{idx("balance", i, t), Sense::Eq, {{inv(i, t), 1.0}}, {}};
      if (t == 2) {
        balance.offset.constant = -cfg.initial_inventory(i - 1);
      } else {
        balance.terms.push_back({inv(i, t - 1), -1.0});
        for (int j = 1; j <= nJ; ++j) balance.terms.push_back({y(i, j, t - 1), 1.0});
      }
      balance.terms.push_back({x(i, t - 1), -1.0});
      if (exp) balance.terms.push_back({xe(i, t - 1), -1.0});
      model.add_constraint(std::move(balance));

      StageConstraint inv_pos{idx("I_pos", i, t), Sense::Ge, {{inv(i, t), 1.0}}, {}};
      model.add_constraint(std::move(inv_pos));
    }
    for (int j = 1; j <= nJ; ++j) {
      // Shipments into customer j cannot exceed its realized demand.
      StageConstraint demand{idx("demand", j, t), Sense::Ge, {}, {}};
      demand.offset.constant = cfg.demand_intercept(j - 1);
      demand.offset.coefs.push_back({stage_coord(t), cfg.demand_slope(j - 1)});
      for (int i = 1; i <= nI; ++i) demand.terms.push_back({y(i, j, t), -1.0});
      model.add_constraint(std::move(demand));
    }
    for (int i = 1; i <= nI; ++i) {
      for (int j = 1; j <= nJ; ++j) {
        StageConstraint pos{idx("y_pos", i, j, t), Sense::Ge, {{y(i, j, t), 1.0}}, {}};
        model.add_constraint(std::move(pos));
      }
    }
  }

  for (int t = 1; t <= T - 1; ++t) {
    for (int i = 1; i <= nI; ++i) {
      StageConstraint lo{idx("x_pos", i, t), Sense::Ge, {{x(i, t), 1.0}}, {}};
      model.add_constraint(std::move(lo));
      StageConstraint hi{idx("x_cap", i, t), Sense::Ge, {{x(i, t), -1.0}}, {}};
      hi.offset.constant = cfg.capacity(i - 1);
      model.add_constraint(std::move(hi));
      if (exp) {
        StageConstraint elo{idx("xexp_pos", i, t), Sense::Ge, {{xe(i, t), 1.0}}, {}};
        model.add_constraint(std::move(elo));
        StageConstraint ehi{idx("xexp_cap", i, t),
                            Sense::Ge,
                            {{ybin(i), cfg.expansion.added(i - 1)}, {xe(i, t), -1.0}},
                            {}};
        model.add_constraint(std::move(ehi));
      }
    }
  }

  const Eigen::VectorXd salvage = cfg.salvage_values();
  for (int t = 2; t <= T; ++t) {
    for (int i = 1; i <= nI; ++i) {
      for (int j = 1; j <= nJ; ++j) {
        model.add_objective_term(y(i, j, t),
                                 cfg.revenue(j - 1) - cfg.transport_cost(i - 1, j - 1));
      }
      model.add_objective_term(inv(i, t), -cfg.holding_cost(i - 1));
      if (t == T) model.add_objective_term(inv(i, t), salvage(i - 1));
    }
  }
  for (int t = 1; t <= T - 1; ++t) {
    for (int i = 1; i <= nI; ++i) {
      model.add_objective_term(x(i, t), -cfg.production_cost(i - 1));
      if (exp) {
        model.add_objective_term(
            xe(i, t), -(1.0 + cfg.expansion.surcharge) * cfg.production_cost(i - 1));
      }
    }
  }
  if (exp) {
    for (int i = 1; i <= nI; ++i) model.add_objective_term(ybin(i), -cfg.expansion.capital(i - 1));
  }
  return model;
}

int Preset::horizon() const {
  if (newsvendor.has_value()) return newsvendor->horizon;
  if (transport.has_value()) return transport->horizon;
  throw std::logic_error("preset holds no problem");
}

UncertaintySet Preset::uncertainty() const {
  if (newsvendor.has_value()) return newsvendor_uncertainty(*newsvendor);
  if (transport.has_value()) return transport_uncertainty(*transport);
  throw std::logic_error("preset holds no problem");
}

std::vector<std::string> preset_names() {
  return {"newsvendor-T4",     "newsvendor-T8",     "transport-3x2-T6",
          "transport-3x2-T10", "transport-10x10-T10", "transport-10x10-T20"};
}

Preset load_preset(const std::string& name, const std::string& data_dir) {
  Preset preset;
  preset.name = name;
  if (name == "newsvendor-T4" || name == "newsvendor-T8") {
    NewsvendorConfig cfg;
    cfg.horizon = name == "newsvendor-T4" ? 4 : 8;
    preset.newsvendor = cfg;
    preset.base_breakpoints = {cfg.demand.mid()};
    return preset;
  }
  if (name == "transport-3x2-T6" || name == "transport-3x2-T10") {
    const bool t6 = name == "transport-3x2-T6";
    TransportConfig cfg = transport_3x2(t6 ? 6 : 10, SalvageRule::fixed(t6 ? 6.0 : 7.5));
    preset.transport = cfg;
    preset.base_breakpoints = {0.5, 1.0, 1.5, 2.0, 2.5};
    return preset;
  }
  if (name == "transport-10x10-T10" || name == "transport-10x10-T20") {
    const bool t10 = name == "transport-10x10-T10";
    TransportConfig cfg = transport_10x10(
        t10 ? 10 : 20, SalvageRule::cost_fraction(t10 ? 0.15 : 0.7), data_dir);
    preset.transport = cfg;
    preset.base_breakpoints = {0.2, 0.35, 0.5, 0.65, 0.8};
    return preset;
  }
  throw std::invalid_argument("preset '" + name + "' not recognized");
}

}  // namespace drlift
