#include "bbsd/config.hpp"

#include <fstream>
#include <sstream>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "bbsd/error.hpp"

namespace bbsd {

namespace {

using nlohmann::json;

// Single list of (key, field) pairs shared by the reader and the echo.
template <typename Config, typename Visitor>
void visit_fields(Config& c, Visitor&& v) {
  v("M", c.M);
  v("L", c.L);
  v("J", c.J);
  v("snr_db", c.snr_db);
  v("transient_db_below", c.transient_db_below);
  v("sigma_v2", c.sigma_v2);
  v("num_snapshots", c.num_snapshots);
  v("T_range", c.T_range);
  v("num_trials", c.num_trials);
  v("seed", c.seed);
  v("innovation_order", c.innovation_order);
  v("transient_order", c.transient_order);
  v("max_lag", c.max_lag);
  v("transient_enabled", c.transient_enabled);
  v("pevd_max_iter", c.pevd_max_iter);
  v("pevd_residual_tol", c.pevd_residual_tol);
  v("pevd_trunc_eps", c.pevd_trunc_eps);
  v("projection_trunc_eps", c.projection_trunc_eps);
  v("eigen_floor", c.eigen_floor);
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  ScenarioConfig c;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    std::size_t matched = 0;
    visit_fields(c, [&](const char* key, auto& field) {
      if (auto it = j.find(key); it != j.end()) {
        field = it->template get<std::decay_t<decltype(field)>>();
        ++matched;
      }
    });
    if (matched != j.size()) {
      ScenarioConfig probe;
      for (const auto& item : j.items()) {
        bool known = false;
        visit_fields(probe, [&](const char* key, auto&) { known = known || item.key() == key; });
        if (!known) throw ConfigError("config: unknown key '" + item.key() + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_json(const ScenarioConfig& config) {
  json j = json::object();
  visit_fields(config, [&](const char* key, const auto& field) { j[key] = field; });
  return j.dump();
}

}  // namespace bbsd
