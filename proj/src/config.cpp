#include "radnlw/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "radnlw/error.hpp"

namespace radnlw {
namespace {

using nlohmann::json;

// Reads doc[key] into out, recording the key as consumed.
class Reader {
 public:
  Reader(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw Error(ErrorKind::config, where("") + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.push_back(key);
    if (!doc_.contains(key)) return;
    try {
      out = doc_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorKind::config, where(key) + ": " + e.what());
    }
  }

  Reader child(const char* key) {
    seen_.push_back(key);
    static const json empty = json::object();
    return Reader(doc_.contains(key) ? doc_.at(key) : empty, where(key));
  }

  void finish() const {
    for (const auto& item : doc_.items())
      if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end())
        throw Error(ErrorKind::config, where(item.key()) + ": unknown key");
  }

 private:
  std::string where(const std::string& key) const {
    if (path_.empty()) return key;
    return key.empty() ? path_ : path_ + "." + key;
  }

  const json& doc_;
  std::string path_;
  std::vector<std::string> seen_;
};

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    return json(text);
  }
}

}  // namespace

bool OutputConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

void RunConfig::validate() const {
  nonlinearity.validate();
  if (n > (std::size_t{1} << 24)) throw Error(ErrorKind::config, "grid.n: at most 2^24 cells");
  (void)grid();
  if (solve.record_stride > (std::size_t{1} << 30))
    throw Error(ErrorKind::config, "solve.record_stride: unreasonably large");
  solve.validate();
  certifier.validate();
  if (workers == 0) throw Error(ErrorKind::config, "run.workers: must be positive");
  if (!(morawetz_C > 0.0)) throw Error(ErrorKind::config, "diagnostics.morawetz_C: must be positive");
  for (const auto& f : output.formats)
    if (f != "csv" && f != "text") throw Error(ErrorKind::config, "output.formats: unknown format '" + f + "'");
  const auto& p = data.params;
  if (data.profile == "gaussian-bump" || data.profile == "polynomial-bump") {
    if (!(p.support_radius > 0.0)) throw Error(ErrorKind::config, "data.support_radius: must be positive");
    if (p.support_radius >= r_max) throw Error(ErrorKind::config, "data.support_radius: must lie inside the grid");
    if (p.support_radius < 8.0 * (r_max / static_cast<double>(n)))
      throw Error(ErrorKind::config, "data.support_radius: spans fewer than 8 cells");
    if (data.profile == "gaussian-bump" && !(p.width > 0.0))
      throw Error(ErrorKind::config, "data.width: must be positive");
  } else if (data.profile == "standing-wave") {
    if (p.mode < 1) throw Error(ErrorKind::config, "data.mode: must be at least 1");
  } else if (data.profile == "table") {
    if (data.table.empty()) throw Error(ErrorKind::config, "data.table: path required for the table profile");
  } else if (data.profile != "zero") {
    throw Error(ErrorKind::config, "data.profile: unknown profile '" + data.profile + "'");
  }
}

InitialData RunConfig::initial_data() const {
  if (data.profile == "table") return table_profile(data.table, data.params.support_radius);
  return named_profile(data.profile, data.params, r_max);
}

void RunConfig::check_light_cone() const {
  if (!solve.enforce_light_cone || data.profile == "standing-wave") return;
  const double support = data.profile == "zero" ? 0.0 : initial_data().support_radius;
  if (support + solve.t_final > r_max)
    throw Error(ErrorKind::cone_violation, "data.support_radius + solve.t_final = " +
                                               std::to_string(support + solve.t_final) + " exceeds grid.r_max = " +
                                               std::to_string(r_max));
}

nlohmann::json to_json(const RunConfig& c) {
  const auto& p = c.data.params;
  return json{
      {"nonlinearity", {{"p", c.nonlinearity.p}, {"c", c.nonlinearity.c}, {"sigma", c.nonlinearity.sigma},
                        {"enabled", c.nonlinearity.enabled}}},
      {"grid", {{"r_max", c.r_max}, {"n", c.n}}},
      {"solve", {{"t_final", c.solve.t_final}, {"cfl", c.solve.cfl}, {"record_stride", c.solve.record_stride},
                 {"overflow_threshold", c.solve.overflow_threshold}}},
      {"data", {{"profile", c.data.profile}, {"amplitude", p.amplitude}, {"velocity_amplitude", p.velocity_amplitude},
                {"width", p.width}, {"center", p.center}, {"support_radius", p.support_radius}, {"mode", p.mode},
                {"table", c.data.table}}},
      {"certifier", {{"eps0", c.certifier.eps0}, {"C0", c.certifier.C0}, {"kappa", c.certifier.kappa},
                     {"kappa_B", c.certifier.kappa_B}, {"kappa_A", c.certifier.kappa_A},
                     {"cbound_margin", c.certifier.cbound_margin}}},
      {"diagnostics", {{"morawetz_C", c.morawetz_C}}},
      {"output", {{"directory", c.output.directory}, {"formats", c.output.formats}}},
      {"run", {{"workers", c.workers}}},
  };
}

RunConfig from_json(const nlohmann::json& doc) {
  RunConfig c;
  Reader root(doc, "");
  {
    Reader r = root.child("nonlinearity");
    r.get("p", c.nonlinearity.p);
    r.get("c", c.nonlinearity.c);
    r.get("sigma", c.nonlinearity.sigma);
    r.get("enabled", c.nonlinearity.enabled);
    r.finish();
  }
  {
    Reader r = root.child("grid");
    r.get("r_max", c.r_max);
    r.get("n", c.n);
    r.finish();
  }
  {
    Reader r = root.child("solve");
    r.get("t_final", c.solve.t_final);
    r.get("cfl", c.solve.cfl);
    r.get("record_stride", c.solve.record_stride);
    r.get("overflow_threshold", c.solve.overflow_threshold);
    r.finish();
  }
  {
    Reader r = root.child("data");
    auto& p = c.data.params;
    r.get("profile", c.data.profile);
    r.get("amplitude", p.amplitude);
    r.get("velocity_amplitude", p.velocity_amplitude);
    r.get("width", p.width);
    r.get("center", p.center);
    r.get("support_radius", p.support_radius);
    r.get("mode", p.mode);
    r.get("table", c.data.table);
    r.finish();
  }
  {
    Reader r = root.child("certifier");
    r.get("eps0", c.certifier.eps0);
    r.get("C0", c.certifier.C0);
    r.get("kappa", c.certifier.kappa);
    r.get("kappa_B", c.certifier.kappa_B);
    r.get("kappa_A", c.certifier.kappa_A);
    r.get("cbound_margin", c.certifier.cbound_margin);
    r.finish();
  }
  {
    Reader r = root.child("diagnostics");
    r.get("morawetz_C", c.morawetz_C);
    r.finish();
  }
  {
    Reader r = root.child("output");
    r.get("directory", c.output.directory);
    r.get("formats", c.output.formats);
    r.finish();
  }
  {
    Reader r = root.child("run");
    r.get("workers", c.workers);
    r.finish();
  }
  root.finish();
  c.solve.enforce_light_cone = c.data.profile != "standing-wave";
  return c;
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw Error(ErrorKind::config, "override '" + assignment + "': expected key.path=value");
  const std::string key = assignment.substr(0, eq);
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw Error(ErrorKind::config, "override '" + assignment + "': empty key segment");
    if (!node->is_object()) throw Error(ErrorKind::config, key + ": not an object path");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = parse_value(assignment.substr(eq + 1));
}

namespace {

RunConfig finish_loading(json doc, const std::vector<std::string>& overrides) {
  if (const char* dir = std::getenv("RADNLW_OUTPUT_DIR"); dir && *dir) doc["output"]["directory"] = dir;
  for (const auto& o : overrides) apply_override(doc, o);
  RunConfig c = from_json(doc);
  c.validate();
  return c;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::config, "cannot open config '" + file.string() + "'");
  json doc = to_json(RunConfig{});
  try {
    doc.merge_patch(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, file.string() + ": " + e.what());
  }
  return finish_loading(std::move(doc), overrides);
}

RunConfig load_config(const std::vector<std::string>& overrides) {
  return finish_loading(to_json(RunConfig{}), overrides);
}

}  // namespace radnlw
