#include "geoflow/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "geoflow/generators.hpp"
#include "geoflow/trace_io.hpp"

namespace geoflow {

using nlohmann::json;

namespace {

json to_json(const BaseConfig& b) {
  return {{"family", b.family},
          {"dim", b.dim},
          {"curvature", b.curvature},
          {"radius", b.radius}};
}

json to_json(const ManifoldConfig& m) {
  return {{"family", m.family}, {"dim", m.dim},         {"curvature", m.curvature},
          {"radius", m.radius}, {"rho", m.rho},         {"f_offset", m.f_offset},
          {"f_rate", m.f_rate}, {"base", to_json(m.base)}};
}

json to_json(const CurveConfig& c) {
  return {{"kind", c.kind},
          {"n", c.n},
          {"radius", c.radius},
          {"a", c.a},
          {"b", c.b},
          {"amp", c.amp},
          {"mode", c.mode},
          {"p", c.p},
          {"q", c.q},
          {"winding", c.winding},
          {"base_radius", c.base_radius},
          {"random_modes", c.random_modes},
          {"file", c.file}};
}

json to_json(const IntegratorConfig& i) {
  return {{"t_max", i.t_max},
          {"tol_geo", i.tol_geo},
          {"geo_consecutive", i.geo_consecutive},
          {"c_cfl", i.c_cfl},
          {"dt_max", i.dt_max},
          {"dt_min", i.dt_min},
          {"resample_every", i.resample_every},
          {"k2_max", i.k2_max},
          {"l_min_factor", i.l_min_factor},
          {"n_max", i.n_max},
          {"monitor_identities", i.monitor_identities},
          {"res1_max", i.res1_max},
          {"res2_max", i.res2_max},
          {"res3_max", i.res3_max},
          {"bernstein", i.bernstein},
          {"bernstein_eps", i.bernstein_eps},
          {"monitor_mu", i.monitor_mu},
          {"monitor_max_k2", i.monitor_max_k2}};
}

json to_json(const OutputConfig& o) {
  return {{"dir", o.dir}, {"snapshot_every", o.snapshot_every}};
}

json to_json(const HelixConfig& h) {
  return {{"K", h.K},     {"k0", h.k0},       {"tau0", h.tau0},
          {"dt", h.dt},   {"t_end", h.t_end}, {"variables", h.variables}};
}

json to_json(const RunConfig& c) {
  return {{"subcommand", c.subcommand}, {"manifold", to_json(c.manifold)},
          {"curve", to_json(c.curve)},  {"integrator", to_json(c.integrator)},
          {"output", to_json(c.output)}, {"helix", to_json(c.helix)},
          {"seed", c.seed}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.subcommand = j.at("subcommand").get<std::string>();
  const json& m = j.at("manifold");
  c.manifold.family = m.at("family").get<std::string>();
  c.manifold.dim = m.at("dim").get<int>();
  c.manifold.curvature = m.at("curvature").get<double>();
  c.manifold.radius = m.at("radius").get<double>();
  c.manifold.rho = m.at("rho").get<double>();
  c.manifold.f_offset = m.at("f_offset").get<double>();
  c.manifold.f_rate = m.at("f_rate").get<double>();
  const json& b = m.at("base");
  c.manifold.base.family = b.at("family").get<std::string>();
  c.manifold.base.dim = b.at("dim").get<int>();
  c.manifold.base.curvature = b.at("curvature").get<double>();
  c.manifold.base.radius = b.at("radius").get<double>();
  const json& cv = j.at("curve");
  c.curve.kind = cv.at("kind").get<std::string>();
  c.curve.n = cv.at("n").get<int>();
  c.curve.radius = cv.at("radius").get<double>();
  c.curve.a = cv.at("a").get<double>();
  c.curve.b = cv.at("b").get<double>();
  c.curve.amp = cv.at("amp").get<double>();
  c.curve.mode = cv.at("mode").get<int>();
  c.curve.p = cv.at("p").get<long>();
  c.curve.q = cv.at("q").get<long>();
  c.curve.winding = cv.at("winding").get<long>();
  c.curve.base_radius = cv.at("base_radius").get<double>();
  c.curve.random_modes = cv.at("random_modes").get<int>();
  c.curve.file = cv.at("file").get<std::string>();
  const json& in = j.at("integrator");
  c.integrator.t_max = in.at("t_max").get<double>();
  c.integrator.tol_geo = in.at("tol_geo").get<double>();
  c.integrator.geo_consecutive = in.at("geo_consecutive").get<int>();
  c.integrator.c_cfl = in.at("c_cfl").get<double>();
  c.integrator.dt_max = in.at("dt_max").get<double>();
  c.integrator.dt_min = in.at("dt_min").get<double>();
  c.integrator.resample_every = in.at("resample_every").get<int>();
  c.integrator.k2_max = in.at("k2_max").get<double>();
  c.integrator.l_min_factor = in.at("l_min_factor").get<double>();
  c.integrator.n_max = in.at("n_max").get<int>();
  c.integrator.monitor_identities = in.at("monitor_identities").get<bool>();
  c.integrator.res1_max = in.at("res1_max").get<double>();
  c.integrator.res2_max = in.at("res2_max").get<double>();
  c.integrator.res3_max = in.at("res3_max").get<double>();
  c.integrator.bernstein = in.at("bernstein").get<bool>();
  c.integrator.bernstein_eps = in.at("bernstein_eps").get<double>();
  c.integrator.monitor_mu = in.at("monitor_mu").get<bool>();
  c.integrator.monitor_max_k2 = in.at("monitor_max_k2").get<bool>();
  const json& o = j.at("output");
  c.output.dir = o.at("dir").get<std::string>();
  c.output.snapshot_every = o.at("snapshot_every").get<int>();
  const json& h = j.at("helix");
  c.helix.K = h.at("K").get<int>();
  c.helix.k0 = h.at("k0").get<double>();
  c.helix.tau0 = h.at("tau0").get<double>();
  c.helix.dt = h.at("dt").get<double>();
  c.helix.t_end = h.at("t_end").get<double>();
  c.helix.variables = h.at("variables").get<std::string>();
  c.seed = j.at("seed").get<long>();
  return c;
}

// Apply `src` onto the typed template `dst`, collecting unknown keys and
// type mismatches by their exact dotted names.
void merge_into(json& dst, const json& src, const std::string& prefix,
                std::vector<std::string>& problems) {
  if (!src.is_object()) {
    problems.push_back(prefix.empty() ? "config root must be a JSON object"
                                      : "key " + prefix + " must be an object");
    return;
  }
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!dst.contains(it.key())) {
      problems.push_back("unknown key: " + path);
      continue;
    }
    json& slot = dst[it.key()];
    const json& val = it.value();
    if (slot.is_object()) {
      merge_into(slot, val, path, problems);
    } else if (slot.is_string()) {
      if (!val.is_string())
        problems.push_back("key " + path + " expects a string");
      else
        slot = val;
    } else if (slot.is_boolean()) {
      if (!val.is_boolean())
        problems.push_back("key " + path + " expects a boolean");
      else
        slot = val;
    } else if (slot.is_number_integer()) {
      if (!val.is_number_integer())
        problems.push_back("key " + path + " expects an integer");
      else
        slot = val;
    } else {
      if (!val.is_number())
        problems.push_back("key " + path + " expects a number");
      else
        slot = val.get<double>();
    }
  }
}

// Apply one "dotted.key=value" override onto the typed template.
void apply_override(json& dst, const std::string& arg,
                    std::vector<std::string>& problems) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) {
    problems.push_back("override \"" + arg + "\" is not key=value");
    return;
  }
  const std::string path = arg.substr(0, eq);
  const std::string text = arg.substr(eq + 1);

  json* slot = &dst;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string part = path.substr(start, dot - start);
    if (!slot->is_object() || !slot->contains(part)) {
      problems.push_back("unknown key: " + path);
      return;
    }
    slot = &(*slot)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }

  if (slot->is_object()) {
    problems.push_back("key " + path + " is a block, not a value");
  } else if (slot->is_string()) {
    *slot = text;
  } else if (slot->is_boolean()) {
    if (text == "true" || text == "1")
      *slot = true;
    else if (text == "false" || text == "0")
      *slot = false;
    else
      problems.push_back("override " + path + ": cannot parse \"" + text +
                         "\" as a boolean");
  } else if (slot->is_number_integer()) {
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size())
      problems.push_back("override " + path + ": cannot parse \"" + text +
                         "\" as an integer");
    else
      *slot = v;
  } else {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
      problems.push_back("override " + path + ": cannot parse \"" + text +
                         "\" as a number");
    else
      *slot = v;
  }
}

bool is_pow2_in_range(int n) {
  return n >= 16 && n <= 4096 && (n & (n - 1)) == 0;
}

bool one_of(const std::string& value, std::initializer_list<const char*> set) {
  for (const char* s : set)
    if (value == s) return true;
  return false;
}

int base_dim(const BaseConfig& b) { return b.family == "circle" ? 1 : b.dim; }

void require_positive(std::vector<std::string>& problems, const char* key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << key << " must be positive and finite, got " << v;
    problems.push_back(os.str());
  }
}

void validate(const RunConfig& c, std::vector<std::string>& problems) {
  if (!one_of(c.subcommand, {"flow", "helix", "ramp", "conformal"}))
    problems.push_back("subcommand \"" + c.subcommand +
                       "\" is not one of flow|helix|ramp|conformal");

  const ManifoldConfig& m = c.manifold;
  const bool family_known = one_of(
      m.family, {"euclidean", "circle", "space-form", "product", "conformal",
                 "warped-circle"});
  if (!family_known)
    problems.push_back("manifold.family \"" + m.family +
                       "\" is not one of euclidean|circle|space-form|product|"
                       "conformal|warped-circle");
  if (one_of(m.family, {"euclidean", "space-form"}) && m.dim != 2 && m.dim != 3)
    problems.push_back("manifold.dim must be 2 or 3, got " +
                       std::to_string(m.dim));
  if (m.family == "space-form" && m.curvature != 1.0 && m.curvature != -1.0)
    problems.push_back("manifold.curvature must be +1 or -1 for a space form");
  if (m.family == "circle") require_positive(problems, "manifold.radius", m.radius);
  const bool uses_base =
      one_of(m.family, {"product", "conformal", "warped-circle"});
  if (uses_base) {
    if (!one_of(m.base.family, {"euclidean", "space-form", "circle"}))
      problems.push_back("manifold.base.family \"" + m.base.family +
                         "\" is not one of euclidean|space-form|circle");
    if (one_of(m.base.family, {"euclidean", "space-form"}) && m.base.dim != 2 &&
        m.base.dim != 3)
      problems.push_back("manifold.base.dim must be 2 or 3, got " +
                         std::to_string(m.base.dim));
    if (m.base.family == "space-form" && m.base.curvature != 1.0 &&
        m.base.curvature != -1.0)
      problems.push_back("manifold.base.curvature must be +1 or -1");
    if (m.base.family == "circle")
      require_positive(problems, "manifold.base.radius", m.base.radius);
  }
  if (one_of(m.family, {"product", "warped-circle"}))
    require_positive(problems, "manifold.rho", m.rho);
  if (!std::isfinite(m.f_offset) || !std::isfinite(m.f_rate))
    problems.push_back("manifold.f_offset and manifold.f_rate must be finite");

  if (c.subcommand == "flow" && m.family == "circle")
    problems.push_back(
        "manifold.family circle is one-dimensional and cannot carry a flow; "
        "use it as a product base");
  if (c.subcommand == "ramp" && m.family != "product")
    problems.push_back("ramp runs need manifold.family = product, got \"" +
                       m.family + "\"");
  if (c.subcommand == "conformal") {
    if (!one_of(m.family, {"conformal", "warped-circle"}))
      problems.push_back(
          "conformal runs need manifold.family = conformal or warped-circle, "
          "got \"" + m.family + "\"");
    if (m.f_offset != 0.0 || m.f_rate != 0.0)
      problems.push_back(
          "conformal runs drive the exponent themselves; manifold.f_offset "
          "and manifold.f_rate must be 0");
  }

  const CurveConfig& cv = c.curve;
  const bool kind_known =
      one_of(cv.kind, {"circle", "ellipse", "perturbed-circle", "random-circle",
                       "torus-winding", "s2xs1", "file"});
  if (!kind_known)
    problems.push_back("curve.kind \"" + cv.kind +
                       "\" is not one of circle|ellipse|perturbed-circle|"
                       "random-circle|torus-winding|s2xs1|file");
  if (!is_pow2_in_range(cv.n))
    problems.push_back("curve.n = " + std::to_string(cv.n) +
                       " is not a power of two between 16 and 4096");
  if (one_of(cv.kind, {"circle", "perturbed-circle", "random-circle"}))
    require_positive(problems, "curve.radius", cv.radius);
  if (cv.kind == "ellipse") {
    require_positive(problems, "curve.a", cv.a);
    require_positive(problems, "curve.b", cv.b);
  }
  if (one_of(cv.kind, {"perturbed-circle", "random-circle", "torus-winding",
                       "s2xs1"})) {
    if (!(cv.amp >= 0.0) || !std::isfinite(cv.amp))
      problems.push_back("curve.amp must be nonnegative and finite");
    if (cv.mode < 1)
      problems.push_back("curve.mode must be at least 1, got " +
                         std::to_string(cv.mode));
  }
  if (cv.kind == "torus-winding" && cv.p == 0 && cv.q == 0)
    problems.push_back("curve.p and curve.q cannot both be 0");
  if (cv.kind == "s2xs1") {
    if (cv.winding < 1)
      problems.push_back("curve.winding must be at least 1, got " +
                         std::to_string(cv.winding));
    require_positive(problems, "curve.base_radius", cv.base_radius);
  }
  if (cv.kind == "random-circle" && cv.random_modes < 1)
    problems.push_back("random-circle needs curve.random_modes >= 1");
  if (cv.kind == "file" && cv.file.empty())
    problems.push_back("curve.kind = file needs curve.file");

  if (family_known && kind_known && c.subcommand != "helix") {
    const int md = model_dim(m);
    if (one_of(cv.kind, {"circle", "perturbed-circle", "random-circle"}) &&
        md != 2 && md != 3)
      problems.push_back("curve.kind " + cv.kind + " needs a 2- or 3-dimensional "
                         "chart; the manifold block gives " + std::to_string(md));
    if (cv.kind == "ellipse" && md != 2)
      problems.push_back("curve.kind ellipse needs a 2-dimensional chart; the "
                         "manifold block gives " + std::to_string(md));
    if (cv.kind == "torus-winding" && md != 2)
      problems.push_back("curve.kind torus-winding needs a 2-dimensional chart; "
                         "the manifold block gives " + std::to_string(md));
    if (cv.kind == "s2xs1" &&
        (md != 3 || !one_of(m.family, {"product", "warped-circle"})))
      problems.push_back(
          "curve.kind s2xs1 needs a product or warped-circle manifold with a "
          "2-dimensional base");
  }

  const IntegratorConfig& in = c.integrator;
  require_positive(problems, "integrator.t_max", in.t_max);
  require_positive(problems, "integrator.tol_geo", in.tol_geo);
  require_positive(problems, "integrator.c_cfl", in.c_cfl);
  require_positive(problems, "integrator.dt_max", in.dt_max);
  require_positive(problems, "integrator.dt_min", in.dt_min);
  require_positive(problems, "integrator.k2_max", in.k2_max);
  require_positive(problems, "integrator.l_min_factor", in.l_min_factor);
  require_positive(problems, "integrator.res1_max", in.res1_max);
  require_positive(problems, "integrator.res2_max", in.res2_max);
  require_positive(problems, "integrator.res3_max", in.res3_max);
  require_positive(problems, "integrator.bernstein_eps", in.bernstein_eps);
  if (in.dt_min > in.dt_max)
    problems.push_back("integrator.dt_min exceeds integrator.dt_max");
  if (in.geo_consecutive < 1)
    problems.push_back("integrator.geo_consecutive must be at least 1");
  if (in.n_max < 1 || in.n_max > 3)
    problems.push_back("integrator.n_max must be 1, 2, or 3");
  if (in.resample_every < 0)
    problems.push_back("integrator.resample_every must be nonnegative");

  if (c.output.dir.empty()) problems.push_back("output.dir must be nonempty");
  if (c.output.snapshot_every < 0)
    problems.push_back("output.snapshot_every must be nonnegative");

  if (c.subcommand == "helix") {
    const HelixConfig& h = c.helix;
    if (h.K != -1 && h.K != 0 && h.K != 1)
      problems.push_back("helix.K must be -1, 0, or +1");
    if (!(h.k0 >= 0.0) || !std::isfinite(h.k0))
      problems.push_back("helix.k0 must be finite and >= 0");
    if (!std::isfinite(h.tau0)) problems.push_back("helix.tau0 must be finite");
    if (!(h.dt > 0.0) || h.dt > 1e-3)
      problems.push_back("helix.dt must lie in (0, 1e-3]");
    if (!(h.t_end >= 0.0) || !std::isfinite(h.t_end))
      problems.push_back("helix.t_end must be finite and >= 0");
    if (!one_of(h.variables, {"ktau", "uv"}))
      problems.push_back("helix.variables must be ktau or uv");
  }

  if (c.seed < 0) problems.push_back("seed must be nonnegative");
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

MetricModel build_base(const BaseConfig& b) {
  if (b.family == "euclidean") return MetricModel::euclidean(b.dim);
  if (b.family == "space-form") return MetricModel::space_form(b.dim, b.curvature);
  return MetricModel::circle(b.radius);
}

}  // namespace

FlowParams RunConfig::flow_params() const {
  FlowParams p;
  p.t_max = integrator.t_max;
  p.tol_geo = integrator.tol_geo;
  p.geo_consecutive = integrator.geo_consecutive;
  p.c_cfl = integrator.c_cfl;
  p.dt_max = integrator.dt_max;
  p.dt_min = integrator.dt_min;
  p.resample_every = integrator.resample_every;
  p.k2_max = integrator.k2_max;
  p.l_min_factor = integrator.l_min_factor;
  p.n_max = integrator.n_max;
  p.snapshot_every = output.snapshot_every;
  p.monitor_identities = integrator.monitor_identities;
  p.res1_max = integrator.res1_max;
  p.res2_max = integrator.res2_max;
  p.res3_max = integrator.res3_max;
  p.bernstein = integrator.bernstein;
  p.bernstein_eps = integrator.bernstein_eps;
  p.monitor_mu = integrator.monitor_mu;
  p.monitor_max_k2 = integrator.monitor_max_k2;
  return p;
}

RunConfig parse_config(const std::string& subcommand, const std::string& config_path,
                       const std::vector<std::string>& overrides) {
  std::string text;
  if (!config_path.empty()) {
    std::ifstream is(config_path, std::ios::binary);
    if (!is) throw ConfigError("cannot open config file " + config_path);
    std::ostringstream buf;
    buf << is.rdbuf();
    text = buf.str();
  }
  return parse_config_text(subcommand, text, overrides);
}

RunConfig parse_config_text(const std::string& subcommand, const std::string& json_text,
                            const std::vector<std::string>& overrides) {
  RunConfig defaults;
  defaults.subcommand = subcommand;
  if (subcommand == "ramp") {
    defaults.integrator.monitor_mu = true;
    defaults.integrator.t_max = 30.0;
  } else if (subcommand == "conformal") {
    defaults.integrator.monitor_max_k2 = true;
    defaults.integrator.t_max = 2.0;
  }

  json merged = to_json(defaults);
  std::vector<std::string> problems;

  if (!json_text.empty()) {
    json user = json::parse(json_text, nullptr, false);
    if (user.is_discarded())
      problems.push_back("config is not valid JSON");
    else
      merge_into(merged, user, "", problems);
  }
  for (const std::string& ov : overrides) apply_override(merged, ov, problems);

  RunConfig cfg = config_from_json(merged);
  cfg.overrides = overrides;
  if (cfg.subcommand != subcommand)
    problems.push_back("config file subcommand \"" + cfg.subcommand +
                       "\" does not match the invoked subcommand \"" + subcommand +
                       "\"");
  validate(cfg, problems);
  if (!problems.empty()) throw ConfigError(join(problems, "; "));
  return cfg;
}

std::string resolved_json(const RunConfig& config) {
  return to_json(config).dump(2) + "\n";
}

int model_dim(const ManifoldConfig& m) {
  if (m.family == "euclidean" || m.family == "space-form") return m.dim;
  if (m.family == "circle") return 1;
  if (m.family == "conformal") return base_dim(m.base);
  return base_dim(m.base) + 1;  // product, warped-circle
}

MetricModel build_model(const RunConfig& config) {
  const ManifoldConfig& m = config.manifold;
  if (m.family == "euclidean") return MetricModel::euclidean(m.dim);
  if (m.family == "circle") return MetricModel::circle(m.radius);
  if (m.family == "space-form") return MetricModel::space_form(m.dim, m.curvature);
  if (m.family == "product") return MetricModel::product(build_base(m.base), m.rho);
  if (m.family == "conformal")
    return MetricModel::conformal(build_base(m.base), {m.f_offset, m.f_rate});
  return MetricModel::warped_circle(build_base(m.base), m.rho,
                                    {m.f_offset, m.f_rate});
}

DiscreteCurve build_curve(const RunConfig& config) {
  const CurveConfig& cv = config.curve;
  const int md = model_dim(config.manifold);
  if (cv.kind == "circle") return gen_circle(cv.n, md, cv.radius);
  if (cv.kind == "ellipse") return gen_ellipse(cv.n, cv.a, cv.b);
  if (cv.kind == "perturbed-circle")
    return gen_perturbed_circle(cv.n, md, cv.radius, cv.amp, cv.mode);
  if (cv.kind == "torus-winding")
    return gen_torus_winding(cv.n, cv.p, cv.q, cv.amp, cv.mode);
  if (cv.kind == "s2xs1")
    return gen_s2xs1(cv.n, cv.winding, cv.base_radius, cv.amp, cv.mode);
  if (cv.kind == "random-circle") {
    // seeded multi-mode radial perturbation r(u) = radius·(1 + Σ aₘcos(mu+φₘ)),
    // amplitudes decaying like 1/m² so the seed curve stays immersed
    std::mt19937_64 rng(static_cast<std::uint64_t>(config.seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> am(static_cast<std::size_t>(cv.random_modes));
    std::vector<double> ph(static_cast<std::size_t>(cv.random_modes));
    for (int mode = 1; mode <= cv.random_modes; ++mode) {
      am[static_cast<std::size_t>(mode - 1)] =
          cv.amp * (0.5 + 0.5 * unit(rng)) / (mode * mode);
      ph[static_cast<std::size_t>(mode - 1)] = 2.0 * M_PI * unit(rng);
    }
    std::vector<Vec> nodes;
    for (int i = 0; i < cv.n; ++i) {
      const double u = 2.0 * M_PI * i / cv.n;
      double r = 1.0;
      for (int mode = 1; mode <= cv.random_modes; ++mode)
        r += am[static_cast<std::size_t>(mode - 1)] *
             std::cos(mode * u + ph[static_cast<std::size_t>(mode - 1)]);
      r *= cv.radius;
      Vec p = Vec::Zero(md);
      p[0] = r * std::cos(u);
      p[1] = r * std::sin(u);
      nodes.push_back(p);
    }
    return make_curve(std::move(nodes), Vec::Zero(md));
  }
  // kind == "file"
  DiscreteCurve curve = read_points_csv(cv.file);
  if (curve.nodes.front().size() != md)
    throw ConfigError("points file " + cv.file + " has " +
                      std::to_string(curve.nodes.front().size()) +
                      "-dimensional nodes; the manifold chart is " +
                      std::to_string(md) + "-dimensional");
  return curve;
}

}  // namespace geoflow
