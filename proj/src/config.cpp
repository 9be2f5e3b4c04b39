#include "hhdr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <variant>

#include "hhdr/errors.hpp"

namespace hhdr {

namespace {

using Ref = std::variant<double*, unsigned long*, unsigned long long*, int*, bool*, UnitsMode*>;

struct Field {
  const char* key;
  std::function<Ref(RunConfig&)> ref;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"units", [](RunConfig& c) -> Ref { return &c.params.units; }},
      {"omega_a0", [](RunConfig& c) -> Ref { return &c.params.spin_a.omega0; }},
      {"gamma_a1", [](RunConfig& c) -> Ref { return &c.params.spin_a.gamma1; }},
      {"gamma_a2", [](RunConfig& c) -> Ref { return &c.params.spin_a.gamma2; }},
      {"pz_a", [](RunConfig& c) -> Ref { return &c.params.spin_a.pz_eq; }},
      {"omega_b0", [](RunConfig& c) -> Ref { return &c.params.spin_b.omega0; }},
      {"gamma_b1", [](RunConfig& c) -> Ref { return &c.params.spin_b.gamma1; }},
      {"gamma_b2", [](RunConfig& c) -> Ref { return &c.params.spin_b.gamma2; }},
      {"pz_b", [](RunConfig& c) -> Ref { return &c.params.spin_b.pz_eq; }},
      {"omega_b1", [](RunConfig& c) -> Ref { return &c.params.drive.omega_b1; }},
      {"delta_b", [](RunConfig& c) -> Ref { return &c.params.drive.delta_b; }},
      {"g", [](RunConfig& c) -> Ref { return &c.params.g; }},
      {"sweep_delta_min", [](RunConfig& c) -> Ref { return &c.delta_b.min; }},
      {"sweep_delta_max", [](RunConfig& c) -> Ref { return &c.delta_b.max; }},
      {"sweep_delta_count", [](RunConfig& c) -> Ref { return &c.delta_b.count; }},
      {"sweep_omega_b1_min", [](RunConfig& c) -> Ref { return &c.omega_b1.min; }},
      {"sweep_omega_b1_max", [](RunConfig& c) -> Ref { return &c.omega_b1.max; }},
      {"sweep_omega_b1_count", [](RunConfig& c) -> Ref { return &c.omega_b1.count; }},
      {"include_d0_term", [](RunConfig& c) -> Ref { return &c.include_d0_term; }},
      {"contour_level", [](RunConfig& c) -> Ref { return &c.contour_level; }},
      {"seo_delta_min", [](RunConfig& c) -> Ref { return &c.seo_delta_b.min; }},
      {"seo_delta_max", [](RunConfig& c) -> Ref { return &c.seo_delta_b.max; }},
      {"seo_delta_count", [](RunConfig& c) -> Ref { return &c.seo_delta_b.count; }},
      {"seo_omega_b1_min", [](RunConfig& c) -> Ref { return &c.seo_omega_b1.min; }},
      {"seo_omega_b1_max", [](RunConfig& c) -> Ref { return &c.seo_omega_b1.max; }},
      {"seo_omega_b1_count", [](RunConfig& c) -> Ref { return &c.seo_omega_b1.count; }},
      {"t_end", [](RunConfig& c) -> Ref { return &c.t_end; }},
      {"rel_tol", [](RunConfig& c) -> Ref { return &c.rel_tol; }},
      {"abs_tol", [](RunConfig& c) -> Ref { return &c.abs_tol; }},
      {"max_steps", [](RunConfig& c) -> Ref { return &c.max_steps; }},
      {"seed_amplitude", [](RunConfig& c) -> Ref { return &c.seed_amplitude; }},
      {"record_stride", [](RunConfig& c) -> Ref { return &c.record_stride; }},
      {"tail_fraction", [](RunConfig& c) -> Ref { return &c.tail_fraction; }},
      {"lme_dim_min", [](RunConfig& c) -> Ref { return &c.lme_dim_min; }},
      {"lme_dim_max", [](RunConfig& c) -> Ref { return &c.lme_dim_max; }},
      {"lme_instances", [](RunConfig& c) -> Ref { return &c.lme_instances; }},
      {"seed", [](RunConfig& c) -> Ref { return &c.seed; }},
      {"b_field", [](RunConfig& c) -> Ref { return &c.b_field; }},
      {"temperature", [](RunConfig& c) -> Ref { return &c.temperature; }},
      {"distance", [](RunConfig& c) -> Ref { return &c.distance; }},
      {"oisp", [](RunConfig& c) -> Ref { return &c.oisp; }},
      {"oisp_pz_a", [](RunConfig& c) -> Ref { return &c.oisp_pz_a; }},
  };
  return f;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_integer(std::string_view v, T& out) {
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  return r.ec == std::errc() && r.ptr == v.data() + v.size();
}

void assign(const Ref& ref, std::string_view key, std::string_view v, int line) {
  const std::string k(key);
  std::visit(
      [&](auto* p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) {
          double x = 0.0;
          const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
          if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x)) {
            throw ConfigError(k + ": malformed number '" + std::string(v) + "'", line);
          }
          *p = x;
        } else if constexpr (std::is_same_v<T, bool>) {
          if (v == "true") {
            *p = true;
          } else if (v == "false") {
            *p = false;
          } else {
            throw ConfigError(k + ": expected true or false, got '" + std::string(v) + "'", line);
          }
        } else if constexpr (std::is_same_v<T, UnitsMode>) {
          if (v == "normalized") {
            *p = UnitsMode::normalized;
          } else if (v == "absolute") {
            *p = UnitsMode::absolute;
          } else {
            throw ConfigError(k + ": expected normalized or absolute, got '" + std::string(v) + "'", line);
          }
        } else {
          if (!parse_integer(v, *p)) {
            throw ConfigError(k + ": malformed integer '" + std::string(v) + "'", line);
          }
        }
      },
      ref);
}

std::string render(const Ref& ref) {
  return std::visit(
      [](auto* p) -> std::string {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", *p);
          return buf;
        } else if constexpr (std::is_same_v<T, bool>) {
          return *p ? "true" : "false";
        } else if constexpr (std::is_same_v<T, UnitsMode>) {
          return *p == UnitsMode::normalized ? "normalized" : "absolute";
        } else {
          return std::to_string(*p);
        }
      },
      ref);
}

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what, 0);
}

std::string leading_key(const std::string& message) {
  const auto end = message.find_first_of(" :");
  return message.substr(0, end);
}

}  // namespace

IntegrationSpec RunConfig::integration() const {
  const SystemParams p = normalized(params);
  IntegrationSpec s = default_integration(p);
  if (t_end > 0.0) s.t_end = t_end;
  s.rel_tol = rel_tol;
  s.abs_tol = abs_tol;
  s.max_steps = static_cast<std::size_t>(max_steps);
  s.seed_amplitude = seed_amplitude;
  s.record_stride = record_stride;
  return s;
}

SweepSpec RunConfig::alpha_sweep() const {
  SweepSpec s;
  s.delta_b = delta_b;
  s.omega_b1 = omega_b1;
  s.base = params;
  s.include_d0_term = include_d0_term;
  return s;
}

SweepSpec RunConfig::seo_sweep() const {
  SweepSpec s = alpha_sweep();
  s.delta_b = seo_delta_b;
  s.omega_b1 = seo_omega_b1;
  return s;
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what(), 0);
  }
  const auto axis = [](const SweepAxis& a, const std::string& prefix) {
    check(std::isfinite(a.min) && std::isfinite(a.max), prefix + "_min must be finite");
    check(a.count >= 1, prefix + "_count must be >= 1");
    check(a.count == 1 || a.min < a.max, prefix + "_max must exceed " + prefix + "_min");
  };
  axis(delta_b, "sweep_delta");
  axis(omega_b1, "sweep_omega_b1");
  axis(seo_delta_b, "seo_delta");
  axis(seo_omega_b1, "seo_omega_b1");
  check(omega_b1.min >= 0.0, "sweep_omega_b1_min must be >= 0");
  check(seo_omega_b1.min >= 0.0, "seo_omega_b1_min must be >= 0");
  check(t_end >= 0.0, "t_end must be >= 0");
  check(rel_tol > 0.0 && rel_tol <= 1e-2, "rel_tol must lie in (0, 1e-2]");
  check(abs_tol > 0.0 && abs_tol <= 1e-2, "abs_tol must lie in (0, 1e-2]");
  check(max_steps > 0, "max_steps must be > 0");
  check(seed_amplitude >= 0.0, "seed_amplitude must be >= 0");
  check(record_stride >= 1, "record_stride must be >= 1");
  check(tail_fraction > 0.0 && tail_fraction <= 1.0, "tail_fraction must lie in (0, 1]");
  check(lme_dim_min >= 2 && lme_dim_min <= 12, "lme_dim_min must lie in [2, 12]");
  check(lme_dim_max >= lme_dim_min && lme_dim_max <= 12, "lme_dim_max must lie in [lme_dim_min, 12]");
  check(lme_instances >= 0, "lme_instances must be >= 0");
  check(b_field > 0.0 && b_field <= 1.0, "b_field must lie in (0, 1]");
  check(temperature > 0.0, "temperature must be > 0");
  check(distance > 0.0, "distance must be > 0");
  check(oisp_pz_a >= -1.0 && oisp_pz_a <= 1.0, "oisp_pz_a must lie in [-1, 1]");
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError(std::string(key) + ": missing value", line_no);

    const auto& fs = fields();
    const auto it = std::find_if(fs.begin(), fs.end(), [&](const Field& f) { return key == f.key; });
    if (it == fs.end()) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (seen.count(key)) throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
    seen.emplace(std::string(key), line_no);
    assign(it->ref(c), key, value, line_no);
  }

  try {
    c.validate();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const auto it = seen.find(leading_key(msg));
    throw ConfigError(msg, it == seen.end() ? 0 : it->second);
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  RunConfig copy = c;
  std::string out = "# hhdr config v1\n";
  for (const Field& f : fields()) {
    out += f.key;
    out += " = ";
    out += render(f.ref(copy));
    out += '\n';
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> k;
  for (const Field& f : fields()) k.emplace_back(f.key);
  return k;
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : serialize_config(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hhdr
