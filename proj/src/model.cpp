#include "cipc/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace cipc {

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

void SystemParams::validate() const {
  if (!(lambda_ab > 0) || !(lambda_aw > 0) || !(lambda_bw > 0) || !(lambda_bb > 0)) {
    throw ConfigError("all channel gain means lambda_* must be positive");
  }
  if (!(sigma2_b > 0) || !(sigma2_w > 0)) {
    throw ConfigError("noise powers sigma2_b and sigma2_w must be positive");
  }
  if (!(phi >= 0.0) || !(phi <= 1.0)) {
    throw ConfigError("self-interference coefficient phi must lie in [0,1]");
  }
}

void validate(const SchemeConfig& cfg, const SystemParams& sys) {
  sys.validate();
  if (!(cfg.q > 0)) throw ConfigError("q must be positive");
  if (!(cfg.p_b_max > 0)) throw ConfigError("p_b_max must be positive");
  if (!(cfg.rate > 0)) throw ConfigError("rate must be positive");
  if (!(cfg.epsilon >= 0.0) || !(cfg.epsilon <= 1.0)) {
    throw ConfigError("epsilon must lie in [0,1]");
  }
  if (cfg.scheme == Scheme::truncated && !(cfg.p_a_max > 0)) {
    throw ConfigError("p_a_max must be positive for the truncated scheme");
  }
  const double cap = std::log2(1.0 + cfg.q / sys.sigma2_b);
  if (!(cfg.rate < cap)) {
    std::ostringstream os;
    os << "rate " << cfg.rate << " violates the decodability guard: must be below "
       << "log2(1 + q/sigma2_b) = " << cap;
    throw ConfigError(os.str());
  }
}

double condition_c_probability(const SchemeConfig& cfg, const SystemParams& sys) {
  if (cfg.scheme == Scheme::conventional) return 1.0;
  return std::exp(-cfg.q / (sys.lambda_ab * cfg.p_a_max));
}

Priors priors(const SchemeConfig& cfg, const SystemParams& sys) {
  if (cfg.scheme == Scheme::conventional) return Priors{0.5, 0.5};
  const double pi1 = 0.5 * condition_c_probability(cfg, sys);
  return Priors{1.0 - pi1, pi1};
}

namespace {

double parse_number(std::string_view key, std::string_view value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("config: bad numeric value for key '" + std::string(key) +
                      "': '" + std::string(value) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

ParsedConfig parse_config_text(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) +
                        " is not of the form key = value");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty() || value.empty()) {
      throw ConfigError("config: empty key or value on line " + std::to_string(line_no));
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }
  }

  ParsedConfig out;
  auto take = [&kv](std::string_view key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::pair<bool, std::string>{false, {}};
    std::pair<bool, std::string> r{true, it->second};
    kv.erase(it);
    return r;
  };
  auto require = [&take](std::string_view key) {
    auto [found, value] = take(key);
    if (!found) throw ConfigError("config: missing required key '" + std::string(key) + "'");
    return value;
  };

  const std::string scheme = require("scheme");
  if (scheme == "truncated") {
    out.cfg.scheme = Scheme::truncated;
  } else if (scheme == "conventional") {
    out.cfg.scheme = Scheme::conventional;
  } else {
    throw ConfigError("config: scheme must be 'truncated' or 'conventional', got '" +
                      scheme + "'");
  }

  out.cfg.q = parse_number("q", require("q"));
  out.cfg.p_b_max = db_to_linear(parse_number("p_b_max_db", require("p_b_max_db")));
  out.cfg.rate = parse_number("rate", require("rate"));
  out.cfg.epsilon = parse_number("epsilon", require("epsilon"));
  out.sys.sigma2_b = db_to_linear(parse_number("sigma2_b_db", require("sigma2_b_db")));
  out.sys.sigma2_w = db_to_linear(parse_number("sigma2_w_db", require("sigma2_w_db")));
  out.sys.phi = parse_number("phi", require("phi"));

  if (auto [found, value] = take("p_a_max_db"); found) {
    out.cfg.p_a_max = db_to_linear(parse_number("p_a_max_db", value));
  } else if (out.cfg.scheme == Scheme::truncated) {
    throw ConfigError("config: p_a_max_db is required for the truncated scheme");
  }
  if (auto [found, value] = take("lambda_ab"); found) out.sys.lambda_ab = parse_number("lambda_ab", value);
  if (auto [found, value] = take("lambda_aw"); found) out.sys.lambda_aw = parse_number("lambda_aw", value);
  if (auto [found, value] = take("lambda_bw"); found) out.sys.lambda_bw = parse_number("lambda_bw", value);
  if (auto [found, value] = take("lambda_bb"); found) out.sys.lambda_bb = parse_number("lambda_bb", value);

  if (!kv.empty()) {
    throw ConfigError("config: unknown key '" + kv.begin()->first + "'");
  }

  validate(out.cfg, out.sys);
  return out;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace cipc
