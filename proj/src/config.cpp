// SPDX-License-Identifier: Apache-2.0
#include "optsample/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace optsample {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits a value on commas/whitespace at parenthesis depth zero; surrounding
// brackets are optional.
std::vector<std::string> tokenize(std::string value) {
  value = trim(value);
  if (!value.empty() && value.front() == '[') {
    if (value.back() != ']') throw std::invalid_argument("unterminated '[' in config value");
    value = value.substr(1, value.size() - 2);
  }
  std::vector<std::string> tokens;
  std::string current;
  int depth = 0;
  for (char ch : value) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))) {
      if (!current.empty()) tokens.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses in config value");
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

using Entries = std::map<std::string, std::vector<std::vector<std::string>>>;

double to_double(const std::string& token, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad number '" + token + "'");
  }
}

long long to_int(const std::string& token, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad integer '" + token + "'");
  }
}

class Reader {
 public:
  explicit Reader(Entries entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  const std::vector<std::string>& single(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end())
      throw std::invalid_argument("config is missing required key '" + key + "'");
    if (it->second.size() != 1)
      throw std::invalid_argument("config key '" + key + "' given more than once");
    used_.insert(key);
    return it->second.front();
  }

  std::string scalar(const std::string& key) {
    const auto& tokens = single(key);
    if (tokens.size() != 1)
      throw std::invalid_argument("config key '" + key + "' expects a single value");
    return tokens.front();
  }

  double number(const std::string& key) { return to_double(scalar(key), key); }
  long long integer(const std::string& key) { return to_int(scalar(key), key); }

  std::vector<double> number_list(const std::string& key) {
    std::vector<double> out;
    for (const auto& token : single(key)) out.push_back(to_double(token, key));
    return out;
  }

  std::vector<std::vector<std::string>> repeated(const std::string& key) {
    const auto it = entries_.find(key);
    used_.insert(key);
    return it == entries_.end() ? std::vector<std::vector<std::string>>{} : it->second;
  }

  void reject_unknown() const {
    for (const auto& [key, unused] : entries_)
      if (used_.count(key) == 0)
        throw std::invalid_argument("unknown config key '" + key + "'");
  }

 private:
  Entries entries_;
  std::set<std::string> used_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  Entries entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    entries[key].push_back(tokenize(line.substr(eq + 1)));
  }

  Reader r(std::move(entries));

  std::vector<MultisineComponent> components;
  for (const auto& triple : r.repeated("input.component")) {
    if (triple.size() != 3)
      throw std::invalid_argument("input.component expects [omega, amplitude, phase]");
    components.push_back(MultisineComponent{to_double(triple[0], "input.component"),
                                            to_double(triple[1], "input.component"),
                                            to_double(triple[2], "input.component")});
  }

  std::vector<StrategySpec> strategies;
  for (const auto& token : r.single("strategies")) strategies.push_back(StrategySpec::parse(token));

  std::vector<int> sweep;
  for (const auto& token : r.single("n_sweep")) {
    const long long n = to_int(token, "n_sweep");
    if (n < 1) throw std::invalid_argument("n_sweep entries must be positive");
    sweep.push_back(static_cast<int>(n));
  }

  ExperimentConfig config{
      .plant = RationalTransferFunction(r.number_list("plant.num"), r.number_list("plant.den")),
      .input = Multisine(r.number("input.offset"), std::move(components)),
      .horizon = r.number("horizon"),
      .n_sweep = std::move(sweep),
      .runs = static_cast<int>(r.integer("runs")),
      .sigma = r.number("sigma"),
      .noise = NoiseKind::gaussian,
      .strategies = std::move(strategies),
      .seed = static_cast<std::uint64_t>(r.integer("seed")),
  };

  if (r.has("noise")) {
    const std::string kind = r.scalar("noise");
    if (kind == "gaussian") config.noise = NoiseKind::gaussian;
    else if (kind == "uniform") config.noise = NoiseKind::uniform;
    else throw std::invalid_argument("config key 'noise': expected gaussian or uniform");
  }
  if (r.has("grid_points")) config.grid_points = static_cast<int>(r.integer("grid_points"));
  if (r.has("ridge")) config.ridge = r.number("ridge");
  if (r.has("delta")) config.delta = r.number("delta");
  if (r.has("kw_tol")) config.kw_tol = r.number("kw_tol");
  if (r.has("density_max_iters"))
    config.density_max_iters = static_cast<int>(r.integer("density_max_iters"));
  if (r.has("output_dir")) config.output_dir = r.scalar("output_dir");
  if (r.has("threads")) config.threads = static_cast<int>(r.integer("threads"));

  r.reject_unknown();
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace optsample
