//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/io/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sggm::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string> kKeys = {
    "hidden_dim", "latent_dim", "k_init",     "k_build",
    "beta",       "lr",         "epochs",     "batch_size",
    "seed",       "properties", "max_added_atoms", "workers"};

}  // namespace

FileConfig parse_config_text(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + " line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!kKeys.count(key))
      throw ConfigError(origin + ": unknown key '" + key + "'");
    if (kv.count(key))
      throw ConfigError(origin + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  for (const std::string& key : kKeys)
    if (!kv.count(key))
      throw ConfigError(origin + ": missing key '" + key + "'");

  FileConfig cfg;
  auto to_int = [&](const std::string& key, int lo) {
    try {
      const int v = std::stoi(kv[key]);
      if (v < lo) throw std::out_of_range("below minimum");
      return v;
    } catch (...) {
      throw ConfigError(origin + ": bad value for '" + key + "'");
    }
  };
  auto to_double = [&](const std::string& key) {
    try {
      return std::stod(kv[key]);
    } catch (...) {
      throw ConfigError(origin + ": bad value for '" + key + "'");
    }
  };
  cfg.hidden_dim = to_int("hidden_dim", 1);
  cfg.latent_dim = to_int("latent_dim", 1);
  cfg.k_init = to_int("k_init", 1);
  cfg.k_build = to_int("k_build", 1);
  cfg.beta = to_double("beta");
  cfg.lr = to_double("lr");
  cfg.epochs = to_int("epochs", 1);
  cfg.batch_size = to_int("batch_size", 1);
  try {
    cfg.seed = std::stoull(kv["seed"]);
  } catch (...) {
    throw ConfigError(origin + ": bad value for 'seed'");
  }
  cfg.max_added_atoms = to_int("max_added_atoms", 1);
  cfg.workers = to_int("workers", 1);

  cfg.properties.clear();
  std::stringstream ps(kv["properties"]);
  std::string name;
  while (std::getline(ps, name, ',')) {
    name = trim(name);
    if (!name.empty()) cfg.properties.push_back(name);
  }
  return cfg;
}

FileConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::map<std::string, std::string> config_to_map(const FileConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["hidden_dim"] = std::to_string(cfg.hidden_dim);
  kv["latent_dim"] = std::to_string(cfg.latent_dim);
  kv["k_init"] = std::to_string(cfg.k_init);
  kv["k_build"] = std::to_string(cfg.k_build);
  std::ostringstream beta, lr;
  beta << cfg.beta;
  lr << cfg.lr;
  kv["beta"] = beta.str();
  kv["lr"] = lr.str();
  kv["epochs"] = std::to_string(cfg.epochs);
  kv["batch_size"] = std::to_string(cfg.batch_size);
  kv["seed"] = std::to_string(cfg.seed);
  std::string joined;
  for (std::size_t i = 0; i < cfg.properties.size(); ++i) {
    if (i) joined += ",";
    joined += cfg.properties[i];
  }
  kv["properties"] = joined;
  kv["max_added_atoms"] = std::to_string(cfg.max_added_atoms);
  kv["workers"] = std::to_string(cfg.workers);
  return kv;
}

}  // namespace sggm::io
