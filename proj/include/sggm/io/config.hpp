//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_IO_CONFIG_HPP_
#define SGGM_IO_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sggm::io {

/// Flat "key = value" file. All keys are required (properties may be empty);
/// unknown keys are rejected. '#' starts a comment line.
struct FileConfig {
  int hidden_dim = 128;
  int latent_dim = 128;
  int k_init = 3;
  int k_build = 2;
  double beta = 0.1;
  double lr = 1e-4;
  int epochs = 20;
  int batch_size = 32;
  std::uint64_t seed = 0;
  std::vector<std::string> properties;
  int max_added_atoms = 60;
  int workers = 1;
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

FileConfig parse_config_file(const std::string& path);
FileConfig parse_config_text(const std::string& text, const std::string& origin);

/// Key = value dump in the canonical key order (manifest snapshots).
std::map<std::string, std::string> config_to_map(const FileConfig& cfg);

}  // namespace sggm::io

#endif  // SGGM_IO_CONFIG_HPP_
