//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_IO_DATASET_HPP_
#define SGGM_IO_DATASET_HPP_

#include <map>
#include <string>
#include <vector>

#include "sggm/chem/mol_graph.hpp"

namespace sggm::io {

/// SMILES-lines dataset: one record per line, '#' comments and blank lines
/// ignored, anything after the first whitespace treated as a name and dropped.
struct LoadedDataset {
  std::vector<chem::MolGraph> molecules;
  std::vector<int> line_numbers;        // 1-based source line per molecule
  std::vector<std::string> raw_smiles;  // first token per molecule
  std::vector<std::string> errors;      // "line N: message"
};

LoadedDataset load_smiles_file(const std::string& path);

/// Atomic key=value file (temp + rename), keys in sorted order.
void write_manifest(const std::string& path,
                    const std::map<std::string, std::string>& kv);

std::uint64_t file_crc64(const std::string& path);

}  // namespace sggm::io

#endif  // SGGM_IO_DATASET_HPP_
