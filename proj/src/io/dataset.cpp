//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/io/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sggm/chem/smiles.hpp"
#include "sggm/nn/checkpoint.hpp"

namespace sggm::io {

LoadedDataset load_smiles_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file " + path);
  LoadedDataset out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string token;
    std::istringstream ss(line);
    ss >> token;
    if (token.empty() || token[0] == '#') continue;
    try {
      out.molecules.push_back(chem::parse_smiles(token));
      out.line_numbers.push_back(line_no);
      out.raw_smiles.push_back(token);
    } catch (const std::exception& e) {
      out.errors.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_manifest(const std::string& path,
                    const std::map<std::string, std::string>& kv) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest " + tmp);
    for (const auto& [key, value] : kv) out << key << " = " << value << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename manifest into " + path);
}

std::uint64_t file_crc64(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  return nn::crc64(buf.data(), buf.size());
}

}  // namespace sggm::io
