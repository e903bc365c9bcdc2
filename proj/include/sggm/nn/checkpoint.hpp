//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_NN_CHECKPOINT_HPP_
#define SGGM_NN_CHECKPOINT_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "sggm/nn/tensor.hpp"

namespace sggm::nn {

/// Checkpoint wire format (little-endian throughout):
///   "SGGM" | u32 version | u32 tensor count
///   per tensor: u32 name length, name bytes, u32 rank, u64 dims...,
///               row-major f64 data
///   u64 CRC-64/XZ of all preceding bytes
/// Tensors are written in name order, so save -> load -> save is
/// byte-identical.
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::uint64_t crc64(const void* data, std::size_t len, std::uint64_t crc = 0);

/// Atomic write (temp file + rename).
void save_checkpoint(const ParameterStore& store, const std::string& path);

/// Raw read with magic/version/CRC validation.
std::map<std::string, Mat> read_checkpoint(const std::string& path);

/// Copies values into an existing store; throws on missing or mismatched
/// tensors (extra file entries are also an error).
void load_checkpoint(ParameterStore& store, const std::string& path);

}  // namespace sggm::nn

#endif  // SGGM_NN_CHECKPOINT_HPP_
