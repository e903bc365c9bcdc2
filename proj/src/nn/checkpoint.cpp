//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/nn/checkpoint.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace sggm::nn {

namespace {

// CRC-64/XZ (ECMA-182 polynomial, reflected, init/xorout all-ones).
constexpr std::uint64_t kPoly = 0xC96C5795D7870F42ULL;

const std::array<std::uint64_t, 256>& crc_table() {
  static const std::array<std::uint64_t, 256> table = [] {
    std::array<std::uint64_t, 256> t{};
    for (std::uint64_t i = 0; i < 256; ++i) {
      std::uint64_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? (c >> 1) ^ kPoly : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  return table;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& s, std::size_t& off) {
  if (off + 4 > s.size()) throw std::runtime_error("checkpoint: truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + i])) << (8 * i);
  off += 4;
  return v;
}

std::uint64_t get_u64(const std::string& s, std::size_t& off) {
  if (off + 8 > s.size()) throw std::runtime_error("checkpoint: truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[off + i])) << (8 * i);
  off += 8;
  return v;
}

}  // namespace

std::uint64_t crc64(const void* data, std::size_t len, std::uint64_t crc) {
  const auto& table = crc_table();
  const auto* p = static_cast<const unsigned char*>(data);
  crc = ~crc;
  for (std::size_t i = 0; i < len; ++i)
    crc = table[(crc ^ p[i]) & 0xff] ^ (crc >> 8);
  return ~crc;
}

void save_checkpoint(const ParameterStore& store, const std::string& path) {
  std::string buf;
  buf += "SGGM";
  put_u32(buf, kCheckpointVersion);
  put_u32(buf, static_cast<std::uint32_t>(store.tensor_count()));
  for (const auto& [name, t] : store.entries()) {
    put_u32(buf, static_cast<std::uint32_t>(name.size()));
    buf += name;
    put_u32(buf, 2);
    put_u64(buf, static_cast<std::uint64_t>(t.value.rows()));
    put_u64(buf, static_cast<std::uint64_t>(t.value.cols()));
    for (Eigen::Index r = 0; r < t.value.rows(); ++r) {
      for (Eigen::Index c = 0; c < t.value.cols(); ++c) {
        const double d = t.value(r, c);
        std::uint64_t bits;
        std::memcpy(&bits, &d, 8);
        put_u64(buf, bits);
      }
    }
  }
  put_u64(buf, crc64(buf.data(), buf.size()));

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot write " + tmp);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("checkpoint: short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("checkpoint: cannot rename into " + path);
}

std::map<std::string, Mat> read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 20 || buf.compare(0, 4, "SGGM") != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);

  const std::size_t body = buf.size() - 8;
  std::size_t crc_off = body;
  const std::uint64_t stored = get_u64(buf, crc_off);
  if (crc64(buf.data(), body) != stored)
    throw std::runtime_error("checkpoint: CRC mismatch in " + path);

  std::size_t off = 4;
  const std::uint32_t version = get_u32(buf, off);
  if (version != kCheckpointVersion)
    throw std::runtime_error("checkpoint: unsupported version");
  const std::uint32_t count = get_u32(buf, off);

  std::map<std::string, Mat> out;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t name_len = get_u32(buf, off);
    if (off + name_len > body) throw std::runtime_error("checkpoint: truncated");
    std::string name = buf.substr(off, name_len);
    off += name_len;
    const std::uint32_t rank = get_u32(buf, off);
    std::vector<std::uint64_t> dims(rank);
    std::uint64_t total = 1;
    for (auto& d : dims) {
      d = get_u64(buf, off);
      total *= d;
    }
    Eigen::Index rows = 1, cols = 1;
    if (rank == 1) {
      rows = 1;
      cols = static_cast<Eigen::Index>(dims[0]);
    } else if (rank == 2) {
      rows = static_cast<Eigen::Index>(dims[0]);
      cols = static_cast<Eigen::Index>(dims[1]);
    } else if (rank != 0) {
      throw std::runtime_error("checkpoint: unsupported rank");
    }
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        const std::uint64_t bits = get_u64(buf, off);
        double d;
        std::memcpy(&d, &bits, 8);
        m(r, c) = d;
      }
    }
    (void)total;
    out.emplace(std::move(name), std::move(m));
  }
  if (off != body) throw std::runtime_error("checkpoint: trailing bytes");
  return out;
}

void load_checkpoint(ParameterStore& store, const std::string& path) {
  auto values = read_checkpoint(path);
  if (values.size() != store.tensor_count())
    throw std::runtime_error("checkpoint: tensor set mismatch");
  for (auto& [name, t] : store.entries()) {
    auto it = values.find(name);
    if (it == values.end())
      throw std::runtime_error("checkpoint: missing tensor " + name);
    if (it->second.rows() != t.value.rows() || it->second.cols() != t.value.cols())
      throw std::runtime_error("checkpoint: shape mismatch for " + name);
    t.value = it->second;
    t.zero_grad();
  }
}

}  // namespace sggm::nn
