#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "twc/dedup.hpp"

namespace twc {

// Binary shard of minhash signatures, so dedup can run as a separate pass.
//
// All integers little-endian:
//   magic        4 bytes  "TWMH"
//   version      u16      1
//   reserved     u16      0
//   shingle_size u32
//   permutations u32
//   bands        u32
//   rows         u32
//   hash_seed    u64
//   count        u64      number of records
//   count x { id_len u32, id bytes, n u32 (0 or permutations), n x u64 }
struct SignatureRecord {
  std::string doc_id;
  MinhashSignature signature;
  bool operator==(const SignatureRecord&) const = default;
};

struct SignatureShard {
  MinhashParams params;
  std::vector<SignatureRecord> records;
  bool operator==(const SignatureShard&) const = default;
};

void write_signature_shard(std::ostream& out, const MinhashParams& params,
                           std::span<const SignatureRecord> records);
// Throws Error on a bad magic, version, or truncated input.
SignatureShard read_signature_shard(std::istream& in);

}  // namespace twc
