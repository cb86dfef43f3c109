#include "twc/signature_shard.hpp"

#include <array>
#include <cstdint>

#include "twc/error.hpp"

namespace twc {
namespace {

template <typename T>
void put(std::ostream& out, T v) {
  std::array<char, sizeof(T)> buf;
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF);
  out.write(buf.data(), buf.size());
}

template <typename T>
T get(std::istream& in) {
  std::array<unsigned char, sizeof(T)> buf;
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) throw Error("truncated signature shard");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

constexpr std::array<char, 4> kMagic = {'T', 'W', 'M', 'H'};
constexpr std::uint16_t kVersion = 1;

}  // namespace

void write_signature_shard(std::ostream& out, const MinhashParams& params,
                           std::span<const SignatureRecord> records) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint16_t>(out, kVersion);
  put<std::uint16_t>(out, 0);
  put<std::uint32_t>(out, params.shingle_size);
  put<std::uint32_t>(out, params.num_permutations);
  put<std::uint32_t>(out, params.num_bands);
  put<std::uint32_t>(out, params.rows_per_band);
  put<std::uint64_t>(out, params.hash_seed);
  put<std::uint64_t>(out, records.size());
  for (const SignatureRecord& r : records) {
    if (!r.signature.values.empty() && r.signature.values.size() != params.num_permutations) {
      throw Error("signature length does not match shard params");
    }
    put<std::uint32_t>(out, static_cast<std::uint32_t>(r.doc_id.size()));
    out.write(r.doc_id.data(), static_cast<std::streamsize>(r.doc_id.size()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(r.signature.values.size()));
    for (std::uint64_t v : r.signature.values) put<std::uint64_t>(out, v);
  }
  if (!out) throw SinkWriteFailure("failed writing signature shard");
}

SignatureShard read_signature_shard(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != 4 || magic != kMagic) throw Error("not a signature shard");
  if (get<std::uint16_t>(in) != kVersion) throw Error("unsupported signature shard version");
  get<std::uint16_t>(in);
  SignatureShard shard;
  shard.params.shingle_size = get<std::uint32_t>(in);
  shard.params.num_permutations = get<std::uint32_t>(in);
  shard.params.num_bands = get<std::uint32_t>(in);
  shard.params.rows_per_band = get<std::uint32_t>(in);
  shard.params.hash_seed = get<std::uint64_t>(in);
  const auto count = get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    SignatureRecord r;
    const auto id_len = get<std::uint32_t>(in);
    r.doc_id.resize(id_len);
    in.read(r.doc_id.data(), id_len);
    if (in.gcount() != static_cast<std::streamsize>(id_len)) throw Error("truncated signature shard");
    const auto n = get<std::uint32_t>(in);
    if (n != 0 && n != shard.params.num_permutations) throw Error("signature length does not match shard params");
    r.signature.values.resize(n);
    for (auto& v : r.signature.values) v = get<std::uint64_t>(in);
    shard.records.push_back(std::move(r));
  }
  return shard;
}

}  // namespace twc
