#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "tes/field.hpp"

namespace tes {

enum class CipherKind {
  aes,               // AES-128/192/256 selected by key length
  test_permutation,  // keyed Feistel bijection for tests; any key length
};

std::string_view cipher_kind_name(CipherKind kind);

// A keyed permutation on 128-bit blocks; immutable and safe to share across threads.
class BlockCipher {
 public:
  virtual ~BlockCipher() = default;

  virtual Block encrypt_block(const Block& x) const = 0;
  virtual Block decrypt_block(const Block& y) const = 0;
  // in.size() must equal out.size(); the ranges may alias exactly.
  virtual void encrypt_blocks(std::span<const Block> in, std::span<Block> out) const;
};

using CipherPtr = std::shared_ptr<const BlockCipher>;

CipherPtr make_cipher(CipherKind kind, std::span<const std::uint8_t> key);

// Byte-span entry points; throw Errc::bad_block_length unless the input is 16 bytes.
Block encrypt_block(const BlockCipher& c, std::span<const std::uint8_t> x);
Block decrypt_block(const BlockCipher& c, std::span<const std::uint8_t> y);

}  // namespace tes
