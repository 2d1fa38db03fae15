#include "tes/blockcipher.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <string>

#include "tes/error.hpp"

namespace tes {

namespace {

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

const EVP_CIPHER* aes_ecb_for(std::size_t key_bytes) {
  switch (key_bytes) {
    case 16: return EVP_aes_128_ecb();
    case 24: return EVP_aes_192_ecb();
    case 32: return EVP_aes_256_ecb();
    default:
      throw Error(Errc::bad_key_length,
                  "AES key must be 16, 24 or 32 bytes, got " + std::to_string(key_bytes));
  }
}

// Keyed EVP contexts are built once; each call works on a private copy so a
// shared instance can be used from several threads.
class AesCipher final : public BlockCipher {
 public:
  explicit AesCipher(std::span<const std::uint8_t> key)
      : enc_(init(key, 1)), dec_(init(key, 0)) {}

  Block encrypt_block(const Block& x) const override {
    Block y;
    run(enc_.get(), std::span(&x, 1), std::span(&y, 1));
    return y;
  }

  Block decrypt_block(const Block& y) const override {
    Block x;
    run(dec_.get(), std::span(&y, 1), std::span(&x, 1));
    return x;
  }

  void encrypt_blocks(std::span<const Block> in, std::span<Block> out) const override {
    if (in.size() != out.size()) throw Error(Errc::bad_block_length, "batch size mismatch");
    if (!in.empty()) run(enc_.get(), in, out);
  }

 private:
  static CtxPtr init(std::span<const std::uint8_t> key, int encrypt) {
    const EVP_CIPHER* cipher = aes_ecb_for(key.size());
    CtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_CipherInit_ex(ctx.get(), cipher, nullptr, key.data(), nullptr, encrypt) != 1 ||
        EVP_CIPHER_CTX_set_padding(ctx.get(), 0) != 1) {
      throw Error(Errc::bad_key_length, "OpenSSL AES key setup failed");
    }
    return ctx;
  }

  static void run(const EVP_CIPHER_CTX* keyed, std::span<const Block> in, std::span<Block> out) {
    CtxPtr ctx(EVP_CIPHER_CTX_new());
    int produced = 0;
    const int len = static_cast<int>(in.size() * 16);
    if (!ctx || EVP_CIPHER_CTX_copy(ctx.get(), keyed) != 1 ||
        EVP_CipherUpdate(ctx.get(), out.front().data(), &produced, in.front().data(), len) != 1 ||
        produced != len) {
      throw Error(Errc::bad_block_length, "OpenSSL AES block operation failed");
    }
  }

  CtxPtr enc_;
  CtxPtr dec_;
};

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Balanced Feistel network over two 64-bit halves.
class TestPermutation final : public BlockCipher {
 public:
  explicit TestPermutation(std::span<const std::uint8_t> key) {
    std::uint64_t state = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : key) state = (state ^ b) * 0x100000001b3ULL;
    state ^= key.size();
    for (auto& k : round_keys_) {
      state += 0x9e3779b97f4a7c15ULL;
      k = mix64(state);
    }
  }

  Block encrypt_block(const Block& x) const override {
    auto [l, r] = split(x);
    for (std::uint64_t k : round_keys_) {
      const std::uint64_t t = l ^ mix64(r ^ k);
      l = r;
      r = t;
    }
    return join(l, r);
  }

  Block decrypt_block(const Block& y) const override {
    auto [l, r] = split(y);
    for (auto it = round_keys_.rbegin(); it != round_keys_.rend(); ++it) {
      const std::uint64_t t = r ^ mix64(l ^ *it);
      r = l;
      l = t;
    }
    return join(l, r);
  }

 private:
  static std::pair<std::uint64_t, std::uint64_t> split(const Block& b) {
    const FieldElement f = FieldElement::from_block(b);
    return {f.hi(), f.lo()};
  }
  static Block join(std::uint64_t l, std::uint64_t r) { return FieldElement(l, r).to_block(); }

  std::array<std::uint64_t, 8> round_keys_{};
};

}  // namespace

std::string_view cipher_kind_name(CipherKind kind) {
  return kind == CipherKind::aes ? "aes" : "test-permutation";
}

void BlockCipher::encrypt_blocks(std::span<const Block> in, std::span<Block> out) const {
  if (in.size() != out.size()) throw Error(Errc::bad_block_length, "batch size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = encrypt_block(in[i]);
}

CipherPtr make_cipher(CipherKind kind, std::span<const std::uint8_t> key) {
  if (kind == CipherKind::aes) return std::make_shared<AesCipher>(key);
  return std::make_shared<TestPermutation>(key);
}

namespace {

Block to_block_checked(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != 16) {
    throw Error(Errc::bad_block_length, "block must be 16 bytes, got " + std::to_string(bytes.size()));
  }
  Block b;
  std::copy(bytes.begin(), bytes.end(), b.begin());
  return b;
}

}  // namespace

Block encrypt_block(const BlockCipher& c, std::span<const std::uint8_t> x) {
  return c.encrypt_block(to_block_checked(x));
}

Block decrypt_block(const BlockCipher& c, std::span<const std::uint8_t> y) {
  return c.decrypt_block(to_block_checked(y));
}

}  // namespace tes
