#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tes/bitstring.hpp"
#include "tes/blockcipher.hpp"
#include "tes/exec.hpp"
#include "tes/field.hpp"

namespace tes {

using Bytes = std::vector<std::uint8_t>;

enum class XcbVersion { v1, v2 };
enum class CounterFamily { inc32, xor_index };

// (v1, inc32) = XCBv1, (v1, xor_index) = MXCBv1, and likewise for v2.
struct XcbVariant {
  XcbVersion version = XcbVersion::v1;
  CounterFamily counter = CounterFamily::inc32;

  static constexpr XcbVariant xcbv1() { return {XcbVersion::v1, CounterFamily::inc32}; }
  static constexpr XcbVariant mxcbv1() { return {XcbVersion::v1, CounterFamily::xor_index}; }
  static constexpr XcbVariant xcbv2() { return {XcbVersion::v2, CounterFamily::inc32}; }
  static constexpr XcbVariant mxcbv2() { return {XcbVersion::v2, CounterFamily::xor_index}; }

  std::string_view name() const;
  friend constexpr bool operator==(const XcbVariant&, const XcbVariant&) = default;
};

enum class KeyLayout { xcb_v1, xcb_v2, hctr };

struct CipherKey {
  Bytes bytes;
  CipherPtr cipher;
};

/* Key material for one scheme instance. XCBv1 uses h1, h2, ke, kd, kc; XCBv2
   uses h, ke, kd, kc; HCTR uses k and h. `derived` is false once any subkey
   has been overridden by inject_subkeys. */
struct TesKeySet {
  KeyLayout layout = KeyLayout::xcb_v1;
  CipherKind kind = CipherKind::aes;
  Bytes master;
  FieldElement h1, h2, h;
  CipherKey ke, kd, kc, k;
  bool derived = true;
};

// Compares key material and flags; cipher objects are compared through their key bytes.
bool operator==(const TesKeySet& a, const TesKeySet& b);

// 128-bit master only; throws Errc::bad_key_length.
TesKeySet derive_keys_v1(std::span<const std::uint8_t> master, CipherKind kind = CipherKind::aes);
// 128, 192 or 256-bit master; subkeys have the master's length.
TesKeySet derive_keys_v2(std::span<const std::uint8_t> master, CipherKind kind = CipherKind::aes);
// HCTR's two independent keys.
TesKeySet make_hctr_keys(std::span<const std::uint8_t> k, FieldElement h,
                         CipherKind kind = CipherKind::aes);

struct SubkeyOverrides {
  std::optional<FieldElement> h1, h2, h;
  std::optional<Bytes> ke, kd, kc, k;

  bool empty() const { return !h1 && !h2 && !h && !ke && !kd && !kc && !k; }
};

TesKeySet inject_subkeys(TesKeySet keys, const SubkeyOverrides& overrides);

// Message / tweak length limits, in bits.
inline constexpr std::size_t kMinPayloadBits = 128;
inline constexpr std::size_t kMaxPayloadBits = std::size_t{1} << 39;
inline constexpr std::size_t kMaxTweakBits = std::size_t{1} << 39;

struct ModeOptions {
  // XCBv2/MXCBv2 on payloads that are not whole blocks; known to be distinguishable.
  bool allow_insecure_partial = false;
  Exec exec = Exec::parallel;
};

BitString xcb_encrypt(XcbVariant variant, const TesKeySet& keys, const BitString& t,
                      const BitString& p, const ModeOptions& opts = {});
BitString xcb_decrypt(XcbVariant variant, const TesKeySet& keys, const BitString& t,
                      const BitString& c, const ModeOptions& opts = {});

enum class HctrHash {
  original,  // H(P)
  fixed,     // H'(P) = H(P || 1)
};

BitString hctr_encrypt(const TesKeySet& keys, const BitString& t, const BitString& p,
                       HctrHash hash = HctrHash::original, Exec exec = Exec::parallel);
BitString hctr_decrypt(const TesKeySet& keys, const BitString& t, const BitString& c,
                       HctrHash hash = HctrHash::original, Exec exec = Exec::parallel);

// Uniform front end over all six schemes.
enum class Mode { xcbv1, xcbv2, mxcbv1, mxcbv2, hctr, hctr_fix };

inline constexpr Mode kAllModes[] = {Mode::xcbv1, Mode::xcbv2,  Mode::mxcbv1,
                                     Mode::mxcbv2, Mode::hctr, Mode::hctr_fix};

std::string_view mode_name(Mode mode);
// Throws Errc::bad_argument for an unknown name.
Mode parse_mode(std::string_view name);
bool accepts_partial_blocks(Mode mode);

/* Key bytes as accepted at the CLI: a block-cipher master key for the XCB
   family, and for HCTR the cipher key followed by the 16-byte hash key. */
TesKeySet keys_for_mode(Mode mode, std::span<const std::uint8_t> key,
                        CipherKind kind = CipherKind::aes);

BitString encrypt(Mode mode, const TesKeySet& keys, const BitString& t, const BitString& p,
                  const ModeOptions& opts = {});
BitString decrypt(Mode mode, const TesKeySet& keys, const BitString& t, const BitString& c,
                  const ModeOptions& opts = {});

}  // namespace tes
