#include "tes/modes.hpp"

#include <string>

#include "tes/ctr.hpp"
#include "tes/error.hpp"
#include "tes/polyhash.hpp"

namespace tes {

namespace {

// 0^{n-3} || bits of v.
Block constant_block(std::uint8_t v) {
  Block b{};
  b[15] = v;
  return b;
}

Bytes to_bytes(const Block& b) { return Bytes(b.begin(), b.end()); }

CipherKey make_key(CipherKind kind, Bytes bytes) {
  CipherPtr cipher = make_cipher(kind, bytes);
  return {std::move(bytes), std::move(cipher)};
}

// msb_{|K|}(E(lo) || E(hi)).
Bytes truncated_pair(const BlockCipher& e, std::uint8_t lo, std::uint8_t hi, std::size_t key_bytes) {
  Bytes out = to_bytes(e.encrypt_block(constant_block(lo)));
  const Block second = e.encrypt_block(constant_block(hi));
  out.insert(out.end(), second.begin(), second.end());
  out.resize(key_bytes);
  return out;
}

void check_xcb_master(std::size_t size, bool v1) {
  const bool ok = v1 ? size == 16 : (size == 16 || size == 24 || size == 32);
  if (!ok) {
    throw Error(Errc::bad_key_length,
                std::string(v1 ? "XCBv1 master key must be 16 bytes"
                               : "XCBv2 master key must be 16, 24 or 32 bytes") +
                    ", got " + std::to_string(size));
  }
}

void check_lengths(const BitString& t, const BitString& p) {
  if (p.size() < kMinPayloadBits || p.size() > kMaxPayloadBits) {
    throw Error(Errc::length_bounds,
                "payload must be between 128 and 2^39 bits, got " + std::to_string(p.size()));
  }
  if (t.size() > kMaxTweakBits) {
    throw Error(Errc::length_bounds, "tweak longer than 2^39 bits");
  }
}

void require_layout(const TesKeySet& keys, KeyLayout layout, const char* what) {
  if (keys.layout != layout) {
    throw Error(Errc::bad_argument, std::string("key set does not match ") + what);
  }
}

FieldElement fe(const Block& b) { return FieldElement::from_block(b); }
Block blk(FieldElement f) { return f.to_block(); }

BitString counter_mode(CounterFamily family, const BlockCipher& c, const Block& s,
                       const BitString& data, Exec exec) {
  return family == CounterFamily::inc32 ? xcb_ctr(c, s, data, exec) : xor_ctr(c, s, data, exec);
}

// X padded with zeros to a whole number of blocks.
BitString pad_to_blocks(const BitString& x) {
  BitString out = x;
  if (x.size() % 128 != 0) out.append(BitString::zeros(128 - x.size() % 128));
  return out;
}

const BitString& zero_block() {
  static const BitString z = BitString::zeros(128);
  return z;
}

// S-side hash of XCBv2: H_h(0^n || T, P_1 || ... || pad(P_{m-1}) || 0^n).
FieldElement xcbv2_first_hash(FieldElement h, const BitString& t, const BitString& a) {
  return xcb_hash(h, concat(zero_block(), t), concat(pad_to_blocks(a), zero_block()));
}

// MM-side hash of XCBv2, argument assembled as written with an explicit
// bin(|T || 0^n|) || bin(|C_1 .. C_{m-1}|) block; the built-in length term is dropped.
FieldElement xcbv2_second_hash(FieldElement h, const BitString& t, const BitString& c_a) {
  const BitString x = concat(t, zero_block());
  BitString y = pad_to_blocks(c_a);
  y.append(BitString::from_block(blk(xcb_length_block(x.size(), c_a.size()))));
  return xcb_hash(h, x, y, LengthTerm::suppress);
}

void check_v2_payload(const BitString& p, const ModeOptions& opts) {
  if (p.size() % 128 != 0 && !opts.allow_insecure_partial) {
    throw Error(Errc::partial_block_rejected,
                "XCBv2 payloads must be whole 128-bit blocks; partial blocks admit a known "
                "distinguishing attack (enable the insecure-partial option to override)");
  }
}

FieldElement hctr_h(FieldElement h, const BitString& x, HctrHash hash) {
  return hash == HctrHash::original ? hctr_hash(h, x) : hctr_hash_fixed(h, x);
}

}  // namespace

std::string_view XcbVariant::name() const {
  if (version == XcbVersion::v1) return counter == CounterFamily::inc32 ? "xcbv1" : "mxcbv1";
  return counter == CounterFamily::inc32 ? "xcbv2" : "mxcbv2";
}

bool operator==(const TesKeySet& a, const TesKeySet& b) {
  return a.layout == b.layout && a.kind == b.kind && a.master == b.master && a.h1 == b.h1 &&
         a.h2 == b.h2 && a.h == b.h && a.ke.bytes == b.ke.bytes && a.kd.bytes == b.kd.bytes &&
         a.kc.bytes == b.kc.bytes && a.k.bytes == b.k.bytes && a.derived == b.derived;
}

TesKeySet derive_keys_v1(std::span<const std::uint8_t> master, CipherKind kind) {
  check_xcb_master(master.size(), true);
  const CipherPtr e = make_cipher(kind, master);
  TesKeySet keys;
  keys.layout = KeyLayout::xcb_v1;
  keys.kind = kind;
  keys.master.assign(master.begin(), master.end());
  keys.h1 = fe(e->encrypt_block(constant_block(0b001)));
  keys.h2 = fe(e->encrypt_block(constant_block(0b011)));
  keys.ke = make_key(kind, to_bytes(e->encrypt_block(constant_block(0b000))));
  keys.kd = make_key(kind, to_bytes(e->encrypt_block(constant_block(0b100))));
  keys.kc = make_key(kind, to_bytes(e->encrypt_block(constant_block(0b010))));
  return keys;
}

TesKeySet derive_keys_v2(std::span<const std::uint8_t> master, CipherKind kind) {
  check_xcb_master(master.size(), false);
  const CipherPtr e = make_cipher(kind, master);
  TesKeySet keys;
  keys.layout = KeyLayout::xcb_v2;
  keys.kind = kind;
  keys.master.assign(master.begin(), master.end());
  keys.h = fe(e->encrypt_block(constant_block(0)));
  keys.ke = make_key(kind, truncated_pair(*e, 0b001, 0b010, master.size()));
  keys.kd = make_key(kind, truncated_pair(*e, 0b011, 0b100, master.size()));
  keys.kc = make_key(kind, truncated_pair(*e, 0b101, 0b110, master.size()));
  return keys;
}

TesKeySet make_hctr_keys(std::span<const std::uint8_t> k, FieldElement h, CipherKind kind) {
  TesKeySet keys;
  keys.layout = KeyLayout::hctr;
  keys.kind = kind;
  keys.master.assign(k.begin(), k.end());
  keys.k = make_key(kind, Bytes(k.begin(), k.end()));
  keys.h = h;
  return keys;
}

TesKeySet inject_subkeys(TesKeySet keys, const SubkeyOverrides& o) {
  if (o.empty()) return keys;
  if (o.h1) keys.h1 = *o.h1;
  if (o.h2) keys.h2 = *o.h2;
  if (o.h) keys.h = *o.h;
  if (o.ke) keys.ke = make_key(keys.kind, *o.ke);
  if (o.kd) keys.kd = make_key(keys.kind, *o.kd);
  if (o.kc) keys.kc = make_key(keys.kind, *o.kc);
  if (o.k) keys.k = make_key(keys.kind, *o.k);
  keys.derived = false;
  return keys;
}

BitString xcb_encrypt(XcbVariant variant, const TesKeySet& keys, const BitString& t,
                      const BitString& p, const ModeOptions& opts) {
  check_lengths(t, p);
  if (variant.version == XcbVersion::v1) {
    require_layout(keys, KeyLayout::xcb_v1, "XCBv1");
    const BitString tail = p.substr(128, p.size() - 128);
    const Block cc = keys.ke.cipher->encrypt_block(p.block_at(0));
    const Block s = blk(fe(cc) ^ xcb_hash(keys.h1, tail, t));
    const BitString c_tail = counter_mode(variant.counter, *keys.kc.cipher, s, tail, opts.exec);
    const Block mm = blk(fe(s) ^ xcb_hash(keys.h2, c_tail, t));
    BitString out = BitString::from_block(keys.kd.cipher->decrypt_block(mm));
    out.append(c_tail);
    return out;
  }
  require_layout(keys, KeyLayout::xcb_v2, "XCBv2");
  check_v2_payload(p, opts);
  const BitString a = p.substr(0, p.size() - 128);
  const Block cc = keys.ke.cipher->encrypt_block(p.block_at(p.size() - 128));
  const Block s = blk(fe(cc) ^ xcbv2_first_hash(keys.h, t, a));
  BitString out = counter_mode(variant.counter, *keys.kc.cipher, s, a, opts.exec);
  const Block mm = blk(fe(s) ^ xcbv2_second_hash(keys.h, t, out));
  out.append(BitString::from_block(keys.kd.cipher->decrypt_block(mm)));
  return out;
}

BitString xcb_decrypt(XcbVariant variant, const TesKeySet& keys, const BitString& t,
                      const BitString& c, const ModeOptions& opts) {
  check_lengths(t, c);
  if (variant.version == XcbVersion::v1) {
    require_layout(keys, KeyLayout::xcb_v1, "XCBv1");
    const BitString c_tail = c.substr(128, c.size() - 128);
    const Block mm = keys.kd.cipher->encrypt_block(c.block_at(0));
    const Block s = blk(fe(mm) ^ xcb_hash(keys.h2, c_tail, t));
    const BitString p_tail = counter_mode(variant.counter, *keys.kc.cipher, s, c_tail, opts.exec);
    const Block cc = blk(fe(s) ^ xcb_hash(keys.h1, p_tail, t));
    BitString out = BitString::from_block(keys.ke.cipher->decrypt_block(cc));
    out.append(p_tail);
    return out;
  }
  require_layout(keys, KeyLayout::xcb_v2, "XCBv2");
  check_v2_payload(c, opts);
  const BitString c_a = c.substr(0, c.size() - 128);
  const Block mm = keys.kd.cipher->encrypt_block(c.block_at(c.size() - 128));
  const Block s = blk(fe(mm) ^ xcbv2_second_hash(keys.h, t, c_a));
  BitString out = counter_mode(variant.counter, *keys.kc.cipher, s, c_a, opts.exec);
  const Block cc = blk(fe(s) ^ xcbv2_first_hash(keys.h, t, out));
  out.append(BitString::from_block(keys.ke.cipher->decrypt_block(cc)));
  return out;
}

BitString hctr_encrypt(const TesKeySet& keys, const BitString& t, const BitString& p,
                       HctrHash hash, Exec exec) {
  require_layout(keys, KeyLayout::hctr, "HCTR");
  check_lengths(t, p);
  const BlockCipher& e = *keys.k.cipher;
  const BitString tail = p.substr(128, p.size() - 128);
  const FieldElement cc = fe(p.block_at(0)) ^ hctr_h(keys.h, concat(tail, t), hash);
  const FieldElement ecc = fe(e.encrypt_block(blk(cc)));
  const BitString c_tail = xor_ctr(e, blk(cc ^ ecc), tail, exec);
  BitString out = BitString::from_block(blk(ecc ^ hctr_h(keys.h, concat(c_tail, t), hash)));
  out.append(c_tail);
  return out;
}

BitString hctr_decrypt(const TesKeySet& keys, const BitString& t, const BitString& c,
                       HctrHash hash, Exec exec) {
  require_layout(keys, KeyLayout::hctr, "HCTR");
  check_lengths(t, c);
  const BlockCipher& e = *keys.k.cipher;
  const BitString c_tail = c.substr(128, c.size() - 128);
  const FieldElement ecc = fe(c.block_at(0)) ^ hctr_h(keys.h, concat(c_tail, t), hash);
  const FieldElement cc = fe(e.decrypt_block(blk(ecc)));
  const BitString p_tail = xor_ctr(e, blk(cc ^ ecc), c_tail, exec);
  BitString out = BitString::from_block(blk(cc ^ hctr_h(keys.h, concat(p_tail, t), hash)));
  out.append(p_tail);
  return out;
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::xcbv1: return "xcbv1";
    case Mode::xcbv2: return "xcbv2";
    case Mode::mxcbv1: return "mxcbv1";
    case Mode::mxcbv2: return "mxcbv2";
    case Mode::hctr: return "hctr";
    case Mode::hctr_fix: return "hctr-fix";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : kAllModes) {
    if (mode_name(m) == name) return m;
  }
  throw Error(Errc::bad_argument, "unknown mode: " + std::string(name));
}

bool accepts_partial_blocks(Mode mode) { return mode != Mode::xcbv2 && mode != Mode::mxcbv2; }

TesKeySet keys_for_mode(Mode mode, std::span<const std::uint8_t> key, CipherKind kind) {
  switch (mode) {
    case Mode::xcbv1:
    case Mode::mxcbv1:
      return derive_keys_v1(key, kind);
    case Mode::xcbv2:
    case Mode::mxcbv2:
      return derive_keys_v2(key, kind);
    case Mode::hctr:
    case Mode::hctr_fix: {
      if (key.size() != 32 && key.size() != 40 && key.size() != 48) {
        throw Error(Errc::bad_key_length,
                    "HCTR key is a 16/24/32-byte cipher key followed by a 16-byte hash key");
      }
      Block h{};
      std::copy(key.end() - 16, key.end(), h.begin());
      return make_hctr_keys(key.first(key.size() - 16), fe(h), kind);
    }
  }
  throw Error(Errc::bad_argument, "unknown mode");
}

namespace {

XcbVariant variant_of(Mode mode) {
  switch (mode) {
    case Mode::xcbv1: return XcbVariant::xcbv1();
    case Mode::xcbv2: return XcbVariant::xcbv2();
    case Mode::mxcbv1: return XcbVariant::mxcbv1();
    default: return XcbVariant::mxcbv2();
  }
}

}  // namespace

BitString encrypt(Mode mode, const TesKeySet& keys, const BitString& t, const BitString& p,
                  const ModeOptions& opts) {
  if (mode == Mode::hctr) return hctr_encrypt(keys, t, p, HctrHash::original, opts.exec);
  if (mode == Mode::hctr_fix) return hctr_encrypt(keys, t, p, HctrHash::fixed, opts.exec);
  return xcb_encrypt(variant_of(mode), keys, t, p, opts);
}

BitString decrypt(Mode mode, const TesKeySet& keys, const BitString& t, const BitString& c,
                  const ModeOptions& opts) {
  if (mode == Mode::hctr) return hctr_decrypt(keys, t, c, HctrHash::original, opts.exec);
  if (mode == Mode::hctr_fix) return hctr_decrypt(keys, t, c, HctrHash::fixed, opts.exec);
  return xcb_decrypt(variant_of(mode), keys, t, c, opts);
}

}  // namespace tes
