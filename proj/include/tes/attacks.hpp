#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tes/bitstring.hpp"
#include "tes/exec.hpp"
#include "tes/field.hpp"
#include "tes/modes.hpp"

namespace tes {

struct TranscriptEntry {
  std::string query;
  std::string response;
};

// Transcripts keep only the first few exchanges.
inline constexpr std::size_t kTranscriptLimit = 8;

struct AttackReport {
  std::string attack_name;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::optional<FieldElement> recovered;
  std::optional<std::uint64_t> iterations;
  std::vector<TranscriptEntry> transcript;
  // Harness-level facts (demo key, parameters) printed after the core fields.
  std::vector<std::pair<std::string, std::string>> notes;

  double advantage_estimate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }

  // Counts add; transcript and notes concatenate (transcript re-capped);
  // recovered and iterations keep the left operand's value when present.
  void merge(const AttackReport& other);

  // key=value lines in a fixed order.
  std::string to_text() const;
};

/* The attacker's only handle on a hidden key: E_K^T(.). Implementations hold
   the key privately. */
class EncryptionOracle {
 public:
  virtual ~EncryptionOracle() = default;
  virtual BitString encrypt(const BitString& t, const BitString& p) = 0;
  // True when encrypt may be called concurrently.
  virtual bool concurrent() const { return false; }
};

class HctrOracle final : public EncryptionOracle {
 public:
  HctrOracle(TesKeySet keys, HctrHash hash) : keys_(std::move(keys)), hash_(hash) {}
  BitString encrypt(const BitString& t, const BitString& p) override;
  bool concurrent() const override { return true; }

 private:
  TesKeySet keys_;
  HctrHash hash_;
};

// A lazily sampled tweak-indexed, length-preserving random permutation.
class IdealPermutationOracle final : public EncryptionOracle {
 public:
  explicit IdealPermutationOracle(std::uint64_t seed) : rng_(seed) {}
  BitString encrypt(const BitString& t, const BitString& p) override;

 private:
  using Domain = std::pair<std::string, std::size_t>;  // (tweak, bit length)
  struct Table {
    std::map<std::string, BitString> forward;
    std::set<std::string> images;
  };
  std::mutex mu_;
  std::mt19937_64 rng_;
  std::map<Domain, Table> tables_;
};

// Independent RNG stream for one trial of a seeded experiment.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);
Block random_block(std::mt19937_64& rng);

/* Empty-tweak queries x and x || 0 per trial; success when the first
   ciphertext blocks coincide. */
AttackReport hctr_distinguish(EncryptionOracle& oracle, std::uint64_t trials, std::uint64_t seed,
                              Exec exec = Exec::parallel);

/* Repeats the same query pair until the one-bit tail ciphertext is 1, then
   C1 xor C1' = pad(1) h^2 gives h; the candidate is checked by predicting a
   fresh query pair. Throws Errc::iteration_budget_exhausted. */
AttackReport hctr_recover_h(EncryptionOracle& oracle, std::uint64_t max_iters, std::uint64_t seed);

/* Hash key from a compromised cipher key and one encryption C of x || x under
   the empty tweak. Throws Errc::degenerate_sample when x equals C_2. */
FieldElement hctr_keydep_recover(const BlockCipher& k1, const Block& x, const BitString& c);

// Seeded harness around hctr_keydep_recover over fresh (K, h, x) instances.
AttackReport hctr_keydep_experiment(std::uint64_t trials, std::uint64_t seed,
                                    CipherKind kind = CipherKind::aes);

struct BlockSwap {
  std::size_t i = 1;  // 1-based block indices, i <= j
  std::size_t j = 1;
};

// First and last block indices (1-based) that pass through the counter layer.
std::pair<std::size_t, std::size_t> counter_span(XcbVersion version, std::size_t payload_bits);

BitString swap_blocks(const BitString& p, BlockSwap swap);

/* Key-blind forgery from one known (T, P, C): the ciphertext of P with blocks
   i and j exchanged, valid whenever the hash key order divides j - i. The
   counter keystream C xor P is reused for the swapped blocks and the special
   block is kept. Throws Errc::index_out_of_span or Errc::bad_swap. */
BitString xcb_cycling_forge(XcbVersion version, const BitString& p, const BitString& c,
                            std::uint64_t weak_order, BlockSwap swap);

/* Runs the forgery `trials` times on fresh keys. With weak keys the hash
   key(s) are replaced by random nontrivial powers of an element of the given
   order; otherwise honestly derived keys are used. */
AttackReport xcb_cycling_experiment(XcbVariant variant, std::uint64_t weak_order, BlockSwap swap,
                                    std::uint64_t trials, std::uint64_t seed, bool weak_keys,
                                    CipherKind kind = CipherKind::aes);

std::optional<u128> weak_key_scan(FieldElement h, u128 max_order);
AttackReport weak_key_report(FieldElement h, u128 max_order);

}  // namespace tes
