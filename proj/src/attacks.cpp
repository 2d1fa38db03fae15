#include "tes/attacks.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "tes/error.hpp"
#include "tes/polyhash.hpp"

namespace tes {

namespace {

std::string summarize(const BitString& t, const BitString& p) {
  std::string out = "T=" + (t.empty() ? std::string("<empty>") : t.to_hex());
  out += " P[" + std::to_string(p.size()) + "]=" + p.to_hex();
  return out;
}

std::string summarize(const BitString& c) {
  return "C[" + std::to_string(c.size()) + "]=" + c.to_hex();
}

BitString random_bits(std::mt19937_64& rng, std::size_t bits) {
  Bytes bytes((bits + 7) / 8);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
  return BitString::from_bits(bytes, bits);
}

BitString checked_query(EncryptionOracle& oracle, const BitString& t, const BitString& p) {
  BitString c = oracle.encrypt(t, p);
  if (c.size() != p.size()) {
    throw Error(Errc::oracle_failure, "oracle returned " + std::to_string(c.size()) +
                                          " bits for a " + std::to_string(p.size()) + "-bit query");
  }
  return c;
}

FieldElement first_block(const BitString& c) { return FieldElement::from_block(c.block_at(0)); }

// The HCTR distinguisher's query pair for one x.
struct QueryPair {
  BitString p1, p2, c1, c2;
};

QueryPair query_pair(EncryptionOracle& oracle, const Block& x) {
  QueryPair q;
  q.p1 = BitString::from_block(x);
  q.p2 = q.p1;
  q.p2.push_back(false);
  const BitString empty;
  q.c1 = checked_query(oracle, empty, q.p1);
  q.c2 = checked_query(oracle, empty, q.p2);
  return q;
}

void record(AttackReport& r, const BitString& t, const BitString& p, const BitString& c) {
  if (r.transcript.size() < kTranscriptLimit) r.transcript.push_back({summarize(t, p), summarize(c)});
}

}  // namespace

void AttackReport::merge(const AttackReport& other) {
  trials += other.trials;
  successes += other.successes;
  if (!recovered) recovered = other.recovered;
  if (!iterations) iterations = other.iterations;
  for (const auto& e : other.transcript) {
    if (transcript.size() >= kTranscriptLimit) break;
    transcript.push_back(e);
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string AttackReport::to_text() const {
  std::ostringstream os;
  char adv[32];
  std::snprintf(adv, sizeof adv, "%.6f", advantage_estimate());
  os << "attack=" << attack_name << '\n'
     << "seed=" << seed << '\n'
     << "trials=" << trials << '\n'
     << "successes=" << successes << '\n'
     << "advantage_estimate=" << adv << '\n';
  if (iterations) os << "iterations=" << *iterations << '\n';
  os << "recovered=" << (recovered ? recovered->to_hex() : std::string("none")) << '\n';
  for (const auto& [k, v] : notes) os << k << '=' << v << '\n';
  os << "transcript.count=" << transcript.size() << '\n';
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    os << "transcript." << i << ".query=" << transcript[i].query << '\n'
       << "transcript." << i << ".response=" << transcript[i].response << '\n';
  }
  return os.str();
}

BitString HctrOracle::encrypt(const BitString& t, const BitString& p) {
  return hctr_encrypt(keys_, t, p, hash_);
}

BitString IdealPermutationOracle::encrypt(const BitString& t, const BitString& p) {
  std::lock_guard lock(mu_);
  Table& table = tables_[{t.to_binary(), p.size()}];
  const std::string key = p.to_hex();
  if (auto it = table.forward.find(key); it != table.forward.end()) return it->second;
  // Rejection sampling keeps the map injective within each (tweak, length) domain.
  for (;;) {
    BitString c = random_bits(rng_, p.size());
    if (table.images.insert(c.to_hex()).second) {
      table.forward.emplace(key, c);
      return c;
    }
  }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

Block random_block(std::mt19937_64& rng) {
  return FieldElement(rng(), rng()).to_block();
}

AttackReport hctr_distinguish(EncryptionOracle& oracle, std::uint64_t trials, std::uint64_t seed,
                              Exec exec) {
  std::vector<QueryPair> kept(std::min<std::uint64_t>(trials, kTranscriptLimit / 2));
  std::vector<std::uint8_t> hit(trials, 0);
  const bool parallel = exec == Exec::parallel && oracle.concurrent();
  const auto n = static_cast<std::int64_t>(trials);

  // Failures inside the parallel region are carried out and rethrown.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      auto rng = trial_rng(seed, static_cast<std::uint64_t>(i));
      QueryPair q = query_pair(oracle, random_block(rng));
      hit[static_cast<std::size_t>(i)] = first_block(q.c1) == first_block(q.c2);
      if (static_cast<std::size_t>(i) < kept.size()) kept[static_cast<std::size_t>(i)] = std::move(q);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  AttackReport r;
  r.attack_name = "hctr-distinguish";
  r.seed = seed;
  r.trials = trials;
  r.successes = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
  const BitString empty;
  for (const QueryPair& q : kept) {
    record(r, empty, q.p1, q.c1);
    record(r, empty, q.p2, q.c2);
  }
  return r;
}

AttackReport hctr_recover_h(EncryptionOracle& oracle, std::uint64_t max_iters, std::uint64_t seed) {
  AttackReport r;
  r.attack_name = "hctr-recover";
  r.seed = seed;
  const BitString empty;
  // pad(1) is 1 || 0^127, i.e. x^127 under the field convention.
  const FieldElement pad_one_inv = field::inv(FieldElement::monomial(127));

  for (std::uint64_t iter = 1; iter <= max_iters; ++iter) {
    auto rng = trial_rng(seed, iter);
    const QueryPair q = query_pair(oracle, random_block(rng));
    record(r, empty, q.p1, q.c1);
    record(r, empty, q.p2, q.c2);
    if (!q.c2.bit(128)) continue;

    const FieldElement delta = first_block(q.c1) ^ first_block(q.c2);
    const FieldElement h = field::sqrt(delta * pad_one_inv);

    // C1' = C1 + h + H_h(C2') must hold for any fresh pair if h is right.
    auto verify_rng = trial_rng(seed ^ 0x5bd1e995u, iter);
    const QueryPair v = query_pair(oracle, random_block(verify_rng));
    const FieldElement predicted = first_block(v.c1) ^ h ^ hctr_hash(h, v.c2.substr(128, 1));
    const bool verified = predicted == first_block(v.c2);

    r.trials = iter;
    r.iterations = iter;
    r.successes = verified ? 1 : 0;
    r.notes.emplace_back("candidate", h.to_hex());
    r.notes.emplace_back("verified", verified ? "true" : "false");
    if (verified) r.recovered = h;
    return r;
  }
  throw Error(Errc::iteration_budget_exhausted,
              "no one-bit tail equal to 1 within " + std::to_string(max_iters) + " iterations");
}

FieldElement hctr_keydep_recover(const BlockCipher& k1, const Block& x, const BitString& c) {
  if (c.size() != 256) throw Error(Errc::bad_length, "expected the 256-bit ciphertext of x || x");
  const FieldElement xf = FieldElement::from_block(x);
  const FieldElement c1 = FieldElement::from_block(c.block_at(0));
  const FieldElement c2 = FieldElement::from_block(c.block_at(128));
  if (xf == c2) throw Error(Errc::degenerate_sample, "x equals C_2; draw another x");
  // S = E^{-1}(C_2 + x) + bin(1)
  const FieldElement s =
      FieldElement::from_block(k1.decrypt_block((c2 ^ xf).to_block())) ^ FieldElement::one();
  // C_1 + S + x = (x + C_2) h^2
  const FieldElement h_squared = (c1 ^ s ^ xf) * field::inv(xf ^ c2);
  return field::sqrt(h_squared);
}

AttackReport hctr_keydep_experiment(std::uint64_t trials, std::uint64_t seed, CipherKind kind) {
  AttackReport r;
  r.attack_name = "hctr-keydep";
  r.seed = seed;
  std::uint64_t resampled = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    const Block k = random_block(rng);
    const FieldElement h = FieldElement::from_block(random_block(rng));
    const TesKeySet keys = make_hctr_keys(k, h, kind);
    for (;;) {
      const Block x = random_block(rng);
      BitString p = BitString::from_block(x);
      p.append(BitString::from_block(x));
      const BitString c = hctr_encrypt(keys, BitString{}, p);
      try {
        const FieldElement got = hctr_keydep_recover(*keys.k.cipher, x, c);
        ++r.trials;
        if (got == h) ++r.successes;
        if (!r.recovered) r.recovered = got;
        record(r, BitString{}, p, c);
        break;
      } catch (const Error& e) {
        if (e.code() != Errc::degenerate_sample) throw;
        ++resampled;
      }
    }
  }
  r.notes.emplace_back("resampled", std::to_string(resampled));
  return r;
}

std::pair<std::size_t, std::size_t> counter_span(XcbVersion version, std::size_t payload_bits) {
  const std::size_t m = (payload_bits + 127) / 128;
  return version == XcbVersion::v1 ? std::pair{std::size_t{2}, m} : std::pair{std::size_t{1}, m - 1};
}

BitString swap_blocks(const BitString& p, BlockSwap swap) {
  if (swap.i == swap.j) return p;
  const std::size_t m = (p.size() + 127) / 128;
  if (swap.i < 1 || swap.j > m || swap.i > swap.j) throw Error(Errc::index_out_of_span, "swap indices out of range");
  BitString out;
  for (std::size_t b = 1; b <= m; ++b) {
    const std::size_t src = b == swap.i ? swap.j : b == swap.j ? swap.i : b;
    const std::size_t pos = (src - 1) * 128;
    out.append(p.substr(pos, std::min<std::size_t>(128, p.size() - pos)));
  }
  return out;
}

BitString xcb_cycling_forge(XcbVersion version, const BitString& p, const BitString& c,
                            std::uint64_t weak_order, BlockSwap swap) {
  if (p.size() != c.size()) throw Error(Errc::bad_length, "plaintext and ciphertext lengths differ");
  if (weak_order == 0) throw Error(Errc::bad_swap, "order must be positive");
  if (swap.i > swap.j) std::swap(swap.i, swap.j);
  if (swap.i == swap.j) return c;
  if ((swap.j - swap.i) % weak_order != 0) {
    throw Error(Errc::bad_swap, "swap distance must be a multiple of the key order");
  }
  const auto [lo, hi] = counter_span(version, p.size());
  const auto full = [&](std::size_t b) { return b * 128 <= p.size(); };
  if (swap.i < lo || swap.j > hi || !full(swap.i) || !full(swap.j)) {
    throw Error(Errc::index_out_of_span,
                "blocks " + std::to_string(swap.i) + "," + std::to_string(swap.j) +
                    " are not full blocks of the counter-mode span");
  }
  // C'_i = P_j + (C_i + P_i), and symmetrically; every other block is unchanged.
  const auto at = [](const BitString& s, std::size_t b) {
    return FieldElement::from_block(s.block_at((b - 1) * 128));
  };
  const FieldElement delta = at(p, swap.i) ^ at(p, swap.j);
  BitString out;
  const std::size_t m = (c.size() + 127) / 128;
  for (std::size_t b = 1; b <= m; ++b) {
    const std::size_t pos = (b - 1) * 128;
    if (b == swap.i || b == swap.j) {
      out.append(BitString::from_block((at(c, b) ^ delta).to_block()));
    } else {
      out.append(c.substr(pos, std::min<std::size_t>(128, c.size() - pos)));
    }
  }
  return out;
}

AttackReport xcb_cycling_experiment(XcbVariant variant, std::uint64_t weak_order, BlockSwap swap,
                                    std::uint64_t trials, std::uint64_t seed, bool weak_keys,
                                    CipherKind kind) {
  if (swap.i > swap.j) std::swap(swap.i, swap.j);
  AttackReport r;
  r.attack_name = "xcb-cycle";
  r.seed = seed;
  const FieldElement generator = weak_keys ? field::element_of_order(weak_order) : FieldElement::one();
  // Enough blocks that j lies inside the counter span for either version.
  const std::size_t blocks = swap.j + 2;

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    const Block master = random_block(rng);
    TesKeySet keys = variant.version == XcbVersion::v1 ? derive_keys_v1(master, kind)
                                                       : derive_keys_v2(master, kind);
    if (weak_keys) {
      std::uniform_int_distribution<std::uint64_t> exp(1, weak_order - 1);
      SubkeyOverrides o;
      if (variant.version == XcbVersion::v1) {
        o.h1 = field::pow(generator, exp(rng));
        o.h2 = field::pow(generator, exp(rng));
      } else {
        o.h = field::pow(generator, exp(rng));
      }
      keys = inject_subkeys(std::move(keys), o);
    }
    const BitString t = BitString::from_block(random_block(rng));
    BitString p;
    for (std::size_t b = 0; b < blocks; ++b) p.append(BitString::from_block(random_block(rng)));

    const BitString c = xcb_encrypt(variant, keys, t, p);
    const BitString forged = xcb_cycling_forge(variant.version, p, c, weak_order, swap);
    const BitString swapped = swap_blocks(p, swap);
    const BitString truth = xcb_encrypt(variant, keys, t, swapped);
    ++r.trials;
    if (forged == truth) ++r.successes;
    record(r, t, swapped, forged);
  }
  r.notes.emplace_back("variant", std::string(variant.name()));
  r.notes.emplace_back("order", std::to_string(weak_order));
  r.notes.emplace_back("swap", std::to_string(swap.i) + "," + std::to_string(swap.j));
  r.notes.emplace_back("weak_keys", weak_keys ? "true" : "false");
  return r;
}

std::optional<u128> weak_key_scan(FieldElement h, u128 max_order) {
  return field::order_divisor(h, max_order);
}

AttackReport weak_key_report(FieldElement h, u128 max_order) {
  AttackReport r;
  r.attack_name = "weak-key-scan";
  r.trials = 1;
  const std::optional<u128> ord = weak_key_scan(h, max_order);
  r.successes = ord ? 1 : 0;
  r.notes.emplace_back("h", h.to_hex());
  r.notes.emplace_back("max_order", to_string_u128(max_order));
  r.notes.emplace_back("order", ord ? to_string_u128(*ord) : std::string("none"));
  return r;
}

}  // namespace tes
