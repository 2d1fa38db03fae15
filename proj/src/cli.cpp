#include "tes/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "tes/analysis.hpp"
#include "tes/attacks.hpp"
#include "tes/error.hpp"
#include "tes/modes.hpp"

namespace tes::cli {

namespace {

enum class Format { text, structured };

struct CryptArgs {
  std::string mode = "xcbv2";
  std::string key;
  std::string tweak;
  std::string in_path, in_hex, out_path;
  bool allow_insecure_partial = false;
};

struct AttackArgs {
  std::uint64_t trials = 0;  // 0: per-attack default
  std::uint64_t seed = 1;
  std::uint64_t order = 3;
  std::string swap;
  std::string variant = "xcbv2";
  std::string oracle = "hctr";
  std::uint64_t budget = 40;
  bool random_h = false;
};

struct BoundArgs {
  std::string q = "2^30", sigma = "2^38+2^30";
  std::uint64_t len = (1u << 8) + 1;
  unsigned n = 128;
};

struct WeakKeyArgs {
  std::string h;
  std::string max_order = "65536";
};

struct IncArgs {
  unsigned width = 8;
  std::uint64_t r_max = 255;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

bool usage_class(Errc code) {
  return code == Errc::bad_argument || code == Errc::parse_error || code == Errc::unknown_scheme;
}

// I/O failures on named files are data errors, not usage errors.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path);
}

int do_crypt(bool encrypting, const CryptArgs& a, Format fmt, std::ostream& out) {
  const Mode mode = parse_mode(a.mode);
  if (a.in_path.empty() == a.in_hex.empty()) {
    throw Error(Errc::bad_argument, "give exactly one of --in or --in-hex");
  }
  const Bytes key = bytes_from_hex(a.key);
  const BitString tweak = BitString::from_bytes(bytes_from_hex(a.tweak));
  Bytes input;
  if (!a.in_path.empty()) {
    input = read_file(a.in_path);
  } else {
    input = bytes_from_hex(a.in_hex);
  }

  const TesKeySet keys = keys_for_mode(mode, key);
  ModeOptions opts;
  opts.allow_insecure_partial = a.allow_insecure_partial;
  const BitString p = BitString::from_bytes(input);
  const BitString c = encrypting ? encrypt(mode, keys, tweak, p, opts) : decrypt(mode, keys, tweak, p, opts);
  const Bytes result(c.bytes().begin(), c.bytes().end());

  const char* op = encrypting ? "encrypt" : "decrypt";
  if (!a.out_path.empty()) {
    write_file(a.out_path, result);
    if (fmt == Format::structured) {
      out << "operation=" << op << "\nmode=" << mode_name(mode) << "\nbytes=" << result.size()
          << "\nout=" << a.out_path << "\n";
    } else {
      out << op << " " << mode_name(mode) << ": " << result.size() << " bytes -> " << a.out_path << "\n";
    }
  } else if (fmt == Format::structured) {
    out << "operation=" << op << "\nmode=" << mode_name(mode) << "\nbytes=" << result.size()
        << "\noutput=" << hex_from_bytes(result) << "\n";
  } else {
    out << hex_from_bytes(result) << "\n";
  }
  return kExitOk;
}

Bytes demo_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng() >> 56);
  return out;
}

TesKeySet demo_hctr_keys(std::uint64_t seed, std::uint64_t instance, HctrHash hash) {
  auto rng = trial_rng(seed ^ 0x68637472u, instance);
  Bytes key = demo_bytes(rng, 16);
  const FieldElement h = FieldElement::from_block(random_block(rng));
  Bytes all = key;
  const Block hb = h.to_block();
  all.insert(all.end(), hb.begin(), hb.end());
  return keys_for_mode(hash == HctrHash::original ? Mode::hctr : Mode::hctr_fix, all);
}

HctrHash oracle_hash(const std::string& name) {
  if (name == "hctr") return HctrHash::original;
  if (name == "hctr-fix") return HctrHash::fixed;
  throw Error(Errc::bad_argument, "unknown oracle: " + name);
}

BlockSwap parse_swap(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(Errc::parse_error, "--swap expects i,j");
  BlockSwap sw;
  sw.i = static_cast<std::size_t>(parse_u128(s.substr(0, comma)));
  sw.j = static_cast<std::size_t>(parse_u128(s.substr(comma + 1)));
  return sw;
}

XcbVariant parse_variant(const std::string& name) {
  for (const XcbVariant& v : {XcbVariant::xcbv1(), XcbVariant::xcbv2(), XcbVariant::mxcbv1(),
                              XcbVariant::mxcbv2()}) {
    if (v.name() == name) return v;
  }
  throw Error(Errc::bad_argument, "unknown XCB variant: " + name);
}

AttackReport attack_distinguish(const AttackArgs& a) {
  const std::uint64_t trials = a.trials ? a.trials : 10000;
  if (a.oracle == "ideal") {
    IdealPermutationOracle oracle(a.seed ^ 0x1dea1u);
    AttackReport r = hctr_distinguish(oracle, trials, a.seed);
    r.notes.emplace_back("oracle", "ideal");
    return r;
  }
  HctrOracle oracle(demo_hctr_keys(a.seed, 0, oracle_hash(a.oracle)), oracle_hash(a.oracle));
  AttackReport r = hctr_distinguish(oracle, trials, a.seed);
  r.notes.emplace_back("oracle", a.oracle);
  return r;
}

AttackReport attack_recover(const AttackArgs& a) {
  const std::uint64_t instances = a.trials ? a.trials : 1;
  const HctrHash hash = oracle_hash(a.oracle);
  AttackReport total;
  total.attack_name = "hctr-recover";
  total.seed = a.seed;
  std::uint64_t iterations = 0;
  std::string true_h;
  for (std::uint64_t i = 0; i < instances; ++i) {
    const TesKeySet keys = demo_hctr_keys(a.seed, i, hash);
    HctrOracle oracle(keys, hash);
    AttackReport r;
    try {
      r = hctr_recover_h(oracle, a.budget, a.seed + i);
    } catch (const Error& e) {
      if (e.code() != Errc::iteration_budget_exhausted) throw;
      r.attack_name = "hctr-recover";
      r.iterations = a.budget;
    }
    iterations += r.iterations.value_or(0);
    const bool exact = r.recovered && *r.recovered == keys.h;
    if (exact) ++total.successes;
    if (i == 0) {
      total.recovered = r.recovered;
      total.transcript = r.transcript;
      true_h = keys.h.to_hex();
    }
  }
  total.trials = instances;
  total.iterations = iterations;
  char mean[32];
  std::snprintf(mean, sizeof mean, "%.4f", static_cast<double>(iterations) / static_cast<double>(instances));
  total.notes.emplace_back("oracle", a.oracle);
  total.notes.emplace_back("budget", std::to_string(a.budget));
  total.notes.emplace_back("demo_h", true_h);
  total.notes.emplace_back("mean_iterations", mean);
  return total;
}

AttackReport attack_cycle(const AttackArgs& a) {
  const XcbVariant variant = parse_variant(a.variant);
  BlockSwap swap;
  if (!a.swap.empty()) {
    swap = parse_swap(a.swap);
  } else {
    swap.i = variant.version == XcbVersion::v1 ? 2 : 1;
    swap.j = swap.i + a.order;
  }
  return xcb_cycling_experiment(variant, a.order, swap, a.trials ? a.trials : 100, a.seed, !a.random_h);
}

int do_attack(const std::string& which, const AttackArgs& a, std::ostream& out) {
  AttackReport r;
  if (which == "hctr-distinguish") {
    r = attack_distinguish(a);
  } else if (which == "hctr-recover") {
    r = attack_recover(a);
  } else if (which == "hctr-keydep") {
    r = hctr_keydep_experiment(a.trials ? a.trials : 100, a.seed);
  } else {
    r = attack_cycle(a);
  }
  out << r.to_text();
  return kExitOk;
}

int do_bounds(const BoundArgs& a, Format fmt, std::ostream& out) {
  BoundParams p;
  p.q = parse_count_expr(a.q);
  p.sigma = parse_count_expr(a.sigma);
  p.ell = a.len;
  p.n = a.n;
  validate(p);
  const BoundReport report = table1_report(p);
  out << (fmt == Format::structured ? report.to_structured() : report.to_text());
  return kExitOk;
}

int do_weakkey(const WeakKeyArgs& a, std::ostream& out) {
  const FieldElement h = FieldElement::from_hex(a.h);
  out << weak_key_report(h, parse_count_expr(a.max_order)).to_text();
  return kExitOk;
}

int do_incsets(const IncArgs& a, Format fmt, std::ostream& out) {
  std::vector<IncSample> rows;
  std::size_t w_max = 0;
  std::string method;
  if (a.width <= kMaxExhaustiveWidth) {
    const IncSetTable t = compute_inc_sets(a.width, a.r_max);
    for (std::uint64_t r = 0; r <= a.r_max; ++r) rows.push_back({r, t.y_sets[r].size(), t.w_sets[r].size()});
    w_max = t.w_max;
    method = "exhaustive";
  } else {
    const IncSampleReport s = sample_inc_sets(a.width, a.r_max, a.samples, a.seed);
    rows = s.samples;
    w_max = s.max_w;
    method = "carry-class";
  }
  if (fmt == Format::structured) {
    out << "width=" << a.width << "\nr_max=" << a.r_max << "\nmethod=" << method << "\nrows=" << rows.size()
        << "\n";
    for (const IncSample& s : rows) {
      out << "r." << s.r << ".y=" << s.y_count << "\nr." << s.r << ".w=" << s.w_count << "\n";
    }
    out << "w_max=" << w_max << "\n";
  } else {
    out << "width " << a.width << ", r <= " << a.r_max << " (" << method << ")\n";
    char line[96];
    std::snprintf(line, sizeof line, "%12s %12s %8s\n", "r", "#Y_r", "#W_r");
    out << line;
    for (const IncSample& s : rows) {
      std::snprintf(line, sizeof line, "%12llu %12zu %8zu\n", static_cast<unsigned long long>(s.r), s.y_count,
                    s.w_count);
      out << line;
    }
    out << "w_max " << w_max << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tweakable enciphering schemes, attacks and bound analysis", "tes"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  CryptArgs crypt;
  CLI::App* enc = app.add_subcommand("encrypt", "Encipher a file");
  CLI::App* dec = app.add_subcommand("decrypt", "Decipher a file");
  for (CLI::App* sub : {enc, dec}) {
    sub->add_option("--mode", crypt.mode, "Scheme")
        ->required()
        ->check(CLI::IsMember({"xcbv1", "xcbv2", "mxcbv1", "mxcbv2", "hctr", "hctr-fix"}));
    sub->add_option("--key", crypt.key, "Key hex (HCTR: cipher key then 16-byte hash key)")->required();
    sub->add_option("--tweak", crypt.tweak, "Tweak hex");
    sub->add_option("--in", crypt.in_path, "Input file");
    sub->add_option("--in-hex", crypt.in_hex, "Inline input hex");
    sub->add_option("--out", crypt.out_path, "Output file (hex to stdout when omitted)");
    sub->add_flag("--allow-insecure-partial", crypt.allow_insecure_partial,
                  "Allow XCBv2 payloads with a partial final block");
  }

  AttackArgs attack;
  CLI::App* atk = app.add_subcommand("attack", "Run an attack harness");
  atk->require_subcommand(1);
  std::string attack_name;
  for (const char* name : {"hctr-distinguish", "hctr-recover", "hctr-keydep", "xcb-cycle"}) {
    CLI::App* sub = atk->add_subcommand(name);
    sub->add_option("--trials", attack.trials, "Trials or instances");
    sub->add_option("--seed", attack.seed, "Seed");
    sub->final_callback([&attack_name, name] { attack_name = name; });
    std::string n = name;
    if (n == "xcb-cycle") {
      sub->add_option("--order", attack.order, "Injected hash key order");
      sub->add_option("--swap", attack.swap, "Swapped block indices i,j");
      sub->add_option("--variant", attack.variant, "xcbv1 or xcbv2");
      sub->add_flag("--random-h", attack.random_h, "Use honestly derived keys");
    }
    if (n == "hctr-distinguish" || n == "hctr-recover") {
      sub->add_option("--oracle", attack.oracle, "hctr, hctr-fix or ideal (distinguisher only)");
    }
    if (n == "hctr-recover") sub->add_option("--budget", attack.budget, "Iteration budget per instance");
  }

  BoundArgs bounds;
  CLI::App* bnd = app.add_subcommand("bounds", "Security bound table");
  bnd->add_option("--q", bounds.q, "Query count, e.g. 2^30");
  bnd->add_option("--len", bounds.len, "Max blocks per query");
  bnd->add_option("--sigma", bounds.sigma, "Total blocks, e.g. 2^38+2^30");
  bnd->add_option("--n", bounds.n, "Block size in bits");

  WeakKeyArgs weak;
  CLI::App* wk = app.add_subcommand("weakkey", "Order scan of a hash key");
  wk->set_help_flag("--help", "Print this help message and exit");
  wk->add_option("--h", weak.h, "Hash key hex")->required();
  wk->add_option("--max-order", weak.max_order, "Largest order to test");

  IncArgs inc;
  CLI::App* ic = app.add_subcommand("incsets", "Counter-offset collision sets");
  ic->add_option("--width", inc.width, "Counter width")->required();
  ic->add_option("--rmax", inc.r_max, "Largest r")->required();
  ic->add_option("--samples", inc.samples, "Sampled r values above the exhaustive width (0: all)");
  ic->add_option("--seed", inc.seed, "Sampling seed");

  std::vector<std::string> argv_store{"tes"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "tes: usage: " << e.what() << "\n";
    return kExitUsageError;
  }

  const Format fmt = format == "structured" ? Format::structured : Format::text;
  try {
    if (enc->parsed()) return do_crypt(true, crypt, fmt, out);
    if (dec->parsed()) return do_crypt(false, crypt, fmt, out);
    if (atk->parsed()) return do_attack(attack_name, attack, out);
    if (bnd->parsed()) return do_bounds(bounds, fmt, out);
    if (wk->parsed()) return do_weakkey(weak, out);
    return do_incsets(inc, fmt, out);
  } catch (const Error& e) {
    err << "tes: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return usage_class(e.code()) ? kExitUsageError : kExitDataError;
  } catch (const std::exception& e) {
    err << "tes: error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace tes::cli
