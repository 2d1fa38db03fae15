#include "tes/analysis.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "tes/error.hpp"

namespace tes {

namespace mp = boost::multiprecision;

namespace {

std::uint64_t width_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

void check_carry_width(unsigned width) {
  if (width < 1 || width > kMaxCarryClassWidth) {
    throw Error(Errc::width_too_large, "carry-class width must be 1.." +
                                           std::to_string(kMaxCarryClassWidth));
  }
}

std::vector<std::uint32_t> exhaustive_y_set_serial(unsigned width, std::uint64_t r) {
  const std::uint64_t size = std::uint64_t{1} << width;
  const std::uint64_t mask = size - 1;
  std::set<std::uint32_t> offsets;
  for (std::uint64_t y = 0; y < size; ++y) {
    offsets.insert(static_cast<std::uint32_t>(((y + r) & mask) ^ y));
  }
  return {offsets.begin(), offsets.end()};
}

std::vector<std::uint32_t> exhaustive_y_set_marks(unsigned width, std::uint64_t r) {
  const std::uint64_t size = std::uint64_t{1} << width;
  const std::uint64_t mask = size - 1;
  std::vector<std::uint8_t> seen(size, 0);
  for (std::uint64_t y = 0; y < size; ++y) seen[((y + r) & mask) ^ y] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 0; d < size; ++d) {
    if (seen[d]) out.push_back(static_cast<std::uint32_t>(d));
  }
  return out;
}

void enumerate_carries(unsigned width, std::uint64_t r, unsigned k, std::uint64_t carries,
                       std::vector<std::uint64_t>& out) {
  // carries holds c_0..c_k; bit k is the carry into position k.
  if (k + 1 == width) {
    out.push_back((r ^ carries) & width_mask(width));
    return;
  }
  const unsigned rk = (r >> k) & 1;
  const unsigned ck = (carries >> k) & 1;
  if (rk == ck) {
    enumerate_carries(width, r, k + 1, carries | (std::uint64_t{ck} << (k + 1)), out);
  } else {
    enumerate_carries(width, r, k + 1, carries, out);
    enumerate_carries(width, r, k + 1, carries | (std::uint64_t{1} << (k + 1)), out);
  }
}

IncSample carry_class_sample(unsigned width, std::uint64_t r) {
  const std::vector<std::uint64_t> y = carry_class_y_set(width, r);
  IncSample s;
  s.r = r;
  s.y_count = y.size();
  s.w_count = static_cast<std::size_t>(std::count_if(
      y.begin(), y.end(), [&](std::uint64_t d) { return min_offset_index(width, d) == r; }));
  return s;
}

}  // namespace

IncSetTable compute_inc_sets(unsigned width, std::uint64_t r_max, Exec exec) {
  if (width < 1 || width > kMaxExhaustiveWidth) {
    throw Error(Errc::width_too_large,
                "exhaustive width must be 1.." + std::to_string(kMaxExhaustiveWidth));
  }
  if (r_max >= (std::uint64_t{1} << width)) {
    throw Error(Errc::bad_argument, "r_max must be below 2^width");
  }
  IncSetTable table;
  table.width = width;
  table.r_max = r_max;
  table.y_sets.resize(r_max + 1);
  const auto count = static_cast<std::int64_t>(r_max + 1);

  if (exec == Exec::serial) {
    for (std::int64_t r = 0; r < count; ++r) {
      table.y_sets[static_cast<std::size_t>(r)] = exhaustive_y_set_serial(width, static_cast<std::uint64_t>(r));
    }
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t r = 0; r < count; ++r) {
      table.y_sets[static_cast<std::size_t>(r)] = exhaustive_y_set_marks(width, static_cast<std::uint64_t>(r));
    }
  }

  std::vector<std::uint8_t> covered(std::size_t{1} << width, 0);
  table.w_sets.resize(r_max + 1);
  for (std::uint64_t r = 0; r <= r_max; ++r) {
    for (std::uint32_t d : table.y_sets[r]) {
      if (!covered[d]) {
        covered[d] = 1;
        table.w_sets[r].push_back(d);
      }
    }
    table.w_max = std::max(table.w_max, table.w_sets[r].size());
  }
  return table;
}

std::vector<std::uint64_t> carry_class_y_set(unsigned width, std::uint64_t r) {
  check_carry_width(width);
  std::vector<std::uint64_t> out;
  enumerate_carries(width, r & width_mask(width), 0, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool carry_class_contains(unsigned width, std::uint64_t r, std::uint64_t d) {
  check_carry_width(width);
  const std::uint64_t c = (r ^ d) & width_mask(width);
  if (c & 1) return false;
  for (unsigned k = 0; k + 1 < width; ++k) {
    const unsigned rk = (r >> k) & 1, ck = (c >> k) & 1, next = (c >> (k + 1)) & 1;
    if (rk == ck && next != ck) return false;
  }
  return true;
}

std::uint64_t min_offset_index(unsigned width, std::uint64_t d) {
  check_carry_width(width);
  // With i = d xor c, the carry rule becomes: c_{k+1} = c_k wherever d_k = 0.
  // best[c] is the least value of bits k..w-1 of i given c_k = c.
  std::uint64_t best[2];
  const unsigned top = width - 1;
  for (unsigned c = 0; c < 2; ++c) best[c] = std::uint64_t{((d >> top) & 1) ^ c} << top;
  for (int k = static_cast<int>(top) - 1; k >= 0; --k) {
    const unsigned dk = (d >> k) & 1;
    std::uint64_t next[2];
    for (unsigned c = 0; c < 2; ++c) {
      const std::uint64_t rest = dk == 0 ? best[c] : std::min(best[0], best[1]);
      next[c] = (std::uint64_t{dk ^ c} << k) + rest;
    }
    best[0] = next[0];
    best[1] = next[1];
  }
  return best[0];
}

IncSampleReport sample_inc_sets(unsigned width, std::uint64_t r_max, std::size_t samples,
                                std::uint64_t seed, Exec exec) {
  check_carry_width(width);
  if (r_max > width_mask(width)) throw Error(Errc::bad_argument, "r_max must be below 2^width");
  IncSampleReport report;
  report.width = width;
  report.r_max = r_max;
  report.seed = seed;

  std::vector<std::uint64_t> rs;
  if (samples == 0 || samples > r_max) {
    for (std::uint64_t r = 0; r <= r_max; ++r) rs.push_back(r);
  } else {
    std::set<std::uint64_t> chosen{0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, r_max);
    while (chosen.size() < samples) chosen.insert(dist(rng));
    rs.assign(chosen.begin(), chosen.end());
  }

  report.samples.resize(rs.size());
  const auto n = static_cast<std::int64_t>(rs.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    report.samples[static_cast<std::size_t>(i)] = carry_class_sample(width, rs[static_cast<std::size_t>(i)]);
  }
  for (const IncSample& s : report.samples) report.max_w = std::max(report.max_w, s.w_count);
  return report;
}

IncSampleReport sample_w32(std::uint64_t r_max, std::size_t samples, std::uint64_t seed, Exec exec) {
  return sample_inc_sets(32, r_max, samples, seed, exec);
}

// ---- security bounds ----------------------------------------------------

namespace {

using Int = mp::cpp_int;
using Rational = mp::cpp_rational;

Int to_int(u128 v) {
  Int out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

double log2_int(const Int& v) {
  const std::size_t e = mp::msb(v);
  if (e < 63) return std::log2(v.convert_to<double>());
  const Int top = v >> (e - 62);
  return std::log2(top.convert_to<double>()) + static_cast<double>(e - 62);
}

double log2_rational(const Rational& r) {
  return log2_int(mp::numerator(r)) - log2_int(mp::denominator(r));
}

Int phi_mersenne_int(unsigned n) {
  Int rest = (Int(1) << n) - 1;
  Int phi = 1;
  for (std::uint64_t p : field::kGroupOrderFactors) {
    if (rest % p == 0) {
      rest /= p;
      if (rest % p == 0) break;  // repeated factor: not handled below
      phi *= (p - 1);
    }
  }
  if (rest != 1) {
    throw Error(Errc::unsupported_block_size,
                "2^" + std::to_string(n) + "-1 does not split into distinct known primes");
  }
  return phi;
}

struct SchemeDef {
  std::string_view name;
  std::string_view formula;
};

constexpr SchemeDef kSchemes[] = {
    {"tet", "3*sigma^2/(2*phi(2^n-1))"},
    {"hctr", "4.5*sigma^2/2^n"},
    {"cmc", "7*sigma^2/2^n"},
    {"eme", "7*sigma^2/2^n"},
    {"heh", "20*sigma^2/2^n"},
    {"xcb-2007", "8*q^2*(l+2)^2/2^n"},
    {"xcbv2fb-old", "(5+2^22)*l*q*sigma/2^n"},
    {"xcbv1-old-table", "(5+2^22)*l*q*sigma/2^n"},
    {"xcbv1-old-alt", "(3+2^22)*l*q*sigma/2^n"},
    {"xcbv2fb-repaired", "(5+2^5)*l*q*sigma/2^n"},
    {"xcbv1-repaired", "(3+2^5)*l*q*sigma/2^n"},
    {"mxcbv2fb", "(3.5*q^2+sigma^2)/2^n"},
    {"mxcbv1", "(2.5*q^2+sigma^2)/2^n"},
};

Rational eval_exact(std::string_view scheme, const BoundParams& p) {
  const Int q = to_int(p.q), s = to_int(p.sigma), l = p.ell;
  const Int two_n = Int(1) << p.n;
  const Int s2 = s * s, q2 = q * q;
  const auto frac = [](const Int& num, const Int& den) { return Rational(num, den); };
  if (scheme == "tet") return frac(3 * s2, 2 * phi_mersenne_int(p.n));
  if (scheme == "hctr") return frac(9 * s2, 2 * two_n);
  if (scheme == "cmc" || scheme == "eme") return frac(7 * s2, two_n);
  if (scheme == "heh") return frac(20 * s2, two_n);
  if (scheme == "xcb-2007") return frac(8 * q2 * (l + 2) * (l + 2), two_n);
  if (scheme == "xcbv2fb-old" || scheme == "xcbv1-old-table") {
    return frac((Int(5) + (Int(1) << 22)) * l * q * s, two_n);
  }
  if (scheme == "xcbv1-old-alt") return frac((Int(3) + (Int(1) << 22)) * l * q * s, two_n);
  if (scheme == "xcbv2fb-repaired") return frac((Int(5) + 32) * l * q * s, two_n);
  if (scheme == "xcbv1-repaired") return frac((Int(3) + 32) * l * q * s, two_n);
  if (scheme == "mxcbv2fb") return frac(7 * q2 + 2 * s2, 2 * two_n);
  if (scheme == "mxcbv1") return frac(5 * q2 + 2 * s2, 2 * two_n);
  throw Error(Errc::unknown_scheme, "unknown scheme: " + std::string(scheme));
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string params_text(const BoundParams& p) {
  return "q=" + to_string_u128(p.q) + " l=" + std::to_string(p.ell) +
         " sigma=" + to_string_u128(p.sigma) + " n=" + std::to_string(p.n);
}

}  // namespace

BoundParams default_bound_params() {
  return {u128{1} << 30, (1u << 8) + 1, (u128{1} << 38) + (u128{1} << 30), 128};
}

void validate(const BoundParams& p) {
  if (p.q < 1 || p.ell < 1 || p.sigma < p.q || p.n < 1 || p.n > 1024) {
    throw Error(Errc::bad_argument, "bound parameters need q>=1, l>=1, sigma>=q, 1<=n<=1024");
  }
}

u128 parse_count_expr(std::string_view expr) {
  if (expr.empty()) throw Error(Errc::parse_error, "empty count expression");
  u128 total = 0;
  std::size_t start = 0;
  while (start <= expr.size()) {
    const std::size_t plus = expr.find('+', start);
    const std::string_view term =
        expr.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
    u128 value;
    if (const std::size_t caret = term.find('^'); caret != std::string_view::npos) {
      const u128 base = parse_u128(term.substr(0, caret));
      const u128 exp = parse_u128(term.substr(caret + 1));
      if (base != 2 || exp > 127) {
        throw Error(Errc::parse_error, "power terms must be 2^k with k <= 127: " + std::string(term));
      }
      value = u128{1} << static_cast<unsigned>(exp);
    } else {
      value = parse_u128(term);
    }
    if (total > field::kGroupOrder - value) throw Error(Errc::parse_error, "count overflows 128 bits");
    total += value;
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return total;
}

std::vector<std::string_view> bound_scheme_names() {
  std::vector<std::string_view> out;
  for (const SchemeDef& s : kSchemes) out.push_back(s.name);
  return out;
}

BoundValue eval_bound(std::string_view scheme, const BoundParams& p) {
  validate(p);
  const auto it = std::find_if(std::begin(kSchemes), std::end(kSchemes),
                               [&](const SchemeDef& s) { return s.name == scheme; });
  if (it == std::end(kSchemes)) {
    throw Error(Errc::unknown_scheme, "unknown scheme: " + std::string(scheme));
  }
  const Rational exact = eval_exact(scheme, p);
  BoundValue v;
  v.scheme = std::string(it->name);
  v.formula = std::string(it->formula);
  v.advantage_log2 = log2_rational(exact);
  v.advantage = std::exp2(v.advantage_log2);
  return v;
}

std::string phi_mersenne(unsigned n) { return phi_mersenne_int(n).str(); }

BoundReport table1_report(const BoundParams& p) {
  static constexpr std::pair<std::string_view, std::string_view> kRows[] = {
      {"TET", "tet"},
      {"HCTR", "hctr"},
      {"CMC", "cmc"},
      {"EME", "eme"},
      {"HEH, HMCH", "heh"},
      {"XCB", "xcb-2007"},
      {"XCBv2fb", "xcbv2fb-old"},
      {"XCBv1", "xcbv1-old-table"},
      {"Repaired XCBv2fb", "xcbv2fb-repaired"},
      {"Repaired XCBv1", "xcbv1-repaired"},
      {"MXCBv2fb", "mxcbv2fb"},
      {"MXCBv1", "mxcbv1"},
  };
  BoundReport report;
  report.params = p;
  for (const auto& [label, scheme] : kRows) {
    report.rows.push_back({std::string(label), eval_bound(scheme, p)});
  }
  const BoundValue alt = eval_bound("xcbv1-old-alt", p);
  report.notes.push_back("XCBv1 row uses the listed constant 5+2^22; the stated XCBv1 bound uses 3+2^22 (" +
                         alt.scheme + ": log2 " + fixed(alt.advantage_log2, 4) + ")");
  return report;
}

std::string BoundReport::to_text() const {
  std::ostringstream os;
  os << "Security bounds at " << params_text(params) << "\n";
  std::size_t label_w = 8, formula_w = 7;
  for (const BoundRow& r : rows) {
    label_w = std::max(label_w, r.label.size());
    formula_w = std::max(formula_w, r.value.formula.size());
  }
  const auto padded = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  os << padded("TES mode", label_w) << "  " << padded("formula", formula_w) << "  log2(advantage)\n";
  for (const BoundRow& r : rows) {
    os << padded(r.label, label_w) << "  " << padded(r.value.formula, formula_w) << "  "
       << fixed(r.value.advantage_log2, 4) << "\n";
  }
  for (const std::string& n : notes) os << "note: " << n << "\n";
  return os.str();
}

std::string BoundReport::to_structured() const {
  std::ostringstream os;
  os << "params.q=" << to_string_u128(params.q) << "\n"
     << "params.l=" << params.ell << "\n"
     << "params.sigma=" << to_string_u128(params.sigma) << "\n"
     << "params.n=" << params.n << "\n"
     << "rows=" << rows.size() << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BoundRow& r = rows[i];
    os << "row." << i << ".label=" << r.label << "\n"
       << "row." << i << ".scheme=" << r.value.scheme << "\n"
       << "row." << i << ".formula=" << r.value.formula << "\n"
       << "row." << i << ".advantage_log2=" << fixed(r.value.advantage_log2, 6) << "\n";
  }
  for (std::size_t i = 0; i < notes.size(); ++i) os << "note." << i << "=" << notes[i] << "\n";
  return os.str();
}

}  // namespace tes
