// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/ternary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_map>

#include "okamoto/error.hpp"
#include "okamoto/spectral.hpp"

namespace okamoto {

namespace {

void check_digits(std::span<const Digit> ds) {
  for (Digit d : ds) require(d <= 2, ErrorCode::Domain, "ternary digits must be 0, 1 or 2");
}

Digits complement(const Digits& ds) {
  Digits out(ds.size());
  std::transform(ds.begin(), ds.end(), out.begin(), [](Digit d) { return static_cast<Digit>(2 - d); });
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), ErrorCode::Parse,
          "cannot parse " + std::string(what) + " value '" + std::string(s) + "'");
  return v;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), ErrorCode::Parse,
          "cannot parse " + std::string(what) + " value '" + std::string(s) + "'");
  return v;
}

Digits parse_digit_string(std::string_view s) {
  Digits out;
  out.reserve(s.size());
  for (char c : s) {
    require(c >= '0' && c <= '2', ErrorCode::Parse, "digit strings use only 0, 1, 2; got '" + std::string(s) + "'");
    out.push_back(static_cast<Digit>(c - '0'));
  }
  return out;
}

std::string digit_string(const Digits& ds) {
  std::string s;
  s.reserve(ds.size());
  for (Digit d : ds) s.push_back(static_cast<char>('0' + d));
  return s;
}

// Smallest p dividing the length such that the sequence is p-periodic.
Digits minimal_period(const Digits& period) {
  const std::size_t n = period.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = period[i] == period[i - p];
    if (ok) return Digits(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(p));
  }
  return period;
}

std::uint64_t splitmix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Digit free_digit(std::uint64_t seed, std::uint64_t i) noexcept {
  return uniform_at(seed, i) < 0.5 ? 0 : 2;
}

void validate_rule(const Rule& rule) {
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, BnOnesRule>) {
          require(r.k >= 0, ErrorCode::Domain, "bnones: k must be >= 0");
          require(r.a > 0.0 && r.a < 1.0 / 3.0, ErrorCode::Domain, "bnones: a must lie in (0, 1/3)");
          require(r.delta > 0.0 && r.delta < 1.0, ErrorCode::Domain, "bnones: delta must lie in (0, 1)");
        } else if constexpr (std::is_same_v<T, BoundedRunRule>) {
          require(r.m >= 2, ErrorCode::Domain, "boundedrun: m must be >= 2");
        } else if constexpr (std::is_same_v<T, MarkovRule>) {
          require(r.a > 0.0 && r.a <= 0.5, ErrorCode::Domain, "markov: a must lie in (0, 1/2]");
          require(r.p >= 0.0 && r.p <= 1.0, ErrorCode::Domain, "markov: p must lie in [0, 1]");
          const double rr = (1.0 - 2.0 * r.a) * (1.0 - r.p) / (2.0 * r.a);
          require(rr >= 0.0 && rr <= 1.0, ErrorCode::Domain, "markov: derived r = (1-2a)(1-p)/(2a) must lie in [0, 1]");
        } else {
          require(r.a > 0.0 && r.a < 0.5, ErrorCode::Domain, "deltatarget: a must lie in (0, 1/2)");
          require(std::isfinite(r.c), ErrorCode::Domain, "deltatarget: c must be finite");
        }
      },
      rule);
}

}  // namespace

double uniform_at(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t z = splitmix(splitmix(seed) ^ (index * 0xD1B54A32D192ED03ULL));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::uint64_t pow3(unsigned n) {
  require(n <= 40, ErrorCode::Budget, "3^n overflows 64 bits for n > 40");
  std::uint64_t v = 1;
  for (unsigned i = 0; i < n; ++i) v *= 3;
  return v;
}

Digits base3_digits(std::uint64_t j, unsigned n) {
  Digits out(n, 0);
  for (unsigned i = n; i-- > 0;) {
    out[i] = static_cast<Digit>(j % 3);
    j /= 3;
  }
  require(j == 0, ErrorCode::Domain, "index does not fit in the requested number of ternary digits");
  return out;
}

unsigned ones_of(std::uint64_t j) {
  unsigned c = 0;
  for (; j > 0; j /= 3) c += (j % 3 == 1);
  return c;
}

// ---- construction -------------------------------------------------------

DigitSource DigitSource::finite(Digits prefix) {
  check_digits(prefix);
  while (!prefix.empty() && prefix.back() == 0) prefix.pop_back();
  DigitSource s;
  s.kind_ = Kind::Finite;
  s.pre_ = std::move(prefix);
  return s;
}

DigitSource DigitSource::periodic(Digits preperiod, Digits period) {
  check_digits(preperiod);
  check_digits(period);
  require(!period.empty(), ErrorCode::Domain, "period must be nonempty");
  period = minimal_period(period);
  while (!preperiod.empty() && preperiod.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    preperiod.pop_back();
  }
  if (period.size() == 1 && period[0] == 0) return finite(std::move(preperiod));
  if (period.size() == 1 && period[0] == 2 && !preperiod.empty()) {
    // 0.d_1...d_m 222... = 0.d_1...(d_m + 1); d_m != 2 after the loop above.
    preperiod.back() = static_cast<Digit>(preperiod.back() + 1);
    return finite(std::move(preperiod));
  }
  DigitSource s;
  s.kind_ = Kind::EventuallyPeriodic;
  s.pre_ = std::move(preperiod);
  s.period_ = std::move(period);
  return s;
}

DigitSource DigitSource::generated(Rule rule, std::uint64_t seed) {
  validate_rule(rule);
  DigitSource s;
  s.kind_ = Kind::Generated;
  s.gen_ = std::make_shared<const Gen>(Gen{std::move(rule), seed, 0, false});
  return s;
}

DigitSource DigitSource::from_rational(std::int64_t p, std::int64_t q) {
  require(q >= 1, ErrorCode::Domain, "denominator must be >= 1");
  require(p >= 0, ErrorCode::Domain, "numerator must be >= 0");
  require(p <= q, ErrorCode::Domain, "p/q must not exceed 1");
  require(q <= std::numeric_limits<std::int64_t>::max() / 3, ErrorCode::Domain, "denominator too large");
  if (p == q) return periodic({}, {2});
  Digits digits;
  std::unordered_map<std::int64_t, std::size_t> seen;
  std::int64_t r = p;
  seen.emplace(r, 0);
  for (;;) {
    digits.push_back(static_cast<Digit>((3 * r) / q));
    r = (3 * r) % q;
    if (r == 0) return finite(std::move(digits));
    auto [it, inserted] = seen.emplace(r, digits.size());
    if (!inserted) {
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      Digits pre(digits.begin(), digits.begin() + start);
      Digits per(digits.begin() + start, digits.end());
      return periodic(std::move(pre), std::move(per));
    }
  }
}

// ---- text form ----------------------------------------------------------

std::string DigitSource::to_string() const {
  switch (kind_) {
    case Kind::Finite:
      return "F:" + (pre_.empty() ? std::string("0") : digit_string(pre_));
    case Kind::EventuallyPeriodic:
      return "P:" + digit_string(pre_) + "|" + digit_string(period_);
    case Kind::Generated:
      break;
  }
  std::string body = std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, BnOnesRule>) {
          return "bnones:k=" + std::to_string(r.k) + ",a=" + fmt_double(r.a) + ",delta=" + fmt_double(r.delta);
        } else if constexpr (std::is_same_v<T, BoundedRunRule>) {
          const char* f = r.free == FreeDigits::Random ? "random" : r.free == FreeDigits::Zeros ? "zeros" : "twos";
          return "boundedrun:m=" + std::to_string(r.m) + ",free=" + f;
        } else if constexpr (std::is_same_v<T, MarkovRule>) {
          return "markov:a=" + fmt_double(r.a) + ",p=" + fmt_double(r.p);
        } else {
          return "deltatarget:a=" + fmt_double(r.a) + ",c=" + fmt_double(r.c);
        }
      },
      gen_->rule);
  body += ",seed=" + std::to_string(gen_->seed);
  if (gen_->offset != 0) body += ",offset=" + std::to_string(gen_->offset);
  if (gen_->reflected) body += ",reflect=1";
  return "G:" + body;
}

DigitSource DigitSource::parse(std::string_view text) {
  require(text.size() >= 2 && text[1] == ':', ErrorCode::Parse,
          "point spec must start with F:, P:, G: or R:; got '" + std::string(text) + "'");
  const char tag = text[0];
  std::string_view body = text.substr(2);
  switch (tag) {
    case 'F':
      return finite(parse_digit_string(body));
    case 'P': {
      const auto bar = body.find('|');
      require(bar != std::string_view::npos, ErrorCode::Parse, "periodic spec needs 'pre|period'");
      Digits period = parse_digit_string(body.substr(bar + 1));
      require(!period.empty(), ErrorCode::Parse, "periodic spec needs a nonempty period");
      return periodic(parse_digit_string(body.substr(0, bar)), std::move(period));
    }
    case 'R': {
      const auto slash = body.find('/');
      require(slash != std::string_view::npos, ErrorCode::Parse, "rational spec needs 'p/q'");
      return from_rational(parse_int(body.substr(0, slash), "numerator"), parse_int(body.substr(slash + 1), "denominator"));
    }
    case 'G':
      break;
    default:
      fail(ErrorCode::Parse, "unknown point spec tag '" + std::string(1, tag) + "'");
  }
  const auto colon = body.find(':');
  const std::string family(body.substr(0, colon));
  std::map<std::string, std::string, std::less<>> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = body.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      require(eq != std::string_view::npos, ErrorCode::Parse, "generator parameters are key=value pairs");
      kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    require(it != kv.end(), ErrorCode::Parse, "generator '" + family + "' needs parameter '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_or = [&](const std::string& key, std::string dflt) {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  Rule rule;
  if (family == "bnones") {
    rule = BnOnesRule{static_cast<int>(parse_int(take("k"), "k")), parse_double(take("a"), "a"),
                      parse_double(take("delta"), "delta")};
  } else if (family == "boundedrun") {
    const std::string f = take_or("free", "random");
    FreeDigits fd = FreeDigits::Random;
    if (f == "zeros") fd = FreeDigits::Zeros;
    else if (f == "twos") fd = FreeDigits::Twos;
    else require(f == "random", ErrorCode::Parse, "boundedrun: free must be random, zeros or twos");
    rule = BoundedRunRule{static_cast<int>(parse_int(take("m"), "m")), fd};
  } else if (family == "markov") {
    rule = MarkovRule{parse_double(take("a"), "a"), parse_double(take("p"), "p")};
  } else if (family == "deltatarget") {
    rule = DeltaTargetRule{parse_double(take("a"), "a"), parse_double(take("c"), "c")};
  } else {
    fail(ErrorCode::Parse, "unknown generator family '" + family + "'");
  }
  const auto seed = parse_int(take_or("seed", "0"), "seed");
  const auto offset = parse_int(take_or("offset", "0"), "offset");
  const auto refl = parse_int(take_or("reflect", "0"), "reflect");
  require(seed >= 0 && offset >= 0 && (refl == 0 || refl == 1), ErrorCode::Parse, "seed/offset/reflect out of range");
  require(kv.empty(), ErrorCode::Parse, "unknown generator parameter '" + (kv.empty() ? std::string() : kv.begin()->first) + "'");
  DigitSource s = generated(std::move(rule), static_cast<std::uint64_t>(seed));
  if (offset != 0 || refl != 0) {
    auto g = std::make_shared<Gen>(*s.gen_);
    g->offset = static_cast<std::uint64_t>(offset);
    g->reflected = refl != 0;
    s.gen_ = std::move(g);
  }
  return s;
}

// ---- digit access -------------------------------------------------------

void DigitSource::fill_generated(std::size_t first, std::size_t last, Digit* out) const {
  // Base-stream positions [first + offset, last + offset], 1-based.
  const std::size_t lo = first + gen_->offset;
  const std::size_t hi = last + gen_->offset;
  const std::uint64_t seed = gen_->seed;
  auto emit = [&](std::size_t pos, Digit d) {
    if (pos >= lo) out[pos - lo] = gen_->reflected ? static_cast<Digit>(2 - d) : d;
  };
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, BnOnesRule>) {
          for (std::size_t i = lo; i <= hi; ++i) emit(i, free_digit(seed, i));
          const double inv_phi = 1.0 / phi(r.a);
          const double slope = (r.k + r.delta) / std::log(3.0 * r.a);
          for (std::size_t n = 1;; ++n) {
            const double b = std::floor(static_cast<double>(n) * inv_phi - slope * std::log(static_cast<double>(n)));
            const auto pos = static_cast<std::size_t>(b);
            if (pos > hi) break;
            if (pos >= lo) emit(pos, 1);
          }
        } else if constexpr (std::is_same_v<T, BoundedRunRule>) {
          const auto m = static_cast<std::size_t>(r.m);
          for (std::size_t i = lo; i <= hi; ++i) {
            Digit d = 0;
            if (i % m == m - 1) d = 0;
            else if (i % m == 0) d = 2;
            else if (r.free == FreeDigits::Random) d = free_digit(seed, i);
            else d = r.free == FreeDigits::Zeros ? 0 : 2;
            emit(i, d);
          }
        } else if constexpr (std::is_same_v<T, MarkovRule>) {
          const double rr = (1.0 - 2.0 * r.a) * (1.0 - r.p) / (2.0 * r.a);
          Digit state = 0;
          for (std::size_t i = 1; i <= hi; ++i) {
            const double u = uniform_at(seed, i);
            if (i == 1) {
              state = u < r.a ? 0 : (u < 1.0 - r.a ? 1 : 2);
            } else {
              const double stay1 = state == 1 ? r.p : rr;
              state = u < stay1 ? 1 : (u < stay1 + 0.5 * (1.0 - stay1) ? 0 : 2);
            }
            emit(i, state);
          }
        } else {
          const double nu = 1.0 - 2.0 * r.a;
          std::size_t l = 0;
          for (std::size_t i = 1; i <= hi; ++i) {
            const double target = std::floor(nu * static_cast<double>(i) - r.c * std::sqrt(static_cast<double>(i)));
            const bool one = target >= static_cast<double>(l + 1);
            if (one) ++l;
            emit(i, one ? 1 : free_digit(seed, i));
          }
        }
      },
      gen_->rule);
}

Digit DigitSource::digit(std::size_t i) const {
  require(i >= 1, ErrorCode::Domain, "digit positions are 1-based");
  if (kind_ == Kind::Generated) {
    Digit d = 0;
    fill_generated(i, i, &d);
    return d;
  }
  if (i <= pre_.size()) return pre_[i - 1];
  if (kind_ == Kind::Finite) return 0;
  return period_[(i - 1 - pre_.size()) % period_.size()];
}

Digits DigitSource::prefix(std::size_t n) const {
  Digits out(n, 0);
  if (n == 0) return out;
  if (kind_ == Kind::Generated) {
    fill_generated(1, n, out.data());
    return out;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    if (i <= pre_.size()) out[i - 1] = pre_[i - 1];
    else if (kind_ == Kind::EventuallyPeriodic) out[i - 1] = period_[(i - 1 - pre_.size()) % period_.size()];
  }
  return out;
}

Rational DigitSource::value() const {
  require(is_exact(), ErrorCode::Domain, "generated sources have no exact value");
  auto as_int = [](const Digits& ds) {
    BigInt v = 0;
    for (Digit d : ds) v = v * 3 + d;
    return v;
  };
  BigInt scale = 1;
  for (std::size_t i = 0; i < pre_.size(); ++i) scale *= 3;
  Rational x(as_int(pre_));
  if (kind_ == Kind::EventuallyPeriodic) {
    BigInt pp = 1;
    for (std::size_t i = 0; i < period_.size(); ++i) pp *= 3;
    x += Rational(as_int(period_), pp - 1);
  }
  return x / Rational(scale);
}

DigitSource DigitSource::reflected() const {
  if (kind_ == Kind::Generated) {
    auto g = std::make_shared<Gen>(*gen_);
    g->reflected = !g->reflected;
    DigitSource s = *this;
    s.gen_ = std::move(g);
    return s;
  }
  return periodic(complement(pre_), kind_ == Kind::Finite ? Digits{2} : complement(period_));
}

DigitSource DigitSource::shifted(std::size_t s) const {
  if (kind_ == Kind::Generated) {
    auto g = std::make_shared<Gen>(*gen_);
    g->offset += s;
    DigitSource out = *this;
    out.gen_ = std::move(g);
    return out;
  }
  if (s <= pre_.size()) {
    Digits pre(pre_.begin() + static_cast<std::ptrdiff_t>(s), pre_.end());
    return kind_ == Kind::Finite ? finite(std::move(pre)) : periodic(std::move(pre), period_);
  }
  if (kind_ == Kind::Finite) return finite({});
  Digits per = period_;
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>((s - pre_.size()) % per.size()), per.end());
  return periodic({}, std::move(per));
}

// ---- statistics ---------------------------------------------------------

std::vector<std::size_t> ones_counts(const DigitSource& x, std::size_t horizon) {
  const Digits ds = x.prefix(horizon);
  std::vector<std::size_t> l(horizon + 1, 0);
  for (std::size_t i = 0; i < horizon; ++i) l[i + 1] = l[i] + (ds[i] == 1);
  return l;
}

namespace {

std::size_t run_length(const DigitSource& x, std::size_t n, Digit d) {
  if (x.digit(n + 1) != d) return 0;
  if (x.is_exact()) {
    const std::size_t per = x.kind() == DigitSource::Kind::Finite ? 1 : x.period().size();
    const std::size_t limit = std::max(n, x.preperiod().size()) + per + 1;
    std::size_t len = 0;
    for (std::size_t i = n + 1; x.digit(i) == d; ++i) {
      if (i >= limit) return kUnbounded;  // a full period of d inside the periodic tail
      ++len;
    }
    return len;
  }
  constexpr std::size_t kScan = std::size_t{1} << 20;
  const Digits ds = x.shifted(n).prefix(kScan);
  const auto it = std::find_if(ds.begin(), ds.end(), [d](Digit v) { return v != d; });
  return it == ds.end() ? kUnbounded : static_cast<std::size_t>(it - ds.begin());
}

}  // namespace

DigitStats stats_at(const DigitSource& x, std::size_t n, double a) {
  require(n >= 1, ErrorCode::Domain, "stats_at needs n >= 1");
  require_parameter(a);
  DigitStats s;
  s.n = n;
  s.l_n = ones_counts(x, n).back();
  s.rho_0 = run_length(x, n, 0);
  s.rho_2 = run_length(x, n, 2);
  const double nd = static_cast<double>(n);
  const double l = static_cast<double>(s.l_n);
  s.r_n = a <= 2.0 / 3.0 ? l - nd * phi(a) : std::nan("");
  s.centered = ((1.0 - 2.0 * a) * nd - l) / std::sqrt(nd);
  return s;
}

FrequencyLimits frequency_limits(const DigitSource& x, std::size_t window, double a) {
  require_parameter(a);
  FrequencyLimits f;
  const double nu = 1.0 - 2.0 * a;
  if (x.is_exact()) {
    f.exact = true;
    if (x.kind() == DigitSource::Kind::Finite) {
      f.period_ones = 0;
      f.period_length = 1;
    } else {
      f.period_ones = static_cast<std::size_t>(std::count(x.period().begin(), x.period().end(), Digit{1}));
      f.period_length = x.period().size();
    }
    const double lam = static_cast<double>(f.period_ones) / static_cast<double>(f.period_length);
    f.lambda_lo = f.lambda_hi = lam;
    const double inf = std::numeric_limits<double>::infinity();
    const double delta = std::fabs(lam - nu) <= kParamEps ? 0.0 : (lam < nu ? inf : -inf);
    f.delta_lo = f.delta_hi = delta;
    return f;
  }
  require(window >= 2, ErrorCode::Domain, "frequency window must be >= 2");
  const auto l = ones_counts(x, window);
  f.lambda_lo = f.delta_lo = std::numeric_limits<double>::infinity();
  f.lambda_hi = f.delta_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t n = std::max<std::size_t>(1, window / 2); n <= window; ++n) {
    const double nd = static_cast<double>(n);
    const double ln = static_cast<double>(l[n]);
    const double lam = ln / nd;
    const double del = (nu * nd - ln) / std::sqrt(nd);
    f.lambda_lo = std::min(f.lambda_lo, lam);
    f.lambda_hi = std::max(f.lambda_hi, lam);
    f.delta_lo = std::min(f.delta_lo, del);
    f.delta_hi = std::max(f.delta_hi, del);
  }
  return f;
}

}  // namespace okamoto
