#include "hamp/splitting.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <stdexcept>
#include <thread>

#include "hamp/primes.hpp"

namespace hamp::splitting {
namespace {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;  // coefficients mod p, constant term first, no trailing zeros

__extension__ typedef unsigned __int128 u128;
u64 mulMod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addMod(u64 a, u64 b, u64 p) { return (a >= p - b) ? a - (p - b) : a + b; }
u64 subMod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 powMod(u64 base, u64 exp, u64 p) {
  u64 out = 1 % p;
  while (exp) {
    if (exp & 1) out = mulMod(out, base, p);
    base = mulMod(base, base, p);
    exp >>= 1;
  }
  return out;
}

u64 invMod(u64 a, u64 p) { return powMod(a, p - 2, p); }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m, m monic or with invertible lead
Poly remainder(Poly a, const Poly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 leadInv = invMod(m.back(), p);
  while (a.size() > dm) {
    const u64 factor = mulMod(a.back(), leadInv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = subMod(a[shift + i], mulMod(factor, m[i], p), p);
    trim(a);
  }
  return a;
}

Poly mulRem(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] = addMod(out[i + k], mulMod(a[i], b[k], p), p);
  }
  return remainder(std::move(out), m, p);
}

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = remainder(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly derivative(const Poly& a, u64 p) {
  Poly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(mulMod(a[i], i % p, p));
  trim(out);
  return out;
}

// x^e mod m by square-and-multiply
Poly xPowerMod(u64 e, const Poly& m, u64 p) {
  Poly result = remainder({1}, m, p);
  Poly base = remainder({0, 1}, m, p);
  while (e) {
    if (e & 1) result = mulRem(result, base, m, p);
    base = mulRem(base, base, m, p);
    e >>= 1;
  }
  return result;
}

SplitResult splitsModPrime(const IntPoly& f, u64 p) {
  const Poly fp = f.reduce(p);
  if (fp.size() == 2) return {true, false};

  if (gcd(fp, derivative(fp, p), p).size() > 1) return {false, true};

  Poly frob = xPowerMod(p, fp, p);
  if (frob.size() < 2) frob.resize(2, 0);
  frob[1] = subMod(frob[1], 1, p);
  trim(frob);
  const Poly g = gcd(fp, frob, p);
  // frob == 0 means x^p = x mod f, so every root is in F_p
  const int rootCount = frob.empty() ? f.degree() : static_cast<int>(g.size()) - 1;
  return {rootCount == f.degree(), false};
}

void requireMonic(const IntPoly& f) {
  if (!f.isMonic()) throw std::invalid_argument("splitting tests need a monic polynomial: " + f.toString());
}

[[noreturn]] void parseError(std::string_view text, const std::string& why) {
  throw std::invalid_argument("cannot parse polynomial \"" + std::string(text) + "\": " + why);
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) throw std::invalid_argument("polynomial must have degree >= 1");
}

IntPoly IntPoly::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) parseError(text, "empty");

  std::vector<mpz_class> coeffs;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      parseError(text, "expected + or - at position " + std::to_string(i));
    }
    first = false;

    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
    unsigned long power = 0;

    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) parseError(text, "'*' without a coefficient");
      ++i;
      if (i >= s.size() || s[i] != 'x') parseError(text, "expected x after '*'");
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string exponent;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) exponent += s[i++];
        if (exponent.empty()) parseError(text, "missing exponent");
        power = std::stoul(exponent);
      }
    } else if (digits.empty()) {
      parseError(text, "expected a coefficient or x at position " + std::to_string(i));
    }

    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * coeff;
  }
  return IntPoly(std::move(coeffs));
}

std::vector<std::uint64_t> IntPoly::reduce(std::uint64_t p) const {
  Poly out;
  out.reserve(coeffs_.size());
  const mpz_class modulus(static_cast<unsigned long>(p));
  for (const auto& c : coeffs_) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    out.push_back(r.get_ui());
  }
  trim(out);
  return out;
}

std::uint64_t IntPoly::evaluateMod(std::uint64_t x, std::uint64_t p) const {
  const Poly c = reduce(p);
  u64 acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = addMod(mulMod(acc, x % p, p), c[i], p);
  return acc;
}

std::string IntPoly::toString() const {
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    const mpz_class magnitude = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (magnitude != 1 || k == 0) out += magnitude.get_str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

SplitResult splitsCompletely(const IntPoly& f, std::uint64_t p) {
  requireMonic(f);
  if (!isPrime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  return splitsModPrime(f, p);
}

std::vector<std::uint64_t> splitPrimesIn(const IntPoly& f, std::uint64_t lo, std::uint64_t hi) {
  requireMonic(f);
  if (lo > hi) throw std::invalid_argument("empty range");
  const auto primes = primesInRange(lo, hi);

  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  const std::size_t chunk = std::max<std::size_t>(4096, (primes.size() + workers - 1) / workers);
  std::vector<std::future<std::vector<u64>>> parts;
  for (std::size_t begin = 0; begin < primes.size(); begin += chunk) {
    const std::size_t end = std::min(primes.size(), begin + chunk);
    parts.push_back(std::async(std::launch::async, [&f, &primes, begin, end] {
      std::vector<u64> found;
      for (std::size_t i = begin; i < end; ++i) {
        if (splitsModPrime(f, primes[i]).splits) found.push_back(primes[i]);
      }
      return found;
    }));
  }
  std::vector<u64> out;
  for (auto& part : parts) {
    auto found = part.get();
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

DensityResult empiricalDensity(const IntPoly& f, std::uint64_t limit) {
  if (limit < 100) throw std::invalid_argument("density limit must be at least 100");
  DensityResult out;
  out.primeCount = primesInRange(2, limit).size();
  out.splitCount = splitPrimesIn(f, 2, limit).size();
  out.density = mpq_class(mpz_class(static_cast<unsigned long>(out.splitCount)),
                          mpz_class(static_cast<unsigned long>(out.primeCount)));
  out.density.canonicalize();
  return out;
}

}  // namespace hamp::splitting
