#include "valuta/multi_index.hpp"
#include "valuta/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace valuta {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty rational literal");

  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + text + "'");
    Integer d(strip_plus(den));
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(Integer(strip_plus(num))) / Rational(d);
  }
  if (valid_int(s)) return Rational(Integer(strip_plus(s)));

  // Terminating decimal such as "0.25" or "-1.5e2".
  const auto dot = s.find_first_of(".eE");
  if (dot == std::string::npos) throw ParseError("malformed rational '" + text + "'");
  std::string mantissa = s, exponent_part;
  const auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mantissa = s.substr(0, e);
    exponent_part = s.substr(e + 1);
    if (!valid_int(exponent_part)) throw ParseError("malformed rational '" + text + "'");
  }
  int frac_digits = 0;
  std::string digits;
  const auto point = mantissa.find('.');
  if (point != std::string::npos) {
    digits = mantissa.substr(0, point) + mantissa.substr(point + 1);
    frac_digits = static_cast<int>(mantissa.size() - point - 1);
  } else {
    digits = mantissa;
  }
  if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
  if (!valid_int(digits)) throw ParseError("malformed rational '" + text + "'");
  long exponent = exponent_part.empty() ? 0 : std::stol(exponent_part);
  exponent -= frac_digits;
  Rational value(Integer(strip_plus(digits)));
  Rational ten(10);
  if (exponent >= 0)
    value *= power(ten, static_cast<int>(exponent));
  else
    value /= power(ten, static_cast<int>(-exponent));
  return value;
}

std::string format_rational(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

MultiIndex::MultiIndex(int dim) {
  if (dim < 0 || dim > kMaxDim) throw DimensionError("multi-index dimension out of range");
  n_ = static_cast<std::uint8_t>(dim);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(const std::vector<int>& entries) : MultiIndex(static_cast<int>(entries.size())) {
  for (int i = 0; i < n_; ++i) set(i, entries[static_cast<std::size_t>(i)]);
}

void MultiIndex::set(int i, int value) {
  if (i < 0 || i >= n_) throw DimensionError("multi-index position out of range");
  if (value < 0 || value > 255) throw DimensionError("multi-index entry out of range");
  e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.n_ != n_) throw DimensionError("multi-index dimension mismatch");
  MultiIndex sum(n_);
  for (int i = 0; i < n_; ++i) sum.set(i, (*this)[i] + other[i]);
  return sum;
}

std::string MultiIndex::key() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (i) out += ',';
    out += std::to_string((*this)[i]);
  }
  return out;
}

MultiIndex MultiIndex::from_key(const std::string& key) {
  std::vector<int> entries;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c)) != 0;
        }))
      throw ParseError("malformed multi-index key '" + key + "'");
    entries.push_back(std::stoi(item));
  }
  if (entries.empty()) throw ParseError("empty multi-index key");
  return MultiIndex(entries);
}

void for_each_multi_index(int n, int r, const std::function<void(const MultiIndex&)>& visit) {
  if (n < 1) throw DimensionError("ambient dimension must be positive");
  if (r < 0) return;
  MultiIndex a(n);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      a.set(pos, remaining);
      visit(a);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      a.set(pos, v);
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, r);
}

std::vector<MultiIndex> enumerate_multi_indices(int n, int r) {
  std::vector<MultiIndex> out;
  for_each_multi_index(n, r, [&](const MultiIndex& a) { out.push_back(a); });
  return out;
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long result = 1;
  for (long i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

long tensor_dim(int n, int r) {
  if (n < 1 || r < 0) throw DimensionError("tensor_dim needs n >= 1 and r >= 0");
  return binomial(n + r - 1, r);
}

Rational multi_factorial(const MultiIndex& alpha) {
  Rational f(1);
  for (int i = 0; i < alpha.dim(); ++i) f *= factorial(alpha[i]);
  return f;
}

Rational multinomial(const MultiIndex& alpha) { return factorial(alpha.degree()) / multi_factorial(alpha); }

namespace {

std::optional<Integer> exact_root(const Integer& x, int k) {
  Integer r;
  if (mpz_root(r.backend().data(), x.backend().data(), static_cast<unsigned long>(k)) == 0) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> rational_power(const Rational& q, int num, int den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("rational_power: exponent must be num/den with den > 0");
  if (q < 0) throw std::invalid_argument("rational_power: negative base");
  const Rational raised = power(q, num);
  const auto p = exact_root(boost::multiprecision::numerator(raised), den);
  const auto d = exact_root(boost::multiprecision::denominator(raised), den);
  if (!p || !d) return std::nullopt;
  return Rational(*p) / Rational(*d);
}

}  // namespace valuta
