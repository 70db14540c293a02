// Copyright 2026 The lindqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindqite/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lindqite/errors.hpp"

namespace lindqite {
namespace {

constexpr cplx kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

cplx i_pow(int k) { return kIPowers[((k % 4) + 4) % 4]; }

void check_qubits(int n) {
  if (n < 1 || n > kMaxPauliQubits) {
    throw SizeError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxPauliQubits) + "]");
  }
}

std::uint64_t full_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  check_qubits(n_qubits);
  if (((x_mask | z_mask) & ~full_mask(n_qubits)) != 0) {
    throw SizeError("Pauli masks exceed " + std::to_string(n_qubits) + " qubits");
  }
}

PauliString PauliString::single(int n_qubits, int qubit, char op) {
  if (qubit < 0 || qubit >= n_qubits) throw SizeError("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (op) {
    case 'I':
      return PauliString(n_qubits, 0, 0);
    case 'X':
      return PauliString(n_qubits, bit, 0);
    case 'Y':
      return PauliString(n_qubits, bit, bit);
    case 'Z':
      return PauliString(n_qubits, 0, bit);
    default:
      throw ConfigError(std::string("unknown Pauli operator '") + op + "'");
  }
}

PauliString PauliString::parse(std::string_view text) {
  const int n = static_cast<int>(text.size());
  if (n == 0) throw ConfigError("empty Pauli string");
  if (n > kMaxPauliQubits) throw ConfigError("Pauli string too long");
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int k = 0; k < n; ++k) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[n - 1 - k])));
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (c) {
      case 'I':
        break;
      case 'X':
        x |= bit;
        break;
      case 'Y':
        x |= bit;
        z |= bit;
        break;
      case 'Z':
        z |= bit;
        break;
      default:
        throw ConfigError("invalid character in Pauli string \"" + std::string(text) + "\"");
    }
  }
  return PauliString(n, x, z);
}

int PauliString::weight() const { return std::popcount(x_ | z_); }
int PauliString::y_count() const { return std::popcount(x_ & z_); }

char PauliString::op_at(int qubit) const {
  const bool xb = (x_ >> qubit) & 1;
  const bool zb = (z_ >> qubit) & 1;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string PauliString::to_string() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) s[n_qubits_ - 1 - q] = op_at(q);
  return s;
}

cplx PauliString::canonical_phase() const { return i_pow(y_count()); }

std::pair<cplx, PauliString> multiply(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) throw SizeError("multiply: qubit counts differ");
  const PauliString r(p.n_qubits(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask());
  // Z^zp X^xq = (-1)^|zp & xq| X^xq Z^zp; the canonical phases of p, q, r
  // account for the remaining powers of i.
  const int k = p.y_count() + q.y_count() - r.y_count() + 2 * std::popcount(p.z_mask() & q.x_mask());
  return {i_pow(k), r};
}

void apply_string(const PauliString& p, std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  if (in.size() != dim || out.size() != dim) throw SizeError("apply_string: dimension mismatch");
  kernels::active().apply_pauli(p.masks(), in, out);
}

Eigen::MatrixXcd to_dense(const PauliString& p) {
  if (p.n_qubits() > 12) throw SizeError("to_dense: register too large");
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const cplx phase = p.canonical_phase();
  for (std::size_t c = 0; c < dim; ++c) {
    const double sign = (std::popcount(c & p.z_mask()) & 1) ? -1.0 : 1.0;
    m(c ^ p.x_mask(), c) = phase * sign;
  }
  return m;
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits), terms_(std::move(terms)) {
  check_qubits(n_qubits);
  for (const auto& t : terms_) {
    if (t.string.n_qubits() != n_qubits) throw SizeError("PauliSum: term qubit count mismatch");
  }
  normalize();
}

PauliSum::PauliSum(cplx coeff, const PauliString& s) : n_qubits_(s.n_qubits()), terms_{{coeff, s}} { normalize(); }

void PauliSum::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coeff) < kDropThreshold; });
  terms_ = std::move(merged);
}

cplx PauliSum::coeff(const PauliString& s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const PauliTerm& t, const PauliString& key) { return t.string < key; });
  if (it != terms_.end() && it->string == s) return it->coeff;
  return 0.0;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
}

double PauliSum::one_norm() const {
  double acc = 0.0;
  for (const auto& t : terms_) acc += std::abs(t.coeff);
  return acc;
}

std::string PauliSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative_real = t.coeff.imag() == 0.0 && std::signbit(t.coeff.real());
    if (!first) {
      os << (negative_real ? " - " : " + ");
    } else if (negative_real) {
      os << '-';
    }
    first = false;
    if (t.coeff.imag() == 0.0) {
      os << std::abs(t.coeff.real());
    } else {
      os << '(' << t.coeff.real() << ',' << t.coeff.imag() << ')';
    }
    os << '*' << t.string.to_string();
  }
  return os.str();
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (n_qubits_ == 0) n_qubits_ = other.n_qubits_;
  if (other.n_qubits_ != 0 && other.n_qubits_ != n_qubits_) throw SizeError("PauliSum +: qubit counts differ");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) { return *this += other * cplx(-1.0); }

PauliSum& PauliSum::operator*=(cplx scale) {
  for (auto& t : terms_) t.coeff *= scale;
  normalize();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_) throw SizeError("PauliSum *: qubit counts differ");
  std::vector<PauliTerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      auto [phase, r] = multiply(ta.string, tb.string);
      out.push_back({phase * ta.coeff * tb.coeff, r});
    }
  }
  PauliSum result(a.n_qubits_);
  result.terms_ = std::move(out);
  result.normalize();
  return result;
}

bool operator==(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].string != b.terms_[k].string || a.terms_[k].coeff != b.terms_[k].coeff) return false;
  }
  return true;
}

PauliSum transform(const PauliSum& s, Transform mode) {
  std::vector<PauliTerm> out(s.terms().begin(), s.terms().end());
  for (auto& t : out) {
    // X, Z are real symmetric; Y is imaginary antisymmetric.
    const double y_sign = (t.string.y_count() & 1) ? -1.0 : 1.0;
    switch (mode) {
      case Transform::kConjugate:
        t.coeff = std::conj(t.coeff) * y_sign;
        break;
      case Transform::kTranspose:
        t.coeff *= y_sign;
        break;
      case Transform::kAdjoint:
        t.coeff = std::conj(t.coeff);
        break;
    }
  }
  return PauliSum(s.n_qubits(), std::move(out));
}

PauliSum tensor(const PauliSum& left, const PauliSum& right) {
  const int nl = left.n_qubits();
  const int nr = right.n_qubits();
  check_qubits(nl + nr);
  std::vector<PauliTerm> out;
  out.reserve(left.size() * right.size());
  for (const auto& tl : left.terms()) {
    for (const auto& tr : right.terms()) {
      out.push_back({tl.coeff * tr.coeff,
                     PauliString(nl + nr, (tl.string.x_mask() << nr) | tr.string.x_mask(),
                                 (tl.string.z_mask() << nr) | tr.string.z_mask())});
    }
  }
  return PauliSum(nl + nr, std::move(out));
}

PauliSum embed_low(const PauliSum& s, int n_total) {
  if (n_total < s.n_qubits()) throw SizeError("embed_low: target register smaller than operator");
  if (n_total == s.n_qubits()) return s;
  return tensor(PauliSum::identity(n_total - s.n_qubits()), s);
}

Eigen::MatrixXcd to_dense(const PauliSum& s) {
  if (s.n_qubits() > 12) throw SizeError("to_dense: register too large");
  const std::size_t dim = std::size_t{1} << s.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : s.terms()) m += t.coeff * to_dense(t.string);
  return m;
}

PauliSum sigma_minus(int n_qubits, int qubit) {
  return PauliSum(n_qubits, {{0.5, PauliString::single(n_qubits, qubit, 'X')},
                             {cplx(0.0, 0.5), PauliString::single(n_qubits, qubit, 'Y')}});
}

PauliSum sigma_plus(int n_qubits, int qubit) { return adjoint(sigma_minus(n_qubits, qubit)); }

std::vector<PauliString> all_strings(int n_qubits) {
  check_qubits(n_qubits);
  if (n_qubits > 8) throw SizeError("all_strings: register too large");
  std::vector<PauliString> out;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  out.reserve(dim * dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) out.emplace_back(n_qubits, x, z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text form: term (('+'|'-') term)*, term := [coeff '*'] STRING,
// coeff := number | '(' number ',' number ')'.

namespace {

class SumParser {
 public:
  explicit SumParser(std::string_view text) : text_(text) {}

  PauliSum parse() {
    std::vector<PauliTerm> terms;
    int n = -1;
    skip_ws();
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = take() == '-' ? -1.0 : 1.0;
    }
    while (true) {
      PauliTerm t = term();
      t.coeff *= sign;
      if (n < 0) n = t.string.n_qubits();
      if (t.string.n_qubits() != n) fail("terms have different lengths");
      terms.push_back(t);
      skip_ws();
      if (pos_ >= text_.size()) break;
      const char op = take();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      sign = op == '-' ? -1.0 : 1.0;
    }
    return PauliSum(n, std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse Pauli sum \"" + std::string(text_) + "\": " + what);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }

  double number() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
                                  text_[end] == 'e' || text_[end] == 'E' ||
                                  ((text_[end] == '-' || text_[end] == '+') && end > pos_ &&
                                   (text_[end - 1] == 'e' || text_[end - 1] == 'E')) ||
                                  ((text_[end] == '-' || text_[end] == '+') && end == pos_))) {
      ++end;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, v);
    if (ec != std::errc() || ptr != text_.data() + end || end == pos_) fail("bad number");
    pos_ = end;
    return v;
  }

  PauliTerm term() {
    skip_ws();
    cplx coeff = 1.0;
    bool have_coeff = false;
    if (peek() == '(') {
      take();
      const double re = number();
      skip_ws();
      if (take() != ',') fail("expected ',' in complex coefficient");
      const double im = number();
      skip_ws();
      if (take() != ')') fail("expected ')'");
      coeff = {re, im};
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      coeff = number();
      have_coeff = true;
    }
    skip_ws();
    if (have_coeff) {
      if (peek() != '*') fail("expected '*' after coefficient");
      take();
      skip_ws();
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a Pauli string");
    return {coeff, PauliString::parse(text_.substr(start, pos_ - start))};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PauliSum PauliSum::parse(std::string_view text) { return SumParser(text).parse(); }

}  // namespace lindqite
