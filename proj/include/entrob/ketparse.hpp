#ifndef ENTROB_KETPARSE_HPP
#define ENTROB_KETPARSE_HPP

// Bra-ket mini-language.
//
//   expr  := ['+'|'-'] term (('+'|'-') term)*
//   term  := coeff ['*'] (ket | group) | ket | group
//            (a group may be followed by '/' coeff)
//   group := '(' expr ')'
//   coeff := atom ('/' atom)*
//   atom  := number ['i'] | 'sqrt(' number ')' | '(' number ('+'|'-') number 'i' ')'
//   ket   := '|' [01]+ '>'
//
// Whitespace is ignored. Examples: "(|000>+|111>)/sqrt(2)",
// "1/sqrt(3)(|001>+|010>+|100>)", "0.5|00> - 0.5i|11>".

#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "entrob/error.hpp"
#include "entrob/linalg.hpp"
#include "entrob/states.hpp"

namespace entrob {

namespace detail {

class KetParser {
 public:
  explicit KetParser(std::string_view text) : text_(text) {}

  CVector parse() {
    CVector v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    if (n_ < 0) fail("expression contains no ket");
    return v;
  }

  int n_qubits() const noexcept { return n_; }

 private:
  [[noreturn]] void fail(const std::string& what, ErrorKind kind = ErrorKind::SyntaxError) const {
    throw ParseError(kind, pos_, what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  bool starts_number() {
    const char c = peek();
    return (c >= '0' && c <= '9') || c == '.';
  }

  double number() {
    if (!starts_number()) fail("expected number");
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
    if (ec != std::errc() || ptr == begin) fail("expected number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  CVector zero() const { return CVector(std::size_t{1} << n_); }

  CVector expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    CVector acc = term();
    if (negate)
      for (auto& a : acc) a = -a;
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      CVector rhs = term();
      if (rhs.size() != acc.size()) fail("kets of unequal length", ErrorKind::DimensionMismatch);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += (c == '+') ? rhs[i] : -rhs[i];
    }
    return acc;
  }

  CVector term() {
    std::optional<cplx> coefficient;
    const char c = peek();
    if (starts_number() || text_.substr(pos_, 4) == "sqrt") {
      coefficient = coeff();
      accept('*');
    } else if (c == '(') {
      if (auto lit = try_complex_literal()) {
        coefficient = *lit;
        while (accept('/')) coefficient = *coefficient / atom();
        accept('*');
      }
    }

    CVector v;
    if (peek() == '|') {
      v = ket();
    } else if (peek() == '(') {
      ++pos_;
      if (++depth_ > kMaxDepth) fail("nesting too deep");
      v = expr();
      expect(')');
      --depth_;
      while (peek() == '/') {
        ++pos_;
        const cplx div = coeff();
        if (div == cplx{}) fail("division by zero");
        for (auto& a : v) a /= div;
      }
    } else {
      fail(coefficient ? "expected ket or '(' after coefficient" : "expected term");
    }
    if (coefficient)
      for (auto& a : v) a *= *coefficient;
    return v;
  }

  // '(' re ('+'|'-') im 'i' ')', restoring the position if the text is a group instead.
  std::optional<cplx> try_complex_literal() {
    const std::size_t saved = pos_;
    auto restore = [&] {
      pos_ = saved;
      return std::nullopt;
    };
    if (!accept('(')) return restore();
    bool neg_re = accept('-');
    if (!neg_re) accept('+');
    if (!starts_number()) return restore();
    double re = number();
    if (neg_re) re = -re;
    const char sign = peek();
    if (sign != '+' && sign != '-') return restore();
    ++pos_;
    if (!starts_number()) return restore();
    double im = number();
    if (peek() != 'i') return restore();
    ++pos_;
    if (!accept(')')) return restore();
    return cplx{re, sign == '-' ? -im : im};
  }

  cplx coeff() {
    cplx value = atom();
    while (peek() == '/') {
      ++pos_;
      const cplx div = atom();
      if (div == cplx{}) fail("division by zero");
      value /= div;
    }
    return value;
  }

  cplx atom() {
    if (accept_word("sqrt")) {
      expect('(');
      const double x = number();
      if (x < 0.0) fail("sqrt of negative number");
      expect(')');
      return std::sqrt(x);
    }
    if (peek() == '(') {
      if (auto lit = try_complex_literal()) return *lit;
      fail("expected coefficient");
    }
    const double x = number();
    if (peek() == 'i') {
      ++pos_;
      return {0.0, x};
    }
    return x;
  }

  CVector ket() {
    expect('|');
    const std::size_t start = pos_;
    std::size_t index = 0;
    int len = 0;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) {
      index = (index << 1) | static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
      if (++len > kMaxQubits) {
        pos_ = start;
        fail("ket longer than " + std::to_string(kMaxQubits) + " qubits", ErrorKind::SizeOutOfRange);
      }
    }
    if (len == 0) fail("empty ket");
    if (pos_ >= text_.size() || text_[pos_] != '>') fail("expected '>'");
    ++pos_;
    if (n_ < 0) n_ = len;
    if (len != n_) {
      pos_ = start;
      fail("kets of unequal length", ErrorKind::DimensionMismatch);
    }
    CVector v = zero();
    v[index] = 1.0;
    return v;
  }

  static constexpr int kMaxDepth = 256;

  std::string_view text_;
  std::size_t pos_ = 0;
  int n_ = -1;
  int depth_ = 0;
};

inline std::string format_real(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Parses a ket expression. With normalize unset the norm must already be 1
/// within 1e-9.
inline StateVector parse_ket(std::string_view text, bool normalize) {
  detail::KetParser parser(text);
  CVector v = parser.parse();
  const double nrm = norm(v);
  if (nrm == 0.0) throw ParseError(ErrorKind::ZeroVector, 0, "expression evaluates to the zero vector");
  if (!normalize && std::abs(nrm - 1.0) > 1e-9) {
    throw ParseError(ErrorKind::NotNormalized, 0, "norm is " + std::to_string(nrm));
  }
  return StateVector::normalized(parser.n_qubits(), std::move(v));
}

/// Renders psi as "a|b> + c|d> - e|f>" with 6 significant digits. Complex
/// amplitudes print as "(re+imi)|b>"; purely imaginary ones as "imi|b>".
/// Amplitudes with modulus <= tol are dropped.
inline std::string render_ket(const StateVector& psi, double tol) {
  const int n = psi.n_qubits();
  std::string out;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const cplx a = psi[i];
    if (std::abs(a) <= tol) continue;
    std::string label(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q)
      if (qubit_bit(i, q, n)) label[static_cast<std::size_t>(q)] = '1';

    const bool has_re = std::abs(a.real()) > tol;
    const bool has_im = std::abs(a.imag()) > tol;
    std::string coeff;
    bool negative = false;
    if (has_re && has_im) {
      coeff = "(" + detail::format_real(a.real()) + (a.imag() < 0 ? "-" : "+") +
              detail::format_real(std::abs(a.imag())) + "i)";
    } else if (has_im) {
      negative = a.imag() < 0;
      coeff = detail::format_real(std::abs(a.imag())) + "i";
    } else {
      negative = a.real() < 0;
      coeff = detail::format_real(std::abs(a.real()));
    }
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += coeff + "|" + label + ">";
  }
  return out.empty() ? "0" : out;
}

}  // namespace entrob

#endif  // ENTROB_KETPARSE_HPP
