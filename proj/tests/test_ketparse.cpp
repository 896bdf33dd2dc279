#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "entrob/ketparse.hpp"
#include "oracles.hpp"

using namespace entrob;

namespace {

double max_amp_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ErrorKind parse_error_kind(std::string_view text, bool normalize = true) {
  try {
    parse_ket(text, normalize);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::OutOfRange;
}

}  // namespace

TEST(ParseKet, GhzExpressionWithoutNormalization) {
  const auto psi = parse_ket("(|000>+|111>)/sqrt(2)", false);
  EXPECT_LE(max_amp_diff(psi, ghz(3)), 1e-15);
}

TEST(ParseKet, SingletIsNormalized) {
  const auto psi = parse_ket("|01>-|10>", true);
  EXPECT_LE(max_amp_diff(psi, named_state(NamedState::Singlet)), 1e-15);
}

TEST(ParseKet, UnequalKetLengths) { EXPECT_EQ(parse_error_kind("|0>+|11>"), ErrorKind::DimensionMismatch); }

TEST(ParseKet, NormalizationFlagRejectsUnnormalizedInput) {
  EXPECT_EQ(parse_error_kind("|0>+|1>", false), ErrorKind::NotNormalized);
  EXPECT_EQ(parse_error_kind("|0>-|0>", true), ErrorKind::ZeroVector);
}

TEST(ParseKet, CaptionStyleStates) {
  const auto w3 = parse_ket("1/sqrt(3)(|001>+|010>+|100>)", false);
  EXPECT_LE(max_amp_diff(w3, dicke(3, 1)), 1e-15);
  const auto b4 = parse_ket("1/2(|0000>+|0011>+|1100>-|1111>)", false);
  EXPECT_LE(max_amp_diff(b4, named_state(NamedState::B4)), 1e-15);
  const auto mixed = parse_ket("  sqrt(2)|0>  +  0.5 |1> ", true);
  EXPECT_NEAR(mixed[0].real() / mixed[1].real(), std::sqrt(2.0) / 0.5, 1e-14);
  const auto ratio = parse_ket("3/5|0> + 4/5|1>", false);
  EXPECT_NEAR(ratio[0].real(), 0.6, 1e-15);
}

TEST(ParseKet, LeftAssociativeSums) {
  for (const auto& [flat, grouped] : {std::pair{"|00>+|01>-|10>", "(|00>+|01>)-|10>"},
                                      std::pair{"2|0>-|1>+3|1>", "(2|0>-|1>)+3|1>"}}) {
    EXPECT_EQ(parse_ket(flat, true).amplitudes(), parse_ket(grouped, true).amplitudes());
  }
}

TEST(ParseKet, ComplexCoefficients) {
  const auto psi = parse_ket("|0> + 1i|1>", true);
  EXPECT_NEAR(psi[1].imag(), 1.0 / std::sqrt(2.0), 1e-15);
  const auto lit = parse_ket("(0.6+0.8i)|1>", false);
  EXPECT_NEAR(lit[1].real(), 0.6, 1e-15);
  EXPECT_NEAR(lit[1].imag(), 0.8, 1e-15);
}

TEST(ParseKet, SyntaxErrorsCarryPositions) {
  for (const std::string_view bad : {"", "|2>", "|01", "(|0>", "|0> +", "sqrt(|0>)", "|0>)", "|>"}) {
    try {
      parse_ket(bad, true);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), bad.size()) << bad;
    } catch (const Error& e) {
      ADD_FAILURE() << "non-parse error " << e.what() << " for " << bad;
    }
  }
  try {
    parse_ket("|01> + |1x>", true);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_EQ(e.position(), 9U);
  }
}

TEST(ParseKet, ArbitraryBytesOnlyRaiseLibraryErrors) {
  std::mt19937_64 rng(21);
  const std::string alphabet = "|01>()+-/sqrt.2345i e\t\x01\xff";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int t = 0; t < 4000; ++t) {
    std::string s;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) s.push_back(t % 2 ? alphabet[pick(rng)] : static_cast<char>(byte(rng)));
    try {
      (void)parse_ket(s, true);
    } catch (const Error&) {
    } catch (...) {
      ADD_FAILURE() << "foreign exception on input #" << t;
    }
  }
  EXPECT_THROW(parse_ket(std::string(5000, '('), true), Error);
}

TEST(RenderKet, GhzAndNegativeSign) {
  EXPECT_EQ(render_ket(ghz(2), 1e-9), "0.707107|00> + 0.707107|11>");
  const auto text = render_ket(named_state(NamedState::B4), 1e-9);
  EXPECT_NE(text.find("- 0.5|1111>"), std::string::npos) << text;
}

TEST(RenderKet, RoundTripsRandomRealStates) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    const auto psi = oracle::random_state(3, rng, true);
    const auto back = parse_ket(render_ket(psi, 1e-12), true);
    EXPECT_LE(max_amp_diff(psi, back), 1e-6) << render_ket(psi, 1e-12);
  }
}

TEST(RenderKet, ComplexAmplitudesRoundTrip) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    const auto psi = oracle::random_state(2, rng);
    const auto back = parse_ket(render_ket(psi, 1e-12), true);
    EXPECT_LE(max_amp_diff(psi, back), 1e-5) << render_ket(psi, 1e-12);
  }
}
