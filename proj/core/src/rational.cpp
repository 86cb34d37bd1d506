// Copyright 2026 The carshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "carshare/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace carshare {

namespace {

BigInt floor_big(const Rational& x) {
  const BigInt num = numerator(x);
  const BigInt den = denominator(x);  // always positive
  BigInt q = num / den;               // truncates toward zero
  if (num < 0 && q * den != num) {
    --q;
  }
  return q;
}

std::int64_t narrow(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) {
    throw std::overflow_error("rational value out of 64-bit range");
  }
  return v.convert_to<std::int64_t>();
}

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  BigInt v = 0;
  for (char c : digits) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::int64_t floor_int(const Rational& x) { return narrow(floor_big(x)); }

std::int64_t ceil_int(const Rational& x) {
  BigInt f = floor_big(x);
  if (Rational(f) != x) {
    ++f;
  }
  return narrow(f);
}

bool is_integral(const Rational& x) { return denominator(x) == 1; }

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt p = parse_integer(body.substr(0, slash), text);
    const BigInt q = parse_integer(body.substr(slash + 1), text);
    if (q == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    value = Rational(p, q);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = body.substr(0, dot);
    const std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    const BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    const BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) {
      scale *= 10;
    }
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace carshare
