// Copyright 2026 The Vassiliev Authors. All Rights Reserved.
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

#include "vassiliev/formal_sum.hpp"

#include <stdexcept>

namespace vassiliev {

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view s) {
  auto is_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  const auto num_text = s.substr(0, slash);
  if (!is_int(num_text)) throw std::invalid_argument("bad rational: " + std::string(s));
  using boost::multiprecision::cpp_int;
  const cpp_int num(std::string(num_text[0] == '+' ? num_text.substr(1) : num_text));
  if (slash == std::string_view::npos) return Rational(num);
  const auto den_text = s.substr(slash + 1);
  if (!is_int(den_text) || den_text[0] == '-' || den_text[0] == '+')
    throw std::invalid_argument("bad rational: " + std::string(s));
  const cpp_int den{std::string(den_text)};
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  return Rational(num, den);
}

}  // namespace vassiliev
