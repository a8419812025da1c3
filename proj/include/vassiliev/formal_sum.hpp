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

#pragma once

#include <map>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "vassiliev/surface.hpp"

namespace vassiliev {

using Rational = boost::multiprecision::cpp_rational;

/// "num/den", or "num" for integers.
std::string to_string(const Rational& r);
/// Accepts "num", "num/den" and "-num/den". Throws std::invalid_argument.
Rational parse_rational(std::string_view s);

namespace detail {
inline nlohmann::json coeff_to_json(const Rational& r) { return to_string(r); }
inline nlohmann::json coeff_to_json(double x) { return x; }
inline void coeff_from_json(const nlohmann::json& j, Rational& r) {
  r = j.is_string() ? parse_rational(j.get<std::string>()) : Rational(j.get<long long>());
}
inline void coeff_from_json(const nlohmann::json& j, double& x) { x = j.get<double>(); }
}  // namespace detail

/// Finite linear combination of surface diagrams. Terms are stored under
/// their canonical key; adding a diagram multiplies by its canonical sign,
/// so diagrams equal to their own negative never enter.
template <class Coeff>
class FormalSum {
 public:
  struct Term {
    SurfaceDiagram diagram;
    Coeff coeff{};
  };

  FormalSum() = default;
  explicit FormalSum(const SurfaceDiagram& d, const Coeff& c = Coeff(1)) { add(d, c); }

  void add(const SurfaceDiagram& d, const Coeff& c) {
    auto canon = canonicalize(d);
    if (canon.sign == 0 || c == Coeff(0)) return;
    add_canonical(std::move(canon.key), std::move(canon.form), canon.sign > 0 ? c : Coeff(-c));
  }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [key, t] : o.terms_) add_canonical(key, t.diagram, t.coeff);
    return *this;
  }
  FormalSum& operator-=(const FormalSum& o) {
    for (const auto& [key, t] : o.terms_) add_canonical(key, t.diagram, Coeff(-t.coeff));
    return *this;
  }
  FormalSum& operator*=(const Coeff& c) {
    if (c == Coeff(0)) terms_.clear();
    for (auto& [key, t] : terms_) t.coeff *= c;
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
  friend FormalSum operator*(const Coeff& c, FormalSum a) { return a *= c; }

  Coeff coefficient(const SurfaceDiagram& d) const {
    const auto canon = canonicalize(d);
    auto it = terms_.find(canon.key);
    if (canon.sign == 0 || it == terms_.end()) return Coeff(0);
    return canon.sign > 0 ? it->second.coeff : Coeff(-it->second.coeff);
  }

  const std::map<std::string, Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || i->second.coeff != j->second.coeff) return false;
    return true;
  }

  /// `[{"coeff": ..., "diagram": "<text>"}, ...]` in key order.
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [key, t] : terms_)
      out.push_back({{"coeff", detail::coeff_to_json(t.coeff)}, {"diagram", key}});
    return out;
  }
  static FormalSum from_json(const nlohmann::json& j) {
    FormalSum s;
    for (const auto& rec : j) {
      Coeff c{};
      detail::coeff_from_json(rec.at("coeff"), c);
      s.add(parse_surface_diagram(rec.at("diagram").get<std::string>()), c);
    }
    return s;
  }

 private:
  void add_canonical(const std::string& key, const SurfaceDiagram& form, const Coeff& c) {
    auto [it, inserted] = terms_.try_emplace(key, Term{form, Coeff(0)});
    it->second.coeff += c;
    if (it->second.coeff == Coeff(0)) terms_.erase(it);
  }

  std::map<std::string, Term> terms_;
};

using RationalSum = FormalSum<Rational>;

}  // namespace vassiliev
