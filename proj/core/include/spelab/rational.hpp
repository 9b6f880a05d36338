/*
 * Copyright 2026 The spe-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace spelab {

/// Exact rational number with a positive, reduced denominator.
class Rational
{
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {} // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    /// Accepts "p/q", "-p/q" and plain integers.
    static Rational parse(std::string_view text);
    /// "p/q", or "p" when the denominator is one.
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Rational extended with -inf and +inf. Used for every cost and bound in the
/// library; reachability costs are the integer subset.
class Value
{
public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    constexpr Value() = default;
    Value(Rational r) : kind_(Kind::Finite), finite_(r) {} // NOLINT(implicit)
    Value(std::int64_t v) : kind_(Kind::Finite), finite_(v) {} // NOLINT(implicit)
    Value(int v) : Value(static_cast<std::int64_t>(v)) {} // NOLINT(implicit)

    static Value pos_inf() { Value v; v.kind_ = Kind::PosInf; return v; }
    static Value neg_inf() { Value v; v.kind_ = Kind::NegInf; return v; }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    const Rational& finite() const { return finite_; }

    /// Integer payload of a finite integral value; throws otherwise.
    std::int64_t as_integer() const;

    /// "inf", "-inf", or the rational text.
    std::string to_string() const;
    static Value parse(std::string_view text);

    friend bool operator==(const Value& a, const Value& b);
    friend std::strong_ordering operator<=>(const Value& a, const Value& b);

private:
    Kind kind_ = Kind::Finite;
    Rational finite_{};
};

inline Value min(const Value& a, const Value& b) { return b < a ? b : a; }
inline Value max(const Value& a, const Value& b) { return a < b ? b : a; }

} // namespace spelab
