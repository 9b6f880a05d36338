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

#include "spelab/rational.hpp"

#include <charconv>
#include <numeric>

#include "spelab/errors.hpp"

namespace spelab {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t out = 0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw InputError("malformed rational '" + std::string(whole) + "'");
    }
    return out;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    auto g = std::gcd(num, den);
    if (g == 0) g = 1;
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

std::string Rational::to_string() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    __extension__ using Wide = __int128;
    auto lhs = static_cast<Wide>(a.num_) * b.den_;
    auto rhs = static_cast<Wide>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::int64_t Value::as_integer() const
{
    if (!is_finite() || !finite_.is_integer()) {
        throw std::logic_error("value " + to_string() + " is not an integer");
    }
    return finite_.num();
}

std::string Value::to_string() const
{
    switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    case Kind::Finite: break;
    }
    return finite_.to_string();
}

Value Value::parse(std::string_view text)
{
    if (text == "inf" || text == "+inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    return Value(Rational::parse(text));
}

bool operator==(const Value& a, const Value& b)
{
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.finite_ == b.finite_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b)
{
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (!a.is_finite()) return std::strong_ordering::equal;
    return a.finite_ <=> b.finite_;
}

} // namespace spelab
