#pragma once

// Exact arbitrary-precision integers and rationals used throughout the
// library. No mathematical path may use floating point. Rat is the single
// extension point if weights over a larger field than Q were ever wanted.

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringext {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Error in user-supplied input (ring specs, weight files, tables).
class SpecError : public std::runtime_error {
  public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured search/enumeration budget was exhausted.
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw SpecError("rational with zero denominator");
    Rat r(num);
    r /= Rat(den);
    return r;
}

/// Serializes "p" for integers, "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Accepts "p", "p/q", optional sign and surrounding whitespace.
inline Rat rat_from_string(std::string s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t'; };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    if (s.empty()) throw SpecError("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw SpecError("malformed rational literal: '" + s + "'");
    }
}

/// Scales a rational vector to a primitive integer vector (lcm of
/// denominators, divided by content, first nonzero entry positive).
inline std::vector<Int> primitive_integer_vector(const std::vector<Rat>& v) {
    Int lcm_den = 1;
    for (const Rat& x : v) lcm_den = lcm(lcm_den, denominator(x));
    std::vector<Int> out;
    out.reserve(v.size());
    Int content = 0;
    for (const Rat& x : v) {
        Int e = numerator(x) * (lcm_den / denominator(x));
        content = gcd(content, e);
        out.push_back(std::move(e));
    }
    if (content == 0) return out;  // zero vector
    Int sign = 1;
    for (const Int& e : out)
        if (e != 0) {
            sign = e < 0 ? -1 : 1;
            break;
        }
    for (Int& e : out) e /= sign * content;
    return out;
}

}  // namespace ringext
