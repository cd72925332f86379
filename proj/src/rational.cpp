#include "cubepaths/rational.hpp"

#include <stdexcept>

namespace cubepaths {

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text)
{
    auto is_digits = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };

    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_digits(num, true) || !is_digits(den, false))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");

    std::string num_str(num);
    if (!num_str.empty() && num_str.front() == '+')
        num_str.erase(0, 1);
    mpz_class n(num_str, 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Coords& coords)
{
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(coords[i]);
    }
    return out + ")";
}

}  // namespace cubepaths
