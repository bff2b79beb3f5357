#include "raldpc/rational.hpp"

#include <cstddef>

namespace raldpc {

namespace {

std::int64_t parse_int(const std::string& text) {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(text, &pos);
    if (pos != text.size()) {
        throw std::invalid_argument("parse_rational: trailing characters in '" + text + "'");
    }
    return v;
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(parse_int(text), 1);
        }
        const std::int64_t num = parse_int(text.substr(0, slash));
        const std::int64_t den = parse_int(text.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("parse_rational: value out of range in '" + text + "'");
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
    }
}

} // namespace raldpc
