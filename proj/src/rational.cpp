#include "hshadow/rational.hpp"

#include "hshadow/errors.hpp"

#include <cctype>

namespace hshadow {

std::string to_string(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ValidationError("empty rational literal");

    auto is_int = [](std::string_view v) {
        std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
        if (i >= v.size()) return false;
        for (; i < v.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) throw ValidationError("malformed rational '" + s + "'");
        Integer d(strip_plus(den));
        if (d == 0) throw ValidationError("zero denominator in '" + s + "'");
        Rational q(Integer(strip_plus(num)), d);
        q.canonicalize();
        return q;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        std::string digits = (whole.empty() || whole == "-" || whole == "+") ? std::string("0") : strip_plus(whole);
        if (!is_int(digits) || (!frac.empty() && !is_int(frac)) || frac.find_first_of("+-") != std::string::npos)
            throw ValidationError("malformed decimal '" + s + "'");
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Integer w(digits);
        if (w < 0) w = -w;
        Integer f = frac.empty() ? Integer(0) : Integer(frac);
        Rational q(w * scale + f, scale);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }
    if (!is_int(s)) throw ValidationError("malformed rational '" + s + "'");
    return Rational(Integer(strip_plus(s)));
}

double to_double(const Rational& q) { return q.get_d(); }

PointD to_double(const PointQ& p) {
    PointD out;
    out.reserve(p.size());
    for (const auto& x : p) out.push_back(x.get_d());
    return out;
}

Rational squared_distance(const PointQ& a, const PointQ& b) {
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace hshadow
