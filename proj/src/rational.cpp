#include "steiner/rational.hpp"

#include <cctype>

namespace steiner {

std::string rat_str(const Rat& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string rat_decimal(const Rat& q, int digits) {
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // round half away from zero
    BigInt num = numerator(q) * scale * 2;
    BigInt den = denominator(q);
    BigInt v = num / den;
    if (v >= 0)
        v = (v + 1) / 2;
    else
        v = (v - 1) / 2;
    bool neg = v < 0;
    if (neg) v = -v;
    BigInt ip = v / scale, fp = v % scale;
    std::string frac = fp.str();
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    return (neg ? "-" : "") + ip.str() + "." + frac;
}

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto bad = [&]() { return ParseError("malformed rational literal '" + text + "'"); };
    size_t slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt p(text.substr(0, slash));
            BigInt q(text.substr(slash + 1));
            if (q == 0) throw bad();
            return Rat(p, q);
        }
        size_t dot = text.find('.');
        if (dot == std::string::npos) return Rat(BigInt(text));
        std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
        if (fp.empty()) throw bad();
        for (char c : fp)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
        bool neg = !ip.empty() && ip[0] == '-';
        if (ip.empty() || ip == "-" || ip == "+") ip += "0";
        BigInt scale = 1;
        for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
        BigInt whole(ip);
        BigInt frac(fp);
        BigInt num = whole * scale + (neg ? -frac : frac);
        return Rat(num, scale);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw bad();
    }
}

Rat round_up_at_digits(const HighFloat& x, int digits) {
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    HighFloat scaled = x * HighFloat(scale.str());
    HighFloat up = ceil(scaled);
    std::string text = up.str(0, std::ios_base::fixed);
    if (auto dot = text.find('.'); dot != std::string::npos) text.resize(dot);
    return Rat(BigInt(text), scale);
}

}  // namespace steiner
