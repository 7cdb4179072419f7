#include "chernband/half_int.hpp"

#include <cctype>
#include <cstdlib>

namespace chernband {

HalfInt parse_half_int(const std::string& text) {
    std::string body = text;
    bool halved = false;
    if (body.size() >= 2 && body.substr(body.size() - 2) == "/2") {
        body = body.substr(0, body.size() - 2);
        halved = true;
    }
    if (body.empty() || body == "-" || body == "+")
        throw ConfigError("invalid half-integer '" + text + "'");
    size_t k = (body[0] == '-' || body[0] == '+') ? 1 : 0;
    for (; k < body.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(body[k])))
            throw ConfigError("invalid half-integer '" + text + "' (use forms like 10 or 21/2)");
    const long n = std::strtol(body.c_str(), nullptr, 10);
    return HalfInt(static_cast<int>(halved ? n : 2 * n));
}

std::string to_string(HalfInt h) {
    if (h.is_integer()) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

}  // namespace chernband
