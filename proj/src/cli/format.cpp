#include "tscale/cli/format.hpp"

#include <charconv>
#include <system_error>

namespace tscale::cli {
namespace {

std::string to_text(double v, bool shortest) {
    if (v == 0.0) {
        v = 0.0;  // drop the sign of -0
    }
    char buf[64];
    const auto res = shortest ? std::to_chars(buf, buf + sizeof buf, v)
                              : std::to_chars(buf, buf + sizeof buf, v,
                                              std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string format_double(double v) { return to_text(v, false); }

std::string format_shortest(double v) { return to_text(v, true); }

std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::optional<cplx> parse_complex(std::string_view s) {
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) {
        const auto re = parse_double(s);
        return re ? std::optional<cplx>(cplx{*re, 0.0}) : std::nullopt;
    }
    const auto re = parse_double(s.substr(0, comma));
    const auto im = parse_double(s.substr(comma + 1));
    if (!re || !im) {
        return std::nullopt;
    }
    return cplx{*re, *im};
}

}  // namespace tscale::cli
