#include "econet/common.hpp"

#include <cmath>
#include <cstdio>

namespace econet {

std::string format_sig(double value, int digits) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

YearMonth YearMonth::from_index(int idx) {
    int y = idx / 12;
    int m = idx % 12;
    if (m < 0) {
        m += 12;
        y -= 1;
    }
    return YearMonth{y, m + 1};
}

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::parse(const std::string& text) {
    int y = 0, m = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d-%d%c", &y, &m, &extra) != 2 || m < 1 || m > 12) {
        throw validation_error("invalid time value '" + text + "' (expected YYYY-MM)");
    }
    return YearMonth{y, m};
}

}  // namespace econet
