#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace econet {

/// Raised when user-supplied data, files or configuration fail validation.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computation cannot produce a result on otherwise valid input
/// (singular design, undefined correlation, no percolation point, ...).
class computation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Format a double with `digits` significant digits ("%.Ng"). Used for CSV
/// report output; JSON output keeps full double precision.
std::string format_sig(double value, int digits = 6);

/// Calendar month, the time resolution of all series in this library.
/// Comparable, hashable via index(), serialized as "YYYY-MM".
struct YearMonth {
    int year = 0;
    int month = 1;  // 1..12

    auto operator<=>(const YearMonth&) const = default;

    /// Total month count since year 0; the series arithmetic base.
    int index() const { return year * 12 + (month - 1); }
    static YearMonth from_index(int idx);

    YearMonth plus_months(int m) const { return from_index(index() + m); }

    std::string str() const;
    static YearMonth parse(const std::string& text);  // "YYYY-MM"
};

/// Signed month distance b - a.
inline int months_between(YearMonth a, YearMonth b) { return b.index() - a.index(); }

}  // namespace econet
