#ifndef CAPSTRUCT_DATES_HPP
#define CAPSTRUCT_DATES_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace capstruct {

/// Calendar date (proleptic Gregorian). Stored as year/month/day; converts
/// to a day serial (days since 1970-01-01) for arithmetic.
struct Date {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31

    auto operator<=>(const Date&) const = default;

    /// Days since 1970-01-01 (negative before).
    std::int64_t serial() const;

    /// 0 = Monday .. 6 = Sunday.
    int weekday() const;

    bool is_weekday() const { return weekday() < 5; }

    Date next_day() const;

    /// Last calendar day of this date's month.
    Date month_end() const;

    /// "YYYY-MM-DD".
    std::string iso() const;

    static Date from_serial(std::int64_t days);

    /// Parses "YYYY-MM-DD"; throws ParseError on malformed input.
    static Date parse(const std::string& text);
};

} // namespace capstruct

#endif // CAPSTRUCT_DATES_HPP
