#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace newsaudit {

// Calendar date, totally ordered. Only valid Gregorian dates are ever
// constructed through parse_date.
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

// Strict ISO-8601 (YYYY-MM-DD). Returns nullopt for anything else,
// including syntactically valid but impossible dates (2018-02-30).
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& d);

// "YYYY-MM", the bucket key for monthly accuracy curves.
std::string month_key(const Date& d);

}  // namespace newsaudit
