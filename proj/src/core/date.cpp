#include "webometer/date.hpp"

#include <charconv>

#include <fmt/format.h>

#include "webometer/errors.hpp"

namespace webometer {

Date::Date(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    if (!ymd.ok()) {
        throw ParseError(fmt::format("invalid calendar date {}-{}-{}", year, month, day));
    }
    days_ = std::chrono::sys_days{ymd};
}

Date Date::parse(std::string_view text) {
    auto fail = [&] { return ParseError(fmt::format("expected YYYY-MM-DD, got '{}'", text)); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw fail();
    }
    auto field = [&](std::size_t pos, std::size_t len) {
        int value = 0;
        const char* first = text.data() + pos;
        const char* last = first + len;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw fail();
        }
        return value;
    };
    int y = field(0, 4);
    int m = field(5, 2);
    int d = field(8, 2);
    if (m < 1 || d < 1) {
        throw fail();
    }
    return Date{y, static_cast<unsigned>(m), static_cast<unsigned>(d)};
}

Date Date::today_utc() {
    return Date{std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now())};
}

std::string Date::iso() const {
    std::chrono::year_month_day ymd{days_};
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

}  // namespace webometer
