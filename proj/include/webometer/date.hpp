#pragma once

#include <chrono>
#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace webometer {

// Calendar day with ISO-8601 (YYYY-MM-DD) text form.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days days) : days_(days) {}
    Date(int year, unsigned month, unsigned day);

    // Throws ParseError on anything other than a valid YYYY-MM-DD.
    static Date parse(std::string_view text);
    static Date today_utc();

    std::string iso() const;
    std::chrono::sys_days sys_days() const { return days_; }

    Date plus_days(long n) const { return Date{days_ + std::chrono::days{n}}; }
    Date next() const { return plus_days(1); }
    long days_since(Date epoch) const { return (days_ - epoch.days_).count(); }

    auto operator<=>(const Date&) const = default;

private:
    std::chrono::sys_days days_{};
};

using Clock = std::function<Date()>;

inline Clock fixed_clock(Date d) {
    return [d] { return d; };
}

inline Clock system_clock() {
    return [] { return Date::today_utc(); };
}

}  // namespace webometer
