#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>

#include "webometer/date.hpp"

namespace webometer::backend {

struct QuotaLimits {
    std::uint64_t daily_limit = 10'000;
    std::size_t per_query_result_cap = 1'000;
    std::size_t page_size_max = 10;
};

struct QuotaState {
    Date day_key;
    std::uint64_t used = 0;
    QuotaLimits limits;

    bool operator==(const QuotaState&) const = default;
};

// Rolls the day forward (resetting `used`) when `now` differs from the
// state's day, then commits `units` if they fit. On QuotaError nothing is
// charged and the input state is untouched.
QuotaState charge_quota(const QuotaState& state, Date now, std::uint64_t units);

std::uint64_t remaining(const QuotaState& state, Date now);

// Serialized holder of the daily quota, optionally persisted as
// {"day": "YYYY-MM-DD", "used": N}.
class QuotaLedger {
public:
    explicit QuotaLedger(QuotaLimits limits = {},
                         std::optional<std::filesystem::path> state_file = std::nullopt);

    void charge(Date now, std::uint64_t units = 1);
    std::uint64_t remaining(Date now) const;
    QuotaState snapshot() const;
    const QuotaLimits& limits() const noexcept { return limits_; }

private:
    void persist(const QuotaState& state) const;

    QuotaLimits limits_;
    std::optional<std::filesystem::path> state_file_;
    mutable std::mutex mutex_;
    QuotaState state_;
};

}  // namespace webometer::backend
