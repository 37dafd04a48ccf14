#include "webometer/backend/quota.hpp"

#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "webometer/errors.hpp"

namespace webometer::backend {

QuotaState charge_quota(const QuotaState& state, Date now, std::uint64_t units) {
    if (units < 1) {
        throw RangeError("quota charge must be at least one unit");
    }
    QuotaState next = state;
    if (now != next.day_key) {
        next.day_key = now;
        next.used = 0;
    }
    if (units > next.limits.daily_limit || next.used > next.limits.daily_limit - units) {
        throw QuotaError(now.next(), fmt::format("daily quota of {} requests exhausted; resets {}",
                                                 next.limits.daily_limit, now.next().iso()));
    }
    next.used += units;
    return next;
}

std::uint64_t remaining(const QuotaState& state, Date now) {
    if (now != state.day_key) {
        return state.limits.daily_limit;
    }
    return state.limits.daily_limit - std::min(state.used, state.limits.daily_limit);
}

QuotaLedger::QuotaLedger(QuotaLimits limits, std::optional<std::filesystem::path> state_file)
    : limits_(limits), state_file_(std::move(state_file)) {
    state_.limits = limits_;
    if (state_file_ && std::filesystem::exists(*state_file_)) {
        std::ifstream in(*state_file_);
        try {
            auto j = nlohmann::json::parse(in);
            state_.day_key = Date::parse(j.at("day").get<std::string>());
            state_.used = std::min<std::uint64_t>(j.at("used").get<std::uint64_t>(), limits_.daily_limit);
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(0, "quota state file " + state_file_->string() + ": " + e.what());
        }
    }
}

void QuotaLedger::charge(Date now, std::uint64_t units) {
    std::lock_guard lock(mutex_);
    auto next = charge_quota(state_, now, units);
    persist(next);
    state_ = next;
}

std::uint64_t QuotaLedger::remaining(Date now) const {
    std::lock_guard lock(mutex_);
    return backend::remaining(state_, now);
}

QuotaState QuotaLedger::snapshot() const {
    std::lock_guard lock(mutex_);
    return state_;
}

void QuotaLedger::persist(const QuotaState& state) const {
    if (!state_file_) {
        return;
    }
    auto tmp = *state_file_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << nlohmann::json{{"day", state.day_key.iso()}, {"used", state.used}}.dump() << '\n';
        if (!out) {
            throw StoreError("cannot write quota state " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, *state_file_);
}

}  // namespace webometer::backend
