#pragma once

#include "bj/error.hpp"
#include "bj/series.hpp"

#include <doctest.h>

#include <filesystem>
#include <vector>

namespace testing {

/// Code of the bj::Error thrown by f; fails the test when nothing is thrown.
template <typename F>
bj::ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const bj::Error& e) {
        return e.code();
    }
    FAIL("expected a bj::Error");
    return bj::ErrorCode::InvalidConfig;
}

inline bj::TimeSeries real_series(std::vector<double> v, int start = 1) {
    return {start, std::move(v), bj::ScaleTag{bj::ScaleBase::Real, 0}};
}

inline std::filesystem::path bundled_data() {
    return std::filesystem::path(BJ_DATA_DIR) / "india_milex_1960_2019.csv";
}

}  // namespace testing
