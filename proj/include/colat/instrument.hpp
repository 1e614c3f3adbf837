#pragma once

#include <atomic>
#include <cstdint>

namespace colat {

// Global call counters; batch decoding asserts that no reduction happens
// after precomputation, and the CLI reports oracle call counts.
struct CounterSnapshot {
    std::uint64_t lll = 0;
    std::uint64_t bkz = 0;
    std::uint64_t hsvp = 0;
    std::uint64_t svp_enum = 0;
    std::uint64_t cvp_enum = 0;

    std::uint64_t reductions() const { return lll + bkz; }
    std::uint64_t oracle_calls() const { return hsvp + svp_enum + cvp_enum; }
};

namespace instrument {

namespace detail {
inline std::atomic<std::uint64_t>& slot(int i) {
    static std::atomic<std::uint64_t> slots[5] = {};
    return slots[i];
}
}  // namespace detail

inline void count_lll() { detail::slot(0)++; }
inline void count_bkz() { detail::slot(1)++; }
inline void count_hsvp() { detail::slot(2)++; }
inline void count_svp_enum() { detail::slot(3)++; }
inline void count_cvp_enum() { detail::slot(4)++; }

inline CounterSnapshot counters() {
    CounterSnapshot s;
    s.lll = detail::slot(0).load();
    s.bkz = detail::slot(1).load();
    s.hsvp = detail::slot(2).load();
    s.svp_enum = detail::slot(3).load();
    s.cvp_enum = detail::slot(4).load();
    return s;
}

inline void reset() {
    for (int i = 0; i < 5; ++i) detail::slot(i).store(0);
}

}  // namespace instrument
}  // namespace colat
