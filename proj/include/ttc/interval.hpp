#pragma once

#include <compare>
#include <ostream>

#include "ttc/common.hpp"

namespace ttc {

/// Closed time interval [departure, arrival] of a journey.
struct Interval {
    Time departure = 0;
    Time arrival = 0;

    bool contains(const Interval& other) const noexcept {
        return departure <= other.departure && other.arrival <= arrival;
    }

    friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << '[' << iv.departure << ',' << iv.arrival << ']';
}

}  // namespace ttc
