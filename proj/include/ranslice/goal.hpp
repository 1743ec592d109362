#pragma once

#include <string>

#include "ranslice/sla.hpp"

namespace ranslice {

// Structured goal extracted from an operator intent: target KPI, improvement
// margin (absolute SI value or relative fraction) and the slice of interest.
struct GoalVector {
    IntentKind kpi = IntentKind::latency;
    SliceKind slice = SliceKind::urllc;
    bool relative = false;
    double value = 0.0;   // absolute SI target, or fraction (0.10 == 10%)
    int direction = -1;   // -1: bound/reduce downward, +1: bound/increase upward

    bool operator==(const GoalVector& o) const {
        return kpi == o.kpi && slice == o.slice && relative == o.relative &&
               value == o.value && direction == o.direction;
    }
};

// Resolved goal region: membership means the goal KPI satisfies the bound.
struct TargetRegion {
    IntentKind kpi = IntentKind::latency;
    SliceKind slice = SliceKind::urllc;
    double threshold = 0.0;  // absolute SI bound
    int direction = -1;      // -1: kpi <= threshold, +1: kpi >= threshold
    bool resolved = false;   // false until a relative margin is anchored

    bool contains(double kpi_value) const {
        return direction < 0 ? kpi_value <= threshold : kpi_value >= threshold;
    }
};

inline int default_direction(IntentKind kpi) {
    switch (kpi) {
        case IntentKind::latency:
        case IntentKind::loss:
            return -1;
        default:
            return +1;
    }
}

// Anchors a goal to an absolute region. Relative goals need the current KPI
// value; absolute goals resolve immediately.
inline TargetRegion resolve_region(const GoalVector& goal, double current_kpi_value = 0.0) {
    TargetRegion region;
    region.kpi = goal.kpi;
    region.slice = goal.slice;
    region.direction = goal.direction;
    if (!goal.relative) {
        region.threshold = goal.value;
        region.resolved = true;
    } else {
        double factor = (goal.direction > 0) ? 1.0 + goal.value : 1.0 - goal.value;
        region.threshold = current_kpi_value * factor;
        region.resolved = current_kpi_value > 0.0;
    }
    return region;
}

}  // namespace ranslice
