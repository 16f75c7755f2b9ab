#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace qaa {

// Annealing schedule s(t) over total time T: linear by default, or a
// piecewise-linear table of (t/T, s) knots with s(0)=0, s(T)=1, s nondecreasing.
struct AnnealSchedule {
    double total_time = 1.0;
    std::vector<std::pair<double, double>> knots;  // (u = t/T, s); empty = linear

    static AnnealSchedule linear(double T) { return {T, {}}; }

    static AnnealSchedule piecewise(double T, std::vector<std::pair<double, double>> k) {
        AnnealSchedule sched{T, std::move(k)};
        sched.validate();
        return sched;
    }

    void validate() const {
        if (!(total_time > 0)) throw std::invalid_argument("AnnealSchedule: T must be > 0");
        if (knots.empty()) return;
        if (knots.front() != std::pair<double, double>{0.0, 0.0} ||
            knots.back() != std::pair<double, double>{1.0, 1.0})
            throw std::invalid_argument("AnnealSchedule: knots must run (0,0) -> (1,1)");
        for (std::size_t i = 1; i < knots.size(); ++i)
            if (knots[i].first <= knots[i - 1].first || knots[i].second < knots[i - 1].second)
                throw std::invalid_argument("AnnealSchedule: knots must be strictly increasing in t and nondecreasing in s");
    }

    double s_at(double t) const {
        double u = t / total_time;
        if (u <= 0) return 0.0;
        if (u >= 1) return 1.0;
        if (knots.empty()) return u;
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (u <= knots[i].first) {
                const auto& [u0, s0] = knots[i - 1];
                const auto& [u1, s1] = knots[i];
                return s0 + (s1 - s0) * (u - u0) / (u1 - u0);
            }
        }
        return 1.0;
    }
};

}  // namespace qaa
