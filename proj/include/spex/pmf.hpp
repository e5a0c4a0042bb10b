#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace spex {

/// Finitely-supported distribution on {0, 1, 2, ...}. Entries are stored
/// densely from 0; truncated mass (if any) is recorded, never dropped
/// silently.
class Pmf {
public:
    Pmf() = default;

    explicit Pmf(std::vector<double> probs, double tail = 0.0)
        : p_(std::move(probs)), tail_(tail) {
        double s = tail_;
        for (double v : p_) {
            if (v < 0.0 || !std::isfinite(v))
                throw std::invalid_argument("Pmf: negative or non-finite entry");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw std::invalid_argument("Pmf: mass does not sum to 1");
    }

    static Pmf point_mass(std::size_t k) {
        std::vector<double> p(k + 1, 0.0);
        p[k] = 1.0;
        return Pmf(std::move(p));
    }

    double operator()(std::size_t k) const { return k < p_.size() ? p_[k] : 0.0; }
    std::size_t support_end() const { return p_.size(); }  // one past the last index
    double tail_mass() const { return tail_; }

    double mean() const {
        double m = 0.0;
        for (std::size_t k = 0; k < p_.size(); ++k) m += static_cast<double>(k) * p_[k];
        return m;
    }

    const std::vector<double>& probs() const { return p_; }

private:
    std::vector<double> p_;
    double tail_ = 0.0;
};

}  // namespace spex
