#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "rmtcum/errors.hpp"

namespace rmtcum {

using Complex = std::complex<double>;

/// Joint moments or joint cumulants of a single scalar random variable and
/// its conjugate, indexed by (order, number of conjugated arguments).  Joint
/// cumulants are symmetric in their arguments, so only the conjugation count
/// matters.  In real mode the conjugation count is irrelevant and ignored.
class MomentCumulantTable {
  public:
    enum class Mode { real, complex_mode };

    MomentCumulantTable() = default;

    /// values[k-1] holds the order-k entry.
    static MomentCumulantTable real_table(std::vector<Complex> values_by_order);
    /// values keyed by (order, conjugation count); every (k, c) with
    /// 1 <= k <= order, 0 <= c <= k must be present.
    static MomentCumulantTable complex_table(int order,
                                             std::map<std::pair<int, int>, Complex> values);

    Mode mode() const { return mode_; }
    int max_order() const { return order_; }
    /// Entry at (order, conjugation count); throws CompletenessError when the
    /// requested order is not declared.
    Complex value(int order, int conj_count) const;

    bool operator==(const MomentCumulantTable&) const = default;

  private:
    Mode mode_ = Mode::real;
    int order_ = 0;
    std::map<std::pair<int, int>, Complex> values_;
};

/// Inverts the partition-sum relation between mixed moments and cumulants.
/// Round trip through the inverse reproduces the input to 1e-12 relative.
MomentCumulantTable cumulants_from_moments(const MomentCumulantTable& moments);
MomentCumulantTable moments_from_cumulants(const MomentCumulantTable& cumulants);

}  // namespace rmtcum
