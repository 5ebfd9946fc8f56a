#ifndef PLIFT_CHART_HPP
#define PLIFT_CHART_HPP

#include <memory>
#include <string>
#include <vector>

#include "plift/scalar.hpp"

namespace plift {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

// A coordinate chart. Base charts carry n variables; the tangent chart of a
// base chart carries the same n base variables followed by n fiber variables
// paired slot-wise. Base and tangent live in one ownership block, so either
// handle keeps both alive; charts are identified by pointer.
class Chart {
public:
    static ChartPtr make_base(std::string name, std::vector<std::string> vars);

    const std::string& name() const { return name_; }
    int arity() const { return static_cast<int>(vars_.size()); }
    int base_dim() const { return base_dim_; }
    bool is_tangent() const { return is_tangent_; }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::string& var_name(int i) const { return vars_.at(static_cast<size_t>(i)); }
    // -1 when the name is unknown.
    int var_index(const std::string& v) const;

    // The tangent chart of a base chart.
    ChartPtr tangent() const;
    // Base chart of a tangent chart.
    ChartPtr base() const;

    bool is_fiber_slot(int i) const { return is_tangent_ && i >= base_dim_; }

private:
    Chart() = default;
    struct Block; // { base, tangent } ownership pair, defined in chart.cpp

    std::string name_;
    std::vector<std::string> vars_;
    int base_dim_ = 0;
    bool is_tangent_ = false;
    std::weak_ptr<const void> owner_;
    const Chart* sibling_ = nullptr;
};

// Name of the fiber variable paired with a base variable.
std::string fiber_var_name(const std::string& base_var);

} // namespace plift

#endif
