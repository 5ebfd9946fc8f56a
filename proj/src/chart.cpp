#include "plift/chart.hpp"

#include <set>

namespace plift {

struct Chart::Block {
    Chart base;
    Chart tangent;
};

std::string fiber_var_name(const std::string& base_var) {
    if (!base_var.empty() && base_var[0] == 'x')
        return "y" + base_var.substr(1);
    return "d" + base_var;
}

int Chart::var_index(const std::string& v) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == v) return static_cast<int>(i);
    return -1;
}

ChartPtr Chart::tangent() const {
    if (is_tangent_) throw structural_error("chart '" + name_ + "' is already a tangent chart");
    return ChartPtr(owner_.lock(), sibling_);
}

ChartPtr Chart::base() const {
    if (!is_tangent_) throw structural_error("chart '" + name_ + "' is not a tangent chart");
    return ChartPtr(owner_.lock(), sibling_);
}

ChartPtr Chart::make_base(std::string name, std::vector<std::string> vars) {
    if (vars.empty()) throw structural_error("chart '" + name + "' needs at least one coordinate");
    std::set<std::string> seen;
    for (const auto& v : vars)
        if (!seen.insert(v).second)
            throw structural_error("duplicate coordinate name '" + v + "' on chart '" + name + "'");

    auto block = std::shared_ptr<Block>(new Block());
    Chart& base = block->base;
    Chart& tang = block->tangent;

    base.name_ = name;
    base.vars_ = vars;
    base.base_dim_ = static_cast<int>(vars.size());
    base.is_tangent_ = false;

    tang.name_ = "T " + name;
    tang.vars_ = vars;
    for (const auto& v : vars) {
        std::string fv = fiber_var_name(v);
        if (seen.count(fv))
            throw structural_error("fiber coordinate '" + fv + "' collides with a base coordinate on chart '" +
                                   name + "'");
        tang.vars_.push_back(fv);
    }
    tang.base_dim_ = static_cast<int>(vars.size());
    tang.is_tangent_ = true;

    base.owner_ = std::shared_ptr<const void>(block);
    base.sibling_ = &tang;
    tang.owner_ = std::shared_ptr<const void>(block);
    tang.sibling_ = &base;

    return ChartPtr(block, &block->base);
}

} // namespace plift
