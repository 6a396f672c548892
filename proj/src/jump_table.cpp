#include "wdl/jump_table.hpp"

#include "wdl/compensated.hpp"
#include "wdl/error.hpp"

namespace wdl {

JumpTable::JumpTable(Params params, std::vector<double> jumps)
    : params_(params), jumps_(std::move(jumps)) {
    if (jumps_.empty()) jumps_.push_back(0.0);
    jumps_[0] = 0.0;
    x_max_ = jumps_.size() - 1;
    prefix_.assign(jumps_.size(), 0.0);
    CompensatedSum<double> acc;
    for (std::uint64_t n = 1; n <= x_max_; ++n) {
        acc.add(jumps_[n]);
        prefix_[n] = acc.value();
    }
}

JumpTable::JumpTable(Params params, std::vector<double> jumps, std::vector<double> prefix)
    : params_(params), jumps_(std::move(jumps)), prefix_(std::move(prefix)) {
    if (jumps_.empty() || jumps_.size() != prefix_.size()) {
        throw DomainError("JumpTable: jumps and prefixes must have equal nonzero length");
    }
    x_max_ = jumps_.size() - 1;
}

}  // namespace wdl
