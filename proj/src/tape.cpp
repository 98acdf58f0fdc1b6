#include "tape.hpp"

#include <algorithm>

namespace lmp {

void Tape::poll_subset(std::uint64_t vertex, std::uint64_t round,
                       std::span<const std::uint32_t> neighbours, std::uint32_t k,
                       std::vector<std::uint32_t>& out) const {
    const std::uint32_t d = static_cast<std::uint32_t>(neighbours.size());
    if (k > d) fail(Errc::precondition, "subset size exceeds degree");
    out.assign(neighbours.begin(), neighbours.end());
    if (k == d) {
        std::sort(out.begin(), out.end());
        return;
    }
    const std::uint64_t state = detail::mix64(key_prefix(Purpose::subset_choice, vertex) ^
                                              (round * 0x1b03738712fad5c9ULL));
    thread_local std::vector<std::pair<std::uint64_t, std::uint32_t>> weighted;
    weighted.clear();
    weighted.reserve(d);
    for (std::uint32_t w : neighbours) {
        std::uint64_t key = w;
        if (key_map_ != nullptr && key < key_map_->size()) key = (*key_map_)[key];
        weighted.emplace_back(detail::mix64(state ^ ((key + 1) * 0x9fb21c651e98df25ULL)), w);
    }
    std::nth_element(weighted.begin(), weighted.begin() + (k - 1), weighted.end());
    out.clear();
    for (std::uint32_t i = 0; i < k; ++i) out.push_back(weighted[i].second);
    std::sort(out.begin(), out.end());
}

} // namespace lmp
