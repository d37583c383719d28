#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace protsim {

/// Bounded double-ended priority queue (Atkinson et al. min-max heap).
/// Even levels are ordered as a min-heap, odd levels as a max-heap, so both
/// extremes are available in O(1); push and pops are O(log n).
template <class T, class Less = std::less<T>>
class MinMaxHeap {
public:
    explicit MinMaxHeap(std::size_t capacity, Less less = Less{}) : capacity_(capacity), less_(std::move(less)) {
        items_.reserve(capacity);
    }

    std::size_t size() const noexcept { return items_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    bool empty() const noexcept { return items_.empty(); }
    bool full() const noexcept { return items_.size() >= capacity_; }

    const T& min() const {
        assert(!empty());
        return items_[0];
    }

    const T& max() const {
        assert(!empty());
        return items_[max_index()];
    }

    /// Caller must ensure !full().
    void push(T value) {
        assert(!full());
        items_.push_back(std::move(value));
        bubble_up(items_.size() - 1);
    }

    T pop_min() {
        assert(!empty());
        return remove_at(0);
    }

    T pop_max() {
        assert(!empty());
        return remove_at(max_index());
    }

    /// Contents in heap layout (unordered); for inspection only.
    const std::vector<T>& raw() const noexcept { return items_; }

private:
    static bool min_level(std::size_t i) noexcept {
        int level = 0;
        for (std::size_t n = i + 1; n > 1; n >>= 1) ++level;
        return level % 2 == 0;
    }
    static std::size_t parent(std::size_t i) noexcept { return (i - 1) / 2; }

    // ordering used on a level: min levels use less_, max levels the reverse
    bool before(std::size_t a, std::size_t b, bool min_side) const {
        return min_side ? less_(items_[a], items_[b]) : less_(items_[b], items_[a]);
    }

    std::size_t max_index() const noexcept {
        if (items_.size() == 1) return 0;
        if (items_.size() == 2) return 1;
        return less_(items_[1], items_[2]) ? 2 : 1;
    }

    T remove_at(std::size_t i) {
        T out = std::move(items_[i]);
        if (i + 1 == items_.size()) {
            items_.pop_back();
            return out;
        }
        items_[i] = std::move(items_.back());
        items_.pop_back();
        trickle_down(i);
        return out;
    }

    void bubble_up(std::size_t i) {
        if (i == 0) return;
        std::size_t p = parent(i);
        bool on_min = min_level(i);
        if (before(p, i, on_min)) {
            // i belongs on the opposite side of its parent
            std::swap(items_[i], items_[p]);
            bubble_up_grand(p, !on_min);
        } else {
            bubble_up_grand(i, on_min);
        }
    }

    void bubble_up_grand(std::size_t i, bool min_side) {
        while (i >= 3) {
            std::size_t g = parent(parent(i));
            if (!before(i, g, min_side)) break;
            std::swap(items_[i], items_[g]);
            i = g;
        }
    }

    void trickle_down(std::size_t i) {
        const bool min_side = min_level(i);
        const std::size_t n = items_.size();
        for (;;) {
            std::size_t first_child = 2 * i + 1;
            if (first_child >= n) return;
            // best among children and grandchildren
            std::size_t best = first_child;
            for (std::size_t c = first_child; c <= first_child + 1 && c < n; ++c) {
                if (before(c, best, min_side)) best = c;
                for (std::size_t g = 2 * c + 1; g <= 2 * c + 2 && g < n; ++g)
                    if (before(g, best, min_side)) best = g;
            }
            if (!before(best, i, min_side)) return;
            std::swap(items_[best], items_[i]);
            if (best <= first_child + 1) return;  // child: done
            std::size_t p = parent(best);
            if (before(p, best, min_side)) std::swap(items_[p], items_[best]);
            i = best;
        }
    }

    std::size_t capacity_;
    Less less_;
    std::vector<T> items_;
};

}  // namespace protsim
