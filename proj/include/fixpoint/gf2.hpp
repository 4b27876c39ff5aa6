#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace fixpoint {

// Dense GF(2) linear system A x = b with bit-packed rows.
class Gf2System {
public:
    explicit Gf2System(int num_vars) : n_(num_vars), words_((num_vars + 64) / 64) {}

    int num_vars() const { return n_; }

    // Adds the equation (xor of coefficient-selected vars) = rhs.
    void add_equation(const std::vector<int>& ones, bool rhs) {
        Row r;
        r.bits.assign(static_cast<std::size_t>(words_), 0);
        for (int j : ones) r.bits[static_cast<std::size_t>(j / 64)] ^= std::uint64_t{1} << (j % 64);
        r.rhs = rhs;
        rows_.push_back(std::move(r));
    }

    struct Solution {
        std::vector<std::uint8_t> values;
        int rank = 0;
        int nullity = 0;
    };

    // Gaussian elimination; returns a particular solution (free variables 0)
    // or nothing when inconsistent.
    std::optional<Solution> solve() const {
        std::vector<Row> m = rows_;
        std::vector<int> pivot_col;
        std::size_t next = 0;
        for (int col = 0; col < n_ && next < m.size(); ++col) {
            std::size_t found = m.size();
            for (std::size_t r = next; r < m.size(); ++r)
                if (m[r].get(col)) {
                    found = r;
                    break;
                }
            if (found == m.size()) continue;
            std::swap(m[next], m[found]);
            for (std::size_t r = 0; r < m.size(); ++r)
                if (r != next && m[r].get(col)) m[r].xor_with(m[next]);
            pivot_col.push_back(col);
            ++next;
        }
        for (std::size_t r = next; r < m.size(); ++r)
            if (m[r].rhs) return std::nullopt;  // 0 = 1
        Solution sol;
        sol.rank = static_cast<int>(pivot_col.size());
        sol.nullity = n_ - sol.rank;
        sol.values.assign(static_cast<std::size_t>(n_), 0);
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            sol.values[static_cast<std::size_t>(pivot_col[r])] = m[r].rhs ? 1 : 0;
        return sol;
    }

private:
    struct Row {
        std::vector<std::uint64_t> bits;
        bool rhs = false;
        bool get(int j) const { return (bits[static_cast<std::size_t>(j / 64)] >> (j % 64)) & 1u; }
        void xor_with(const Row& o) {
            for (std::size_t w = 0; w < bits.size(); ++w) bits[w] ^= o.bits[w];
            rhs = rhs != o.rhs;
        }
    };

    int n_;
    int words_;
    std::vector<Row> rows_;
};

} // namespace fixpoint
