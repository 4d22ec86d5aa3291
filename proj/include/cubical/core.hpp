#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubical {

// Dense vertex ids 0..n-1; every set of vertices (or of wall ids) is a bitset.
using Bits = boost::dynamic_bitset<std::uint64_t>;

inline Bits make_bits(std::size_t n, std::initializer_list<std::size_t> members = {}) {
    Bits b(n);
    for (auto m : members) b.set(m);
    return b;
}

inline std::vector<int> to_vector(const Bits& b) {
    std::vector<int> out;
    out.reserve(b.count());
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i))
        out.push_back(static_cast<int>(i));
    return out;
}

template <class F>
inline void for_each_bit(const Bits& b, F&& f) {
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i))
        f(static_cast<int>(i));
}

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed construction input: self loops, duplicate edges, bad ids, bad JSON shapes.
struct invalid_input : error {
    using error::error;
};

// Input graph is not connected.
struct disconnected_graph : error {
    using error::error;
};

// A vertex triple whose interval triple intersection is not a single point.
struct median_axiom_violation : error {
    int x, y, z;
    std::vector<int> intersection;
    median_axiom_violation(int x_, int y_, int z_, std::vector<int> inter, const std::string& msg)
        : error(msg), x(x_), y(y_), z(z_), intersection(std::move(inter)) {}
};

// A computed halfspace is not interval closed; only reachable when a
// non-median graph was built without validation.
struct convexity_violation : error {
    using error::error;
};

// An exact search exceeded its configured budget.
struct budget_exceeded : error {
    using error::error;
};

// An operation precondition does not hold (caller error, not data error).
struct precondition_violation : error {
    using error::error;
};

}  // namespace cubical
