#pragma once

#include <functional>

#include "fw/cyclotomic.hpp"
#include "fw/field.hpp"

namespace fw {

// gamma in D_{m,r}: r+2 nonzero residues mod m summing to 0 mod m
struct ExponentTuple {
    unsigned m = 1;
    std::vector<unsigned> e; // size r+2, entries in 1..m-1

    unsigned r() const { return unsigned(e.size()) - 2; }
    void validate() const;
    bool operator==(const ExponentTuple&) const = default;
    bool operator<(const ExponentTuple& o) const { return e < o.e; }

    // entrywise t*gamma mod m; gcd(t, m) = 1
    ExponentTuple scaled(std::uint64_t t) const;
    ExponentTuple negated() const { return scaled(m - 1); }
    std::string str() const;
};

// coefficients (a_0, ..., a_{r+1}) of a diagonal hypersurface, nonzero
struct Coefficients {
    std::vector<std::uint32_t> a;
    static Coefficients ones(unsigned r) { return {std::vector<std::uint32_t>(r + 2, 1)}; }
};

// D_{m,r} in lexicographic order; streamed to the callback
void for_each_exponent_tuple(unsigned m, unsigned r, const RunConfig& cfg,
                             const std::function<void(const ExponentTuple&)>& fn);
std::vector<ExponentTuple> exponent_tuples(unsigned m, unsigned r, const RunConfig& cfg = {});

// j(gamma) by direct summation over 1 + v_1 + ... + v_{r+1} = 0, cost O(q^r)
CycInt jacobi_direct(const FieldTable& t, const ExponentTuple& g, const RunConfig& cfg = {});

// same value via the splitting recursion into 2-variable Jacobi sums; falls
// back to direct summation when a partial exponent sum degenerates
CycInt jacobi_fast(const FieldTable& t, const ExponentTuple& g, const RunConfig& cfg = {});

// alpha = (-1)^r * conj(chi)(a_0)^g0 ... conj(chi)(a_{r+1})^g_{r+1} * j(gamma)
CycInt weil_number(const FieldTable& t, const ExponentTuple& g, const Coefficients& a,
                   const RunConfig& cfg = {});

// data-parallel map of jacobi_fast over a tuple list; output order matches input
std::vector<CycInt> jacobi_map(const FieldTable& t, const std::vector<ExponentTuple>& gs,
                               const RunConfig& cfg = {});

} // namespace fw
