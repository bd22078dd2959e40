#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cubic/binform.hpp"
#include "cubic/field.hpp"

namespace cubic {

// Closed points of P^1 up to a degree bound, in canonical order, with their
// residue fields F_q[t]/(pi) built on first use.
class PointCatalog {
public:
    PointCatalog(const Field& base, int max_degree);
    PointCatalog(const PointCatalog&) = delete;
    PointCatalog& operator=(const PointCatalog&) = delete;

    const Field& base() const { return base_; }
    int max_degree() const { return max_degree_; }
    std::size_t size() const { return points_.size(); }
    const ClosedPoint& point(std::size_t i) const { return points_[i]; }
    int degree(std::size_t i) const { return points_[i].degree(); }
    const std::vector<std::size_t>& of_degree(int d) const { return by_degree_.at(d); }
    std::optional<std::size_t> find(const ClosedPoint& p) const;
    const IrreducibleTable& irreducibles() const { return table_; }

    // Residue field; degree-1 points share the base field.
    const Field& residue_field(std::size_t i) const;
    // Number of fiber points over point i: q^deg + 1.
    std::uint32_t fiber_size(std::size_t i) const { return residue_field(i).order() + 1; }
    // Class of the local coordinate in the residue field: t for finite points
    // (the root for degree one), and 0 for infinity where forms are read as f(1, u).
    Elem coordinate_class(std::size_t i) const;
    // Reduces a form modulo the point: the value in the residue field.
    Elem reduce(std::size_t i, const BinForm& f) const;
    // Local polynomial of f at point i: f(t,1) or f(1,u).
    Poly local(std::size_t i, const BinForm& f) const;
    // Uniformizer polynomial in the local variable: pi(t), or u at infinity.
    const Poly& uniformizer(std::size_t i) const { return uniformizers_[i]; }

private:
    Field base_;
    int max_degree_;
    IrreducibleTable table_;
    std::vector<ClosedPoint> points_;
    std::vector<std::vector<std::size_t>> by_degree_;
    std::vector<Poly> uniformizers_;
    std::map<Poly, std::size_t> finite_index_;
    std::size_t infinity_index_ = 0;
    mutable std::vector<std::unique_ptr<Field>> fields_;
    mutable std::vector<std::unique_ptr<std::once_flag>> once_;
    std::vector<Elem> coordinate_;
};

std::vector<ClosedPoint> enumerate_closed_points(const Field& F, int max_degree);

// Reduced effective divisor as a sorted list of catalog indices.
struct Divisor {
    std::vector<std::size_t> points;
    bool operator==(const Divisor&) const = default;
};

int divisor_degree(const PointCatalog& cat, const Divisor& D);
int omega(const Divisor& D);
int mobius(const Divisor& D);
BinForm divisor_form(const Field& F, const PointCatalog& cat, const Divisor& D);

std::vector<Divisor> enumerate_divisors(const PointCatalog& cat, int degree);
// All sub-divisors of D (subsets), in lexicographic order of inclusion masks.
std::vector<Divisor> sub_divisors(const Divisor& D);

// Fiber point index j over P: j < |k(P)| is (a_j : 1) with a_j the element of code j,
// and j = |k(P)| is (1 : 0).
using FiberIndex = std::uint32_t;
ProjPoint fiber_point(const Field& K, FiberIndex j);
FiberIndex fiber_index(const Field& K, const ProjPoint& p);

struct Marking {
    std::vector<FiberIndex> fiber;  // parallel to the divisor's points
    bool operator==(const Marking&) const = default;
};

std::vector<Marking> enumerate_markings(const PointCatalog& cat, const Divisor& D);
std::uint64_t marking_count(const PointCatalog& cat, const Divisor& D);

// (q^(d+1) - 1)/(q - 1)
std::uint64_t effective_divisor_count(std::uint64_t q, int d);

}  // namespace cubic
