#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cubic/curvepts.hpp"
#include "cubic/sections.hpp"

namespace cubic {

enum class Reducibility : std::uint8_t { zero = 0, x_reducible = 1, specially_reducible = 2, irreducible = 3 };

const char* reducibility_name(Reducibility r);

// Horizontally reducible sections of one space, as a bitmap over encoded indices.
// Indices below q^offset(3) have A3 = 0 and are reducible without a stored bit.
class ReducibleSet {
public:
    ReducibleSet() = default;
    ReducibleSet(const SectionSpace& V, std::uint32_t q, std::vector<std::uint8_t> bits);

    bool contains(std::uint64_t index) const { return index < x_bound_ || bits_[index]; }
    Reducibility classify(std::uint64_t index) const;
    const SectionSpace& space() const { return V_; }
    std::uint64_t size() const { return bits_.size(); }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

private:
    SectionSpace V_;
    std::uint64_t x_bound_ = 0;
    std::vector<std::uint8_t> bits_;
};

// Product work needed by mark_reducibles.
double reducible_product_work(const SectionSpace& V, std::uint32_t q);
// All L*Q with L in H0(O(1,c)), Q in H0(O(2,l-c)), k <= c <= l-2k, plus every A3 = 0 section.
ReducibleSet mark_reducibles(const Field& F, const SectionSpace& V, std::uint64_t cap);
// Per-section test: A3 = 0, or some L = C0 x + C1 y with k <= c <= l-2k divides s.
bool reducible_by_trial_division(const Field& F, const SectionSpace& V, const Section& s);
Reducibility reducibility_by_trial_division(const Field& F, const SectionSpace& V, const Section& s);

bool fibral_at(const PointCatalog& cat, const Section& s, std::size_t point);
// s in (pi, u)^2 at fiber point j over the point: value, fiber derivative and
// the pi-coefficient of the value all vanish.
bool singular_at(const PointCatalog& cat, const Section& s, std::size_t point, FiberIndex j);
// Zero, fibral at P, or singular at some relative-degree-1 point over P.
bool bad_above(const PointCatalog& cat, const Section& s, std::size_t point);
std::vector<FiberIndex> singular_fiber_points(const PointCatalog& cat, const Section& s, std::size_t point);
bool is_primitive(const Field& F, const Section& s);

struct BadWitness {
    std::size_t point = 0;
    bool fibral = false;
    std::vector<FiberIndex> singular;
};

struct SmoothReport {
    bool smooth = false;
    bool bad_everywhere = false;  // repeated horizontal component: bad above every point
    bool inseparable = false;     // char 3, A1 = A2 = 0 and A3/A0 not a cube
    std::vector<BadWitness> bad;
};

// The catalog must contain every point of degree <= max(2N, l).
SmoothReport is_smooth(const PointCatalog& cat, const SectionSpace& V, const Section& s);

struct SectionClass {
    Reducibility reducibility = Reducibility::zero;
    bool smooth = false;
    bool primitive = false;
    bool inseparable = false;
    bool bad_everywhere = false;
    std::vector<std::size_t> bad_points;
};

SectionClass classify_section(const PointCatalog& cat, const SectionSpace& V, const Section& s, Reducibility r);

enum class ConditionKind : std::uint8_t { vanish, singular_extra, fibral };

struct LinearConditionSystem {
    SectionSpace space;
    std::vector<std::vector<Elem>> rows;
    std::vector<ConditionKind> kinds;
};

LinearConditionSystem van_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D, const Marking& m);
LinearConditionSystem sing_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D, const Marking& m);
LinearConditionSystem fib_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D);
LinearConditionSystem singfib_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D,
                                     const Marking& m);
LinearConditionSystem combine(const LinearConditionSystem& a, const LinearConditionSystem& b);
LinearConditionSystem empty_system(const SectionSpace& V);

int system_rank(const Field& F, const LinearConditionSystem& sys);
std::uint64_t solution_count(const Field& F, const LinearConditionSystem& sys);
std::vector<std::vector<Elem>> nullspace_basis(const Field& F, const LinearConditionSystem& sys);
void for_each_solution(const Field& F, const LinearConditionSystem& sys, const std::function<void(std::uint64_t)>& f);
// Solutions whose encoded index is not in the reducible set.
std::uint64_t count_irreducible_solutions(const Field& F, const LinearConditionSystem& sys, const ReducibleSet& red);

enum class StandardPosition { zero_one, one_zero };

struct Standardization {
    GammaElem change;
    StandardPosition position = StandardPosition::zero_one;
    FiberIndex image = 0;
};

// A Gamma_k element moving fiber point j over the rational point to (0:1), or,
// for k >= 1 and j off the directrix x = 0, to (1:0).
Standardization standardize_marking(const PointCatalog& cat, const SectionSpace& V, std::size_t point, FiberIndex j);

struct ElmResult {
    SectionSpace target;
    Section image;
    FiberIndex target_fiber = 0;
};

SectionSpace elm_target_space(const SectionSpace& V, StandardPosition pos);
// At (0:1): requires pi | A2, pi^2 | A3; returns (pi A0, A1, A2/pi, A3/pi^2) in V(l+1, k+1).
// At (1:0): requires pi^2 | A0, pi | A1; returns (A0/pi^2, A1/pi, A2, pi A3) in V(l-2, k-1).
ElmResult elm_transform_local(const PointCatalog& cat, const SectionSpace& V, std::size_t point, StandardPosition pos,
                              const Section& s);

struct DichotomyResult {
    bool surjective = false;
    bool kernel_reducible = false;
};

DichotomyResult restriction_dichotomy(const PointCatalog& cat, const SectionSpace& V, const Divisor& D,
                                      const Marking& m, const ReducibleSet& red);

}  // namespace cubic
