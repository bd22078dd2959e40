#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubic/classify.hpp"
#include "cubic/rational.hpp"

namespace cubic {

// Subsets of a section space used by the root-counting functions.
enum class SectionSet { all, zero, nonzero, x_reducible, x_irreducible, specially_reducible, horizontally_reducible,
                        irreducible };

const char* section_set_name(SectionSet a);
bool in_set(SectionSet a, Reducibility r);

// R(l,k,D) = sum r_D(s) and Phi(l,k,D) = sum a_D(s) over s in the subset, by direct enumeration.
std::uint64_t root_count_sum(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                             const Divisor& D, SectionSet a);
long long adjusted_root_count_sum(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                                  const Divisor& D, SectionSet a);
// sum over D1 <= D of mu(D - D1) R(D1).
long long phi_from_r(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red, const Divisor& D,
                     SectionSet a);
// Closed form for the x-irreducible part in the range l >= deg D.
BigInt small_range_phi_xir(std::uint64_t q, const SectionSpace& V, int divisor_degree);

// Coefficients 0..max_degree of prod_{deg P <= max_degree} (1 - a_P(s) T^deg P).
std::vector<long long> local_factor_profile(const PointCatalog& cat, const Section& s, int max_degree);
// The same coefficients as sum_{deg D = d} mu(D) a_D(s), by divisor enumeration.
std::vector<long long> local_factor_profile_direct(const PointCatalog& cat, const Section& s, int max_degree);

struct ClassTallies {
    std::uint64_t zero = 0;
    std::uint64_t x_reducible = 0;  // nonzero with A3 = 0
    std::uint64_t specially_reducible = 0;
    std::uint64_t irreducible = 0;
    std::uint64_t smooth_irreducible = 0;
    std::uint64_t inseparable = 0;  // smooth irreducible with A1 = A2 = 0 in char 3
    bool operator==(const ClassTallies&) const = default;
};

struct OrbitSummary {
    std::uint64_t orbits = 0;           // separable smooth irreducible classes
    std::uint64_t c3_orbits = 0;        // separable classes with stabilizer of order 3
    std::uint64_t inseparable_orbits = 0;
    Rational inseparable_weight = 0;    // sum of 1/|Stab| over inseparable classes
    std::map<std::uint64_t, std::uint64_t> stabilizers;  // order -> number of classes
    bool operator==(const OrbitSummary&) const = default;
};

struct CensusOptions {
    std::uint64_t cap = std::uint64_t{1} << 26;
    int workers = 1;
    int profile_degree = 0;
    bool orbits = true;
};

struct SpaceCensus {
    SectionSpace space;
    std::uint32_t q = 0;
    ClassTallies tallies;
    // profile_sums[d] = sum over irreducible s of the T^d profile coefficient
    //                 = sum_{deg D = d} mu(D) Phi^ir(l,k,D).
    std::vector<long long> profile_sums;
    std::optional<OrbitSummary> orbits;
    bool operator==(const SpaceCensus&) const = default;
};

// One pass over V(l,k). The catalog must reach degree max(2N, l, profile_degree).
SpaceCensus census_space(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                         const CensusOptions& opt);
SpaceCensus census_space(const PointCatalog& cat, const SectionSpace& V, const CensusOptions& opt);

// Census of every space with N(l,k) <= n_max, profiles carried to degree n_max - N.
struct CensusTable {
    std::uint32_t q = 0;
    int n_max = 0;
    std::map<std::pair<int, int>, SpaceCensus> spaces;
};

CensusTable run_census(const PointCatalog& cat, int n_max, const CensusOptions& opt);

// Theta(N) = sum_{Par(N)} |V^{sm,ir}| / |Gamma_k|.
Rational theta_of(const CensusTable& t, int N);
// Psi(N) = sum_{N' <= N} sum_{Par(N')} profile_sums[N - N'] / |Gamma_k|.
Rational psi_of(const CensusTable& t, int N);
std::uint64_t cov3_of(const CensusTable& t, int N);
std::uint64_t c3_classes_of(const CensusTable& t, int N);
std::uint64_t inseparable_classes_of(const CensusTable& t, int N);
Rational inseparable_correction_of(const CensusTable& t, int N);

// Divisor-major Psi: sum_d sum_{deg D = d} mu(D) sum_{Par(N - d)} Phi^ir(l,k,D) / |Gamma_k|.
Rational psi_divisor_major(const PointCatalog& cat, int N, std::uint64_t cap);

struct RecurrenceCheck {
    int N = 0;
    Rational theta, rhs;
    bool holds = false;
};

// Theta(N) against Psi(N) - (q+1) Psi(N-1) + q Psi(N-2).
std::vector<RecurrenceCheck> verify_theta_psi_recurrence(const CensusTable& t);

struct ElmSumCheck {
    Rational singular_side, vanishing_side;
    bool holds = false;
};

// sum_{Par(N)} 1/|Gamma_k| sum_{markings} |Sing^ir| against
// sum_{Par(N - deg D)} 1/|Gamma_k| sum_{markings} |Van^ir|.
ElmSumCheck verify_elm_sum_identity(const PointCatalog& cat, int N, const Divisor& D, std::uint64_t cap);

struct BadSieveCheck {
    std::uint64_t direct = 0;
    long long sieve = 0;
    bool holds = false;
};

// Irreducible sections bad above every point of D, directly and through the
// Sing / SingFib / Fib triple sum.
BadSieveCheck verify_bad_sieve(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                               const Divisor& D);

// Observed implied constants |Phi^a(l,k,D)| / (3^omega(D) q^e).
struct BoundObservation {
    SectionSpace space;
    Divisor divisor;
    long long phi = 0;
    double ratio = 0;
};

std::vector<BoundObservation> observe_phi_bounds(const PointCatalog& cat, const SectionSpace& V,
                                                 const ReducibleSet& red, SectionSet a, int exponent,
                                                 int max_divisor_degree);

}  // namespace cubic
