#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubic/binform.hpp"
#include "cubic/curvepts.hpp"
#include "cubic/field.hpp"

namespace cubic {

// V(l,k): tuples (A0..A3) with deg A_i = l - i k.
struct SectionSpace {
    int ell = 0;
    int k = 0;

    int slot_degree(int i) const { return ell - i * k; }
    int slot_size(int i) const { return slot_degree(i) >= 0 ? slot_degree(i) + 1 : 0; }
    int dimension() const { return slot_size(0) + slot_size(1) + slot_size(2) + slot_size(3); }
    int offset(int i) const
    {
        int o = 0;
        for (int j = 0; j < i; ++j) o += slot_size(j);
        return o;
    }
    int degree() const { return 2 * ell - 3 * k; }
    bool operator==(const SectionSpace&) const = default;
};

struct Section {
    std::array<BinForm, 4> a;
    bool is_zero() const;
    bool operator==(const Section&) const = default;
};

class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, double required) : std::runtime_error(what), required_(required) {}
    double required() const { return required_; }

private:
    double required_;
};

// Pairs (l,k) with 2l - 3k = N and l >= 3k >= 0.
std::vector<std::pair<int, int>> par_set(int N);

// q^dim; throws CapExceeded above cap.
std::uint64_t section_count(const SectionSpace& V, std::uint32_t q, std::uint64_t cap);

Section zero_section(const SectionSpace& V);
// Coordinates: A0 coefficients (ascending t0 power), then A1, A2, A3.
std::vector<Elem> coordinates(const SectionSpace& V, const Section& s);
Section from_coordinates(const SectionSpace& V, const std::vector<Elem>& c);
std::uint64_t encode(const SectionSpace& V, std::uint32_t q, const Section& s);
Section decode(const SectionSpace& V, std::uint32_t q, std::uint64_t index);
void decode_into(const SectionSpace& V, std::uint32_t q, std::uint64_t index, Section& s);
std::uint64_t encode_coordinates(std::uint32_t q, const std::vector<Elem>& c);

// Calls f(index, section) for every section in encoding order.
void for_each_section(const SectionSpace& V, const Field& F, std::uint64_t cap,
                      const std::function<void(std::uint64_t, const Section&)>& f);

// -27 A0^2 A3^2 + 18 A0 A1 A2 A3 - 4 A0 A2^3 - 4 A1^3 A3 + A1^2 A2^2, degree 4l - 6k.
BinForm discriminant(const Field& F, const SectionSpace& V, const Section& s);

// Coefficients of s|_P in the residue field of P.
Cubic restrict_to_fiber(const PointCatalog& cat, std::size_t point, const Section& s);
std::uint64_t r_P(const PointCatalog& cat, std::size_t point, const Section& s);
long long a_P(const PointCatalog& cat, std::size_t point, const Section& s);
std::uint64_t r_D(const PointCatalog& cat, const Divisor& D, const Section& s);
long long a_D(const PointCatalog& cat, const Divisor& D, const Section& s);

// Element of Gamma_k. For k = 0 a matrix [[m0, m1], [m2, m3]] in GL2(F_q);
// for k >= 1 the matrix [[g1, 0], [n, g2]] with n a form of degree k.
struct GammaElem {
    int k = 0;
    std::array<Elem, 4> m{1, 0, 0, 1};
    Elem g1 = 1, g2 = 1;
    BinForm n = BinForm::zero(0);
    bool operator==(const GammaElem&) const = default;
};

std::uint64_t gamma_order(std::uint64_t q, int k);
GammaElem gamma_identity(int k);
GammaElem gamma_compose(const Field& F, const GammaElem& a, const GammaElem& b);
GammaElem gamma_inverse(const Field& F, const GammaElem& a);
Elem gamma_det(const Field& F, const GammaElem& a);
std::vector<GammaElem> enumerate_gamma(const Field& F, int k);
GammaElem gamma_swap();

// (g.s)(v) = det(g) s(g^{-1} v): a left action of Gamma_k on V(l,k).
// Under it Delta(g.s) = det(g)^{-2} Delta(s).
Section gamma_act(const Field& F, const SectionSpace& V, const GammaElem& g, const Section& s);
// The action as a dim x dim matrix on coordinates (column j = image of basis vector j).
std::vector<std::vector<Elem>> gamma_matrix(const Field& F, const SectionSpace& V, const GammaElem& g);
// Image of a fiber point over catalog point P; zeros of s at p go to zeros of g.s at the image.
FiberIndex gamma_map_fiber(const PointCatalog& cat, std::size_t point, const GammaElem& g, FiberIndex j);

struct OrbitInfo {
    std::uint64_t representative = 0;
    std::uint64_t size = 0;
    std::uint64_t stabilizer = 0;
};

class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Orbits of Gamma_k on the member set (bitmap over encoded indices), by flood fill.
std::vector<OrbitInfo> orbit_stabilizer(const Field& F, const SectionSpace& V, const std::vector<std::uint8_t>& member);

}  // namespace cubic
