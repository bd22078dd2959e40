#include "cubic/curvepts.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubic {

std::vector<ClosedPoint> enumerate_closed_points(const Field& F, int max_degree)
{
    if (max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");
    IrreducibleTable table(F, max_degree);
    std::vector<ClosedPoint> out;
    for (int d = 1; d <= max_degree; ++d) {
        for (const Poly& p : table.of_degree(d)) out.push_back(ClosedPoint{false, p});
        if (d == 1) out.push_back(ClosedPoint{true, {}});
    }
    return out;
}

PointCatalog::PointCatalog(const Field& base, int max_degree)
    : base_(base), max_degree_(max_degree), table_(base, max_degree), by_degree_(max_degree + 1)
{
    if (max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");
    for (int d = 1; d <= max_degree; ++d) {
        for (const Poly& p : table_.of_degree(d)) points_.push_back(ClosedPoint{false, p});
        if (d == 1) points_.push_back(ClosedPoint{true, {}});
    }
    fields_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) once_.push_back(std::make_unique<std::once_flag>());
    coordinate_.resize(points_.size());
    uniformizers_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const ClosedPoint& p = points_[i];
        by_degree_[p.degree()].push_back(i);
        if (p.infinite) {
            infinity_index_ = i;
            coordinate_[i] = 0;
            uniformizers_[i] = Poly{0, 1};
        } else {
            finite_index_[p.poly] = i;
            uniformizers_[i] = p.poly;
            coordinate_[i] = p.degree() == 1 ? base_.neg(p.poly[0]) : base_.order();
        }
    }
}

std::optional<std::size_t> PointCatalog::find(const ClosedPoint& p) const
{
    if (p.infinite) return infinity_index_;
    auto it = finite_index_.find(p.poly);
    if (it == finite_index_.end()) return std::nullopt;
    return it->second;
}

const Field& PointCatalog::residue_field(std::size_t i) const
{
    if (points_[i].degree() == 1) return base_;
    std::call_once(*once_[i], [&] { fields_[i] = std::make_unique<Field>(Field::extension(base_, points_[i].poly)); });
    return *fields_[i];
}

Elem PointCatalog::coordinate_class(std::size_t i) const { return coordinate_[i]; }

Poly PointCatalog::local(std::size_t i, const BinForm& f) const
{
    if (f.degree < 0) return {};
    return points_[i].infinite ? form::at_infinity(f) : form::affine(f);
}

Elem PointCatalog::reduce(std::size_t i, const BinForm& f) const
{
    if (f.degree < 0) return 0;
    const Field& K = residue_field(i);
    return poly::eval(K, local(i, f), coordinate_[i]);
}

int divisor_degree(const PointCatalog& cat, const Divisor& D)
{
    int d = 0;
    for (auto i : D.points) d += cat.degree(i);
    return d;
}

int omega(const Divisor& D) { return static_cast<int>(D.points.size()); }

int mobius(const Divisor& D) { return (D.points.size() % 2 == 0) ? 1 : -1; }

BinForm divisor_form(const Field& F, const PointCatalog& cat, const Divisor& D)
{
    BinForm f = BinForm::constant(1);
    for (auto i : D.points) f = form::mul(F, f, cat.point(i).form());
    return f;
}

namespace {

void divisors_rec(const PointCatalog& cat, std::size_t start, int remaining, std::vector<std::size_t>& cur,
                  std::vector<Divisor>& out)
{
    if (remaining == 0) {
        out.push_back(Divisor{cur});
        return;
    }
    for (std::size_t i = start; i < cat.size(); ++i) {
        int d = cat.degree(i);
        if (d > remaining) break;  // catalog is sorted by degree
        cur.push_back(i);
        divisors_rec(cat, i + 1, remaining - d, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Divisor> enumerate_divisors(const PointCatalog& cat, int degree)
{
    if (degree < 0) return {};
    if (degree > cat.max_degree()) throw std::invalid_argument("catalog too small for divisor degree");
    std::vector<Divisor> out;
    std::vector<std::size_t> cur;
    divisors_rec(cat, 0, degree, cur, out);
    return out;
}

std::vector<Divisor> sub_divisors(const Divisor& D)
{
    std::vector<Divisor> out;
    std::size_t n = D.points.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        Divisor e;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) e.points.push_back(D.points[i]);
        out.push_back(std::move(e));
    }
    return out;
}

ProjPoint fiber_point(const Field& K, FiberIndex j)
{
    if (j == K.order()) return ProjPoint{1, 0};
    return ProjPoint{j, 1};
}

FiberIndex fiber_index(const Field& K, const ProjPoint& p)
{
    if (p.y == 0) return K.order();
    return K.div(p.x, p.y);
}

std::vector<Marking> enumerate_markings(const PointCatalog& cat, const Divisor& D)
{
    std::vector<Marking> out{Marking{}};
    for (auto i : D.points) {
        std::vector<Marking> next;
        std::uint32_t n = cat.fiber_size(i);
        for (const Marking& m : out)
            for (FiberIndex j = 0; j < n; ++j) {
                Marking e = m;
                e.fiber.push_back(j);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

std::uint64_t marking_count(const PointCatalog& cat, const Divisor& D)
{
    std::uint64_t n = 1;
    for (auto i : D.points) n *= cat.fiber_size(i);
    return n;
}

std::uint64_t effective_divisor_count(std::uint64_t q, int d)
{
    std::uint64_t n = 0, term = 1;
    for (int i = 0; i <= d; ++i) {
        n += term;
        term *= q;
    }
    return n;
}

}  // namespace cubic
