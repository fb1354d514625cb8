#include "hshadow/shadows.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hshadow {

GraphPath rose_path(const Word& w) {
    std::vector<Step> steps;
    steps.reserve(w.size());
    for (Letter l : w.letters()) steps.push_back({static_cast<std::size_t>(generator_of(l) - 1), sign_of(l)});
    return GraphPath(0, std::move(steps));
}

PolygonalShadow parametrized_shadow(const GraphPath& p, std::size_t dim) {
    PolygonalShadow s;
    LatticePoint x(dim, 0);
    s.vertices.push_back(x);
    for (const auto& st : p.steps()) {
        x.at(st.edge) += st.dir;
        s.vertices.push_back(x);
        s.segments.push_back(st);
    }
    return s;
}

PolygonalShadow parametrized_shadow(const Word& w, std::size_t rank) { return parametrized_shadow(rose_path(w), rank); }

ShadowAccumulator::ShadowAccumulator(std::size_t dim) : dim_(dim), pos_(dim, 0) {}

void ShadowAccumulator::push(Step s) {
    if (s.edge >= dim_) throw ValidationError("step outside the shadow's dimension");
    LatticeSegment seg{pos_, s.edge};
    if (s.dir < 0) seg.base[s.edge] -= 1;
    ++counts_[seg];
    pos_[s.edge] += s.dir;
    ++length_;
}

void ShadowAccumulator::push(const GraphPath& p) {
    for (const auto& s : p.steps()) push(s);
}

void ShadowAccumulator::push(const Word& w) {
    for (Letter l : w.letters()) push(Step{static_cast<std::size_t>(generator_of(l) - 1), sign_of(l)});
}

std::set<LatticePoint> ShadowAccumulator::vertices() const {
    std::set<LatticePoint> out{LatticePoint(dim_, 0)};
    for (const auto& [seg, c] : counts_) {
        out.insert(seg.base);
        LatticePoint tip = seg.base;
        tip[seg.axis] += 1;
        out.insert(tip);
    }
    return out;
}

Algebraic SegmentMeasure::total() const {
    Algebraic t(0L);
    for (const auto& [seg, m] : mass) t += m;
    return t;
}

SegmentMeasure darkness_measure(const ShadowAccumulator& acc, const LengthFunction& l, const Rational& scale) {
    if (acc.length() == 0) throw ValidationError("darkness of the empty path is undefined");
    if (l.size() != acc.dim()) throw ValidationError("length function has the wrong number of edges");
    SegmentMeasure mu;
    mu.scale = scale;
    Algebraic total(0L);
    for (const auto& [seg, c] : acc.segment_counts()) {
        Algebraic m = l[seg.axis] * Algebraic(static_cast<long>(c));
        total += m;
        mu.mass.emplace(seg, m);
    }
    Algebraic inv = total.inverse();
    for (auto& [seg, m] : mu.mass) m *= inv;
    return mu;
}

SegmentMeasure darkness_measure(const GraphPath& p, std::size_t dim, const LengthFunction& l, const Rational& scale) {
    ShadowAccumulator acc(dim);
    acc.push(p);
    return darkness_measure(acc, l, scale);
}

SegmentMeasure darkness_measure(const Word& w, std::size_t rank, const LengthFunction& l, const Rational& scale) {
    ShadowAccumulator acc(rank);
    acc.push(w);
    return darkness_measure(acc, l, scale);
}

std::vector<PointQ> HalfPointSet::points() const {
    std::vector<PointQ> out;
    for (const auto& d : doubled) {
        PointQ p;
        for (auto x : d) p.emplace_back(Rational(static_cast<long>(x), 2));
        for (auto& q : p) q.canonicalize();
        out.push_back(std::move(p));
    }
    return out;
}

HalfPointSet half_points(const ShadowAccumulator& acc) {
    HalfPointSet h;
    for (const auto& [seg, c] : acc.segment_counts()) {
        LatticePoint d = seg.base;
        for (auto& x : d) x *= 2;
        d[seg.axis] += 1;
        h.doubled.insert(std::move(d));
    }
    return h;
}

HalfPointSet half_points(const GraphPath& p, std::size_t dim) {
    ShadowAccumulator acc(dim);
    acc.push(p);
    return half_points(acc);
}

HalfPointSet half_points(const Word& w, std::size_t rank) { return half_points(rose_path(w), rank); }

HalfPointSet half_points(const GraphPath& p, std::size_t dim, const LengthFunction& l) {
    if (!l.is_unit()) throw ValidationError("half-point sets need the unit length function");
    return half_points(p, dim);
}

PointCloud shadow_point_cloud(const ShadowAccumulator& acc, unsigned samples, double scale) {
    if (samples == 0) samples = 1;
    std::set<LatticePoint> pts;
    pts.insert(LatticePoint(acc.dim(), 0));
    for (const auto& [seg, c] : acc.segment_counts()) {
        LatticePoint q = seg.base;
        for (auto& x : q) x *= samples;
        for (unsigned j = 0; j <= samples; ++j) {
            pts.insert(q);
            q[seg.axis] += 1;
        }
    }
    PointCloud out;
    out.reserve(pts.size());
    const double f = 1.0 / (samples * scale);
    for (const auto& p : pts) {
        PointD d(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) d[i] = static_cast<double>(p[i]) * f;
        out.push_back(std::move(d));
    }
    return out;
}

PointCloud to_cloud(const HalfPointSet& h, double scale) {
    PointCloud out;
    for (const auto& d : h.doubled) {
        PointD p(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) p[i] = static_cast<double>(d[i]) / (2.0 * scale);
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

inline double sq_dist(const PointD& a, const PointD& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void check_clouds(const PointCloud& x, const PointCloud& y) {
    if (x.empty() || y.empty()) throw ValidationError("Hausdorff distance of an empty set");
}

}  // namespace

double directed_hausdorff(const PointCloud& x, const PointCloud& y) {
    check_clouds(x, y);
    // scan y outward from x's lexicographic position; stop once x cannot raise the max
    PointCloud ys = y;
    std::sort(ys.begin(), ys.end());
    const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(ys.size());
    double worst = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const PointD& p = x[static_cast<std::size_t>(i)];
        std::ptrdiff_t mid = std::lower_bound(ys.begin(), ys.end(), p) - ys.begin();
        double best = std::numeric_limits<double>::infinity();
        for (std::ptrdiff_t off = 0; off <= ny; ++off) {
            std::ptrdiff_t lo = mid - off - 1, hi = mid + off;
            if (lo < 0 && hi >= ny) break;
            if (lo >= 0) best = std::min(best, sq_dist(p, ys[static_cast<std::size_t>(lo)]));
            if (hi < ny) best = std::min(best, sq_dist(p, ys[static_cast<std::size_t>(hi)]));
            if (best <= worst) break;
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double directed_hausdorff_serial(const PointCloud& x, const PointCloud& y) {
    check_clouds(x, y);
    double worst = 0.0;
    for (const auto& p : x) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : y) best = std::min(best, sq_dist(p, q));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double hausdorff_distance(const PointCloud& x, const PointCloud& y) {
    return std::max(directed_hausdorff(x, y), directed_hausdorff(y, x));
}

double hausdorff_distance_serial(const PointCloud& x, const PointCloud& y) {
    return std::max(directed_hausdorff_serial(x, y), directed_hausdorff_serial(y, x));
}

SurdSum::SurdSum(const Rational& q) : q_(q) {}

SurdSum SurdSum::sqrt_term(const Rational& c, const Rational& s) {
    if (s < 0) throw std::domain_error("square root of a negative rational");
    if (s == 0 || c == 0) return SurdSum(0);
    // sqrt(p/q) = sqrt(p q) / q, then pull square factors out of p q
    Integer n = s.get_num() * s.get_den();
    Integer outside = 1;
    for (unsigned long d = 2; d < 10000; ++d) {
        Integer dd = d * d;
        if (dd > n) break;
        while (mpz_divisible_p(n.get_mpz_t(), dd.get_mpz_t())) {
            n /= dd;
            outside *= d;
        }
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Integer r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        outside *= r;
        n = 1;
    }
    Rational coeff = c * Rational(outside, s.get_den());
    coeff.canonicalize();
    SurdSum out;
    if (n == 1)
        out.q_ = coeff;
    else
        out.terms_[n] = coeff;
    return out;
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
    q_ += o.q_;
    for (const auto& [d, c] : o.terms_) {
        Rational& slot = terms_[d];
        slot += c;
        if (slot == 0) terms_.erase(d);
    }
    return *this;
}

SurdSum& SurdSum::operator*=(const Rational& q) {
    if (q == 0) {
        q_ = 0;
        terms_.clear();
        return *this;
    }
    q_ *= q;
    for (auto& [d, c] : terms_) c *= q;
    return *this;
}

double SurdSum::to_double() const {
    double v = q_.get_d();
    for (const auto& [d, c] : terms_) v += c.get_d() * std::sqrt(d.get_d());
    return v;
}

std::string SurdSum::to_string() const {
    std::string out = hshadow::to_string(q_);
    for (const auto& [d, c] : terms_) out += " + " + hshadow::to_string(c) + "*sqrt(" + d.get_str() + ")";
    return out;
}

namespace {

// sqrt(s) >= d
bool sqrt_at_least(const Rational& s, const Rational& d) { return d <= 0 || s >= d * d; }

// Clipped parameter length of {t in [0,1] : (t - m)^2 <= s}.
SurdSum clipped_length(const Rational& m, const Rational& s) {
    if (!sqrt_at_least(s, -m) || !sqrt_at_least(s, m - 1)) return SurdSum(0);
    bool hi = sqrt_at_least(s, 1 - m);
    bool lo = sqrt_at_least(s, m);
    if (hi && lo) return SurdSum(1);
    if (hi) return SurdSum(Rational(1 - m)) + SurdSum::sqrt_term(1, s);
    if (lo) return SurdSum(m) + SurdSum::sqrt_term(1, s);
    return SurdSum::sqrt_term(2, s);
}

}  // namespace

SurdSum ball_mass(const SegmentMeasure& mu, const PointQ& center, const Rational& radius) {
    if (radius < 0) throw ValidationError("negative radius");
    const Rational& k = mu.scale;
    SurdSum total;
    for (const auto& [seg, m] : mu.mass) {
        if (!m.is_rational()) throw ValidationError("exact ball mass needs rational masses");
        if (center.size() != seg.base.size()) throw ValidationError("center has the wrong dimension");
        // in units of the unscaled lattice: |(a + t e_i) - k c|^2 <= (k r)^2
        Rational rest = 0;
        for (std::size_t j = 0; j < center.size(); ++j) {
            if (j == seg.axis) continue;
            Rational d = Rational(static_cast<long>(seg.base[j])) - k * center[j];
            rest += d * d;
        }
        Rational s = k * k * radius * radius - rest;
        if (s < 0) continue;
        Rational mid = k * center[seg.axis] - Rational(static_cast<long>(seg.base[seg.axis]));
        total += clipped_length(mid, s) * m.rational_value();
    }
    return total;
}

double ball_mass_approx(const SegmentMeasure& mu, const PointD& center, double radius) {
    const double k = mu.scale.get_d();
    double total = 0.0;
    for (const auto& [seg, m] : mu.mass) {
        double rest = 0.0;
        for (std::size_t j = 0; j < center.size(); ++j) {
            if (j == seg.axis) continue;
            double d = static_cast<double>(seg.base[j]) - k * center[j];
            rest += d * d;
        }
        double s = k * k * radius * radius - rest;
        if (s < 0) continue;
        double half = std::sqrt(s);
        double mid = k * center[seg.axis] - static_cast<double>(seg.base[seg.axis]);
        double len = std::min(1.0, mid + half) - std::max(0.0, mid - half);
        if (len > 0) total += len * m.to_double();
    }
    return total;
}

}  // namespace hshadow
