#include "srst/lattice.hpp"

#include "srst/galois.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

namespace srst {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
    // den > 0
    std::int64_t q = num / den, r = num % den;
    return (r != 0 && num < 0) ? q - 1 : q;
}

/// Nearest integer to num/den (den > 0); ties round down ("prefer smaller").
std::int64_t round_frac(std::int64_t num, std::int64_t den) {
    return floor_div(2 * num + den - 1, 2 * den);
}

/// Nearest integer to x; ties round down.
double round_down_ties(double x) { return std::ceil(x - 0.5); }

std::uint64_t pack_key(LPoint z) {
    return (std::uint64_t(std::uint32_t(std::int32_t(z.a))) << 32) ^
           std::uint64_t(std::uint32_t(std::int32_t(z.b)));
}

struct Wide {
    __int128 a = 0, b = 0;
    bool zero() const { return a == 0 && b == 0; }
};

Wide wide_from(LPoint z) { return {z.a, z.b}; }

Wide wide_mul(LatticeKind kind, Wide x, Wide y) {
    if (kind == LatticeKind::Gaussian) return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    // (a + b w)(c + d w) with w^2 = -1 - w
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
}

Wide wide_sub(Wide x, Wide y) { return {x.a - y.a, x.b - y.b}; }

Wide wide_conj(LatticeKind kind, Wide x) {
    if (kind == LatticeKind::Gaussian) return {x.a, -x.b};
    return {x.a - x.b, -x.b};
}

__int128 wide_norm(LatticeKind kind, Wide x) {
    if (kind == LatticeKind::Gaussian) return x.a * x.a + x.b * x.b;
    return x.a * x.a - x.a * x.b + x.b * x.b;
}

/// Exact division in Z[i] / Z[omega]; quotient must be integral.
Wide wide_div(LatticeKind kind, Wide num, Wide den) {
    Wide t = wide_mul(kind, num, wide_conj(kind, den));
    __int128 n = wide_norm(kind, den);
    assert(n != 0);
    assert(t.a % n == 0 && t.b % n == 0);
    return {t.a / n, t.b / n};
}

}  // namespace

std::complex<double> to_complex(LatticeKind kind, LPoint z) {
    if (kind == LatticeKind::Gaussian) return {double(z.a), double(z.b)};
    return {double(z.a) - 0.5 * double(z.b), (kSqrt3 / 2.0) * double(z.b)};
}

LPoint lat_add(LatticeKind, LPoint x, LPoint y) { return {x.a + y.a, x.b + y.b}; }
LPoint lat_sub(LatticeKind, LPoint x, LPoint y) { return {x.a - y.a, x.b - y.b}; }

LPoint lat_mul(LatticeKind kind, LPoint x, LPoint y) {
    if (kind == LatticeKind::Gaussian) return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
}

LPoint lat_conj(LatticeKind kind, LPoint x) {
    if (kind == LatticeKind::Gaussian) return {x.a, -x.b};
    return {x.a - x.b, -x.b};
}

std::uint64_t lat_norm(LatticeKind kind, LPoint x) {
    if (kind == LatticeKind::Gaussian) return std::uint64_t(x.a * x.a + x.b * x.b);
    return std::uint64_t(x.a * x.a - x.a * x.b + x.b * x.b);
}

LPoint quantize(LatticeKind kind, std::complex<double> z) {
    if (kind == LatticeKind::Gaussian) {
        return {std::int64_t(round_down_ties(z.real())), std::int64_t(round_down_ties(z.imag()))};
    }
    // Two-candidate rule: nearest points in the two rectangular sub-lattices
    // that partition the Eisenstein lattice.
    const std::int64_t r1 = std::int64_t(round_down_ties(z.real()));
    const std::int64_t r2 = std::int64_t(round_down_ties(z.imag() / kSqrt3));
    const LPoint l1{r1 + r2, 2 * r2};
    const std::int64_t s1 = std::int64_t(round_down_ties(z.real() + 0.5));
    const std::int64_t s2 = std::int64_t(round_down_ties((z.imag() - kSqrt3 / 2.0) / kSqrt3));
    const LPoint l2{s1 + s2, 2 * s2 + 1};
    const double d1 = std::norm(z - to_complex(kind, l1));
    const double d2 = std::norm(z - to_complex(kind, l2));
    if (d1 < d2) return l1;
    if (d2 < d1) return l2;
    // Tie: smaller real part (compare 2a - b), then smaller imaginary (b).
    const std::int64_t re1 = 2 * l1.a - l1.b, re2 = 2 * l2.a - l2.b;
    if (re1 != re2) return re1 < re2 ? l1 : l2;
    return l1.b <= l2.b ? l1 : l2;
}

LPoint quantize_exact(LatticeKind kind, std::int64_t x, std::int64_t y, std::int64_t den) {
    assert(den > 0);
    if (kind == LatticeKind::Gaussian) {
        return {round_frac(x, den), round_frac(y, den)};
    }
    // z = (x + y*omega)/den; Re z = (2x - y)/(2 den), Im z / sqrt(3) = y/(2 den).
    const std::int64_t r1 = round_frac(2 * x - y, 2 * den);
    const std::int64_t r2 = round_frac(y, 2 * den);
    const LPoint l1{r1 + r2, 2 * r2};
    const std::int64_t s1 = round_frac(2 * x - y + den, 2 * den);
    const std::int64_t s2 = round_frac(y - den, 2 * den);
    const LPoint l2{s1 + s2, 2 * s2 + 1};
    // |z - l|^2 compared via the numerator norms (common denominator den^2).
    const Wide zw{x, y};
    auto dist = [&](LPoint l) {
        Wide lw{l.a * den, l.b * den};
        return wide_norm(kind, wide_sub(zw, lw));
    };
    const __int128 d1 = dist(l1), d2 = dist(l2);
    if (d1 < d2) return l1;
    if (d2 < d1) return l2;
    const std::int64_t re1 = 2 * l1.a - l1.b, re2 = 2 * l2.a - l2.b;
    if (re1 != re2) return re1 < re2 ? l1 : l2;
    return l1.b <= l2.b ? l1 : l2;
}

LPoint lat_modulo(LatticeKind kind, LPoint pi, LPoint z) {
    if (pi == LPoint{0, 0}) throw Error(Errc::ZeroModulus, "modulo by zero lattice element");
    const LPoint num = lat_mul(kind, z, lat_conj(kind, pi));
    const std::int64_t den = std::int64_t(lat_norm(kind, pi));
    const LPoint q = quantize_exact(kind, num.a, num.b, den);
    return lat_sub(kind, z, lat_mul(kind, pi, q));
}

Constellation Constellation::build(LatticeKind kind, LPoint pi) {
    const std::uint64_t p = lat_norm(kind, pi);
    if (!is_prime_u64(p))
        throw Error(Errc::NotPrimeNorm, "|Pi|^2 = " + std::to_string(p) + " is not prime");
    Constellation c;
    c.kind_ = (kind == LatticeKind::Gaussian) ? Kind::GaussianMod : Kind::EisensteinMod;
    c.p_ = std::uint32_t(p);
    c.pi_ = pi;
    c.lat_.reserve(p);
    c.points_.reserve(p);
    for (std::uint32_t z = 0; z < p; ++z) {
        const LPoint pt = lat_modulo(kind, pi, LPoint{std::int64_t(z), 0});
        c.lat_.push_back(pt);
        c.points_.push_back(to_complex(kind, pt));
        const auto [it, fresh] = c.inverse_.emplace(pack_key(pt), z);
        (void)it;
        if (!fresh) throw Error(Errc::BadParams, "coset representatives are not distinct");
    }
    c.x_lo_ = c.x_hi_ = c.points_[0].real();
    c.y_lo_ = c.y_hi_ = c.points_[0].imag();
    for (const auto& z : c.points_) {
        c.x_lo_ = std::min(c.x_lo_, z.real());
        c.x_hi_ = std::max(c.x_hi_, z.real());
        c.y_lo_ = std::min(c.y_lo_, z.imag());
        c.y_hi_ = std::max(c.y_hi_, z.imag());
    }
    return c;
}

Constellation Constellation::psk(std::uint32_t p) {
    if (!is_prime_u64(p)) throw Error(Errc::NotPrimeNorm, "PSK size must be prime");
    Constellation c;
    c.kind_ = Kind::Psk;
    c.p_ = p;
    c.points_.reserve(p);
    for (std::uint32_t z = 0; z < p; ++z) {
        const double t = 2.0 * std::numbers::pi * double(z) / double(p);
        c.points_.emplace_back(std::cos(t), std::sin(t));
    }
    c.x_lo_ = c.y_lo_ = -1.0;
    c.x_hi_ = c.y_hi_ = 1.0;
    return c;
}

LatticeKind Constellation::lattice() const {
    if (kind_ == Kind::Psk) throw Error(Errc::BadParams, "PSK constellation has no lattice");
    return kind_ == Kind::GaussianMod ? LatticeKind::Gaussian : LatticeKind::Eisenstein;
}

bool Constellation::member(LPoint z) const {
    const LatticeKind kind = lattice();
    const LPoint num = lat_mul(kind, z, lat_conj(kind, pi_));
    return quantize_exact(kind, num.a, num.b, std::int64_t(p_)) == LPoint{0, 0};
}

std::int32_t Constellation::index_of(LPoint z) const {
    const auto it = inverse_.find(pack_key(z));
    return it == inverse_.end() ? -1 : std::int32_t(it->second);
}

double Constellation::energy_sum() const {
    if (kind_ == Kind::Psk) return double(p_);
    std::uint64_t s = 0;
    const LatticeKind kind = lattice();
    for (const auto& z : lat_) s += lat_norm(kind, z);
    return double(s);
}

std::string Constellation::describe() const {
    switch (kind_) {
        case Kind::GaussianMod: return std::to_string(p_) + "-Gauss.";
        case Kind::EisensteinMod: return std::to_string(p_) + "-Eis.";
        default: return std::to_string(p_) + "-PSK";
    }
}

LPoint find_prime(LatticeKind kind, std::uint64_t min_size) {
    if (min_size < 2) throw Error(Errc::BadParams, "constellation size must be at least 2");
    const std::uint64_t start = std::max(min_size, kind == LatticeKind::Gaussian ? std::uint64_t(5)
                                                                                 : std::uint64_t(7));
    const std::uint64_t residue = kind == LatticeKind::Gaussian ? 4 : 3;
    for (std::uint64_t p = start;; ++p) {
        if (p % residue != 1 || !is_prime_u64(p)) continue;
        for (std::int64_t b = 1; std::uint64_t(b) * b <= p; ++b) {
            for (std::int64_t a = b; lat_norm(kind, {a, b}) <= p; ++a) {
                if (lat_norm(kind, {a, b}) == p) return {a, b};
            }
        }
    }
}

namespace {

CircleResult enumerate_circle_gaussian(const Constellation& con, std::complex<double> c, double r) {
    CircleResult res;
    const double r2 = r * r;
    const auto i_lo = std::int64_t(std::ceil(std::max(c.real() - r, con.x_lo())));
    const auto i_hi = std::int64_t(std::floor(std::min(c.real() + r, con.x_hi())));
    const auto j_lo = std::int64_t(std::ceil(std::max(c.imag() - r, con.y_lo())));
    const auto j_hi = std::int64_t(std::floor(std::min(c.imag() + r, con.y_hi())));
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        for (std::int64_t i = i_lo; i <= i_hi; ++i) {
            ++res.visited;
            const LPoint z{i, j};
            if (std::norm(to_complex(LatticeKind::Gaussian, z) - c) > r2) continue;
            if (!con.member(z)) continue;
            res.symbols.push_back(std::uint32_t(con.index_of(z)));
        }
    }
    return res;
}

CircleResult enumerate_circle_eisenstein(const Constellation& con, std::complex<double> c, double r) {
    CircleResult res;
    const double r2 = r * r;
    const double h = kSqrt3 / 2.0;

    // Parallelogram with edges along 1 and omega+1 containing the circle.
    const std::int64_t j0 = std::int64_t(std::ceil((c.imag() - r) / h));
    const double i0 = (j0 % 2 == 0) ? std::floor(c.real() - r * kSqrt3)
                                    : std::floor(c.real() - r * kSqrt3 - 0.5) + 0.5;
    const std::int64_t jmax = std::int64_t(std::floor((c.imag() + r) / h)) - j0;
    if (jmax < 0) return res;
    const std::int64_t b_top = j0 + jmax;
    const double xi_re = i0 + 0.5 * double(jmax);
    const double right = (b_top % 2 == 0) ? std::ceil(c.real() + r * kSqrt3)
                                          : std::ceil(c.real() + r * kSqrt3 - 0.5) + 0.5;
    const std::int64_t imax = std::int64_t(std::llround(right - xi_re));
    if (imax < 0) return res;

    // Row range clamped to the constellation bounding box.
    const std::int64_t b_lo = std::max<std::int64_t>(j0, std::int64_t(std::ceil(con.y_lo() / h)));
    const std::int64_t b_hi = std::min<std::int64_t>(b_top, std::int64_t(std::floor(con.y_hi() / h)));
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
        const double x_start = i0 + 0.5 * double(b - j0);
        // x = a - b/2 so a = x + b/2; integral by construction of i0.
        const std::int64_t a_start = std::int64_t(std::llround(x_start + 0.5 * double(b)));
        const std::int64_t a_lo =
            std::max(a_start, std::int64_t(std::ceil(con.x_lo() + 0.5 * double(b))));
        const std::int64_t a_hi =
            std::min(a_start + imax, std::int64_t(std::floor(con.x_hi() + 0.5 * double(b))));
        for (std::int64_t a = a_lo; a <= a_hi; ++a) {
            ++res.visited;
            const LPoint z{a, b};
            if (std::norm(to_complex(LatticeKind::Eisenstein, z) - c) > r2) continue;
            if (!con.member(z)) continue;
            res.symbols.push_back(std::uint32_t(con.index_of(z)));
        }
    }
    return res;
}

}  // namespace

CircleResult enumerate_circle(const Constellation& con, std::complex<double> c, double r) {
    if (!(r >= 0) || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        CircleResult empty;
        return empty;
    }
    // A radius beyond the covering distance of the bounding box accepts the
    // same point set; capping it keeps the region arithmetic in range.
    const double dx = std::max(std::abs(c.real() - con.x_lo()), std::abs(c.real() - con.x_hi()));
    const double dy = std::max(std::abs(c.imag() - con.y_lo()), std::abs(c.imag() - con.y_hi()));
    const double covering = std::sqrt(dx * dx + dy * dy) + 1.0;
    r = std::min(r, covering);
    switch (con.kind()) {
        case Constellation::Kind::GaussianMod: return enumerate_circle_gaussian(con, c, r);
        case Constellation::Kind::EisensteinMod: return enumerate_circle_eisenstein(con, c, r);
        default: {
            // No lattice structure to exploit for PSK; exhaustive filter.
            CircleResult res;
            const double r2 = r * r;
            for (std::uint32_t z = 0; z < con.size(); ++z) {
                ++res.visited;
                if (std::norm(con.point(z) - c) <= r2) res.symbols.push_back(z);
            }
            return res;
        }
    }
}

std::uint32_t lat_rank(LatticeKind kind, const std::vector<LPoint>& entries, std::size_t rows,
                       std::size_t cols) {
    if (entries.size() != rows * cols) throw Error(Errc::DimensionMismatch, "lat_rank: bad entry count");
    std::vector<Wide> m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m[i] = wide_from(entries[i]);
    auto at = [&](std::size_t r, std::size_t c) -> Wide& { return m[r * cols + c]; };

    // Fraction-free (Bareiss) elimination; exact in any Euclidean domain.
    std::size_t r = 0;
    Wide prev{1, 0};
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && at(piv, c).zero()) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                const Wide num = wide_sub(wide_mul(kind, at(i, j), at(r, c)),
                                          wide_mul(kind, at(i, c), at(r, j)));
                at(i, j) = wide_div(kind, num, prev);
            }
            at(i, c) = Wide{};
        }
        prev = at(r, c);
        ++r;
    }
    return std::uint32_t(r);
}

}  // namespace srst
