#ifndef SRST_LATTICE_HPP
#define SRST_LATTICE_HPP

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "srst/errors.hpp"

namespace srst {

enum class LatticeKind { Gaussian, Eisenstein };

/// Exact lattice point: a + b*i (Gaussian) or a + b*omega (Eisenstein) with
/// omega = exp(2*pi*i/3). Kept in integer coordinates so membership and
/// modulo tests are exact.
struct LPoint {
    std::int64_t a = 0;
    std::int64_t b = 0;
    bool operator==(const LPoint&) const = default;
};

std::complex<double> to_complex(LatticeKind kind, LPoint z);
LPoint lat_add(LatticeKind kind, LPoint x, LPoint y);
LPoint lat_sub(LatticeKind kind, LPoint x, LPoint y);
LPoint lat_mul(LatticeKind kind, LPoint x, LPoint y);
LPoint lat_conj(LatticeKind kind, LPoint x);
std::uint64_t lat_norm(LatticeKind kind, LPoint x);  // |x|^2

/// Nearest lattice point to an arbitrary complex number. Ties broken toward
/// the candidate with smaller real part, then smaller imaginary part.
LPoint quantize(LatticeKind kind, std::complex<double> z);

/// Q_Lambda((x + y*unit)/den) computed exactly in integer arithmetic, den > 0.
LPoint quantize_exact(LatticeKind kind, std::int64_t x, std::int64_t y, std::int64_t den);

/// mod_{Pi*Lambda}(z) = z - Pi * Q_Lambda(z/Pi); exact.
LPoint lat_modulo(LatticeKind kind, LPoint pi, LPoint z);

/**
 * Finite complex alphabet with the bijection phi: F_p -> points.
 *
 * Mod-lattice kinds take phi(z) = mod_{Pi*Lambda}(z) for z = 0..p-1 and
 * require |Pi|^2 = p prime; PSK takes phi(z) = exp(i*2*pi*z/p). Immutable.
 */
class Constellation {
  public:
    enum class Kind { GaussianMod, EisensteinMod, Psk };

    static Constellation build(LatticeKind kind, LPoint pi);
    static Constellation psk(std::uint32_t p);

    Kind kind() const { return kind_; }
    bool is_lattice() const { return kind_ != Kind::Psk; }
    LatticeKind lattice() const;
    std::uint32_t size() const { return p_; }
    LPoint pi() const { return pi_; }
    const std::vector<std::complex<double>>& points() const { return points_; }
    const std::vector<LPoint>& lattice_points() const { return lat_; }
    std::complex<double> point(std::uint32_t sym) const { return points_[sym]; }

    /// Constant-time membership test Q_Lambda(z/Pi) == 0 (lattice kinds only).
    bool member(LPoint z) const;
    /// phi^{-1} by exact coordinate lookup; -1 if z is not a constellation point.
    std::int32_t index_of(LPoint z) const;

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }

    double energy_sum() const;  // sum of |a|^2 over all points

    std::string describe() const;

  private:
    Kind kind_ = Kind::Psk;
    std::uint32_t p_ = 0;
    LPoint pi_;
    std::vector<std::complex<double>> points_;
    std::vector<LPoint> lat_;
    std::unordered_map<std::uint64_t, std::uint32_t> inverse_;
    double x_lo_ = 0, x_hi_ = 0, y_lo_ = 0, y_hi_ = 0;
};

/// Smallest admissible prime p >= min_size representable on the lattice
/// (p = 4n+1 and p = a^2+b^2 for Gaussian, p = 3n+1 and p = a^2-ab+b^2 for
/// Eisenstein), returned as Pi with |Pi|^2 = p and a >= b >= 1.
LPoint find_prime(LatticeKind kind, std::uint64_t min_size);

struct CircleResult {
    std::vector<std::uint32_t> symbols;  // constellation indices inside the circle
    std::uint64_t visited = 0;           // lattice points scanned in the clamped region
};

/**
 * All constellation points t with |t - c| <= r, found by scanning the
 * bounding rectangle (Gaussian) or parallelogram (Eisenstein) of the circle,
 * clamped to the constellation's bounding box, rejecting points outside the
 * circle and non-members. PSK constellations fall back to an exhaustive
 * filter over all p points.
 */
CircleResult enumerate_circle(const Constellation& constellation, std::complex<double> c, double r);

/// Exact rank over C of a matrix with entries in the given lattice
/// (fraction-free elimination in Z[i] or Z[omega]).
std::uint32_t lat_rank(LatticeKind kind, const std::vector<LPoint>& entries, std::size_t rows,
                       std::size_t cols);

}  // namespace srst

#endif
