#include "nucent/correlated.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nucent/error.hpp"
#include "nucent/quadrature.hpp"

namespace nucent {

Correlation::Correlation(double y) : y_(y), uncorrelated_(false)
{
    if (std::isinf(y) && y > 0) {
        uncorrelated_ = true;
        y_ = 0.0;
        return;
    }
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw InvalidInput("Correlation: y must be positive");
    }
}

double Correlation::y() const
{
    return uncorrelated_ ? std::numeric_limits<double>::infinity() : y_;
}

void QuadratureSpec::validate(const Nuclide& nuclide) const
{
    if (!(r_max_multiplier > 0) || !(panel_width > 0) || panel_nodes <= 0 || legendre_order <= 0
        || legendre_order_limit < legendre_order || partial_wave_radial_nodes <= 0 || !(tolerance > 0)) {
        throw InvalidInput("QuadratureSpec: all fields must be positive");
    }
    if (legendre_order < 2 * nuclide.max_l()) {
        throw InvalidInput("QuadratureSpec: legendre_order must be at least 2 l_max of occupied shells");
    }
}

double jastrow_f(Correlation corr, double r_b)
{
    if (!(r_b >= 0.0)) {
        throw InvalidInput("jastrow_f: r_b must be non-negative");
    }
    if (corr.is_uncorrelated()) {
        return r_b > 0.0 ? 1.0 : 0.0;
    }
    return -std::expm1(-corr.y() * r_b * r_b);
}

namespace {

constexpr double pi = std::numbers::pi;

struct Vec3 {
    double x, y, z;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Polynomial part of the Slater density matrix rho0(a, b) (trace A, b0 = 1)
// once the factor exp(-(a^2 + b^2)/2) is removed. Uses the addition theorem,
// so only |a|^2, |b|^2 and a.b enter.
class SlaterPolynomial {
public:
    explicit SlaterPolynomial(const Nuclide& nuclide)
    {
        for (const auto& occ : nuclide.occupations()) {
            const Shell s = occ.shell;
            const double n2 = 2.0 * std::tgamma(s.n) / std::tgamma(s.n - 1 + s.l + 1.5);
            const double w = s.capacity() * occ.eta * n2 / (4.0 * pi);
            if (s == shell_2s) {
                w2s_ += w;
            } else {
                wl_[s.l] += w;
            }
        }
    }

    double operator()(double a2, double b2, double ab) const
    {
        double v = wl_[0] + wl_[1] * ab + wl_[2] * (1.5 * ab * ab - 0.5 * a2 * b2);
        if (w2s_ != 0.0) {
            v += w2s_ * (1.5 - a2) * (1.5 - b2);
        }
        return v;
    }

private:
    std::array<double, 3> wl_{};
    double w2s_ = 0.0;
};

// rho0(1,1') rho0(2,2) - 1/4 rho0(1,2) rho0(2,1'), polynomial part
inline double bracket(const SlaterPolynomial& p, const Vec3& r1, const Vec3& r1p, const Vec3& r2)
{
    const double a2 = dot(r1, r1);
    const double b2 = dot(r1p, r1p);
    const double c2 = dot(r2, r2);
    return p(a2, b2, dot(r1, r1p)) * p(c2, c2, c2) - 0.25 * p(a2, c2, dot(r1, r2)) * p(c2, b2, dot(r2, r1p));
}

// g = f12 f1'2 - 1 = -h12 - h1'2 + h12 h1'2, h(r) = exp(-y r^2)
struct Piece {
    double a1, a2, sign;
};
constexpr std::array<Piece, 3> pieces{{{1, 0, -1}, {0, 1, -1}, {1, 1, +1}}};

// Two-body term at (r1, r1') in b0 units, including all Gaussian factors.
// Exact for the bracket degree (<= 4 in r2) with a 3-point Hermite rule.
double two_body_point(const SlaterPolynomial& poly, double y, const Vec3& r1, const Vec3& r1p)
{
    const auto& gh = gauss_hermite(3);
    const double base = 0.5 * (dot(r1, r1) + dot(r1p, r1p));
    double total = 0.0;
    for (const auto& pc : pieces) {
        const double M = 1.0 + y * (pc.a1 + pc.a2);
        const Vec3 c{y * (pc.a1 * r1.x + pc.a2 * r1p.x) / M, y * (pc.a1 * r1.y + pc.a2 * r1p.y) / M,
                     y * (pc.a1 * r1.z + pc.a2 * r1p.z) / M};
        const double E = y * (pc.a1 * dot(r1, r1) + pc.a2 * dot(r1p, r1p)) - M * dot(c, c);
        const double inv_sqrt_m = 1.0 / std::sqrt(M);
        double sum = 0.0;
        for (std::size_t i = 0; i < gh.size(); ++i) {
            for (std::size_t j = 0; j < gh.size(); ++j) {
                for (std::size_t k = 0; k < gh.size(); ++k) {
                    const Vec3 r2{c.x + gh.nodes[i] * inv_sqrt_m, c.y + gh.nodes[j] * inv_sqrt_m,
                                  c.z + gh.nodes[k] * inv_sqrt_m};
                    sum += gh.weights[i] * gh.weights[j] * gh.weights[k] * bracket(poly, r1, r1p, r2);
                }
            }
        }
        total += pc.sign * std::exp(-base - E) * std::pow(M, -1.5) * sum;
    }
    return total;
}

constexpr int series_degree = 4;     // polynomial degree in x^2
constexpr double series_step = 1.0;  // x^2 sampling step (b0^2)
constexpr double mismatch_limit = 1e-9;

// `reference` sets the absolute floor: pieces that are tiny next to the
// one-body part (y -> inf) only need to be right at that scale.
GaussianTerm checked_term(double gamma, const std::function<double(double)>& poly, double reference,
                          const char* what)
{
    double mismatch = 0.0;
    auto term = interpolate_gaussian_term(gamma, series_degree, series_step, poly, &mismatch);
    const double tc = (series_degree + 1.5) * series_step;
    double own = 0.0;
    for (std::size_t i = 0; i < term.coef.size(); ++i) {
        own = std::max(own, std::abs(term.coef[i]) * std::pow(tc, static_cast<double>(i)));
    }
    if (own > 0.0 && own < reference) {
        mismatch *= own / reference;
    }
    if (!(mismatch < mismatch_limit)) {
        std::ostringstream msg;
        msg << what << ": cluster integral not reproduced by its Gaussian series (mismatch " << mismatch
            << ")";
        throw NumericalError(msg.str());
    }
    return term;
}

// Unnormalized diagonal rho0(r,r) + two-body term in b0 units.
GaussianSeries reduced_density(const Nuclide& nuclide, const SlaterPolynomial& poly, double y)
{
    GaussianSeries out = ho_density_series(nuclide) * static_cast<double>(nuclide.A());
    const auto& gh = gauss_hermite(3);
    // the (1,0) and (0,1) pieces coincide on the diagonal
    for (double a : {1.0, 2.0}) {
        const double sign = a == 1.0 ? -2.0 : 1.0;
        const double M = 1.0 + y * a;
        const double gamma = 1.0 + y * a / M;
        auto poly_at = [&](double t) {
            const double r = std::sqrt(t);
            const Vec3 rv{0.0, 0.0, r};
            const double cz = y * a * r / M;
            const double inv_sqrt_m = 1.0 / std::sqrt(M);
            double sum = 0.0;
            for (std::size_t i = 0; i < gh.size(); ++i) {
                for (std::size_t j = 0; j < gh.size(); ++j) {
                    for (std::size_t k = 0; k < gh.size(); ++k) {
                        const Vec3 r2{gh.nodes[i] * inv_sqrt_m, gh.nodes[j] * inv_sqrt_m,
                                      cz + gh.nodes[k] * inv_sqrt_m};
                        sum += gh.weights[i] * gh.weights[j] * gh.weights[k] * bracket(poly, rv, rv, r2);
                    }
                }
            }
            return sign * std::pow(M, -1.5) * sum;
        };
        out += GaussianSeries({checked_term(gamma, poly_at, nuclide.A(), "density")});
    }
    return out;
}

// Nodes of a 2-D Gauss-Hermite rule for exp(-(v - c)^T M (v - c)) with
// M = [[p, -q], [-q, p]]; returns (R, r2, weight) triples.
struct Node2 {
    double u, v, w;
};

std::vector<Node2> hermite_2d(double p, double q, double cu, double cv, int n)
{
    const auto& gh = gauss_hermite(n);
    const double l11 = std::sqrt(p);
    const double l21 = -q / l11;
    const double l22 = std::sqrt(p - l21 * l21);
    std::vector<Node2> out;
    out.reserve(gh.size() * gh.size());
    for (std::size_t i = 0; i < gh.size(); ++i) {
        for (std::size_t j = 0; j < gh.size(); ++j) {
            const double xi = gh.nodes[i];
            const double eta = gh.nodes[j];
            out.push_back({cu + xi / l11 - eta * l21 / (l11 * l22), cv + eta / l22,
                           gh.weights[i] * gh.weights[j]});
        }
    }
    return out;
}

// Unnormalized G(s) = int d3R rho(R + s/2, R - s/2) in b0 units.
GaussianSeries reduced_relative(const SlaterPolynomial& poly, double A, double y, bool with_two_body)
{
    GaussianSeries out;
    {
        // one-body part: exp(-R^2 - s^2/4) times the Slater polynomial
        const auto& gh = gauss_hermite(3);
        auto poly_at = [&](double t) {
            const double half = 0.5 * std::sqrt(t);
            double sum = 0.0;
            for (std::size_t i = 0; i < gh.size(); ++i) {
                for (std::size_t j = 0; j < gh.size(); ++j) {
                    for (std::size_t k = 0; k < gh.size(); ++k) {
                        const Vec3 a{gh.nodes[i], gh.nodes[j], gh.nodes[k] + half};
                        const Vec3 b{gh.nodes[i], gh.nodes[j], gh.nodes[k] - half};
                        sum += gh.weights[i] * gh.weights[j] * gh.weights[k]
                               * poly(dot(a, a), dot(b, b), dot(a, b));
                    }
                }
            }
            return sum;
        };
        out += GaussianSeries({checked_term(0.25, poly_at, A, "relative density matrix")});
    }
    if (!with_two_body) {
        return out;
    }
    // two-body: per Cartesian component the exponent is
    //   R^2 + r2^2 + sigma^2 + y a1 (r2 - R - sigma)^2 + y a2 (r2 - R + sigma)^2
    // with sigma = s/2 on the z axis and zero on x, y.
    constexpr int n_gh = 5;  // joint degree 8 in (R, r2)
    // (1,0) and (0,1) give the same G(s) by the symmetry s -> -s
    for (int variant = 0; variant < 2; ++variant) {
        const double a1 = 1.0;
        const double a2 = variant == 0 ? 0.0 : 1.0;
        const double sign = variant == 0 ? -2.0 : 1.0;
        const double a = a1 + a2;
        const double p = 1.0 + y * a;
        const double q = y * a;
        const double det = p * p - q * q;
        const auto transverse = hermite_2d(p, q, 0.0, 0.0, n_gh);
        // Q_min = sigma^2 [p - y^2 (a1 - a2)^2 (2p - 2q) / det]
        const double lin = y * (a1 - a2);
        const double qmin_per_sigma2 = p - lin * lin * 2.0 * (p - q) / det;
        const double gamma = 0.25 * qmin_per_sigma2;
        auto poly_at = [&](double t) {
            const double sigma = 0.5 * std::sqrt(t);
            // b = lin*sigma*(-1, 1); c = M^-1 b with M^-1 = [[p, q], [q, p]] / det
            const double b1 = -lin * sigma;
            const double b2 = lin * sigma;
            const double cR = (p * b1 + q * b2) / det;
            const double cr = (q * b1 + p * b2) / det;
            const auto axial = hermite_2d(p, q, cR, cr, n_gh);
            double sum = 0.0;
            for (const auto& nx : transverse) {
                for (const auto& ny : transverse) {
                    const double wxy = nx.w * ny.w;
                    for (const auto& nz : axial) {
                        const Vec3 r1{nx.u, ny.u, nz.u + sigma};
                        const Vec3 r1p{nx.u, ny.u, nz.u - sigma};
                        const Vec3 r2{nx.v, ny.v, nz.v};
                        sum += wxy * nz.w * bracket(poly, r1, r1p, r2);
                    }
                }
            }
            return sign * std::pow(det, -1.5) * sum;
        };
        out += GaussianSeries({checked_term(gamma, poly_at, A, "relative density matrix")});
    }
    return out;
}

}  // namespace

CorrelatedModel::CorrelatedModel(Nuclide nuclide, HOParams ho, Correlation corr, QuadratureSpec spec)
    : nuclide_(std::move(nuclide)), ho_(ho), corr_(corr), spec_(spec), lazy_(std::make_shared<Lazy>())
{
    spec_.validate(nuclide_);
    const double b0 = ho_.b0();
    const double A = nuclide_.A();
    GaussianSeries reduced;
    if (corr_.is_uncorrelated()) {
        reduced = ho_density_series(nuclide_) * A;
    } else {
        SlaterPolynomial poly(nuclide_);
        reduced = reduced_density(nuclide_, poly, corr_.y());
    }
    const double trace = reduced.moment(0);
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        std::ostringstream msg;
        msg << "normalization_factor: two-body truncation breaks down for " << nuclide_.name()
            << " at y = " << corr_.y() << " (density integral " << trace << " of " << A << ")";
        throw NumericalError(msg.str());
    }
    n0_ = corr_.is_uncorrelated() ? 1.0 : A / trace;
    density_ = reduced.rescaled(b0, n0_ / (A * b0 * b0 * b0));
    form_factor_ = density_.fourier();
}

double CorrelatedModel::density(double r) const
{
    if (!(r >= 0.0)) {
        throw InvalidInput("density: r must be non-negative");
    }
    if (corr_.is_uncorrelated()) {
        return ho_density(nuclide_, ho_, r);
    }
    return density_(r);
}

double CorrelatedModel::density_matrix(double r1, double r1p, double cos_omega) const
{
    if (!(r1 >= 0.0) || !(r1p >= 0.0) || !(cos_omega >= -1.0 && cos_omega <= 1.0)) {
        throw InvalidInput("density_matrix: need r1, r1' >= 0 and cos(omega) in [-1, 1]");
    }
    const double b0 = ho_.b0();
    const double sin_omega = std::sqrt(std::max(0.0, 1.0 - cos_omega * cos_omega));
    const Vec3 a{0.0, 0.0, r1 / b0};
    const Vec3 b{r1p / b0 * sin_omega, 0.0, r1p / b0 * cos_omega};
    SlaterPolynomial poly(nuclide_);
    double value = std::exp(-0.5 * (dot(a, a) + dot(b, b))) * poly(dot(a, a), dot(b, b), dot(a, b));
    if (!corr_.is_uncorrelated()) {
        value += two_body_point(poly, corr_.y(), a, b);
    }
    return n0_ * value / (nuclide_.A() * b0 * b0 * b0);
}

void CorrelatedModel::build_momentum() const
{
    std::call_once(lazy_->once, [this] {
        SlaterPolynomial poly(nuclide_);
        const bool two_body = !corr_.is_uncorrelated();
        const GaussianSeries reduced =
            reduced_relative(poly, nuclide_.A(), two_body ? corr_.y() : 0.0, two_body);
        lazy_->relative = reduced.rescaled(ho_.b0(), n0_ / nuclide_.A());
        lazy_->momentum = lazy_->relative.fourier() * (1.0 / std::pow(2.0 * pi, 3));
    });
}

const GaussianSeries& CorrelatedModel::relative_density_matrix() const
{
    build_momentum();
    return lazy_->relative;
}

const GaussianSeries& CorrelatedModel::momentum_series() const
{
    build_momentum();
    return lazy_->momentum;
}

double CorrelatedModel::momentum_distribution(double k) const
{
    if (!(k >= 0.0)) {
        throw InvalidInput("momentum_distribution: k must be non-negative");
    }
    if (corr_.is_uncorrelated()) {
        return ho_momentum_density(nuclide_, ho_, k);
    }
    return momentum_series()(k);
}

double CorrelatedModel::form_factor(double q) const
{
    if (!(q >= 0.0)) {
        throw InvalidInput("form_factor: q must be non-negative");
    }
    if (corr_.is_uncorrelated()) {
        return ho_form_factor(nuclide_, ho_, q);
    }
    return form_factor_(q);
}

double CorrelatedModel::mean_square_radius() const
{
    if (corr_.is_uncorrelated()) {
        return r1_moment(nuclide_);
    }
    const double b0 = ho_.b0();
    return density_.moment(2) / density_.moment(0) / (b0 * b0);
}

PartialWaveMomentum momentum_distribution_partial_waves(const CorrelatedModel& model,
                                                        std::span<const double> k)
{
    const auto& spec = model.spec();
    const double b0 = model.ho().b0();
    constexpr double extent = 9.0;  // b0; the density is below exp(-80) beyond
    const int panels = std::max(1, spec.partial_wave_radial_nodes / spec.panel_nodes);
    const auto radial = composite_gauss_legendre(0.0, extent * b0, panels, spec.panel_nodes);
    const int n_angle = 2 * spec.legendre_order_limit + 2;
    const auto angular = gauss_legendre(n_angle, -1.0, 1.0);
    const std::size_t nr = radial.size();

    // rho(r_i, r_j, x_a), symmetric in (i, j)
    std::vector<double> grid(nr * nr * angular.size());
    auto at = [&](std::size_t i, std::size_t j, std::size_t a) -> double& {
        return grid[(i * nr + j) * angular.size() + a];
    };
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = i; j < nr; ++j) {
            for (std::size_t a = 0; a < angular.size(); ++a) {
                const double v = model.density_matrix(radial.nodes[i], radial.nodes[j], angular.nodes[a]);
                at(i, j, a) = v;
                at(j, i, a) = v;
            }
        }
    }

    PartialWaveMomentum out;
    out.k.assign(k.begin(), k.end());
    std::vector<double> coeff(nr * nr);
    std::vector<double> v(nr);
    auto contribution = [&](int l, double kk) {
        for (std::size_t i = 0; i < nr; ++i) {
            const double r = radial.nodes[i];
            v[i] = std::sph_bessel(static_cast<unsigned>(l), kk * r) * radial.weights[i] * r * r;
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < nr; ++j) {
                row += coeff[i * nr + j] * v[j];
            }
            sum += v[i] * row;
        }
        return 2.0 / pi * sum;
    };

    out.by_l.assign(k.size(), {});
    int l_max = spec.legendre_order;
    int l_done = -1;
    while (true) {
        for (int l = l_done + 1; l <= l_max; ++l) {
            std::vector<double> pl(angular.size());
            for (std::size_t a = 0; a < angular.size(); ++a) {
                pl[a] = std::legendre(static_cast<unsigned>(l), angular.nodes[a]);
            }
            for (std::size_t i = 0; i < nr; ++i) {
                for (std::size_t j = 0; j < nr; ++j) {
                    double s = 0.0;
                    for (std::size_t a = 0; a < angular.size(); ++a) {
                        s += angular.weights[a] * pl[a] * at(i, j, a);
                    }
                    coeff[i * nr + j] = 0.5 * (2 * l + 1) * s;
                }
            }
            for (std::size_t ik = 0; ik < k.size(); ++ik) {
                out.by_l[ik].push_back(contribution(l, k[ik]));
            }
        }
        l_done = l_max;
        bool converged = true;
        for (const auto& terms : out.by_l) {
            double total = 0.0;
            for (double t : terms) {
                total += t;
            }
            const double tail = std::max(std::abs(terms[l_max]), std::abs(terms[l_max - 1]));
            if (tail > 1e-8 * std::abs(total)) {
                converged = false;
            }
        }
        if (converged) {
            break;
        }
        if (l_max >= spec.legendre_order_limit) {
            throw NumericalError("momentum_distribution_partial_waves: Legendre series not converged at L_max = "
                                 + std::to_string(l_max));
        }
        l_max = std::min(2 * l_max, spec.legendre_order_limit);
    }
    out.l_max = l_max;
    for (const auto& terms : out.by_l) {
        double total = 0.0;
        for (double t : terms) {
            total += t;
        }
        out.n.push_back(total);
    }
    return out;
}

void write_profile(std::ostream& out, const CorrelatedModel& model, ProfileKind kind, double x_max, int points)
{
    if (points < 2 || !(x_max > 0)) {
        throw InvalidInput("write_profile: need at least two points on a positive range");
    }
    const char* name = kind == ProfileKind::density    ? "density"
                       : kind == ProfileKind::momentum ? "momentum"
                                                       : "form_factor";
    const char* xname = kind == ProfileKind::density ? "r" : kind == ProfileKind::momentum ? "k" : "q";
    out << "# " << name << " nuclide=" << model.nuclide().name() << " b0=" << model.ho().b0()
        << " y=" << model.correlation().y() << " N0=" << std::setprecision(10) << model.normalization_factor()
        << " " << xname << "_max=" << x_max << " points=" << points << "\n";
    out << std::setprecision(10);
    for (int i = 0; i < points; ++i) {
        const double x = x_max * i / (points - 1);
        double v = 0.0;
        switch (kind) {
        case ProfileKind::density:
            v = model.density(x);
            break;
        case ProfileKind::momentum:
            v = model.momentum_distribution(x);
            break;
        case ProfileKind::form_factor:
            v = model.form_factor(x);
            break;
        }
        out << x << " " << v << "\n";
    }
}

}  // namespace nucent
