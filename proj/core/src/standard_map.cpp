#include "tomolyap/standard_map.hpp"

#include <algorithm>
#include <cfenv>
#include <type_traits>
#include <variant>
#include <climits>
#include <cmath>
#include <sstream>

#include "tomolyap/errors.hpp"

namespace tomolyap {

void validate_params(const StandardMapParams& p) {
    if (!std::isfinite(p.gamma)) throw ValidationError("gamma must be finite");
    if (!std::isfinite(p.tau) || !(p.tau > 0.0)) throw ValidationError("tau must be > 0");
    if (!std::isfinite(p.hbar) || p.hbar < 0.0) throw ValidationError("hbar must be >= 0");
    if (!std::isfinite(p.q0) || !std::isfinite(p.p0))
        throw ValidationError("base point (q0, p0) must be finite");
    if (!std::isfinite(p.v1) || !std::isfinite(p.v2))
        throw ValidationError("direction (v1, v2) must be finite");
}

double kick_profile(const StandardMapParams& params, double nu) {
    if (params.hbar == 0.0) return nu;
    return 2.0 / params.hbar * std::sin(params.hbar * nu / 2.0);
}

LatticeWindow nominal_window(int n_max) {
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
    return {n_max + 2, (n_max + 1) * (n_max + 2) / 2 + 2};
}

namespace {

#if defined(__SIZEOF_FLOAT128__)
__extension__ using QuadReal = __float128;
#else
using QuadReal = long double;
#endif

template <class Real>
struct Planes {
    std::vector<Real> re, im, re_next, im_next;
    std::vector<Real> profile;
};

}  // namespace

struct GField::Storage {
    std::variant<Planes<double>, Planes<QuadReal>> planes;
    bool has_imag = false;
    int k_table_min = 0;
};

GField::GField() = default;
GField::GField(GField&&) noexcept = default;
GField& GField::operator=(GField&&) noexcept = default;
GField::~GField() = default;

GField::GField(const GField& other)
    : params_(other.params_),
      time_(other.time_),
      horizon_(other.horizon_),
      exact_(other.exact_),
      window_(other.window_),
      layers_(other.layers_),
      storage_(other.storage_ ? std::make_unique<Storage>(*other.storage_) : nullptr) {}

GField& GField::operator=(const GField& other) {
    if (this != &other) *this = GField(other);
    return *this;
}

LatticeArithmetic GField::arithmetic() const {
    return std::holds_alternative<Planes<double>>(storage_->planes) ? LatticeArithmetic::Double
                                                                    : LatticeArithmetic::Quad;
}

std::size_t GField::cell_count() const {
    return (*layers_)[static_cast<std::size_t>(time_)].cells;
}

bool GField::contains(int j, int k) const {
    const Row* r = find_row(time_, j);
    return r != nullptr && k >= r->lo && k <= r->hi;
}

std::complex<double> GField::at(int j, int k) const {
    const Row* r = find_row(time_, j);
    if (r == nullptr || k < r->lo || k > r->hi) {
        std::ostringstream os;
        os << "lattice point (" << j << ", " << k << ") is outside the dependency cone at t = "
           << time_;
        throw ConeError(os.str());
    }
    const std::size_t i = r->offset + static_cast<std::size_t>(k - r->lo);
    return std::visit(
        [&](const auto& p) {
            return std::complex<double>(static_cast<double>(p.re[i]),
                                        storage_->has_imag ? static_cast<double>(p.im[i]) : 0.0);
        },
        storage_->planes);
}

void GField::for_each(const std::function<void(int, int, std::complex<double>)>& fn) const {
    const Layer& l = (*layers_)[static_cast<std::size_t>(time_)];
    for (std::size_t r = 0; r < l.rows.size(); ++r) {
        const Row& row = l.rows[r];
        const int j = l.j_min + static_cast<int>(r);
        for (int k = row.lo; k <= row.hi; ++k) fn(j, k, at(j, k));
    }
}

const GField::Row* GField::find_row(int time, int j) const {
    const Layer& l = (*layers_)[static_cast<std::size_t>(time)];
    const long idx = static_cast<long>(j) - l.j_min;
    if (idx < 0 || idx >= static_cast<long>(l.rows.size())) return nullptr;
    const Row& r = l.rows[static_cast<std::size_t>(idx)];
    return r.lo <= r.hi ? &r : nullptr;
}

namespace {

template <class Real, class FindRow>
void stencil(const GField::Layer& next, const FindRow& find_row, int k_min, Real c,
             const std::vector<Real>& f, const std::vector<Real>& in, std::vector<Real>& out) {
    out.resize(next.cells);
    for (std::size_t ri = 0; ri < next.rows.size(); ++ri) {
        const GField::Row& row = next.rows[ri];
        if (row.lo > row.hi) continue;
        const int j = next.j_min + static_cast<int>(ri);
        const GField::Row* rows[3] = {find_row(j - 1), find_row(j), find_row(j + 1)};
        std::ptrdiff_t base[3];
        for (int s = 0; s < 3; ++s) {
            const GField::Row* r = rows[s];
            const int shift = j + s - 1;
            if (r == nullptr || row.lo + shift < r->lo || row.hi + shift > r->hi) {
                std::ostringstream os;
                os << "step reads row " << j + s - 1 << " outside the dependency cone";
                throw ConeError(os.str());
            }
            base[s] = static_cast<std::ptrdiff_t>(r->offset) - r->lo + shift;
        }
        const Real* v = in.data();
        Real* o = out.data() + row.offset - row.lo;
        const Real* fk = f.data() - k_min;
        for (int k = row.lo; k <= row.hi; ++k)
            o[k] = v[base[1] + k] + c * fk[k] * (v[base[2] + k] - v[base[0] + k]);
    }
}

}  // namespace

void GField::advance() {
    if (time_ >= horizon_) {
        throw ConeError("cannot step past the horizon t = " + std::to_string(horizon_) +
                        " the lattice cone was built for");
    }
    const Layer& next = (*layers_)[static_cast<std::size_t>(time_ + 1)];
    auto rows = [this](int j) { return find_row(time_, j); };
    const int k_min = storage_->k_table_min;
    const bool imag = storage_->has_imag;
    std::visit(
        [&](auto& p) {
            using Real = typename std::decay_t<decltype(p.re)>::value_type;
            const Real c = Real(params_.gamma) / Real(2);
            const bool track = std::is_same_v<Real, double>;
            if (track) std::feclearexcept(FE_INEXACT);
            stencil(next, rows, k_min, c, p.profile, p.re, p.re_next);
            if (imag) stencil(next, rows, k_min, c, p.profile, p.im, p.im_next);
            if (track && std::fetestexcept(FE_INEXACT)) exact_ = false;
            p.re.swap(p.re_next);
            p.im.swap(p.im_next);
        },
        storage_->planes);
    ++time_;
}

GField init_gfield(const StandardMapParams& params, int n_max, const LatticeOptions& options) {
    validate_params(params);
    const LatticeWindow window = nominal_window(n_max);

    // Row intervals per time, indexed by j + span.
    const int span = window.j_extent + 1;
    const std::size_t width = static_cast<std::size_t>(2 * span + 1);
    using Interval = std::pair<int, int>;
    std::vector<std::vector<Interval>> bounds(static_cast<std::size_t>(n_max) + 1,
                                              std::vector<Interval>(width, {INT_MAX, INT_MIN}));
    auto add = [&](std::vector<Interval>& rows, int j, int lo, int hi) {
        if (j < -window.j_extent || j > window.j_extent || lo < -window.k_extent ||
            hi > window.k_extent) {
            std::ostringstream os;
            os << "dependency cone leaves the nominal window |j| <= " << window.j_extent
               << ", |k| <= " << window.k_extent;
            throw ConeError(os.str());
        }
        Interval& r = rows[static_cast<std::size_t>(j + span)];
        r.first = std::min(r.first, lo);
        r.second = std::max(r.second, hi);
    };
    for (int t = n_max; t >= 0; --t) {
        auto& rows = bounds[static_cast<std::size_t>(t)];
        add(rows, 1, 1, 1);
        add(rows, -1, -1, -1);
        if (t == n_max) continue;
        const auto& later = bounds[static_cast<std::size_t>(t) + 1];
        for (std::size_t idx = 0; idx < width; ++idx) {
            const auto [lo, hi] = later[idx];
            if (lo > hi) continue;
            const int j = static_cast<int>(idx) - span;
            for (int s = -1; s <= 1; ++s) add(rows, j + s, lo + j + s, hi + j + s);
        }
    }

    auto layers = std::make_shared<std::vector<GField::Layer>>();
    layers->reserve(bounds.size());
    std::size_t max_cells = 0;
    int k_min = INT_MAX, k_max = INT_MIN;
    for (const auto& rows : bounds) {
        std::size_t first = width, last = 0;
        for (std::size_t idx = 0; idx < width; ++idx) {
            if (rows[idx].first <= rows[idx].second) {
                first = std::min(first, idx);
                last = idx;
            }
        }
        GField::Layer layer;
        layer.j_min = static_cast<int>(first) - span;
        for (std::size_t idx = first; idx <= last; ++idx) {
            GField::Row row;
            row.offset = layer.cells;
            if (rows[idx].first <= rows[idx].second) {
                row.lo = rows[idx].first;
                row.hi = rows[idx].second;
                layer.cells += static_cast<std::size_t>(row.hi - row.lo + 1);
                k_min = std::min(k_min, row.lo);
                k_max = std::max(k_max, row.hi);
            }
            layer.rows.push_back(row);
        }
        max_cells = std::max(max_cells, layer.cells);
        layers->push_back(std::move(layer));
    }

    LatticeArithmetic arithmetic = options.arithmetic;
    if (arithmetic == LatticeArithmetic::Auto)
        arithmetic = params.hbar == 0.0 ? LatticeArithmetic::Quad : LatticeArithmetic::Double;
    const bool has_imag = params.q0 != 0.0 || params.p0 != 0.0;
    const std::size_t scalar = arithmetic == LatticeArithmetic::Quad ? sizeof(QuadReal) : sizeof(double);
    const std::size_t bytes = (has_imag ? 4 : 2) * max_cells * scalar;
    if (bytes > options.memory_budget) {
        std::ostringstream os;
        os << "lattice cone for n = " << n_max << " needs " << max_cells << " cells (" << bytes
           << " bytes, window J = " << window.j_extent << ", K = " << window.k_extent
           << ") over the memory budget of " << options.memory_budget << " bytes";
        throw ResourceError(os.str());
    }

    GField g;
    g.params_ = params;
    g.horizon_ = n_max;
    g.window_ = window;
    g.storage_ = std::make_unique<GField::Storage>();
    g.storage_->has_imag = has_imag;
    g.storage_->k_table_min = k_min;

    const GField::Layer& first = layers->front();
    auto fill = [&](auto planes) {
        using Real = typename decltype(planes.re)::value_type;
        planes.profile.resize(static_cast<std::size_t>(k_max - k_min + 1));
        for (int k = k_min; k <= k_max; ++k) {
            planes.profile[static_cast<std::size_t>(k - k_min)] =
                params.hbar == 0.0 ? Real(k) * Real(params.tau)
                                   : Real(kick_profile(params, k * params.tau));
        }
        planes.re.resize(first.cells);
        planes.re_next.reserve(max_cells);
        if (has_imag) {
            planes.im.resize(first.cells);
            planes.im_next.reserve(max_cells);
        }
        for (std::size_t r = 0; r < first.rows.size(); ++r) {
            const GField::Row& row = first.rows[r];
            const int j = first.j_min + static_cast<int>(r);
            for (int k = row.lo; k <= row.hi; ++k) {
                const std::size_t i = row.offset + static_cast<std::size_t>(k - row.lo);
                const Real amp = Real(params.v1) * Real(j) + Real(params.v2) * Real(k) * Real(params.tau);
                if (has_imag) {
                    const double phase = params.q0 * j + params.p0 * k * params.tau;
                    planes.re[i] = amp * Real(std::cos(phase));
                    planes.im[i] = amp * Real(std::sin(phase));
                } else {
                    planes.re[i] = amp;
                }
            }
        }
        g.storage_->planes = std::move(planes);
    };
    if (arithmetic == LatticeArithmetic::Quad)
        fill(Planes<QuadReal>{});
    else
        fill(Planes<double>{});
    g.layers_ = std::move(layers);
    return g;
}

GField step_period(GField field) {
    field.advance();
    return field;
}

DerivativeSeries derivative_iteration(const ProbeHistory& probes, const StandardMapParams& params) {
    validate_params(params);
    if (probes.plus.empty() || probes.plus.size() != probes.minus.size())
        throw ConeError("probe history is missing values");
    const std::size_t n = probes.plus.size();
    DerivativeSeries s;
    s.g2.resize(n);
    s.g3.resize(n);
    s.g2[0] = params.v1;
    s.g3[0] = params.v2;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        s.g2[t + 1] = s.g2[t] + params.tau * s.g3[t];
        s.g3[t + 1] = s.g3[t] + params.gamma / 2.0 * (probes.plus[t] - probes.minus[t]);
    }
    s.probe = probes.plus;
    return s;
}

double chebyshev_u(double z, int n) {
    if (n < -2) throw ValidationError("chebyshev_u needs n >= -2");
    if (n == -2) return -1.0;
    double prev = 0.0, cur = 1.0;
    for (int i = 0; i < n + 1; ++i) {
        const double next = z * cur - prev;
        prev = cur;
        cur = next;
    }
    return prev;
}

ClosedFormCoefficients closed_form_coefficients(double gamma, int n) {
    if (n < 0) throw ValidationError("closed form needs n >= 0");
    if (!std::isfinite(gamma)) throw ValidationError("gamma must be finite");
    const double z = 2.0 + gamma;
    const double un = chebyshev_u(z, n);
    const double un1 = chebyshev_u(z, n - 1);
    const double un2 = chebyshev_u(z, n - 2);
    return {un1 - un2, un1, un - 2.0 * un1 + un2, un - un1};
}

std::pair<double, double> classical_closed_form(double gamma, double v1, double v2, int n) {
    const auto c = closed_form_coefficients(gamma, n);
    return {c.a * v1 + c.b * v2, c.c * v1 + c.d * v2};
}

double classical_lyapunov(double gamma) {
    const double z = 2.0 + gamma;
    if (std::abs(z) <= 2.0) return 0.0;
    return std::log(std::abs(z) / 2.0 + std::sqrt(z * z / 4.0 - 1.0));
}

namespace {

StandardMapRun run_once(const StandardMapParams& params, int n_max, const RunOptions& options,
                        LatticeArithmetic arithmetic) {
    GField field = init_gfield(params, n_max, {options.memory_budget, arithmetic});
    StandardMapRun run;
    run.probes.plus.reserve(static_cast<std::size_t>(n_max) + 1);
    run.probes.minus.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int t = 0;; ++t) {
        run.probes.plus.push_back(field.at(1, 1));
        run.probes.minus.push_back(field.at(-1, -1));
        if (t == n_max) break;
        field.advance();
    }
    run.arithmetic = field.arithmetic();
    run.exact = field.arithmetic() == LatticeArithmetic::Double && field.exact();
    return run;
}

}  // namespace

StandardMapRun run_standard_map(const StandardMapParams& params, int n_max, const RunOptions& options) {
    validate_params(params);
    StandardMapRun run;
    if (options.arithmetic == LatticeArithmetic::Auto && params.hbar == 0.0) {
        run = run_once(params, n_max, options, LatticeArithmetic::Double);
        if (!run.exact) run = run_once(params, n_max, options, LatticeArithmetic::Quad);
    } else {
        run = run_once(params, n_max, options, options.arithmetic);
    }
    for (const auto& v : run.probes.plus) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("lattice evolution produced non-finite values");
    }
    run.series = derivative_iteration(run.probes, params);
    run.estimate = estimate_exponent(run.series, options.estimator);
    run.running = running_estimate(run.series);
    return run;
}

double probe_linear_trend(const ProbeHistory& probes, std::size_t lo, std::size_t hi) {
    if (lo >= hi || hi >= probes.plus.size()) throw ValidationError("trend range out of bounds");
    const double m = static_cast<double>(hi - lo + 1);
    double st = 0.0, sy = 0.0;
    for (std::size_t t = lo; t <= hi; ++t) {
        st += static_cast<double>(t);
        sy += probes.plus[t].real();
    }
    st /= m;
    sy /= m;
    double num = 0.0, den = 0.0;
    for (std::size_t t = lo; t <= hi; ++t) {
        const double dt = static_cast<double>(t) - st;
        num += dt * (probes.plus[t].real() - sy);
        den += dt * dt;
    }
    return num / den;
}

std::optional<std::pair<std::int64_t, std::int64_t>> near_rational(double x, int max_denominator,
                                                                  double tolerance) {
    if (!std::isfinite(x)) return std::nullopt;
    for (int q = 1; q <= max_denominator; ++q) {
        const double p = std::round(x * q);
        if (std::abs(x - p / q) <= tolerance) return std::make_pair(static_cast<std::int64_t>(p), std::int64_t{q});
    }
    return std::nullopt;
}

bool resonant_hbar_tau(const StandardMapParams& params) {
    if (params.hbar == 0.0) return false;
    return near_rational(params.hbar * params.tau / (4.0 * std::acos(-1.0))).has_value();
}

}  // namespace tomolyap
