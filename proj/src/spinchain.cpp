#include "igac/spinchain.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "igac/error.hpp"

namespace igac {

using cd = std::complex<double>;

const char* to_string(Sector s) {
    switch (s) {
        case Sector::full: return "full";
        case Sector::reflection_even: return "reflection_even";
        case Sector::reflection_odd: return "reflection_odd";
    }
    return "unknown";
}

Sector parse_sector(const std::string& name) {
    if (name == "full") return Sector::full;
    if (name == "reflection_even") return Sector::reflection_even;
    if (name == "reflection_odd") return Sector::reflection_odd;
    throw Error(ErrorKind::validation, "unknown sector '" + name + "'", "sector");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::poisson_like: return "poisson_like";
        case Verdict::wigner_like: return "wigner_like";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

int configured_max_spins() {
    if (const char* env = std::getenv("IGAC_MAX_N")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0 && value < 31) return static_cast<int>(value);
    }
    return kDefaultMaxSpins;
}

namespace {

using State = std::uint32_t;

State reflect(State s, int n) {
    State r = 0;
    for (int j = 0; j < n; ++j)
        if (s >> j & 1u) r |= 1u << (n - 1 - j);
    return r;
}

// Position of each σz product state inside the sector basis and its amplitude there.
struct SectorBasis {
    std::vector<int> index;  // -1 when the state has no support in the sector
    std::vector<double> coefficient;
    std::vector<std::vector<State>> members;  // product states of each basis vector
    std::size_t size() const { return members.size(); }
};

SectorBasis make_basis(const ChainSpec& spec) {
    const State states = 1u << spec.n;
    SectorBasis basis;
    basis.index.assign(states, -1);
    basis.coefficient.assign(states, 0.0);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (State s = 0; s < states; ++s) {
        if (spec.sector == Sector::full) {
            basis.index[s] = static_cast<int>(basis.size());
            basis.coefficient[s] = 1.0;
            basis.members.push_back({s});
            continue;
        }
        const State r = reflect(s, spec.n);
        if (r < s) continue;
        const int idx = static_cast<int>(basis.size());
        if (r == s) {
            if (spec.sector == Sector::reflection_odd) continue;
            basis.index[s] = idx;
            basis.coefficient[s] = 1.0;
            basis.members.push_back({s});
        } else {
            basis.index[s] = basis.index[r] = idx;
            basis.coefficient[s] = inv_sqrt2;
            basis.coefficient[r] = spec.sector == Sector::reflection_even ? inv_sqrt2 : -inv_sqrt2;
            basis.members.push_back({s, r});
        }
    }
    return basis;
}

void check_spec(const ChainSpec& spec, int max_spins) {
    if (spec.n < 1) throw Error(ErrorKind::validation, "chain needs at least one spin", "n");
    if (spec.n > max_spins)
        throw Error(ErrorKind::resource,
                    "n = " + std::to_string(spec.n) + " exceeds the configured maximum of " + std::to_string(max_spins),
                    "n");
    if (!std::isfinite(spec.hx) || !std::isfinite(spec.hy))
        throw Error(ErrorKind::validation, "field components must be finite", "field");
}

}  // namespace

std::size_t sector_dimension(const ChainSpec& spec) {
    check_spec(spec, 30);
    return make_basis(spec).size();
}

ComplexMatrix build_hamiltonian(const ChainSpec& spec, int max_spins) {
    check_spec(spec, max_spins);
    const SectorBasis basis = make_basis(spec);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    ComplexMatrix H = ComplexMatrix::Zero(dim, dim);
    const cd hy_up(0.0, spec.hy);  // σy|0> = i|1>, σy|1> = -i|0>

    auto add = [&](Eigen::Index col, double c_col, State target, cd amplitude) {
        const int row = basis.index[target];
        if (row < 0) return;
        H(row, col) += basis.coefficient[target] * amplitude * c_col;
    };

    for (Eigen::Index b = 0; b < dim; ++b) {
        for (State s : basis.members[static_cast<std::size_t>(b)]) {
            const double c = basis.coefficient[s];
            for (int j = 0; j + 1 < spec.n; ++j) add(b, c, s ^ (1u << j) ^ (1u << (j + 1)), 1.0);
            for (int j = 0; j < spec.n; ++j) {
                const State t = s ^ (1u << j);
                const bool up = (s >> j & 1u) == 0;
                add(b, c, t, cd(spec.hx, 0.0) + (up ? hy_up : -hy_up));
            }
        }
    }
    return H;
}

std::vector<double> diagonalize(const ComplexMatrix& H) {
    if (H.rows() != H.cols()) throw Error(ErrorKind::shape, "Hamiltonian must be square", "H");
    if (H.size() == 0) return {};
    const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) throw Error(ErrorKind::validation, "matrix is not Hermitian (max |H - H^dagger| = " + std::to_string(asym) + ")", "H");
    const ComplexMatrix herm = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::accuracy, "eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> unfold(const std::vector<double>& eigenvalues, const UnfoldOptions& options) {
    const auto m = eigenvalues.size();
    if (m < 100) throw Error(ErrorKind::insufficient_data, "unfolding needs at least 100 levels", "eigenvalues");
    if (!(options.trim_fraction >= 0.0 && options.trim_fraction < 0.3))
        throw Error(ErrorKind::validation, "trim_fraction must lie in [0, 0.3)", "trim");
    if (options.poly_degree < 1 || static_cast<std::size_t>(options.poly_degree) >= m)
        throw Error(ErrorKind::validation, "poly_degree must lie in [1, levels)", "degree");
    if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end()))
        throw Error(ErrorKind::validation, "eigenvalues must be sorted ascending", "eigenvalues");

    const double lo = eigenvalues.front();
    const double hi = eigenvalues.back();
    if (!(hi > lo)) throw Error(ErrorKind::fit, "spectrum has zero width; lower poly_degree cannot help", "degree");
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const int cols = options.poly_degree + 1;
    Eigen::MatrixXd A(static_cast<Eigen::Index>(m), cols);
    Eigen::VectorXd y(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double x = (eigenvalues[i] - mid) / half;
        const auto r = static_cast<Eigen::Index>(i);
        A(r, 0) = 1.0;
        A(r, 1) = x;
        for (int k = 2; k < cols; ++k) A(r, k) = 2.0 * x * A(r, k - 1) - A(r, k - 2);
        y[r] = static_cast<double>(i + 1);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    const double condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
    if (!(condition <= options.max_condition))
        throw Error(ErrorKind::fit,
                    "staircase fit is ill-conditioned (condition " + std::to_string(condition) +
                        "); use a lower poly_degree",
                    "degree");
    const Eigen::VectorXd coef = A.householderQr().solve(y);
    const Eigen::VectorXd level = A * coef;

    const auto trim = static_cast<std::size_t>(std::floor(options.trim_fraction * static_cast<double>(m)));
    std::vector<double> spacings;
    for (std::size_t i = trim; i + 1 < m - trim; ++i)
        spacings.push_back(level[static_cast<Eigen::Index>(i + 1)] - level[static_cast<Eigen::Index>(i)]);
    if (spacings.empty()) throw Error(ErrorKind::insufficient_data, "trimming removed every spacing", "trim");
    double mean = 0.0;
    for (double s : spacings) {
        if (s < 0.0) throw Error(ErrorKind::fit, "unfolded staircase is not monotone; use a lower poly_degree", "degree");
        mean += s;
    }
    mean /= static_cast<double>(spacings.size());
    for (double& s : spacings) s /= mean;
    return spacings;
}

double poisson_spacing_pdf(double s) { return s < 0.0 ? 0.0 : std::exp(-s); }
double poisson_spacing_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); }

double wigner_spacing_pdf(double s) {
    constexpr double pi = std::numbers::pi;
    return s < 0.0 ? 0.0 : 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
}

double wigner_spacing_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-0.25 * std::numbers::pi * s * s); }

LsdResult lsd_verdict(const std::vector<double>& spacings, const LsdOptions& options) {
    if (spacings.size() < 200)
        throw Error(ErrorKind::insufficient_data,
                    "level-spacing test needs at least 200 spacings, got " + std::to_string(spacings.size()),
                    "spacings");
    LsdResult r;
    r.ks_poisson = ks_distance(spacings, poisson_spacing_cdf);
    r.ks_wigner = ks_distance(spacings, wigner_spacing_cdf);
    if (std::min(r.ks_poisson, r.ks_wigner) > options.max_ks)
        r.verdict = Verdict::inconclusive;
    else if (r.ks_poisson < r.ks_wigner - options.margin)
        r.verdict = Verdict::poisson_like;
    else if (r.ks_wigner < r.ks_poisson - options.margin)
        r.verdict = Verdict::wigner_like;
    else
        r.verdict = Verdict::inconclusive;
    return r;
}

SpacingHistogram spacing_histogram(const std::vector<double>& spacings, int bins) {
    if (bins < 5) throw Error(ErrorKind::validation, "histogram needs at least 5 bins", "bins");
    if (spacings.empty()) throw Error(ErrorKind::insufficient_data, "no spacings to histogram", "spacings");
    double top = *std::max_element(spacings.begin(), spacings.end());
    if (!(top > 0.0)) top = 1.0;
    const double width = top / bins;
    SpacingHistogram h;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (int b = 0; b <= bins; ++b) h.edges.push_back(b * width);
    for (double s : spacings) {
        auto b = static_cast<long>(std::floor(s / width));
        b = std::clamp(b, 0L, static_cast<long>(bins - 1));
        ++h.counts[static_cast<std::size_t>(b)];
    }
    const auto total = static_cast<double>(spacings.size());
    for (int b = 0; b < bins; ++b) {
        const double center = (b + 0.5) * width;
        h.density.push_back(static_cast<double>(h.counts[static_cast<std::size_t>(b)]) / (total * width));
        h.poisson_ref.push_back(poisson_spacing_pdf(center));
        h.wigner_ref.push_back(wigner_spacing_pdf(center));
    }
    return h;
}

SpectrumRecord analyze_chain(const ChainSpec& spec, const UnfoldOptions& unfold_options, const LsdOptions& lsd_options,
                             int max_spins) {
    SpectrumRecord record;
    record.spec = spec;
    record.eigenvalues = diagonalize(build_hamiltonian(spec, max_spins));
    record.unfolded_spacings = unfold(record.eigenvalues, unfold_options);
    record.lsd = lsd_verdict(record.unfolded_spacings, lsd_options);
    return record;
}

}  // namespace igac
