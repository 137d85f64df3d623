#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace igac {

using ComplexMatrix = Eigen::MatrixXcd;

// Site-reversal j <-> n-1-j parity sectors.
enum class Sector { full, reflection_even, reflection_odd };
const char* to_string(Sector s);
Sector parse_sector(const std::string& name);

// Open Ising chain H = Σ_{j<n-1} σx_j σx_{j+1} + Σ_j (hx σx_j + hy σy_j).
struct ChainSpec {
    int n = 11;
    double hx = 1.0;
    double hy = 1.0;
    Sector sector = Sector::reflection_even;
};

inline constexpr int kDefaultMaxSpins = 14;

// kDefaultMaxSpins unless IGAC_MAX_N holds a positive integer.
int configured_max_spins();

std::size_t sector_dimension(const ChainSpec& spec);

// Hamiltonian in the orthonormal sector basis built from σz product states
// (|s> ± |R s>)/√2. Throws Error(resource) when n exceeds max_spins.
ComplexMatrix build_hamiltonian(const ChainSpec& spec, int max_spins = configured_max_spins());

// Ascending eigenvalues. Throws Error(validation) if max |H - H†| > 1e-12.
std::vector<double> diagonalize(const ComplexMatrix& H);

struct UnfoldOptions {
    int poly_degree = 7;
    double trim_fraction = 0.1;  // dropped from each spectral edge
    double max_condition = 1e10; // of the least-squares design matrix
};

// Fits the staircase N(E) with a polynomial (Chebyshev basis on the scaled
// spectrum), maps E_i -> N̄(E_i), trims both edges, returns consecutive
// spacings rescaled to unit mean.
std::vector<double> unfold(const std::vector<double>& eigenvalues, const UnfoldOptions& options = {});

// Unit-mean reference laws.
double poisson_spacing_pdf(double s);
double poisson_spacing_cdf(double s);
double wigner_spacing_pdf(double s);
double wigner_spacing_cdf(double s);

// sup |F_empirical - F|
template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf);

enum class Verdict { poisson_like, wigner_like, inconclusive };
const char* to_string(Verdict v);

struct LsdOptions {
    double margin = 0.01;  // required KS gap between the two laws
    double max_ks = 0.15;  // best KS above this matches neither law
};

struct LsdResult {
    double ks_poisson = 0.0;
    double ks_wigner = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

LsdResult lsd_verdict(const std::vector<double>& spacings, const LsdOptions& options = {});

struct SpacingHistogram {
    std::vector<double> edges;  // bins + 1
    std::vector<std::size_t> counts;
    std::vector<double> density;
    std::vector<double> poisson_ref;  // at bin centers
    std::vector<double> wigner_ref;
};

SpacingHistogram spacing_histogram(const std::vector<double>& spacings, int bins);

struct SpectrumRecord {
    ChainSpec spec;
    std::vector<double> eigenvalues;
    std::vector<double> unfolded_spacings;
    LsdResult lsd;
};

SpectrumRecord analyze_chain(const ChainSpec& spec, const UnfoldOptions& unfold_options = {},
                             const LsdOptions& lsd_options = {}, int max_spins = configured_max_spins());

// --- template implementation

template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        worst = std::max(worst, std::max(static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n));
    }
    return worst;
}

}  // namespace igac
