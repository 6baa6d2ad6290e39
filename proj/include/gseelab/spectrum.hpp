#pragma once

#include <complex>
#include <string>
#include <vector>

namespace gseelab {

enum class ModelDomain { PM1, ZeroOne }; // [-1,1] block-encoding / [0,1] evolution

// Discrete spectral measure p(x) = sum_j p_j delta(x - E_j).
struct SpectralMeasure {
    std::vector<double> energies; // strictly increasing
    std::vector<double> weights;  // nonnegative, sum to 1
    ModelDomain model_domain = ModelDomain::PM1;

    double gap_true() const { return energies[1] - energies[0]; }
    double overlap0() const { return weights[0]; }
    std::size_t levels() const { return energies.size(); }
};

struct DenseHermitian {
    int dimension = 0;
    std::vector<std::complex<double>> entries; // row-major dimension x dimension
    double tolerance = 1e-10;
};

struct AffineRecord {
    double scale = 1.0; // y = scale*x + shift
    double shift = 0.0;
    double map(double x) const { return scale * x + shift; }
    double unmap(double y) const { return (y - shift) / scale; }
};

SpectralMeasure from_dense(const DenseHermitian& h,
                           const std::vector<std::complex<double>>& psi,
                           ModelDomain domain = ModelDomain::PM1);

SpectralMeasure synth(std::vector<double> energies, std::vector<double> weights,
                      ModelDomain domain = ModelDomain::PM1);

// Affinely maps all energies into [target_lo, target_hi]; identity when already
// inside. The record maps original-frame energies to the new frame.
SpectralMeasure rescale_to(const SpectralMeasure& m, double target_lo,
                           double target_hi, AffineRecord& record);

std::string to_json(const SpectralMeasure& m);
SpectralMeasure measure_from_json(const std::string& text);

// Textual matrix file: one-line header "dense-hermitian dim=<n> layout=row-major
// complex=interleaved" followed by 2*n*n whitespace-separated doubles.
DenseHermitian load_dense(const std::string& path);
void save_dense(const DenseHermitian& h, const std::string& path);

} // namespace gseelab
