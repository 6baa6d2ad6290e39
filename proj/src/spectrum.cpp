#include "gseelab/spectrum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gseelab/errors.hpp"
#include <nlohmann/json.hpp>

namespace gseelab {
namespace {

constexpr double kMergeTol = 1e-10;   // degenerate eigenvalues merge below this
constexpr int kDenseCap = 4096;       // full eigendecomposition is the desk-scale oracle

void domain_bounds(ModelDomain d, double& lo, double& hi) {
    if (d == ModelDomain::PM1) {
        lo = -1.0;
        hi = 1.0;
    } else {
        lo = 0.0;
        hi = 1.0;
    }
}

void validate(const SpectralMeasure& m) {
    if (m.energies.empty()) throw EmptySpectrum("measure has no levels");
    if (m.energies.size() != m.weights.size())
        throw InvalidParameters("energies/weights size mismatch");
    double lo, hi;
    domain_bounds(m.model_domain, lo, hi);
    double sum = 0.0;
    for (std::size_t i = 0; i < m.energies.size(); ++i) {
        if (m.energies[i] < lo - 1e-12 || m.energies[i] > hi + 1e-12)
            throw DomainViolation("energy outside model domain");
        if (i > 0 && !(m.energies[i] > m.energies[i - 1])) {
            if (i == 1) throw DegenerateGroundGap("E1 <= E0");
            throw InvalidParameters("energies not strictly sorted");
        }
        if (m.weights[i] < 0.0) throw WeightSumViolation("negative weight");
        sum += m.weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw WeightSumViolation("weights do not sum to 1");
    if (m.energies.size() >= 2 && m.energies[1] - m.energies[0] <= 1e-12)
        throw DegenerateGroundGap("E1 - E0 <= 1e-12");
}

} // namespace

SpectralMeasure from_dense(const DenseHermitian& h,
                           const std::vector<std::complex<double>>& psi,
                           ModelDomain domain) {
    const int n = h.dimension;
    if (n <= 0 || n > kDenseCap) throw InvalidParameters("dense dimension out of range");
    if (static_cast<int>(h.entries.size()) != n * n)
        throw InvalidParameters("entry count != dim^2");
    if (static_cast<int>(psi.size()) != n) throw InvalidParameters("psi dimension mismatch");

    Eigen::MatrixXcd A(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) A(r, c) = h.entries[static_cast<std::size_t>(r) * n + c];
    const double herm_gap = (A - A.adjoint()).cwiseAbs().maxCoeff();
    if (herm_gap > h.tolerance) throw NotHermitian("max |A - A^dagger| exceeds tolerance");

    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = psi[i];
    if (std::abs(v.norm() - 1.0) > 1e-10) throw NotNormalized("psi not normalized");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (A + A.adjoint()));
    if (es.info() != Eigen::Success) throw OracleFailure("eigendecomposition failed");

    SpectralMeasure m;
    m.model_domain = domain;
    const Eigen::VectorXd evals = es.eigenvalues();
    const Eigen::VectorXcd amp = es.eigenvectors().adjoint() * v;
    for (int i = 0; i < n; ++i) {
        const double w = std::norm(amp(i));
        if (!m.energies.empty() && evals(i) - m.energies.back() <= kMergeTol) {
            m.weights.back() += w;
        } else {
            m.energies.push_back(evals(i));
            m.weights.push_back(w);
        }
    }
    // Renormalize away eigensolver rounding in the weights.
    double sum = 0.0;
    for (double w : m.weights) sum += w;
    for (double& w : m.weights) w /= sum;
    validate(m);
    return m;
}

SpectralMeasure synth(std::vector<double> energies, std::vector<double> weights,
                      ModelDomain domain) {
    SpectralMeasure m;
    m.energies = std::move(energies);
    m.weights = std::move(weights);
    m.model_domain = domain;
    validate(m);
    return m;
}

SpectralMeasure rescale_to(const SpectralMeasure& m, double target_lo,
                           double target_hi, AffineRecord& record) {
    if (m.energies.empty()) throw EmptySpectrum("rescale of empty spectrum");
    if (!(target_lo < target_hi)) throw InvalidParameters("bad target interval");
    const double lo = m.energies.front();
    const double hi = m.energies.back();
    record = AffineRecord{};
    if (lo >= target_lo && hi <= target_hi) {
        SpectralMeasure out = m;
        return out; // identity record
    }
    const double span = hi > lo ? hi - lo : 1.0;
    record.scale = (target_hi - target_lo) / span;
    record.shift = target_lo - record.scale * lo;
    SpectralMeasure out = m;
    for (double& e : out.energies) e = record.map(e);
    return out;
}

std::string to_json(const SpectralMeasure& m) {
    nlohmann::json j;
    j["model_domain"] = m.model_domain == ModelDomain::PM1 ? "pm1" : "01";
    j["energies"] = m.energies;
    j["weights"] = m.weights;
    return j.dump();
}

SpectralMeasure measure_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const std::string d = j.at("model_domain").get<std::string>();
    if (d != "pm1" && d != "01") throw InvalidParameters("unknown model_domain");
    return synth(j.at("energies").get<std::vector<double>>(),
                 j.at("weights").get<std::vector<double>>(),
                 d == "pm1" ? ModelDomain::PM1 : ModelDomain::ZeroOne);
}

DenseHermitian load_dense(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameters("cannot open matrix file: " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string tag, dimtok, layout, cplx;
    hs >> tag >> dimtok >> layout >> cplx;
    if (tag != "dense-hermitian" || dimtok.rfind("dim=", 0) != 0)
        throw InvalidParameters("bad matrix file header");
    DenseHermitian h;
    h.dimension = std::stoi(dimtok.substr(4));
    const long count = static_cast<long>(h.dimension) * h.dimension;
    h.entries.resize(count);
    for (long i = 0; i < count; ++i) {
        double re, im;
        if (!(in >> re >> im)) throw InvalidParameters("truncated matrix file");
        h.entries[i] = {re, im};
    }
    return h;
}

void save_dense(const DenseHermitian& h, const std::string& path) {
    std::ofstream out(path);
    out.precision(17);
    out << "dense-hermitian dim=" << h.dimension << " layout=row-major complex=interleaved\n";
    for (const auto& z : h.entries) out << z.real() << ' ' << z.imag() << '\n';
}

} // namespace gseelab
