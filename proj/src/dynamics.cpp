#include "tomo/dynamics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace tomo {

namespace {

double fact(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

CMat expm_i(const CMat& h, double t) { return HermitianExponential(h).matrix(-t); }  // exp(+i t H)

CVec lm_raw(int A, int L, int M) {
    if (L < 0 || L > A || (A - L) % 2 || std::abs(M) > L)
        throw std::invalid_argument("lm_state: invalid (L, M) for A = " + std::to_string(A));
    const double pref = std::sqrt(std::pow(2.0, L + M) * fact((A + L) / 2) * fact(L + M) * fact(L - M) *
                                  (2 * L + 1) / (fact((A - L) / 2) * fact(A + L + 1)));
    std::map<std::tuple<int, int, int>, double> poly;
    for (int p = 0; p <= L + M; ++p) {
        if (L + M - 2 * p < 0 || p - M < 0) continue;
        poly[{p, L + M - 2 * p, p - M}] += 1.0 / (std::pow(2.0, p) * fact(p) * fact(p - M) * fact(L + M - 2 * p));
    }
    // multiply by ((a2^dagger)^2 - 2 a1^dagger a3^dagger)^{(A-L)/2}
    for (int k = 0; k < (A - L) / 2; ++k) {
        std::map<std::tuple<int, int, int>, double> next;
        for (const auto& [m, v] : poly) {
            const auto [a, b, c] = m;
            next[{a, b + 2, c}] += v;
            next[{a + 1, b, c + 1}] -= 2.0 * v;
        }
        poly = std::move(next);
    }
    const BasisIndexMap basis(A);
    CVec vec = CVec::Zero(basis.size());
    for (const auto& [m, v] : poly) {
        const auto [a, b, c] = m;
        vec(basis.index({a, b, c})) += pref * v * std::sqrt(fact(a) * fact(b) * fact(c));
    }
    return vec;
}

}  // namespace

const char* config_name(ConfigKind k) {
    switch (k) {
        case ConfigKind::NonDegenerate: return "nondeg";
        case ConfigKind::Lambda: return "lambda";
        case ConfigKind::Xi: return "xi";
    }
    return "?";
}

ConfigKind parse_config(const std::string& s) {
    if (s == "nondeg") return ConfigKind::NonDegenerate;
    if (s == "lambda") return ConfigKind::Lambda;
    if (s == "xi") return ConfigKind::Xi;
    throw std::invalid_argument("unknown configuration '" + s + "' (expected nondeg, lambda or xi)");
}

CMat resonant_pulse(int A, LevelPair pair, double beta) {
    const int i = pair == LevelPair::P12 ? 1 : 2;
    return expm_i(collective_operator(A, i, i + 1) + collective_operator(A, i + 1, i), -beta);
}

CMat dispersive_pulse(int A, int level, double phi) {
    if (level != 1 && level != 3) throw std::invalid_argument("dispersive_pulse: level must be 1 or 3");
    return expm_i(collective_operator(A, level, level), phi);
}

CMat nondeg_sequence(int A, const PulseParams& t) {
    return dispersive_pulse(A, 3, -t.phi23) * resonant_pulse(A, LevelPair::P23, t.beta23) *
           dispersive_pulse(A, 1, t.phi12) * resonant_pulse(A, LevelPair::P12, t.beta12);
}

cplx nondeg_global_phase(const PulseParams& t) { return std::polar(1.0, (t.phi12 - t.phi23) / 3.0); }

SU3Euler tau_to_euler(const PulseParams& t) {
    const double pi = M_PI;
    SU3Euler e;
    e.alpha1 = -t.phi23 - 0.5 * pi;
    e.beta1 = 2.0 * t.beta23;
    e.gamma1 = 1.5 * pi + 2.0 / 3.0 * t.phi12 + t.phi23 / 3.0;
    e.alpha2 = -2.0 / 3.0 * t.phi12 - t.phi23 / 3.0;
    e.beta2 = 2.0 * t.beta12;
    e.alpha3 = -4.0 / 3.0 * t.phi12 - 2.0 / 3.0 * t.phi23 - pi;
    e.beta3 = 0.0;
    e.gamma3 = 0.0;

    // Ry(b) = Rz(2pi) Ry(b - 2pi) and Ry(b) = Rz(3pi) Ry(2pi - b) Rz(-pi), Rz(2pi) central per factor
    e.beta1 = wrap(e.beta1, 4.0 * pi);
    if (e.beta1 > 2.0 * pi) {
        e.beta1 -= 2.0 * pi;
        e.alpha1 += 2.0 * pi;
    }
    if (e.beta1 > pi) {
        e.beta1 = 2.0 * pi - e.beta1;
        e.alpha1 += 3.0 * pi;
        e.gamma1 -= pi;
    }
    // middle factor: only the symmetric fold Ry(b) = Rz(pi) Ry(2pi - b) Rz(pi) is available
    e.beta2 = wrap(e.beta2, 4.0 * pi);
    if (e.beta2 > pi && e.beta2 <= 2.0 * pi) {
        e.beta2 = 2.0 * pi - e.beta2;
        e.alpha2 += pi;
    }
    e.alpha1 = wrap(e.alpha1, 4.0 * pi);
    e.gamma1 = wrap(e.gamma1, 4.0 * pi);
    e.alpha2 = wrap(e.alpha2, 2.0 * pi);
    e.alpha3 = wrap(e.alpha3, 4.0 * pi);
    return e;
}

CMat lambda_T12(int A) {
    const double theta = -0.25 * M_PI;
    const CMat h = kI * (collective_operator(A, 2, 1) - collective_operator(A, 1, 2));
    // exp(theta K) = exp(-i theta (iK))
    return HermitianExponential(h).matrix(theta);
}

CMat lambda_hamiltonian(int A, double Delta, double g) {
    return Delta * collective_operator(A, 3, 3) +
           g * (collective_operator(A, 1, 3) + collective_operator(A, 2, 3) + collective_operator(A, 3, 1) +
                collective_operator(A, 3, 2));
}

CMat lambda_resonant_pulse(int A, double x) {
    return expm_i(collective_operator(A, 2, 3) + collective_operator(A, 3, 2), x);
}

CMat lambda_dispersive_pulse(int A, double y) {
    return expm_i(collective_operator(A, 2, 2) - collective_operator(A, 3, 3), y);
}

CMat lambda_tilde_sequence(int A, const SU2Euler& e) {
    return su3_rotation_factor(symmetric_generators(A), Su3Factor::R23, e);
}

CMat lambda_pulse_sequence(int A, const SU2Euler& e) {
    const CMat t = lambda_T12(A);
    return t * lambda_tilde_sequence(A, e) * t.adjoint();
}

CMat XiGenerators::casimir() const { return lz * lz + 0.5 * (lplus * lminus + lminus * lplus); }

XiGenerators xi_generators(int A) {
    XiGenerators x;
    x.lz = collective_operator(A, 1, 1) - collective_operator(A, 3, 3);
    x.lminus = std::sqrt(2.0) * (collective_operator(A, 2, 1) + collective_operator(A, 3, 2));
    x.lplus = x.lminus.adjoint();
    x.lx = 0.5 * (x.lplus + x.lminus);
    return x;
}

CMat xi_hamiltonian(int A, double Delta, double g) {
    return Delta * (collective_operator(A, 3, 3) - collective_operator(A, 1, 1)) +
           g * (collective_operator(A, 1, 2) + collective_operator(A, 3, 2) + collective_operator(A, 2, 1) +
                collective_operator(A, 2, 3));
}

CMat xi_pulse_sequence(int A, const SU2Euler& e) { return su2_rotation(xi_generators(A).su2(), e); }

CMat xi_physical_sequence(int A, double a, double b, double c) {
    const XiGenerators x = xi_generators(A);
    const HermitianExponential z(x.lz), rx(x.lx);
    return z.matrix(a) * rx.matrix(b) * z.matrix(c);
}

std::vector<LMLabel> lm_labels(int A) {
    std::vector<LMLabel> out;
    for (int L = A; L >= 0; L -= 2)
        for (int M = L; M >= -L; --M) out.push_back({L, M});
    return out;
}

double lm_formula_norm(int A, int L, int M) { return lm_raw(A, L, M).norm(); }

CVec lm_state(int A, int L, int M) {
    CVec v = lm_raw(A, L, M);
    const double n = v.norm();
    if (n == 0.0) throw std::runtime_error("lm_state: closed form vanished");
    v /= n;
    const XiGenerators x = xi_generators(A);
    const double tol = 1e-10 * std::max(1.0, static_cast<double>(A * A));
    if ((x.lz * v - static_cast<double>(M) * v).cwiseAbs().maxCoeff() > tol ||
        (x.casimir() * v - static_cast<double>(L * (L + 1)) * v).cwiseAbs().maxCoeff() > tol)
        throw std::runtime_error("lm_state: closed form is not an (L^2, Lz) eigenvector");
    return v;
}

CMat lm_basis_matrix(int A) {
    const auto labels = lm_labels(A);
    const int d = static_cast<int>(dimension(A, 0));
    CMat w(d, static_cast<long>(labels.size()));
    for (std::size_t k = 0; k < labels.size(); ++k) w.col(static_cast<long>(k)) = lm_state(A, labels[k].L, labels[k].M);
    return w;
}

}  // namespace tomo
