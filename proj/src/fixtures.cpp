#include "tomo/fixtures.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tomo/fixture_data.hpp"
#include "tomo/su3_algebra.hpp"

namespace tomo::fixtures {

namespace {

double fact(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// data lines with comments and blanks removed
std::vector<std::string> data_lines(const char* text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(line);
    }
    return out;
}

}  // namespace

double parse_signed_square(const std::string& s) {
    const bool neg = !s.empty() && s[0] == '-';
    const std::string body = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? s.substr(1) : s;
    const auto slash = body.find('/');
    try {
        std::size_t used = 0;
        const double num = std::stod(body.substr(0, slash), &used);
        if (used != body.substr(0, slash).size()) throw std::invalid_argument(s);
        double den = 1.0;
        if (slash != std::string::npos) {
            den = std::stod(body.substr(slash + 1), &used);
            if (used != body.size() - slash - 1 || den <= 0.0) throw std::invalid_argument(s);
        }
        if (num < 0.0) throw std::invalid_argument(s);
        return (neg ? -1.0 : 1.0) * std::sqrt(num / den);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad signed square '" + s + "'");
    }
}

const std::vector<CgRow>& cg_rows() {
    static const std::vector<CgRow> rows = [] {
        std::vector<CgRow> r;
        for (const std::string& line : data_lines(fixture_data::kReducedCgTables)) {
            std::istringstream ls(line);
            CgRow row;
            if (!(ls >> row.A >> row.sigma >> row.N1 >> row.twoI3 >> row.n1 >> row.twoI1 >> row.nustar1 >>
                  row.twoI2 >> row.text))
                throw std::runtime_error("malformed CG fixture line: " + line);
            row.value = parse_signed_square(row.text);
            r.push_back(row);
        }
        return r;
    }();
    return rows;
}

CVec LmRow::vector() const {
    const BasisIndexMap basis(A);
    CVec v = CVec::Zero(basis.size());
    for (const LmTerm& t : terms) v(basis.index({t.p, t.q, t.r})) += t.coef * std::sqrt(fact(t.p) * fact(t.q) * fact(t.r));
    return v;
}

const std::vector<LmRow>& lm_rows() {
    static const std::vector<LmRow> rows = [] {
        std::vector<LmRow> r;
        for (const std::string& line : data_lines(fixture_data::kLmStates)) {
            const auto bar = line.find('|');
            if (bar == std::string::npos) throw std::runtime_error("malformed |LM> fixture line: " + line);
            LmRow row;
            std::istringstream head(line.substr(0, bar));
            if (!(head >> row.A >> row.L >> row.M)) throw std::runtime_error("malformed |LM> fixture line: " + line);
            std::istringstream body(line.substr(bar + 1));
            std::string term;
            while (std::getline(body, term, ';')) {
                std::istringstream ts(term);
                std::string coef;
                LmTerm t;
                if (!(ts >> coef >> t.p >> t.q >> t.r)) throw std::runtime_error("malformed |LM> term: " + term);
                t.coef = parse_signed_square(coef);
                row.terms.push_back(t);
            }
            r.push_back(std::move(row));
        }
        return r;
    }();
    return rows;
}

CMat nondeg_matrix(const PulseParams& t) {
    const double c12 = std::cos(t.beta12), s12 = std::sin(t.beta12);
    const double c23 = std::cos(t.beta23), s23 = std::sin(t.beta23);
    const cplx e12 = std::polar(1.0, t.phi12), e23 = std::polar(1.0, -t.phi23);
    CMat u(3, 3);
    u << e12 * c12, -kI * e12 * s12, 0.0,
         -kI * c23 * s12, c12 * c23, -kI * s23,
         -e23 * s12 * s23, -kI * e23 * c12 * s23, e23 * c23;
    return u;
}

CMat ubar_matrix(const PulseParams& t) {
    const double chi = (2.0 * t.phi12 + t.phi23) / 3.0;
    const double c12 = std::cos(t.beta12), s12 = std::sin(t.beta12);
    const double c23 = std::cos(t.beta23), s23 = std::sin(t.beta23);
    auto e = [](double x) { return std::polar(1.0, x); };
    CMat m1(3, 3), m2(3, 3), m3(3, 3);
    m1 << 1.0, 0.0, 0.0,
          0.0, -kI * e(chi - t.phi12) * c23, e(2.0 * chi - t.phi12) * s23,
          0.0, -e(-(2.0 * chi - t.phi12)) * s23, kI * e(-(chi - t.phi12)) * c23;
    m2 << e(chi) * c12, -s12, 0.0,
          s12, e(-chi) * c12, 0.0,
          0.0, 0.0, 1.0;
    m3 << 1.0, 0.0, 0.0,
          0.0, kI * e(chi), 0.0,
          0.0, 0.0, -kI * e(-chi);
    return m1 * m2 * m3;
}

}  // namespace tomo::fixtures
