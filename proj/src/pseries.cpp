#include "lgrowth/pseries.hpp"

#include "lgrowth/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lgrowth {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::VanishingConstantTerm: return "VanishingConstantTerm";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidMapState: return "InvalidMapState";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NonRealInput: return "NonRealInput";
    case ErrorCode::CuspProximity: return "CuspProximity";
    case ErrorCode::OriginSingularity: return "OriginSingularity";
    case ErrorCode::CuspReached: return "CuspReached";
    case ErrorCode::NonHerglotzDriver: return "NonHerglotzDriver";
    case ErrorCode::EvaluationTooCloseToBoundary: return "EvaluationTooCloseToBoundary";
    case ErrorCode::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorCode::ChargeMismatch: return "ChargeMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

void require_finite(const std::vector<cplx>& c) {
    for (const auto& v : c) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error(ErrorCode::NonFinite, "power series coefficient is not finite");
        }
    }
}

void require_same_degree(const PowerSeries& a, const PowerSeries& b) {
    if (a.degree() != b.degree()) {
        throw Error(ErrorCode::DegreeMismatch, "truncation degrees " + std::to_string(a.degree()) +
                                                   " and " + std::to_string(b.degree()));
    }
}

} // namespace

PowerSeries::PowerSeries(int degree) {
    if (degree < 0) {
        throw Error(ErrorCode::DegreeMismatch, "negative truncation degree");
    }
    coeffs_.assign(static_cast<std::size_t>(degree) + 1, cplx{});
}

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_.push_back(cplx{});
    }
    require_finite(coeffs_);
}

PowerSeries::PowerSeries(std::initializer_list<cplx> coeffs)
    : PowerSeries(std::vector<cplx>(coeffs)) {}

PowerSeries PowerSeries::unit(int degree) {
    PowerSeries s(degree);
    s.coeffs_[0] = 1.0;
    return s;
}

PowerSeries PowerSeries::monomial(int degree, int power, cplx value) {
    PowerSeries s(degree);
    if (power >= 0 && power <= degree) {
        s.coeffs_[static_cast<std::size_t>(power)] = value;
    }
    return s;
}

cplx PowerSeries::coeff(int k) const noexcept {
    if (k < 0 || k > degree()) {
        return {};
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

PowerSeries PowerSeries::resized(int degree) const {
    PowerSeries out(degree);
    const auto n = std::min(out.size(), size());
    std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
    return out;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
    require_same_degree(*this, o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] += o.coeffs_[k];
    }
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
    require_same_degree(*this, o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] -= o.coeffs_[k];
    }
    return *this;
}

PowerSeries& PowerSeries::operator*=(cplx s) {
    for (auto& c : coeffs_) {
        c *= s;
    }
    return *this;
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries out(*this);
    out *= -1.0;
    return out;
}

double PowerSeries::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

PowerSeries derivative(const PowerSeries& s) {
    PowerSeries out(s.degree());
    for (int k = 0; k < s.degree(); ++k) {
        out[k] = static_cast<double>(k + 1) * s[k + 1];
    }
    return out;
}

PowerSeries antiderivative(const PowerSeries& s) {
    PowerSeries out(s.degree());
    for (int k = 1; k <= s.degree(); ++k) {
        out[k] = s[k - 1] / static_cast<double>(k);
    }
    return out;
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
    require_same_degree(a, b);
    const int n = a.degree();
    PowerSeries out(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == cplx{}) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

PowerSeries reciprocal(const PowerSeries& a, double eps) {
    if (std::abs(a[0]) <= eps) {
        throw Error(ErrorCode::VanishingConstantTerm,
                    "constant term has modulus " + std::to_string(std::abs(a[0])));
    }
    const int n = a.degree();
    PowerSeries r(n);
    const cplx inv0 = 1.0 / a[0];
    r[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        cplx acc{};
        for (int j = 1; j <= k; ++j) {
            acc += a[j] * r[k - j];
        }
        r[k] = -acc * inv0;
    }
    return r;
}

PowerSeries shift_up(const PowerSeries& s, int places) {
    PowerSeries out(s.degree());
    for (int k = places; k <= s.degree(); ++k) {
        out[k] = s[k - places];
    }
    return out;
}

cplx evaluate(const PowerSeries& s, cplx z) {
    cplx acc{};
    for (int k = s.degree(); k >= 0; --k) {
        acc = acc * z + s[k];
    }
    return acc;
}

PowerSeries prelog_derivative(const PowerSeries& f) {
    const PowerSeries fp = derivative(f);
    return multiply(derivative(fp), reciprocal(fp));
}

PowerSeries schwarzian(const PowerSeries& f) {
    const PowerSeries b = prelog_derivative(f);
    PowerSeries s = derivative(b) - multiply(b, b) * 0.5;
    for (int k = std::max(0, s.degree() - 1); k <= s.degree(); ++k) {
        s[k] = 0.0;
    }
    return s;
}

} // namespace lgrowth
