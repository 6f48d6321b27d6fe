#include "hidden_binary.hpp"

#include "errors.hpp"

namespace boxpoly {

const char* rule_name(BinaryCertificate::Rule r) {
    switch (r) {
        case BinaryCertificate::Rule::quadratic_diag: return "quadratic_diag";
        case BinaryCertificate::Rule::concave_coeffs: return "concave_coeffs";
        case BinaryCertificate::Rule::chord_dominance: return "chord_dominance";
    }
    return "unknown";
}

namespace {

bool all_coeffs_nonpositive(const Polynomial& p) {
    for (const auto& [m, c] : p.terms())
        if (c > 0) return false;
    return true;
}

bool all_coeffs_nonnegative(const Polynomial& p) {
    for (const auto& [m, c] : p.terms())
        if (c < 0) return false;
    return true;
}

}  // namespace

BinaryPartition detect_quadratic(const Polynomial& p) {
    if (p.degree() > 2) fail(Errc::degree, "detect_quadratic requires degree <= 2");
    BinaryPartition out;
    for (int i = 0; i < p.nvars(); ++i) {
        Rat qii = p.coefficient(Monomial::var(i, 2));
        if (qii <= 0) {
            out.vminus.insert(i);
            out.certificates.push_back({i, BinaryCertificate::Rule::quadratic_diag, qii});
        } else {
            out.vplus.insert(i);
        }
    }
    return out;
}

BinaryPartition detect_general(const Polynomial& p) {
    BinaryPartition out;
    for (int i = 0; i < p.nvars(); ++i) {
        std::vector<Polynomial> coeffs = collect_in_variable(p, i);
        bool concave = true;
        for (std::size_t m = 2; m < coeffs.size(); ++m)
            if (!all_coeffs_nonpositive(coeffs[m])) {
                concave = false;
                break;
            }
        if (concave) {
            out.vminus.insert(i);
            std::vector<Polynomial> upper(coeffs.begin() + std::min<std::size_t>(2, coeffs.size()),
                                          coeffs.end());
            out.certificates.push_back({i, BinaryCertificate::Rule::concave_coeffs, std::move(upper)});
            continue;
        }
        ChordDeficit cd = chord_deficit(p, i);
        if (all_coeffs_nonnegative(cd.h)) {
            out.vminus.insert(i);
            out.certificates.push_back({i, BinaryCertificate::Rule::chord_dominance, std::move(cd.h)});
            continue;
        }
        out.vplus.insert(i);
    }
    return out;
}

bool recheck_certificate(const Polynomial& p, const BinaryCertificate& cert) {
    switch (cert.rule) {
        case BinaryCertificate::Rule::quadratic_diag: {
            const Rat& qii = std::get<Rat>(cert.witness);
            return qii <= 0 && qii == p.coefficient(Monomial::var(cert.variable, 2));
        }
        case BinaryCertificate::Rule::concave_coeffs: {
            const auto& upper = std::get<std::vector<Polynomial>>(cert.witness);
            std::vector<Polynomial> coeffs = collect_in_variable(p, cert.variable);
            if (coeffs.size() < 2 && !upper.empty()) return false;
            for (std::size_t m = 2; m < coeffs.size(); ++m) {
                if (m - 2 >= upper.size()) return false;
                if (!(coeffs[m] == upper[m - 2])) return false;
                if (!all_coeffs_nonpositive(coeffs[m])) return false;
            }
            return true;
        }
        case BinaryCertificate::Rule::chord_dominance: {
            const Polynomial& h = std::get<Polynomial>(cert.witness);
            if (!all_coeffs_nonnegative(h)) return false;
            return chord_deficit(p, cert.variable).h == h;
        }
    }
    return false;
}

}  // namespace boxpoly
