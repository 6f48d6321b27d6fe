#include "rational.hpp"

#include <cctype>

#include "errors.hpp"

namespace boxpoly {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
    std::size_t slash = text.find('/');
    std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-')
        fail(Errc::parse, "not a rational literal: \"" + text + "\"");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
        fail(Errc::parse, "not a rational literal: \"" + text + "\"");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        fail(Errc::parse, "zero denominator in \"" + text + "\"");
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_double(double v) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), v);
    r.canonicalize();
    return r;
}

double rat_to_double(const Rat& r) { return r.get_d(); }

Rat rat_pow(const Rat& base, unsigned exp) {
    if (exp == 0) return Rat(1);
    Rat out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
    // base is canonical, so num^e / den^e already is.
    return out;
}

}  // namespace boxpoly
