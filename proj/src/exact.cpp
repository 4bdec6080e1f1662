#include "dilhom/exact.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dilhom {

ExactDistance ExactDistance::fixed(double r) {
    if (!(r > 0)) throw std::invalid_argument("ExactDistance::fixed: r must be positive");
    ExactDistance d;
    d.kind = Kind::Fixed;
    d.r = r;
    return d;
}

ExactDistance ExactDistance::geo(double a, double b, std::int64_t k) {
    if (!(1.0 <= a && a < b)) throw std::invalid_argument("ExactDistance::geo: need 1 <= a < b");
    ExactDistance d;
    d.kind = Kind::Geo;
    d.a = a;
    d.b = b;
    d.k = k;
    return d;
}

ExactDistance ExactDistance::cont(double x) {
    if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("ExactDistance::cont: x must be finite and >= 0");
    ExactDistance d;
    d.kind = Kind::Cont;
    d.x = x;
    return d;
}

double ExactDistance::value() const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Fixed: return r;
        case Kind::Geo: return a * std::pow(b, static_cast<double>(k));
        case Kind::Cont: return x;
    }
    return 0.0;
}

std::string ExactDistance::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Zero: os << "0"; break;
        case Kind::Fixed: os << r; break;
        case Kind::Geo: os << a << "*" << b << "^" << k; break;
        case Kind::Cont: os << x; break;
    }
    return os.str();
}

int exact_cmp(const ExactDistance& u, const ExactDistance& v) {
    bool uz = u.is_zero(), vz = v.is_zero();
    if (uz && vz) return 0;
    if (uz) return -1;
    if (vz) return 1;
    if (u.kind == ExactDistance::Kind::Geo && v.kind == ExactDistance::Kind::Geo && u.a == v.a &&
        u.b == v.b) {
        if (u.k < v.k) return -1;
        if (u.k > v.k) return 1;
        return 0;
    }
    double a = u.value(), b = v.value();
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

bool exact_eq(const ExactDistance& u, const ExactDistance& v) { return exact_cmp(u, v) == 0; }

ExactDistance exact_max(const ExactDistance& u, const ExactDistance& v) {
    return exact_cmp(u, v) >= 0 ? u : v;
}

} // namespace dilhom
