#include "bolhalf/series_io.hpp"
#include "bolhalf/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace bolhalf {

namespace {

std::string fraction(i64 num, i64 den)
{
    Rational q = make_rational(num, den);
    return mp::numerator(q).str() + " " + mp::denominator(q).str();
}

template <class C>
void write_header(std::ostream& os, const Series<C>& f, const std::string& mode)
{
    os << f.denom() << ' ';
    if (f.is_zero() && f.is_exact())
        os << "inf 1";
    else
        os << fraction(f.start(), f.denom());
    os << ' ';
    if (f.is_exact())
        os << "inf 1";
    else
        os << fraction(f.prec(), f.denom());
    os << ' ' << mode << '\n';
}

i64 parse_int(const std::string& tok, int line)
{
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos == tok.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("series file line " + std::to_string(line) + ": bad integer '" + tok + "'");
}

// exponent index on lattice M, checking membership
i64 lattice_index(i64 num, i64 den, i64 M, int line)
{
    if (den <= 0) throw InvalidArgument("series file line " + std::to_string(line) + ": bad exponent denominator");
    Rational idx = make_rational(num, den) * M;
    if (!is_integer(idx))
        throw InvalidArgument("series file line " + std::to_string(line) + ": exponent not on the lattice (1/" + std::to_string(M) + ")Z");
    return to_i64(mp::numerator(idx));
}

} // namespace

void write_series(std::ostream& os, const ExactSeries& f)
{
    write_header(os, f, "exact");
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        const QExact& c = f.coeffs()[i];
        if (is_zero(c)) continue;
        os << fraction(f.start() + static_cast<i64>(i), f.denom()) << ' ' << mp::numerator(c.re) << ' ' << mp::denominator(c.re) << ' '
           << mp::numerator(c.im) << ' ' << mp::denominator(c.im) << '\n';
    }
}

void write_series(std::ostream& os, const FloatSeries& f)
{
    write_header(os, f, "float:" + std::to_string(working_bits()));
    int digits = static_cast<int>(working_bits() * 0.30103) + 3;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        const Complex& c = f.coeffs()[i];
        if (is_zero(c)) continue;
        os << fraction(f.start() + static_cast<i64>(i), f.denom()) << ' ' << to_string(c.re, digits) << ' ' << to_string(c.im, digits) << '\n';
    }
}

void write_series(std::ostream& os, const AnySeries& f)
{
    std::visit([&](const auto& s) { write_series(os, s); }, f);
}

AnySeries read_series(std::istream& is)
{
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line[0] != '#') break;
    }
    std::istringstream hs(line);
    std::string tM, tvn, tvd, tpn, tpd, mode;
    if (!(hs >> tM >> tvn >> tvd >> tpn >> tpd >> mode)) throw InvalidArgument("series file: malformed header");
    i64 M = parse_int(tM, lineno);
    if (M < 1) throw InvalidArgument("series file: lattice denominator must be positive");
    i64 prec = kInfPrec;
    if (tpn != "inf") prec = lattice_index(parse_int(tpn, lineno), parse_int(tpd, lineno), M, lineno);
    bool exact = mode == "exact";
    unsigned bits = working_bits();
    if (!exact) {
        if (mode.rfind("float:", 0) != 0) throw InvalidArgument("series file: unknown mode '" + mode + "'");
        bits = static_cast<unsigned>(parse_int(mode.substr(6), lineno));
    }
    std::map<i64, QExact> ex;
    std::map<i64, Complex> fl;
    {
        ScopedPrecision sp(std::max(bits, working_bits()));
        while (std::getline(is, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::vector<std::string> tok;
            std::string t;
            while (ls >> t) tok.push_back(t);
            if (tok.size() != (exact ? 6u : 4u))
                throw InvalidArgument("series file line " + std::to_string(lineno) + ": wrong number of fields");
            i64 idx = lattice_index(parse_int(tok[0], lineno), parse_int(tok[1], lineno), M, lineno);
            if (idx >= prec) throw InvalidArgument("series file line " + std::to_string(lineno) + ": exponent beyond precision");
            try {
                if (exact) {
                    Integer rd(tok[3]), id(tok[5]);
                    if (rd == 0 || id == 0) throw InvalidArgument("zero denominator");
                    ex[idx] = QExact(Rational(Integer(tok[2]), rd), Rational(Integer(tok[4]), id));
                } else {
                    fl[idx] = Complex(Real(tok[2]), Real(tok[3]));
                }
            } catch (const std::exception&) {
                throw InvalidArgument("series file line " + std::to_string(lineno) + ": malformed coefficient");
            }
        }
    }
    auto build = [&](auto& m, auto zero) {
        using C = decltype(zero);
        if (m.empty()) return Series<C>::zero(M, prec);
        i64 lo = m.begin()->first, hi = m.rbegin()->first;
        std::vector<C> c(static_cast<std::size_t>(hi - lo + 1), zero);
        for (auto& [i, v] : m) c[static_cast<std::size_t>(i - lo)] = v;
        return Series<C>(M, lo, prec, std::move(c));
    };
    if (exact) return build(ex, QExact(0));
    return build(fl, Complex());
}

void save_series(const std::string& path, const AnySeries& f)
{
    std::ofstream os(path);
    if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
    write_series(os, f);
}

AnySeries load_series(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw InvalidArgument("cannot open '" + path + "'");
    return read_series(is);
}

std::string series_to_string(const AnySeries& f)
{
    std::ostringstream os;
    write_series(os, f);
    return os.str();
}

AnySeries series_from_string(const std::string& text)
{
    std::istringstream is(text);
    return read_series(is);
}

} // namespace bolhalf
