#include "ellcf/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace ellcf::cli {
namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, const std::string& what)
{
    const std::string s = trim(raw);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw SpecError("grid: invalid number '" + s + "' in " + what);
    }
    return v;
}

long to_long(const std::string& raw, const std::string& what)
{
    const std::string s = trim(raw);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || errno == ERANGE) throw SpecError("grid: invalid integer '" + s + "' in " + what);
    return v;
}

}  // namespace

std::string to_string(RouteKind r)
{
    switch (r) {
    case RouteKind::Closed: return "closed";
    case RouteKind::Hankel: return "hankel";
    case RouteKind::MC: return "mc";
    }
    return "unknown";
}

std::vector<Vector> parse_grid(const std::string& text, int n)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw SpecError("grid: expected 'axis:...' or 'list:...'");
    const std::string form = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    std::vector<Vector> out;
    if (form == "axis") {
        const auto f = split(body, ':');
        if (f.size() != 4) throw SpecError("grid: axis form is axis:DIM:START:STOP:COUNT");
        const long dim = to_long(f[0], "axis dimension");
        const double start = to_double(f[1], "axis start");
        const double stop = to_double(f[2], "axis stop");
        const long count = to_long(f[3], "axis count");
        if (dim < 1 || dim > n) throw SpecError("grid: axis dimension must be in 1.." + std::to_string(n));
        if (count < 1 || count > 10000000) throw SpecError("grid: axis count must be positive");
        for (long k = 0; k < count; ++k) {
            Vector t = Vector::Zero(n);
            t(dim - 1) = count == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
            out.push_back(std::move(t));
        }
    } else if (form == "list") {
        for (const auto& item : split(body, ';')) {
            const auto xs = split(item, ',');
            if (static_cast<int>(xs.size()) != n) {
                throw SpecError("grid: vector '" + item + "' has " + std::to_string(xs.size()) + " entries, expected " +
                                std::to_string(n));
            }
            Vector t(n);
            for (int i = 0; i < n; ++i) t(i) = to_double(xs[static_cast<std::size_t>(i)], "list entry");
            out.push_back(std::move(t));
        }
    } else {
        throw SpecError("grid: unknown form '" + form + "'");
    }
    if (out.empty()) throw SpecError("grid: no points");
    return out;
}

std::vector<RouteKind> parse_routes(const std::string& text)
{
    std::vector<RouteKind> out;
    for (const auto& raw : split(text, ',')) {
        const std::string r = trim(raw);
        RouteKind k;
        if (r == "closed") {
            k = RouteKind::Closed;
        } else if (r == "hankel") {
            k = RouteKind::Hankel;
        } else if (r == "mc") {
            k = RouteKind::MC;
        } else {
            throw SpecError("routes: unknown route '" + r + "'");
        }
        for (auto have : out) {
            if (have == k) throw SpecError("routes: duplicate route '" + r + "'");
        }
        out.push_back(k);
    }
    if (out.empty()) throw SpecError("routes: none given");
    return out;
}

}  // namespace ellcf::cli
