#include "ellcf/cli.hpp"
#include "ellcf/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ellcf::cli {
namespace {

using nlohmann::json;
using FieldPath = std::vector<std::string>;

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

int line_at(const std::string& text, std::size_t pos)
{
    pos = std::min(pos, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

class Parser {
public:
    Parser(const std::string& text, const std::string& path) : text_(text), path_(path) {}

    [[noreturn]] void fail(const FieldPath& field, const std::string& msg) const
    {
        std::string name;
        for (const auto& f : field) name += (name.empty() ? "" : ".") + f;
        std::ostringstream os;
        os << path_ << ":" << locate(field) << ": field '" << name << "': " << msg;
        throw SpecError(os.str());
    }

    [[noreturn]] void fail_top(const std::string& msg, int line = 1) const
    {
        throw SpecError(path_ + ":" + std::to_string(line) + ": " + msg);
    }

    void only_keys(const json& obj, const FieldPath& where, const std::set<std::string>& allowed) const
    {
        for (const auto& [key, value] : obj.items()) {
            if (!allowed.count(key)) {
                FieldPath f = where;
                f.push_back(key);
                fail(f, "unknown field");
            }
        }
    }

    const json& require(const json& obj, const FieldPath& field) const
    {
        const auto it = obj.find(field.back());
        if (it == obj.end()) {
            fail(field, "missing required field");
        }
        return *it;
    }

    double number(const json& v, const FieldPath& field) const
    {
        if (!v.is_number()) fail(field, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(field, "expected a finite number");
        return d;
    }

    double number_field(const json& obj, const FieldPath& field) const { return number(require(obj, field), field); }

    int integer(const json& v, const FieldPath& field) const
    {
        if (!v.is_number_integer()) fail(field, "expected an integer");
        return v.get<int>();
    }

    std::string string_field(const json& obj, const FieldPath& field) const
    {
        const auto& v = require(obj, field);
        if (!v.is_string()) fail(field, "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const json& v, const FieldPath& field) const
    {
        if (!v.is_array()) fail(field, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) out.push_back(number(e, field));
        return out;
    }

    Vector vector_field(const json& obj, const FieldPath& field, int n) const
    {
        const auto xs = numbers(require(obj, field), field);
        if (static_cast<int>(xs.size()) != n) {
            fail(field, "expected " + std::to_string(n) + " entries, got " + std::to_string(xs.size()));
        }
        return Eigen::Map<const Vector>(xs.data(), n);
    }

    Matrix matrix_field(const json& obj, const FieldPath& field, int n) const
    {
        const auto& v = require(obj, field);
        if (!v.is_array()) fail(field, "expected a matrix");
        Matrix m(n, n);
        if (!v.empty() && v.front().is_array()) {
            if (static_cast<int>(v.size()) != n) fail(field, "expected " + std::to_string(n) + " rows");
            for (int i = 0; i < n; ++i) {
                const auto row = numbers(v[static_cast<std::size_t>(i)], field);
                if (static_cast<int>(row.size()) != n) fail(field, "expected " + std::to_string(n) + " columns");
                for (int j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
            }
        } else {
            const auto xs = numbers(v, field);
            if (static_cast<int>(xs.size()) != n * n) {
                fail(field, "expected " + std::to_string(n * n) + " entries (row-major), got " + std::to_string(xs.size()));
            }
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) m(i, j) = xs[static_cast<std::size_t>(i * n + j)];
            }
        }
        try {
            validate_dispersion(m, "matrix");
        } catch (const DomainError& e) {
            fail(field, e.what());
        }
        return m;
    }

    DensityGenerator generator(const json& obj, int n) const
    {
        const FieldPath gf{"generator"};
        const auto& g = require(obj, gf);
        if (!g.is_object()) fail(gf, "expected an object");
        only_keys(g, gf, {"family", "params"});
        const std::string family = string_field(g, {"generator", "family"});
        static const std::map<std::string, std::vector<std::string>> kParams = {
            {"normal", {}},          {"uniform_ball", {}},      {"cauchy", {}},
            {"generalized_t", {"s", "m"}}, {"pearson_ii", {"m"}},   {"pearson_vii", {"N", "s"}},
            {"kotz", {"N", "r", "s"}},     {"bessel", {"a", "beta"}},
        };
        const auto it = kParams.find(family);
        if (it == kParams.end()) fail({"generator", "family"}, "unknown family '" + family + "'");
        static const json kEmpty = json::object();
        const json& params = g.contains("params") ? g.at("params") : kEmpty;
        const FieldPath pf{"generator", "params"};
        if (!params.is_object()) fail(pf, "expected an object");
        only_keys(params, pf, std::set<std::string>(it->second.begin(), it->second.end()));
        std::map<std::string, double> p;
        for (const auto& key : it->second) p[key] = number_field(params, {"generator", "params", key});
        try {
            if (family == "normal") return DensityGenerator::normal(n);
            if (family == "uniform_ball") return DensityGenerator::uniform_ball(n);
            if (family == "cauchy") return DensityGenerator::cauchy(n);
            if (family == "generalized_t") return DensityGenerator::generalized_t(n, p["s"], p["m"]);
            if (family == "pearson_ii") return DensityGenerator::pearson_ii(n, p["m"]);
            if (family == "pearson_vii") return DensityGenerator::pearson_vii(n, p["N"], p["s"]);
            if (family == "kotz") return DensityGenerator::kotz(n, p["N"], p["r"], p["s"]);
            return DensityGenerator::bessel(n, p["a"], p["beta"]);
        } catch (const DomainError& e) {
            fail(pf, e.what());
        }
    }

    skew::MixingLaw mixing(const json& obj) const
    {
        const FieldPath mf{"mixing"};
        const auto& m = require(obj, mf);
        if (!m.is_object()) fail(mf, "expected an object");
        const std::string kind = string_field(m, {"mixing", "kind"});
        std::function<double(double)> weight;
        if (m.contains("weight")) {
            const std::string w = string_field(m, {"mixing", "weight"});
            if (w == "inverse") {
                weight = [](double v) { return 1.0 / v; };
            } else if (w != "identity") {
                fail({"mixing", "weight"}, "expected 'identity' or 'inverse'");
            }
        }
        try {
            if (kind == "degenerate") {
                only_keys(m, mf, {"kind", "value", "weight"});
                return skew::MixingLaw(skew::mixing::Degenerate{number_field(m, {"mixing", "value"})}, weight);
            }
            if (kind == "finite_discrete") {
                only_keys(m, mf, {"kind", "points", "weights", "weight"});
                auto pts = numbers(require(m, {"mixing", "points"}), {"mixing", "points"});
                auto wts = numbers(require(m, {"mixing", "weights"}), {"mixing", "weights"});
                return skew::MixingLaw(skew::mixing::FiniteDiscrete{std::move(pts), std::move(wts)}, weight);
            }
            if (kind == "inverse_gamma") {
                only_keys(m, mf, {"kind", "shape", "scale", "weight"});
                return skew::MixingLaw(skew::mixing::InverseGamma{number_field(m, {"mixing", "shape"}),
                                                                  number_field(m, {"mixing", "scale"})},
                                       weight);
            }
        } catch (const SpecError&) {
            throw;
        } catch (const DomainError& e) {
            fail(mf, e.what());
        }
        fail({"mixing", "kind"}, "unknown mixing kind '" + kind + "'");
    }

    skew::SkewNormalSpec skew_normal(const json& obj, const Vector& mu, const Matrix& sigma) const
    {
        const int n = static_cast<int>(mu.size());
        Vector alpha = vector_field(obj, {"alpha"}, n);
        auto param = skew::Parametrization::HalfRoot;
        if (obj.contains("parametrization")) {
            const std::string p = string_field(obj, {"parametrization"});
            if (p == "full_sigma") {
                param = skew::Parametrization::FullSigma;
            } else if (p != "half_root") {
                fail({"parametrization"}, "expected 'half_root' or 'full_sigma'");
            }
        }
        return skew::SkewNormalSpec(mu, sigma, std::move(alpha), param);
    }

private:
    int locate(const FieldPath& field) const
    {
        std::size_t pos = 0;
        std::size_t found_at = std::string::npos;
        for (const auto& key : field) {
            const auto p = text_.find("\"" + key + "\"", pos);
            if (p == std::string::npos) break;
            found_at = pos = p;
        }
        return found_at == std::string::npos ? 1 : line_at(text_, found_at);
    }

    const std::string& text_;
    const std::string& path_;
};

}  // namespace

std::string to_string(SpecKind k)
{
    switch (k) {
    case SpecKind::Elliptical: return "elliptical";
    case SpecKind::LSM: return "lsm";
    case SpecKind::GSESkewNormal: return "gse_skew_normal";
    case SpecKind::SkewNormal: return "skew_normal";
    case SpecKind::SMSN: return "smsn";
    case SpecKind::SMU: return "smu";
    }
    return "unknown";
}

ParsedSpec parse_spec(const std::string& text, const std::string& path)
{
    const Parser p(text, path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        p.fail_top(std::string("malformed JSON: ") + e.what(), line_at(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!j.is_object()) p.fail_top("spec must be a JSON object");

    const auto& schema = p.require(j, {"schema"});
    if (p.integer(schema, {"schema"}) != 1) p.fail({"schema"}, "unsupported schema version (expected 1)");

    static const std::map<std::string, std::pair<SpecKind, std::set<std::string>>> kKinds = {
        {"elliptical", {SpecKind::Elliptical, {"generator"}}},
        {"smu", {SpecKind::SMU, {"generator"}}},
        {"lsm", {SpecKind::LSM, {"generator", "gamma", "mixing"}}},
        {"skew_normal", {SpecKind::SkewNormal, {"alpha", "parametrization"}}},
        {"gse_skew_normal", {SpecKind::GSESkewNormal, {"alpha", "parametrization"}}},
        {"smsn", {SpecKind::SMSN, {"alpha", "parametrization", "mixing"}}},
    };
    const std::string kind = p.string_field(j, {"kind"});
    const auto kit = kKinds.find(kind);
    if (kit == kKinds.end()) p.fail({"kind"}, "unknown kind '" + kind + "'");
    std::set<std::string> allowed = {"schema", "kind", "n", "mu", "sigma"};
    allowed.insert(kit->second.second.begin(), kit->second.second.end());
    p.only_keys(j, {}, allowed);

    ParsedSpec out;
    out.kind = kit->second.first;
    out.n = p.integer(p.require(j, {"n"}), {"n"});
    if (out.n < 1 || out.n > 1000) p.fail({"n"}, "dimension must be between 1 and 1000");
    out.mu = p.vector_field(j, {"mu"}, out.n);
    out.sigma = p.matrix_field(j, {"sigma"}, out.n);

    switch (out.kind) {
    case SpecKind::Elliptical:
    case SpecKind::SMU:
        out.generator = p.generator(j, out.n);
        if (out.kind == SpecKind::SMU) {
            try {
                skew::check_star_unimodal(*out.generator);
            } catch (const DomainError& e) {
                p.fail({"generator"}, e.what());
            }
        }
        break;
    case SpecKind::LSM: {
        out.generator = p.generator(j, out.n);
        Vector gamma = p.vector_field(j, {"gamma"}, out.n);
        out.lsm.emplace(*out.generator, out.mu, std::move(gamma), out.sigma, p.mixing(j));
        break;
    }
    case SpecKind::SkewNormal:
    case SpecKind::GSESkewNormal: out.skew_normal = p.skew_normal(j, out.mu, out.sigma); break;
    case SpecKind::SMSN: {
        auto sn = p.skew_normal(j, out.mu, out.sigma);
        auto mix = p.mixing(j);
        if (!(mix.lower_bound() > 0.0) && !std::holds_alternative<skew::mixing::InverseGamma>(mix.kind())) {
            p.fail({"mixing"}, "scale-mixing variable must be positive");
        }
        out.skew_normal = sn;
        out.smsn = skew::SMSNSpec{std::move(sn), std::move(mix)};
        break;
    }
    }
    out.canonical = j.dump();
    out.hash = fnv1a(out.canonical);
    return out;
}

ParsedSpec load_spec(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(path + ":0: cannot open spec file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path);
}

}  // namespace ellcf::cli
