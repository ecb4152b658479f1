#include "stf/tensor_io.hpp"

#include "stf/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>

using nlohmann::json;

namespace stf {
namespace io {

std::string component_key(std::span<const int> exps, int dim) {
    std::string key;
    if (dim == 3) {
        static const char letters[3] = {'x', 'y', 'z'};
        for (int i = 0; i < 3; ++i)
            for (int c = 0; c < exps[i]; ++c) key.push_back(letters[i]);
    } else {
        for (int i = 0; i < dim; ++i)
            for (int c = 0; c < exps[i]; ++c) key += "i" + std::to_string(i + 1);
    }
    return key;
}

std::vector<int> parse_component_key(const std::string& key, int rank, int dim) {
    std::vector<int> exps(dim, 0);
    int count = 0;
    if (dim == 3) {
        for (char ch : key) {
            int i;
            switch (ch) {
                case 'x': i = 0; break;
                case 'y': i = 1; break;
                case 'z': i = 2; break;
                default: throw ParseError("tensor component key '" + key + "': expected x/y/z");
            }
            ++exps[i];
            ++count;
        }
    } else {
        std::size_t pos = 0;
        while (pos < key.size()) {
            if (key[pos] != 'i')
                throw ParseError("tensor component key '" + key + "': expected i<k> tokens");
            std::size_t end = pos + 1;
            while (end < key.size() && std::isdigit(static_cast<unsigned char>(key[end]))) ++end;
            int idx = 0;
            auto [p, ec] = std::from_chars(key.data() + pos + 1, key.data() + end, idx);
            if (ec != std::errc())
                throw ParseError("tensor component key '" + key + "': bad index token");
            if (idx < 1 || idx > dim)
                throw ArgumentError("tensor component key '" + key + "': index exceeds dim " +
                                    std::to_string(dim));
            ++exps[idx - 1];
            ++count;
            pos = end;
        }
    }
    if (count != rank)
        throw ArgumentError("tensor component key '" + key + "' does not match rank " +
                            std::to_string(rank));
    return exps;
}

namespace {

Exact scalar_from_json(const json& v, const std::string& where) {
    if (v.is_number()) return Exact::from_double(v.get<double>());
    if (v.is_string()) {
        auto parsed = Exact::parse(v.get<std::string>());
        if (!parsed) throw ParseError(where + ": cannot parse rational '" + v.get<std::string>() + "'");
        return *parsed;
    }
    throw ParseError(where + ": component must be a number or a 'p/q' string");
}

json scalar_to_json(const Exact& e, bool as_float) {
    if (as_float) return json(e.to_double());
    return json(e.str());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_coeff_part(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (auto ex = Exact::parse(s)) return ex->to_double();
        try {
            std::size_t used = 0;
            double d = std::stod(s, &used);
            if (used == s.size()) return d;
        } catch (...) {
        }
        throw ParseError(where + ": cannot parse '" + s + "'");
    }
    throw ParseError(where + ": expected number or string");
}

} // namespace

json tensor_to_json(const SymTensor<Exact>& t, bool as_float) {
    json comps = json::object();
    const auto exps = t.exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (t[i].is_zero()) continue;
        comps[component_key(exps[i], t.dim())] = scalar_to_json(t[i], as_float);
    }
    return json{{"rank", t.rank()}, {"dim", t.dim()}, {"components", comps}};
}

SymTensor<Exact> tensor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rank"))
        throw ParseError("tensor: expected an object with a 'rank' field");
    if (!j["rank"].is_number_integer() || j["rank"].get<int>() < 0)
        throw ParseError("tensor: 'rank' must be a non-negative integer");
    const int rank = j["rank"].get<int>();
    int dim = 3;
    if (j.contains("dim")) {
        if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
            throw ParseError("tensor: 'dim' must be a positive integer");
        dim = j["dim"].get<int>();
    }
    SymTensor<Exact> t(rank, dim);
    if (j.contains("components")) {
        if (!j["components"].is_object())
            throw ParseError("tensor: 'components' must be an object");
        for (const auto& [key, value] : j["components"].items()) {
            auto exps = parse_component_key(key, rank, dim);
            t.at_exps(exps) = scalar_from_json(value, "component '" + key + "'");
        }
    }
    return t;
}

json polynomial_to_json(const AngularPolynomial& p, bool as_float) {
    json terms = json::array();
    for (const auto& t : p.terms())
        terms.push_back(json{{"rank", t.rank}, {"tensor", tensor_to_json(t.coeff, as_float)}});
    return json{{"terms", terms}};
}

AngularPolynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw ParseError("polynomial: expected an object with a 'terms' array");
    AngularPolynomial p;
    for (const auto& term : j["terms"]) {
        if (!term.is_object() || !term.contains("tensor"))
            throw ParseError("polynomial: each term needs a 'tensor'");
        auto t = tensor_from_json(term["tensor"]);
        if (term.contains("rank") && term["rank"].get<int>() != t.rank())
            throw ArgumentError("polynomial: term 'rank' disagrees with its tensor");
        if (t.dim() != 3) throw ParseError("polynomial: terms must be 3-dimensional");
        p.add_term(std::move(t));
    }
    return p;
}

json expansion_to_json(const MultipoleExpansion& e, bool as_float) {
    json coeffs = json::object();
    for (const auto& [l, t] : e.coefficients())
        coeffs[std::to_string(l)] = tensor_to_json(t.sym(), as_float);
    return json{{"coeffs", coeffs}};
}

MultipoleExpansion expansion_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object())
        throw ParseError("expansion: expected an object with a 'coeffs' object");
    MultipoleExpansion e;
    for (const auto& [key, value] : j["coeffs"].items()) {
        int l = -1;
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), l);
        if (ec != std::errc() || p != key.data() + key.size() || l < 0)
            throw ParseError("expansion: bad order key '" + key + "'");
        auto t = tensor_from_json(value);
        if (t.rank() != l)
            throw ParseError("expansion: tensor rank disagrees with key '" + key + "'");
        if (t.dim() != 3) throw ParseError("expansion: tensors must be 3-dimensional");
        // stored coefficients must be exactly traceless
        e.set(l, detrace(t));
    }
    return e;
}

json sph_coeffs_to_json(const SphCoeffs& c) {
    json coeffs = json::object();
    for (const auto& [lm, v] : c.coeffs) {
        const std::string key = std::to_string(lm.first) + "," + std::to_string(lm.second);
        coeffs[key] = json::array({format_double(v.real()), format_double(v.imag())});
    }
    return json{{"basis", c.basis == SphBasis::real ? "real" : "complex"}, {"coeffs", coeffs}};
}

SphCoeffs sph_coeffs_from_json(const json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("coeffs"))
        throw ParseError("harmonic coefficients: expected 'basis' and 'coeffs' fields");
    SphCoeffs c;
    const std::string basis = j["basis"].get<std::string>();
    if (basis == "complex") c.basis = SphBasis::complex_standard;
    else if (basis == "real") c.basis = SphBasis::real;
    else throw ParseError("harmonic coefficients: unknown basis tag '" + basis + "'");
    if (!j["coeffs"].is_object())
        throw ParseError("harmonic coefficients: 'coeffs' must be an object");
    for (const auto& [key, value] : j["coeffs"].items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos)
            throw ParseError("harmonic coefficients: key '" + key + "' is not '<l>,<m>'");
        int l = 0, m = 0;
        try {
            l = std::stoi(key.substr(0, comma));
            m = std::stoi(key.substr(comma + 1));
        } catch (...) {
            throw ParseError("harmonic coefficients: key '" + key + "' is not '<l>,<m>'");
        }
        if (l < 0 || std::abs(m) > l)
            throw ParseError("harmonic coefficients: key '" + key + "' out of range");
        if (!value.is_array() || value.size() != 2)
            throw ParseError("harmonic coefficients: value for '" + key + "' must be [re, im]");
        const double re = parse_coeff_part(value[0], "coefficient '" + key + "'");
        const double im = parse_coeff_part(value[1], "coefficient '" + key + "'");
        c.coeffs[{l, m}] = {re, im};
    }
    return c;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

json exact_to_json(const Exact& e) {
    return json{{"exact", e.str()}, {"value", e.to_double()}};
}

} // namespace io
} // namespace stf
