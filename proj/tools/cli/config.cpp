#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tomolyap/errors.hpp"

namespace tomolyap::cli {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Tomography: return "tomography";
        case ExperimentKind::Harmonic: return "harmonic";
        case ExperimentKind::Cat: return "cat";
        case ExperimentKind::StandardMap: return "standard-map";
        case ExperimentKind::Oracle: return "oracle";
        case ExperimentKind::Compare: return "compare";
    }
    return "unknown";
}

ExperimentKind parse_kind(const std::string& text) {
    if (text == "tomography") return ExperimentKind::Tomography;
    if (text == "harmonic") return ExperimentKind::Harmonic;
    if (text == "cat") return ExperimentKind::Cat;
    if (text == "standard-map" || text == "standard_map") return ExperimentKind::StandardMap;
    if (text == "oracle") return ExperimentKind::Oracle;
    if (text == "compare") return ExperimentKind::Compare;
    throw ConfigError("unknown experiment kind '" + text + "'");
}

int effective_steps(const ExperimentConfig& c) {
    if (c.n > 0) return c.n;
    switch (c.kind) {
        case ExperimentKind::Tomography: return 256;
        case ExperimentKind::Harmonic: return 200;
        case ExperimentKind::Cat: return 1000;
        case ExperimentKind::StandardMap: return 60;
        case ExperimentKind::Oracle: return 10000;
        case ExperimentKind::Compare: return 60;
    }
    return 0;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "out",   "format", "n",       "seed",    "gamma",   "hbar",        "tau",
        "q0",    "p0",     "v1",      "v2",      "z",       "variant",     "state",
        "sigma_q", "sigma_p", "correlation", "directions", "map"};
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_known(const std::string& key) {
    for (const auto& k : known_keys())
        if (k == key) return true;
    return false;
}

[[noreturn]] void fail(const Setting& s, const std::string& key, const std::string& what) {
    throw ConfigError(s.origin + ": " + key + " = '" + s.value + "': " + what);
}

double to_double(const Setting& s, const std::string& key) {
    double v = 0.0;
    const char* first = s.value.data();
    const char* last = first + s.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail(s, key, "expected a finite number");
    return v;
}

long long to_integer(const Setting& s, const std::string& key) {
    long long v = 0;
    const char* first = s.value.data();
    const char* last = first + s.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(s, key, "expected an integer");
    return v;
}

}  // namespace

Settings parse_config_text(const std::string& text, const std::string& origin) {
    Settings out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string where = origin + ":" + std::to_string(number);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": missing key");
        if (!is_known(key)) throw ConfigError(where + ": unknown key '" + key + "'");
        if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");
        if (out.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
        out[key] = {value, where};
    }
    return out;
}

Settings read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

ExperimentConfig build_config(ExperimentKind kind, const Settings& settings) {
    ExperimentConfig c;
    c.kind = kind;
    if (kind == ExperimentKind::Tomography || kind == ExperimentKind::Compare) c.hbar = 1.0;

    for (const auto& [key, s] : settings) {
        if (!is_known(key)) throw ConfigError(s.origin + ": unknown key '" + key + "'");
        if (key == "out") {
            c.out = s.value;
        } else if (key == "format") {
            if (s.value == "csv")
                c.format = OutputFormat::Csv;
            else if (s.value == "json")
                c.format = OutputFormat::Json;
            else
                fail(s, key, "expected csv or json");
        } else if (key == "n") {
            const long long v = to_integer(s, key);
            if (v < 0 || v > 1000000) fail(s, key, "expected 0 (default) or a positive step count");
            c.n = static_cast<int>(v);
        } else if (key == "seed") {
            const long long v = to_integer(s, key);
            if (v < 0 || v > 4294967295LL) fail(s, key, "expected a 32-bit unsigned seed");
            c.seed = static_cast<unsigned>(v);
        } else if (key == "gamma") {
            c.gamma = to_double(s, key);
        } else if (key == "hbar") {
            c.hbar = to_double(s, key);
            if (c.hbar < 0.0) fail(s, key, "hbar must be >= 0");
        } else if (key == "tau") {
            c.tau = to_double(s, key);
            if (!(c.tau > 0.0)) fail(s, key, "tau must be > 0");
        } else if (key == "q0") {
            c.q0 = to_double(s, key);
        } else if (key == "p0") {
            c.p0 = to_double(s, key);
        } else if (key == "v1") {
            c.v1 = to_double(s, key);
        } else if (key == "v2") {
            c.v2 = to_double(s, key);
        } else if (key == "z") {
            c.z = to_double(s, key);
        } else if (key == "variant") {
            try {
                c.variant = parse_cat_variant(s.value);
            } catch (const ValidationError&) {
                fail(s, key, "expected H1, H2 or kick_only");
            }
        } else if (key == "state") {
            if (s.value != "gaussian" && s.value != "coherent") fail(s, key, "expected gaussian or coherent");
            c.state = s.value;
        } else if (key == "sigma_q") {
            c.sigma_q = to_double(s, key);
            if (!(c.sigma_q > 0.0)) fail(s, key, "must be > 0");
        } else if (key == "sigma_p") {
            c.sigma_p = to_double(s, key);
            if (!(c.sigma_p > 0.0)) fail(s, key, "must be > 0");
        } else if (key == "correlation") {
            c.correlation = to_double(s, key);
            if (!(std::abs(c.correlation) < 1.0)) fail(s, key, "must lie in (-1, 1)");
        } else if (key == "directions") {
            const long long v = to_integer(s, key);
            if (v < 32 || v > 4096) fail(s, key, "expected 32..4096 directions");
            c.directions = static_cast<int>(v);
        } else if (key == "map") {
            if (s.value == "standard-map") {
                c.map = "standard_map";
            } else if (s.value == "standard_map" || s.value == "harmonic" || s.value == "cat") {
                c.map = s.value;
            } else {
                fail(s, key, "expected standard_map, harmonic or cat");
            }
        }
    }
    validate_config(c);
    return c;
}

void validate_config(const ExperimentConfig& c) {
    const int n = c.n;
    auto need = [&](int minimum, const char* what) {
        if (n != 0 && n < minimum)
            throw ConfigError("n = " + std::to_string(n) + " is too small: " + what + " needs n >= " +
                              std::to_string(minimum));
    };
    if (!std::isfinite(c.gamma) || !std::isfinite(c.z) || !std::isfinite(c.q0) ||
        !std::isfinite(c.p0) || !std::isfinite(c.v1) || !std::isfinite(c.v2))
        throw ConfigError("parameters must be finite");
    if (c.hbar < 0.0 || !std::isfinite(c.hbar)) throw ConfigError("hbar must be >= 0");
    if (!(c.tau > 0.0) || !std::isfinite(c.tau)) throw ConfigError("tau must be > 0");
    if (c.v1 == 0.0 && c.v2 == 0.0) throw ConfigError("direction (v1, v2) must be nonzero");
    switch (c.kind) {
        case ExperimentKind::Tomography:
            need(16, "tomography X grid");
            if (c.state == "coherent" && !(c.hbar > 0.0))
                throw ConfigError("coherent-state tomography needs hbar > 0");
            break;
        case ExperimentKind::Harmonic: need(16, "the exponent fit"); break;
        case ExperimentKind::Cat: need(100, "the tangent-map oracle"); break;
        case ExperimentKind::StandardMap: need(16, "the exponent fit"); break;
        case ExperimentKind::Oracle: need(100, "the tangent-map oracle"); break;
        case ExperimentKind::Compare:
            need(16, "the exponent fit");
            if (!(c.hbar > 0.0)) throw ConfigError("compare needs hbar > 0 for the quantum column");
            break;
    }
}

Json config_to_json(const ExperimentConfig& c) {
    return Json{{"kind", to_string(c.kind)},
                {"out", c.out.generic_string()},
                {"format", c.format == OutputFormat::Csv ? "csv" : "json"},
                {"n", c.n},
                {"seed", c.seed},
                {"gamma", c.gamma},
                {"hbar", c.hbar},
                {"tau", c.tau},
                {"q0", c.q0},
                {"p0", c.p0},
                {"v1", c.v1},
                {"v2", c.v2},
                {"z", c.z},
                {"variant", to_string(c.variant)},
                {"state", c.state},
                {"sigma_q", c.sigma_q},
                {"sigma_p", c.sigma_p},
                {"correlation", c.correlation},
                {"directions", c.directions},
                {"map", c.map}};
}

ExperimentConfig config_from_json(const Json& j) {
    try {
        if (!j.is_object()) throw ConfigError("configuration echo must be a JSON object");
        Settings s;
        for (const auto& [key, value] : j.items()) {
            if (key == "kind") continue;
            std::string text;
            if (value.is_string()) {
                text = value.get<std::string>();
            } else if (value.is_number_integer() || value.is_number_unsigned()) {
                text = value.dump();
            } else if (value.is_number_float()) {
                std::ostringstream os;
                os.precision(17);
                os << value.get<double>();
                text = os.str();
            } else {
                throw ConfigError("config echo: unsupported value for '" + key + "'");
            }
            s[key] = {text, "record:" + key};
        }
        return build_config(parse_kind(j.at("kind").get<std::string>()), s);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed configuration echo: ") + e.what());
    }
}

}  // namespace tomolyap::cli
