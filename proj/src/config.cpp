#include "graze/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace graze {

namespace {
std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
} // namespace

KeyValues KeyValues::parse_text(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string k = trim(t.substr(0, eq));
        std::string v = trim(t.substr(eq + 1));
        if (k.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out.kv[k] = v;
    }
    return out;
}

KeyValues KeyValues::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

std::string KeyValues::get(const std::string& k, const std::string& def) const {
    auto it = kv.find(k);
    return it == kv.end() ? def : it->second;
}

double KeyValues::get_double(const std::string& k, double def) const {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config key '" + k + "': not a number: " + it->second);
    }
}

int KeyValues::get_int(const std::string& k, int def) const {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    try {
        return std::stoi(it->second);
    } catch (...) {
        throw ConfigError("config key '" + k + "': not an integer: " + it->second);
    }
}

std::uint64_t KeyValues::get_u64(const std::string& k, std::uint64_t def) const {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    try {
        return std::stoull(it->second);
    } catch (...) {
        throw ConfigError("config key '" + k + "': not an unsigned integer: " + it->second);
    }
}

std::vector<double> KeyValues::get_list(const std::string& k) const {
    std::vector<double> out;
    auto it = kv.find(k);
    if (it == kv.end()) return out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError("config key '" + k + "': bad list element: " + item);
        }
    }
    return out;
}

std::string KeyValues::canonical_text() const {
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::uint64_t config_hash(const KeyValues& kv) {
    // hash the run parameters, not the artifact locations
    KeyValues sem = kv;
    sem.kv.erase("out");
    sem.kv.erase("cache");
    sem.kv.erase("threads");
    std::string t = sem.canonical_text();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : t) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string version_string() {
#ifdef GRAZE_VERSION
    return GRAZE_VERSION;
#else
    return "dev";
#endif
}

KernelSpec KernelSpec::from_config(const KeyValues& kv) {
    KernelSpec ks;
    ks.kind = kv.get("kind", "cutoff");
    ks.gamma = kv.get_double("gamma", 0.0);
    ks.nu = kv.get_double("nu", 0.5);
    if (kv.has("s")) ks.s = kv.get_double("s", 0.0);
    ks.epsilon = kv.get_double("epsilon", 0.1);
    if (kv.has("lambda0")) ks.lambda0 = kv.get_double("lambda0", 0.0);
    ks.c_alpha = kv.get_double("c_alpha", 1.0);
    if (ks.kind != "cutoff" && ks.kind != "vhs" && ks.kind != "power" &&
        ks.kind != "log_cutoff" && ks.kind != "rescaled" && ks.kind != "fpl")
        throw ConfigError("unknown kernel kind: " + ks.kind);
    return ks;
}

CrossSection KernelSpec::cross_section() const {
    if (kind == "cutoff") return CrossSection::cutoff(gamma);
    if (kind == "vhs") return CrossSection::vhs(gamma, c_alpha);
    if (kind == "power") {
        if (s) {
            CrossSection cs = CrossSection::inverse_power(*s);
            return cs;
        }
        return CrossSection::power_law(gamma, nu);
    }
    if (kind == "log_cutoff" || kind == "rescaled") {
        // base of the family
        if (s) return CrossSection::inverse_power(*s);
        return CrossSection::power_law(gamma, nu);
    }
    throw ConfigError("kernel kind '" + kind + "' has no plain cross-section");
}

GrazingFamily KernelSpec::family() const {
    CrossSection base = cross_section();
    GrazingFamily f;
    if (kind == "log_cutoff")
        f = GrazingFamily::log_cutoff(std::move(base));
    else if (kind == "rescaled")
        f = GrazingFamily::rescaled(std::move(base));
    else
        throw ConfigError("kernel kind '" + kind + "' is not a grazing family");
    if (lambda0) f.lambda0 = *lambda0;
    return f;
}

FplKernel KernelSpec::fpl() const {
    if (kind != "fpl") throw ConfigError("kernel kind '" + kind + "' is not fpl");
    FplKernel fk;
    fk.gamma = gamma;
    fk.lambda0 = lambda0.value_or(1.0);
    fk.validate();
    return fk;
}

std::string KernelSpec::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s(gamma=%g,nu=%g,eps=%g,lambda0=%g,C=%g)", kind.c_str(),
                  gamma, nu, epsilon, lambda0.value_or(std::nan("")), c_alpha);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header_comments,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::trunc | std::ios::binary), ncols_(columns.size()) {
    if (!out_) throw ConfigError("cannot open output: " + path);
    for (const auto& h : header_comments) out_ << "# " << h << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote(columns[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != ncols_) throw ConfigError("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote(fields[i]);
    }
    out_ << '\n';
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string CsvWriter::quote(const std::string& field) {
    bool need = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!need) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace graze
